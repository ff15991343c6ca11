#pragma once

// Graded generators, words and noncommutative polynomials over an exact field.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/field.hpp"

namespace fpn {

struct Generator {
  std::string name;
  int degree = 1;

  bool operator==(const Generator&) const = default;
};

// An ordered list of generators; the order is the tie-break of deglex.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].degree < 1) throw ValidationError("generator '" + gens_[i].name + "' must have degree >= 1");
      for (std::size_t j = 0; j < i; ++j)
        if (gens_[j].name == gens_[i].name) throw ValidationError("duplicate generator name '" + gens_[i].name + "'");
    }
  }

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  int degree(std::uint32_t letter) const { return gens_[letter].degree; }

  std::optional<std::uint32_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Generator> gens_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Letters are generator indices; the empty word is the identity.
using Word = std::vector<std::uint32_t>;

inline int word_degree(const Alphabet& alphabet, std::span<const std::uint32_t> w) {
  int d = 0;
  for (auto letter : w) d += alphabet.degree(letter);
  return d;
}

// Degree first, then left-to-right comparison of letters in declaration order.
inline std::strong_ordering deglex_compare(const Alphabet& alphabet, std::span<const std::uint32_t> a,
                                           std::span<const std::uint32_t> b) {
  if (auto c = word_degree(alphabet, a) <=> word_degree(alphabet, b); c != 0) return c;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  // Equal degree and one a prefix of the other only happens when both are equal.
  return a.size() <=> b.size();
}

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline std::string word_to_string(const Alphabet& alphabet, std::span<const std::uint32_t> w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += alphabet[w[i]].name;
  }
  return s;
}

struct WordHash {
  using is_transparent = void;
  std::size_t operator()(std::span<const std::uint32_t> w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w) h = (h ^ (l + 0x9e3779b9u)) * 1099511628211ull;
    return h;
  }
  std::size_t operator()(const Word& w) const noexcept { return (*this)(std::span<const std::uint32_t>(w)); }
};

struct WordEqual {
  using is_transparent = void;
  bool operator()(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
};

struct DeglexLess {
  const Alphabet* alphabet = nullptr;
  bool operator()(const Word& a, const Word& b) const { return deglex_compare(*alphabet, a, b) < 0; }
};

// A noncommutative polynomial: finitely many words with nonzero coefficients.
template <Field F>
class NCPoly {
 public:
  using value_type = typename F::value_type;
  using Terms = std::map<Word, value_type, DeglexLess>;

  NCPoly(F field, AlphabetPtr alphabet)
      : field_(std::move(field)), alphabet_(std::move(alphabet)), terms_(DeglexLess{alphabet_.get()}) {}

  static NCPoly monomial(F field, AlphabetPtr alphabet, Word w, value_type c) {
    NCPoly p(std::move(field), std::move(alphabet));
    if (!p.field_.is_zero(c)) p.terms_.emplace(std::move(w), std::move(c));
    return p;
  }
  static NCPoly constant(F field, AlphabetPtr alphabet, value_type c) {
    return monomial(std::move(field), std::move(alphabet), {}, std::move(c));
  }

  const F& field() const { return field_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  value_type coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  // Deglex-largest term; the polynomial must be nonzero.
  const std::pair<const Word, value_type>& leading() const { return *terms_.rbegin(); }

  int degree() const { return terms_.empty() ? -1 : word_degree(*alphabet_, terms_.rbegin()->first); }
  int low_degree() const { return terms_.empty() ? -1 : word_degree(*alphabet_, terms_.begin()->first); }
  bool is_homogeneous() const { return degree() == low_degree(); }

  void add_term(const Word& w, const value_type& c) {
    if (field_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  NCPoly& operator+=(const NCPoly& q) {
    check_compatible(q);
    for (const auto& [w, c] : q.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& q) {
    check_compatible(q);
    for (const auto& [w, c] : q.terms_) add_term(w, field_.neg(c));
    return *this;
  }

  friend NCPoly operator+(NCPoly p, const NCPoly& q) { return p += q; }
  friend NCPoly operator-(NCPoly p, const NCPoly& q) { return p -= q; }
  friend NCPoly operator-(const NCPoly& p) { return p.scaled(p.field_.neg(p.field_.one())); }

  friend NCPoly operator*(const NCPoly& p, const NCPoly& q) {
    p.check_compatible(q);
    NCPoly r(p.field_, p.alphabet_);
    for (const auto& [u, a] : p.terms_)
      for (const auto& [v, b] : q.terms_) r.add_term(concat(u, v), p.field_.mul(a, b));
    return r;
  }

  NCPoly scaled(const value_type& c) const {
    NCPoly r(field_, alphabet_);
    if (field_.is_zero(c)) return r;
    for (const auto& [w, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, field_.mul(c, a));
    return r;
  }

  // u * p * v for words u, v
  NCPoly sandwiched(const Word& u, const Word& v) const {
    NCPoly r(field_, alphabet_);
    for (const auto& [w, a] : terms_) r.terms_.emplace(concat(concat(u, w), v), a);
    return r;
  }

  // Same coefficients with every word reversed (the image in the opposite algebra).
  NCPoly reversed(AlphabetPtr alphabet = nullptr) const {
    NCPoly r(field_, alphabet ? std::move(alphabet) : alphabet_);
    for (const auto& [w, a] : terms_) r.terms_.emplace(Word(w.rbegin(), w.rend()), a);
    return r;
  }

  bool operator==(const NCPoly& q) const {
    if (terms_.size() != q.terms_.size()) return false;
    auto it = q.terms_.begin();
    for (const auto& [w, a] : terms_) {
      if (w != it->first || !field_.equal(a, it->second)) return false;
      ++it;
    }
    return true;
  }

  // Highest term first, e.g. "y*x - x*y + 2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string c = field_.to_string(it->second);
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c = c.substr(1);
      if (first) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      if (it->first.empty()) {
        s += c;
      } else {
        if (c != "1") s += c + "*";
        s += word_to_string(*alphabet_, it->first);
      }
    }
    return s;
  }

 private:
  void check_compatible(const NCPoly& q) const {
    if (!(field_ == q.field_)) throw AlphabetMismatch();
    if (alphabet_ != q.alphabet_ && !(*alphabet_ == *q.alphabet_)) throw AlphabetMismatch();
  }

  F field_;
  AlphabetPtr alphabet_;
  Terms terms_;
};

}  // namespace fpn
