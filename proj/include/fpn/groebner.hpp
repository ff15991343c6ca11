#pragma once

// Degree-truncated noncommutative Groebner bases for homogeneous two-sided
// ideals of the free algebra, normal forms, and normal-word bases.
//
// Completion works degree by degree.  Because every input is homogeneous, once
// all overlaps of degree d have been reduced nothing of degree <= d can change,
// so stopping at the bound D leaves a basis that is exact up to degree D.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/ncpoly.hpp"
#include "fpn/presentation.hpp"

namespace fpn {

template <Field F>
class GroebnerBasis {
 public:
  using Poly = NCPoly<F>;

  // Completes the relations of pres up to degree D.
  static GroebnerBasis compute(const AlgebraPresentation<F>& pres, int D) {
    pres.validate();
    GroebnerBasis gb(pres, D);
    gb.complete();
    return gb;
  }

  const AlgebraPresentation<F>& presentation() const { return pres_; }
  const F& field() const { return pres_.field; }
  const AlphabetPtr& alphabet() const { return pres_.alphabet; }
  int degree_bound() const { return bound_; }
  const std::vector<Poly>& elements() const { return elements_; }
  // completed()[d]: every overlap of degree d has been reduced to zero.
  const std::vector<bool>& completed() const { return completed_; }

  // Leftmost occurrence (position, element index) of a leading word inside w.
  std::optional<std::pair<std::size_t, std::size_t>> find_leading_occurrence(std::span<const std::uint32_t> w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      for (std::size_t len : lead_lengths_) {
        if (pos + len > w.size()) break;
        auto it = lead_index_.find(w.subspan(pos, len));
        if (it != lead_index_.end()) return std::make_pair(pos, it->second);
      }
    }
    return std::nullopt;
  }

  bool is_normal(std::span<const std::uint32_t> w) const { return !find_leading_occurrence(w).has_value(); }
  bool is_leading_word(std::span<const std::uint32_t> w) const { return lead_index_.find(w) != lead_index_.end(); }

  // Rewrites the deglex-largest reducible term at its leftmost occurrence until
  // only normal words remain.
  Poly normal_form(const Poly& p) const {
    if (p.degree() > bound_) throw TruncationError(p.degree(), bound_);
    return reduce(p);
  }

 private:
  GroebnerBasis(const AlgebraPresentation<F>& pres, int D) : pres_(pres), bound_(D), completed_(D + 1, false) {}

  Poly reduce(Poly work) const {
    Poly result(pres_.field, pres_.alphabet);
    const F& field = pres_.field;
    while (!work.is_zero()) {
      auto lead = work.leading();
      Word w = lead.first;
      auto occ = find_leading_occurrence(w);
      if (!occ) {
        result.add_term(w, lead.second);
        work.add_term(w, field.neg(lead.second));
        continue;
      }
      auto [pos, idx] = *occ;
      const Poly& g = elements_[idx];
      std::size_t len = g.leading().first.size();
      Word u(w.begin(), w.begin() + pos);
      Word v(w.begin() + pos + len, w.end());
      auto c = field.neg(lead.second);
      for (const auto& [t, a] : g.terms()) work.add_term(concat(concat(u, t), v), field.mul(c, a));
    }
    return result;
  }

  void add_element(Poly p) {
    auto inv = pres_.field.inv(p.leading().second);
    p = p.scaled(inv);
    const Word& lw = p.leading().first;
    lead_index_.emplace(lw, elements_.size());
    lead_lengths_.insert(lw.size());
    elements_.push_back(std::move(p));
  }

  void push_overlaps(std::size_t fi, std::size_t gi) {
    const Word& a = elements_[fi].leading().first;
    const Word& b = elements_[gi].leading().first;
    const Alphabet& alpha = *pres_.alphabet;
    std::size_t max_k = std::min(a.size(), b.size());
    for (std::size_t k = 1; k < max_k; ++k) {
      if (!std::equal(a.end() - k, a.end(), b.begin())) continue;
      Word v(b.begin() + k, b.end());
      Word u(a.begin(), a.end() - k);
      int degree = word_degree(alpha, a) + word_degree(alpha, v);
      if (degree > bound_) continue;
      Poly s = elements_[fi].sandwiched({}, v) - elements_[gi].sandwiched(u, {});
      if (!s.is_zero()) pending_[degree].push_back(std::move(s));
    }
  }

  void complete() {
    pending_.assign(bound_ + 1, {});
    for (const auto& r : pres_.relations)
      if (r.degree() <= bound_) pending_[r.degree()].push_back(r);
    completed_[0] = true;
    for (int d = 1; d <= bound_; ++d) {
      std::size_t first_new = elements_.size();
      while (!pending_[d].empty()) {
        Poly r = reduce(std::move(pending_[d].front()));
        pending_[d].pop_front();
        if (r.is_zero()) continue;
        r = r.scaled(pres_.field.inv(r.leading().second));
        // Keep the same-degree batch inter-reduced.
        const Word& lw = r.leading().first;
        for (std::size_t i = first_new; i < elements_.size(); ++i) {
          auto c = elements_[i].coefficient(lw);
          if (!pres_.field.is_zero(c)) elements_[i] -= r.scaled(c);
        }
        add_element(std::move(r));
      }
      for (std::size_t i = first_new; i < elements_.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          push_overlaps(i, j);
          if (i != j) push_overlaps(j, i);
        }
      completed_[d] = true;
    }
    pending_.clear();
  }

  AlgebraPresentation<F> pres_;
  int bound_;
  std::vector<Poly> elements_;
  std::unordered_map<Word, std::size_t, WordHash, WordEqual> lead_index_;
  std::set<std::size_t> lead_lengths_;
  std::vector<std::deque<Poly>> pending_;
  std::vector<bool> completed_;
};

// Normal words of each degree 0..D in deglex order; a K-basis of A_d.
class NormalBasis {
 public:
  template <Field F>
  explicit NormalBasis(const GroebnerBasis<F>& gb) : alphabet_(gb.alphabet()) {
    int D = gb.degree_bound();
    words_.assign(D + 1, {});
    words_[0].push_back({});
    for (int d = 1; d <= D; ++d) {
      for (std::uint32_t x = 0; x < alphabet_->size(); ++x) {
        int dx = alphabet_->degree(x);
        if (dx > d) continue;
        for (const auto& prefix : words_[d - dx]) {
          Word w = prefix;
          w.push_back(x);
          // The prefix is normal, so only suffixes can contain a leading word.
          bool normal = true;
          for (std::size_t start = 0; start < w.size() && normal; ++start)
            if (gb.is_leading_word(std::span<const std::uint32_t>(w).subspan(start))) normal = false;
          if (normal) words_[d].push_back(std::move(w));
        }
      }
      std::sort(words_[d].begin(), words_[d].end());
    }
    for (const auto& level : words_)
      for (std::size_t i = 0; i < level.size(); ++i) index_.emplace(level[i], i);
  }

  int degree_bound() const { return static_cast<int>(words_.size()) - 1; }
  const std::vector<Word>& words(int d) const { return words_.at(d); }
  std::size_t dim(int d) const { return d < 0 || d > degree_bound() ? 0 : words_[d].size(); }

  // Position of a normal word within its degree.
  std::optional<std::size_t> index_of(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::size_t> hilbert_series() const {
    std::vector<std::size_t> h;
    for (const auto& level : words_) h.push_back(level.size());
    return h;
  }

  const AlphabetPtr& alphabet() const { return alphabet_; }

 private:
  AlphabetPtr alphabet_;
  std::vector<std::vector<Word>> words_;
  std::unordered_map<Word, std::size_t, WordHash, WordEqual> index_;
};

// dim A_0, ..., dim A_D
template <Field F>
std::vector<std::size_t> hilbert_series(const GroebnerBasis<F>& gb) {
  return NormalBasis(gb).hilbert_series();
}

}  // namespace fpn
