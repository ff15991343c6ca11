#pragma once

// Finite monoids and groups given by multiplication tables, and their monoid
// algebras KB as rings concentrated in degree 0.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/field.hpp"
#include "fpn/presentation.hpp"
#include "fpn/ring.hpp"

namespace fpn {

// Elements are 0..size-1 and element 0 is the identity.
class FiniteMonoid {
 public:
  // Validates the table, finds the identity and renumbers so it comes first.
  FiniteMonoid(std::vector<std::string> names, const std::vector<std::vector<std::size_t>>& table) {
    std::size_t n = names.size();
    if (n == 0) throw ValidationError("a monoid needs at least one element");
    if (table.size() != n) throw ValidationError("multiplication table must be square");
    for (const auto& row : table) {
      if (row.size() != n) throw ValidationError("multiplication table must be square");
      for (auto v : row)
        if (v >= n) throw ValidationError("table entry out of range");
    }
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
      if (ok) id = e;
    }
    if (!id) throw ValidationError("table has no identity element");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw ValidationError("not associative: (" + names[a] + "*" + names[b] + ")*" + names[c] + " != " + names[a] +
                                  "*(" + names[b] + "*" + names[c] + ")");
    // Swap the identity into position 0.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::swap(perm[0], perm[*id]);  // perm: new index -> old index
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;
    names_.resize(n);
    table_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      names_[a] = std::move(names[perm[a]]);
      for (std::size_t b = 0; b < n; ++b) table_[a][b] = inv[table[perm[a]][perm[b]]];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw ValidationError("duplicate element name '" + names_[i] + "'");
    inverses_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == 0 && table_[b][a] == 0) inverses_[a] = b;
  }

  std::size_t size() const { return names_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  bool is_group() const {
    for (auto v : inverses_)
      if (v == size()) return false;
    return true;
  }
  std::optional<std::size_t> inverse(std::size_t a) const {
    if (inverses_[a] == size()) return std::nullopt;
    return inverses_[a];
  }
  bool is_commutative() const {
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (table_[a][b] != table_[b][a]) return false;
    return true;
  }

  // Same elements with a*b read as b*a.
  FiniteMonoid opposite() const {
    std::vector<std::vector<std::size_t>> t(size(), std::vector<std::size_t>(size()));
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) t[a][b] = table_[b][a];
    return FiniteMonoid(names_, t);
  }

  bool operator==(const FiniteMonoid& o) const { return names_ == o.names_ && table_ == o.table_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverses_;  // size() when absent
};

// B x C with componentwise product; the pair (b, c) has index b * |C| + c.
inline FiniteMonoid product(const FiniteMonoid& B, const FiniteMonoid& C) {
  std::size_t n = B.size() * C.size();
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t b = 0; b < B.size(); ++b)
    for (std::size_t c = 0; c < C.size(); ++c) names.push_back("(" + B.name(b) + "," + C.name(c) + ")");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x][y] = B.mul(x / C.size(), y / C.size()) * C.size() + C.mul(x % C.size(), y % C.size());
  return FiniteMonoid(std::move(names), t);
}

// Z/n with generator g: elements 1, g, g^2, ...
inline FiniteMonoid cyclic_group(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "1" : i == 1 ? "g" : "g^" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return FiniteMonoid(std::move(names), t);
}

// Permutations of {0, 1, 2} composed as functions, (s*t)(i) = s(t(i)).
inline FiniteMonoid symmetric_group_3() {
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> names{"1", "s", "t", "u", "r", "r2"};
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k] == c) t[a][b] = k;
    }
  return FiniteMonoid(std::move(names), t);
}

// {1, e} with e*e = e.
inline FiniteMonoid semilattice2() { return FiniteMonoid({"1", "e"}, {{0, 1}, {1, 1}}); }

// An anti-automorphism of order dividing 2, as an element map.
using Involution = std::vector<std::size_t>;

// The first pair (b, c) with (bc)* != c* b*, or the first b with b** != b (as (b, b)).
inline std::optional<std::pair<std::size_t, std::size_t>> involution_violation(const FiniteMonoid& B, const Involution& star) {
  if (star.size() != B.size()) throw ValidationError("involution must map every element");
  for (std::size_t b = 0; b < B.size(); ++b)
    if (star[b] >= B.size() || star[star[b]] != b) return std::make_pair(b, b);
  for (std::size_t b = 0; b < B.size(); ++b)
    for (std::size_t c = 0; c < B.size(); ++c)
      if (star[B.mul(b, c)] != B.mul(star[c], star[b])) return std::make_pair(b, c);
  return std::nullopt;
}

// Group inversion, the default involution of a group.
inline Involution inverse_involution(const FiniteMonoid& G) {
  if (!G.is_group()) throw Unsupported("monoid has elements without inverses");
  Involution star;
  for (std::size_t g = 0; g < G.size(); ++g) star.push_back(*G.inverse(g));
  return star;
}

// KB.  Ring generators are the non-identity elements (generator g is element
// g + 1); every basis element b != 1 factors as b * 1.
template <Field F>
class MonoidAlgebra final : public Ring<F> {
 public:
  using Vec = SparseVec<F>;
  using value_type = typename F::value_type;

  MonoidAlgebra(F field, FiniteMonoid monoid) : field_(std::move(field)), monoid_(std::move(monoid)) {
    std::size_t n = monoid_.size();
    table_.assign(n, std::vector<Vec>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) table_[a][b] = unit_vector(field_, static_cast<std::uint32_t>(monoid_.mul(a, b)));
  }

  static std::shared_ptr<const MonoidAlgebra> make(F field, FiniteMonoid monoid) {
    return std::make_shared<const MonoidAlgebra>(std::move(field), std::move(monoid));
  }

  const FiniteMonoid& monoid() const { return monoid_; }

  const F& field() const override { return field_; }
  int degree_bound() const override { return 0; }
  std::size_t dim(int d) const override { return d == 0 ? monoid_.size() : 0; }
  std::size_t num_generators() const override { return monoid_.size() - 1; }
  int generator_degree(std::size_t) const override { return 0; }
  std::string generator_name(std::size_t g) const override { return monoid_.name(g + 1); }
  bool connected_graded() const override { return false; }

  const Vec& gen_times_basis(std::size_t g, int, std::size_t i) const override { return table_[g + 1][i]; }
  const Vec& basis_times_gen(int, std::size_t i, std::size_t g) const override { return table_[i][g + 1]; }
  std::optional<Factorization> factor(int, std::size_t i) const override {
    if (i == 0) return std::nullopt;
    return Factorization{i - 1, 0, 0};
  }
  value_type augmentation(int, std::size_t) const override { return field_.one(); }
  std::string basis_label(int, std::size_t i) const override { return monoid_.name(i); }
  Vec generator_element(std::size_t g) const override { return unit_vector(field_, static_cast<std::uint32_t>(g + 1)); }

  // The basis element b as a ring element.
  RingElement<F> element(std::size_t b) const { return {0, unit_vector(field_, static_cast<std::uint32_t>(b))}; }

 private:
  F field_;
  FiniteMonoid monoid_;
  std::vector<std::vector<Vec>> table_;
};

template <Field F>
using MonoidAlgebraPtr = std::shared_ptr<const MonoidAlgebra<F>>;

// A monoid file:
//   field GF(2)                # optional
//   elements 1 g               # optional keyword; the first line lists the elements
//   1 g                        # one row per element: products row * column
//   g 1
//   involution 1 g             # optional: images of the elements in order
struct MonoidFile {
  std::optional<FieldSpec> field;
  FiniteMonoid monoid;
  std::optional<Involution> involution;
};

inline MonoidFile parse_monoid_file(const std::string& text) {
  std::optional<FieldSpec> field;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;
  std::optional<std::vector<std::string>> star_names;
  std::size_t star_line = 0;
  std::size_t lineno = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "field") {
      std::string rest;
      for (std::size_t i = 1; i < toks.size(); ++i) rest += toks[i];
      try {
        field = parse_field_spec(rest);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno, 1);
      }
    } else if (toks[0] == "involution") {
      star_names = std::vector<std::string>(toks.begin() + 1, toks.end());
      star_line = lineno;
    } else if (names.empty()) {
      names.assign(toks[0] == "elements" ? toks.begin() + 1 : toks.begin(), toks.end());
      if (names.empty()) throw ParseError("no elements listed", lineno, 1);
    } else {
      rows.push_back(toks);
      row_lines.push_back(lineno);
    }
  }
  if (names.empty()) throw ParseError("missing element list", lineno, 1);
  if (rows.size() != names.size())
    throw ParseError("expected " + std::to_string(names.size()) + " table rows, found " + std::to_string(rows.size()), lineno, 1);
  auto index = [&](const std::string& s, std::size_t line) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return i;
    throw ParseError("unknown element '" + s + "'", line, 1);
  };
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != names.size()) throw ParseError("table row has the wrong length", row_lines[r], 1);
    std::vector<std::size_t> row;
    for (const auto& s : rows[r]) row.push_back(index(s, row_lines[r]));
    table.push_back(std::move(row));
  }
  FiniteMonoid B(names, table);
  std::optional<Involution> star;
  if (star_names) {
    if (star_names->size() != names.size()) throw ParseError("involution must list one image per element", star_line, 1);
    star = Involution(B.size());
    // Images are listed in file order; map through the renumbered elements.
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto from = B.find(names[i]);
      auto to = B.find((*star_names)[i]);
      if (!to) throw ParseError("unknown element '" + (*star_names)[i] + "'", star_line, 1);
      (*star)[*from] = *to;
    }
  }
  return {field, std::move(B), std::move(star)};
}

}  // namespace fpn
