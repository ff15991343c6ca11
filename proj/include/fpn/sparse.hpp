#pragma once

// Sparse exact vectors and incremental echelon forms.
//
// Every linear-algebra question in the library (ranks, kernels, membership,
// quotient bases) reduces to the Span class below.  Vectors are sorted lists of
// (index, nonzero value) pairs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/field.hpp"

namespace fpn {

template <class V>
struct Entry {
  std::uint32_t index;
  V value;
};

template <Field F>
using SparseVec = std::vector<Entry<typename F::value_type>>;

// Columns of a linear map, one sparse vector per source basis element.
template <Field F>
struct LinearMap {
  std::size_t rows = 0;
  std::vector<SparseVec<F>> columns;

  std::size_t cols() const { return columns.size(); }
};

template <Field F>
SparseVec<F> unit_vector(const F& field, std::uint32_t index) {
  return {{index, field.one()}};
}

template <Field F>
typename F::value_type coefficient(const F& field, const SparseVec<F>& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& e, std::uint32_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return field.zero();
}

// y + c * x
template <Field F>
SparseVec<F> axpy(const F& field, const SparseVec<F>& y, const typename F::value_type& c, const SparseVec<F>& x) {
  SparseVec<F> out;
  if (field.is_zero(c)) return y;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].index < y[i].index) {
      out.push_back({x[j].index, field.mul(c, x[j].value)});
      ++j;
    } else {
      auto s = field.add(y[i].value, field.mul(c, x[j].value));
      if (!field.is_zero(s)) out.push_back({y[i].index, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <Field F>
SparseVec<F> add(const F& field, const SparseVec<F>& a, const SparseVec<F>& b) {
  return axpy(field, a, field.one(), b);
}

template <Field F>
SparseVec<F> sub(const F& field, const SparseVec<F>& a, const SparseVec<F>& b) {
  return axpy(field, a, field.neg(field.one()), b);
}

template <Field F>
SparseVec<F> scale(const F& field, const typename F::value_type& c, const SparseVec<F>& v) {
  if (field.is_zero(c)) return {};
  SparseVec<F> out = v;
  for (auto& e : out) e.value = field.mul(c, e.value);
  return out;
}

template <Field F>
bool equal(const F& field, const SparseVec<F>& a, const SparseVec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].index != b[i].index || !field.equal(a[i].value, b[i].value)) return false;
  return true;
}

// Shift every index by offset (placing a block inside a direct sum).
template <Field F>
void append_shifted(SparseVec<F>& out, const SparseVec<F>& v, std::uint32_t offset) {
  for (const auto& e : v) out.push_back({e.index + offset, e.value});
}

// Builds a sparse vector from unsorted (index, value) pairs, summing duplicates.
template <Field F>
SparseVec<F> collect(const F& field, std::vector<Entry<typename F::value_type>> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  SparseVec<F> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().index == t.index) {
      out.back().value = field.add(out.back().value, t.value);
      if (field.is_zero(out.back().value)) out.pop_back();
    } else if (!field.is_zero(t.value)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Applies a linear map to a vector.
template <Field F>
SparseVec<F> apply(const F& field, const LinearMap<F>& map, const SparseVec<F>& v) {
  std::vector<Entry<typename F::value_type>> terms;
  for (const auto& e : v)
    for (const auto& t : map.columns.at(e.index)) terms.push_back({t.index, field.mul(e.value, t.value)});
  return collect(field, std::move(terms));
}

// after * before
template <Field F>
LinearMap<F> compose(const F& field, const LinearMap<F>& after, const LinearMap<F>& before) {
  LinearMap<F> out;
  out.rows = after.rows;
  out.columns.reserve(before.cols());
  for (const auto& c : before.columns) out.columns.push_back(apply(field, after, c));
  return out;
}

template <Field F>
bool is_zero_map(const LinearMap<F>& m) {
  return std::all_of(m.columns.begin(), m.columns.end(), [](const auto& c) { return c.empty(); });
}

// Incremental row echelon form of a subspace of K^ambient.
//
// Rows are normalised so the leading (smallest-index) entry is 1 and no two rows
// share a leading index.  Optionally each row carries a combination vector
// recording how it was built from the inserted vectors.
template <Field F>
class Span {
 public:
  using value_type = typename F::value_type;

  Span(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient), pivot_row_(ambient, -1) {}

  const F& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec<F>>& rows() const { return rows_; }

  bool contains(SparseVec<F> v) const {
    reduce_leading(v, nullptr);
    return v.empty();
  }

  // Returns true when v was independent of the rows already present.
  bool insert(SparseVec<F> v) {
    reduce_leading(v, nullptr);
    if (v.empty()) return false;
    add_row(std::move(v), {});
    return true;
  }

  // Fully reduced remainder of v modulo the span.
  SparseVec<F> reduce(SparseVec<F> v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      int r = pivot_row_[v[pos].index];
      if (r < 0) {
        ++pos;
        continue;
      }
      v = axpy(field_, v, field_.neg(v[pos].value), rows_[r]);
    }
    return v;
  }

  // Reduced row echelon basis, sorted by leading index.
  std::vector<SparseVec<F>> reduced_basis() const {
    std::vector<std::pair<std::uint32_t, std::size_t>> order;
    for (std::size_t r = 0; r < rows_.size(); ++r) order.emplace_back(rows_[r].front().index, r);
    std::sort(order.begin(), order.end());
    std::vector<SparseVec<F>> out;
    out.reserve(order.size());
    for (auto [lead, r] : order) {
      SparseVec<F> tail(rows_[r].begin() + 1, rows_[r].end());
      tail = reduce(std::move(tail));
      SparseVec<F> row;
      row.reserve(tail.size() + 1);
      row.push_back(rows_[r].front());
      row.insert(row.end(), tail.begin(), tail.end());
      out.push_back(std::move(row));
    }
    return out;
  }

  std::vector<std::uint32_t> pivots() const {
    std::vector<std::uint32_t> out;
    for (const auto& r : rows_) out.push_back(r.front().index);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Leading-term reduction; when combo is given it tracks the same row operations.
  void reduce_leading(SparseVec<F>& v, SparseVec<F>* combo) const {
    while (!v.empty()) {
      int r = pivot_row_[v.front().index];
      if (r < 0) return;
      value_type c = field_.neg(v.front().value);
      if (combo) *combo = axpy(field_, *combo, c, combos_[r]);
      v = axpy(field_, v, c, rows_[r]);
    }
  }

  void add_row(SparseVec<F> v, SparseVec<F> combo) {
    value_type inv = field_.inv(v.front().value);
    if (!field_.is_one(inv)) {
      v = scale(field_, inv, v);
      combo = scale(field_, inv, combo);
    }
    pivot_row_[v.front().index] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(combo));
  }

 private:
  F field_;
  std::size_t ambient_;
  std::vector<int> pivot_row_;
  std::vector<SparseVec<F>> rows_;
  std::vector<SparseVec<F>> combos_;
};

// Null space basis of a map given by columns.  Column j contributes a kernel
// vector exactly when it depends on earlier columns; that vector has a 1 in
// position j, so the result is the reduced-echelon null space basis.
// The rank is written to *rank when requested.
template <Field F>
std::vector<SparseVec<F>> kernel(const F& field, const LinearMap<F>& map, std::size_t* rank = nullptr) {
  Span<F> span(field, map.rows);
  std::vector<SparseVec<F>> out;
  for (std::uint32_t j = 0; j < map.cols(); ++j) {
    SparseVec<F> v = map.columns[j];
    SparseVec<F> combo = unit_vector(field, j);
    span.reduce_leading(v, &combo);
    if (v.empty()) {
      out.push_back(std::move(combo));
    } else {
      span.add_row(std::move(v), std::move(combo));
    }
  }
  if (rank) *rank = span.rank();
  return out;
}

template <Field F>
std::size_t rank(const F& field, const LinearMap<F>& map) {
  Span<F> span(field, map.rows);
  for (const auto& c : map.columns) span.insert(c);
  return span.rank();
}

template <Field F>
std::string to_string(const F& field, const SparseVec<F>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i].index) + ":" + field.to_string(v[i].value);
  }
  return s + "]";
}

}  // namespace fpn
