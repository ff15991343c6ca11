#pragma once

// The ring interface shared by graded quotient algebras (truncated at a degree
// cutoff) and finite monoid algebras (everything in degree 0).
//
// A ring is presented to the module layer as a graded vector space with a
// basis in each degree, a finite set of generators, and left multiplication by
// generators.  Every basis element other than the unit factors as a generator
// times a basis element, which is all the map-assembly code needs.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/sparse.hpp"

namespace fpn {

// A homogeneous ring element: its degree and its coordinates in that degree.
template <Field F>
struct RingElement {
  int degree = 0;
  SparseVec<F> coords;
};

struct Factorization {
  std::size_t generator;
  int rest_degree;
  std::size_t rest_index;
};

template <Field F>
class Ring {
 public:
  using Vec = SparseVec<F>;
  using value_type = typename F::value_type;

  virtual ~Ring() = default;

  virtual const F& field() const = 0;
  // Largest materialised degree; 0 for finite-dimensional ungraded rings.
  virtual int degree_bound() const = 0;
  virtual std::size_t dim(int d) const = 0;
  virtual std::size_t num_generators() const = 0;
  virtual int generator_degree(std::size_t g) const = 0;
  virtual std::string generator_name(std::size_t g) const = 0;
  // Connected graded rings use minimal (A+-quotient) generator selection.
  virtual bool connected_graded() const = 0;

  // generator g times basis element (d, i); lies in degree d + deg g.
  virtual const Vec& gen_times_basis(std::size_t g, int d, std::size_t i) const = 0;
  // basis element (d, i) times generator g.
  virtual const Vec& basis_times_gen(int d, std::size_t i, std::size_t g) const = 0;
  // (d, i) = generator * (rest_degree, rest_index), or nullopt for the unit.
  virtual std::optional<Factorization> factor(int d, std::size_t i) const = 0;
  virtual value_type augmentation(int d, std::size_t i) const = 0;
  virtual std::string basis_label(int d, std::size_t i) const = 0;
  virtual std::size_t unit_index() const { return 0; }
  // The generator as a ring element of degree deg g.
  virtual Vec generator_element(std::size_t g) const = 0;

  std::string describe_element(int d, const Vec& v) const {
    if (v.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::string c = field().to_string(v[k].value);
      bool neg = c[0] == '-';
      if (neg) c = c.substr(1);
      s += k == 0 ? (neg ? "-" : "") : (neg ? " - " : " + ");
      std::string label = basis_label(d, v[k].index);
      if (label == "1") {
        s += c;
      } else {
        s += (c == "1" ? "" : c + "*") + label;
      }
    }
    return s;
  }

  // g * v for v in degree d.
  Vec gen_times(std::size_t g, int d, const Vec& v) const {
    std::vector<Entry<value_type>> terms;
    for (const auto& e : v)
      for (const auto& t : gen_times_basis(g, d, e.index)) terms.push_back({t.index, field().mul(e.value, t.value)});
    return collect(field(), std::move(terms));
  }

  Vec times_gen(int d, const Vec& v, std::size_t g) const {
    std::vector<Entry<value_type>> terms;
    for (const auto& e : v)
      for (const auto& t : basis_times_gen(d, e.index, g)) terms.push_back({t.index, field().mul(e.value, t.value)});
    return collect(field(), std::move(terms));
  }

  // basis (d1, i) times an element of degree d2.
  Vec basis_times(int d1, std::size_t i, int d2, const Vec& v) const {
    auto f = factor(d1, i);
    if (!f) return v;
    Vec inner = basis_times(f->rest_degree, f->rest_index, d2, v);
    return gen_times(f->generator, f->rest_degree + d2, inner);
  }

  // a * b for homogeneous elements.
  RingElement<F> multiply(const RingElement<F>& a, const RingElement<F>& b) const {
    int d = a.degree + b.degree;
    if (d > degree_bound()) throw TruncationError(d, degree_bound());
    Vec out;
    for (const auto& e : a.coords) out = axpy(field(), out, e.value, basis_times(a.degree, e.index, b.degree, b.coords));
    return {d, std::move(out)};
  }

  value_type augment(const RingElement<F>& a) const {
    value_type s = field().zero();
    for (const auto& e : a.coords) s = field().add(s, field().mul(e.value, augmentation(a.degree, e.index)));
    return s;
  }

  RingElement<F> unit() const { return {0, unit_vector(field(), static_cast<std::uint32_t>(unit_index()))}; }
};

template <Field F>
using RingPtr = std::shared_ptr<const Ring<F>>;

}  // namespace fpn
