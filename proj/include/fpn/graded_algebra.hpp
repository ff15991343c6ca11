#pragma once

// A connected graded algebra A = K<X>/I materialised up to a degree cutoff:
// normal-word bases and the left/right multiplication tables by generators.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/groebner.hpp"
#include "fpn/ring.hpp"

namespace fpn {

template <Field F>
class GradedAlgebra final : public Ring<F> {
 public:
  using Vec = SparseVec<F>;
  using value_type = typename F::value_type;
  using Poly = NCPoly<F>;

  GradedAlgebra(const AlgebraPresentation<F>& pres, int D)
      : gb_(GroebnerBasis<F>::compute(pres, D)), basis_(gb_) {
    const Alphabet& alpha = *alphabet();
    left_.resize(alpha.size());
    right_.resize(alpha.size());
    for (std::size_t g = 0; g < alpha.size(); ++g) {
      int dg = alpha.degree(static_cast<std::uint32_t>(g));
      left_[g].resize(D + 1);
      right_[g].resize(D + 1);
      for (int d = 0; d + dg <= D; ++d) {
        for (const auto& w : basis_.words(d)) {
          Word gw{static_cast<std::uint32_t>(g)};
          left_[g][d].push_back(to_coords(gb_.normal_form(Poly::monomial(field(), alphabet(), concat(gw, w), field().one()))));
          right_[g][d].push_back(to_coords(gb_.normal_form(Poly::monomial(field(), alphabet(), concat(w, gw), field().one()))));
        }
      }
    }
  }

  static std::shared_ptr<const GradedAlgebra> make(const AlgebraPresentation<F>& pres, int D) {
    return std::make_shared<const GradedAlgebra>(pres, D);
  }

  const GroebnerBasis<F>& groebner() const { return gb_; }
  const NormalBasis& normal_basis() const { return basis_; }
  const AlgebraPresentation<F>& presentation() const { return gb_.presentation(); }
  const AlphabetPtr& alphabet() const { return gb_.alphabet(); }
  std::vector<std::size_t> hilbert_series() const { return basis_.hilbert_series(); }

  const F& field() const override { return gb_.field(); }
  int degree_bound() const override { return gb_.degree_bound(); }
  std::size_t dim(int d) const override { return basis_.dim(d); }
  std::size_t num_generators() const override { return alphabet()->size(); }
  int generator_degree(std::size_t g) const override { return (*alphabet())[g].degree; }
  std::string generator_name(std::size_t g) const override { return (*alphabet())[g].name; }
  bool connected_graded() const override { return true; }

  const Vec& gen_times_basis(std::size_t g, int d, std::size_t i) const override {
    check_degree(d + generator_degree(g));
    return left_[g][d][i];
  }
  const Vec& basis_times_gen(int d, std::size_t i, std::size_t g) const override {
    check_degree(d + generator_degree(g));
    return right_[g][d][i];
  }

  std::optional<Factorization> factor(int d, std::size_t i) const override {
    const Word& w = basis_.words(d)[i];
    if (w.empty()) return std::nullopt;
    Word rest(w.begin() + 1, w.end());
    int rd = d - generator_degree(w.front());
    return Factorization{w.front(), rd, *basis_.index_of(rest)};
  }

  value_type augmentation(int d, std::size_t) const override { return d == 0 ? field().one() : field().zero(); }
  std::string basis_label(int d, std::size_t i) const override { return word_to_string(*alphabet(), basis_.words(d)[i]); }
  Vec generator_element(std::size_t g) const override {
    return to_coords(gb_.normal_form(Poly::monomial(field(), alphabet(), Word{static_cast<std::uint32_t>(g)}, field().one())));
  }

  // Coordinates of a normal-form polynomial, which must be homogeneous.
  Vec to_coords(const Poly& nf) const {
    std::vector<Entry<value_type>> terms;
    for (const auto& [w, c] : nf.terms()) {
      auto idx = basis_.index_of(w);
      if (!idx) throw Error("word " + word_to_string(*alphabet(), w) + " is not normal");
      terms.push_back({static_cast<std::uint32_t>(*idx), c});
    }
    return collect(field(), std::move(terms));
  }

  // A homogeneous polynomial as a ring element (normal form taken first).
  RingElement<F> element(const Poly& p) const {
    if (p.is_zero()) return {0, {}};
    if (!p.is_homogeneous()) throw ValidationError("polynomial " + p.to_string() + " is not homogeneous");
    return {p.degree(), to_coords(gb_.normal_form(p))};
  }

  Poly to_poly(const RingElement<F>& a) const {
    Poly p(field(), alphabet());
    for (const auto& e : a.coords) p.add_term(basis_.words(a.degree)[e.index], e.value);
    return p;
  }

  Poly normal_form(const Poly& p) const { return gb_.normal_form(p); }

 private:
  void check_degree(int d) const {
    if (d > degree_bound()) throw TruncationError(d, degree_bound());
  }

  GroebnerBasis<F> gb_;
  NormalBasis basis_;
  // left_[g][d][i] = nf(g * w_i), right_[g][d][i] = nf(w_i * g)
  std::vector<std::vector<std::vector<Vec>>> left_;
  std::vector<std::vector<std::vector<Vec>>> right_;
};

template <Field F>
using GradedAlgebraPtr = std::shared_ptr<const GradedAlgebra<F>>;

}  // namespace fpn
