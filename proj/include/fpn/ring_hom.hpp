#pragma once

// Degree-preserving unital ring homomorphisms given on generators, and ring
// retractions (rho, iota) with rho * iota = id.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/module.hpp"
#include "fpn/ring.hpp"

namespace fpn {

template <Field F>
class RingHom {
 public:
  using Vec = SparseVec<F>;

  // images[g] is the image of source generator g, an element of the target
  // of degree deg g.  The map on a basis element x * w is phi(x) * phi(w).
  RingHom(RingPtr<F> source, RingPtr<F> target, std::vector<Vec> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->num_generators()) throw ValidationError("one image per generator is required");
    if (target_->degree_bound() < source_->degree_bound())
      throw ValidationError("target is materialised to a smaller degree than the source");
    for (std::size_t g = 0; g < images_.size(); ++g) {
      int d = source_->generator_degree(g);
      if (d > source_->degree_bound()) continue;
      for (const auto& e : images_[g])
        if (e.index >= target_->dim(d))
          throw ValidationError("image of generator " + source_->generator_name(g) + " is not homogeneous of degree " + std::to_string(d));
    }
    const F& field = source_->field();
    int D = source_->degree_bound();
    maps_.assign(D + 1, {});
    for (int d = 0; d <= D; ++d) {
      maps_[d].rows = target_->dim(d);
      maps_[d].columns.resize(source_->dim(d));
      for (std::size_t i = 0; i < source_->dim(d); ++i) {
        auto f = source_->factor(d, i);
        if (!f) {
          maps_[d].columns[i] = unit_vector(field, static_cast<std::uint32_t>(target_->unit_index()));
          continue;
        }
        int dg = source_->generator_degree(f->generator);
        RingElement<F> x{dg, images_[f->generator]};
        RingElement<F> w{f->rest_degree, maps_[f->rest_degree].columns[f->rest_index]};
        maps_[d].columns[i] = target_->multiply(x, w).coords;
      }
    }
  }

  const Ring<F>& source() const { return *source_; }
  const Ring<F>& target() const { return *target_; }
  const RingPtr<F>& source_ptr() const { return source_; }
  const RingPtr<F>& target_ptr() const { return target_; }
  const std::vector<Vec>& images() const { return images_; }
  const LinearMap<F>& matrix(int d) const { return maps_.at(d); }
  const DegreeMaps<F>& matrices() const { return maps_; }

  Vec apply(int d, const Vec& v) const { return fpn::apply(source_->field(), maps_.at(d), v); }
  RingElement<F> operator()(const RingElement<F>& a) const { return {a.degree, apply(a.degree, a.coords)}; }

  // A description of the first failure of phi(x * b) = phi(x) * phi(b).
  std::optional<std::string> multiplicativity_violation() const {
    const F& field = source_->field();
    int D = source_->degree_bound();
    for (std::size_t g = 0; g < source_->num_generators(); ++g) {
      int dg = source_->generator_degree(g);
      for (int d = 0; d + dg <= D; ++d)
        for (std::size_t i = 0; i < source_->dim(d); ++i) {
          Vec lhs = apply(d + dg, source_->gen_times_basis(g, d, i));
          Vec rhs = target_->multiply({dg, images_[g]}, {d, maps_[d].columns[i]}).coords;
          if (!equal(field, lhs, rhs))
            return "not multiplicative on " + source_->generator_name(g) + " * " + source_->basis_label(d, i);
        }
    }
    return std::nullopt;
  }

  // Augmentation compatibility: eps_target(phi(b)) = eps_source(b) on every basis element.
  bool preserves_augmentation() const {
    const F& field = source_->field();
    for (int d = 0; d <= source_->degree_bound(); ++d)
      for (std::size_t i = 0; i < source_->dim(d); ++i)
        if (!field.equal(target_->augment({d, maps_[d].columns[i]}), source_->augmentation(d, i))) return false;
    return true;
  }

 private:
  RingPtr<F> source_;
  RingPtr<F> target_;
  std::vector<Vec> images_;
  DegreeMaps<F> maps_;
};

// rho: R -> S with section iota: S -> R.
template <Field F>
struct RingRetraction {
  using Vec = SparseVec<F>;

  RingHom<F> rho;
  RingHom<F> iota;

  const Ring<F>& big() const { return rho.source(); }
  const Ring<F>& small() const { return rho.target(); }
  const RingPtr<F>& big_ptr() const { return rho.source_ptr(); }
  const RingPtr<F>& small_ptr() const { return rho.target_ptr(); }

  // Throws ValidationError naming a witness when an axiom fails.
  void validate() const {
    if (&rho.source() != &iota.target() || &rho.target() != &iota.source())
      throw ValidationError("retraction and section are not between the same rings");
    if (auto w = rho.multiplicativity_violation()) throw ValidationError("retraction " + *w);
    if (auto w = iota.multiplicativity_violation()) throw ValidationError("section " + *w);
    const Ring<F>& S = small();
    const F& field = S.field();
    // Generators first so the witness is a generator when one exists.
    for (std::size_t g = 0; g < S.num_generators(); ++g) {
      int d = S.generator_degree(g);
      if (d > S.degree_bound()) continue;
      Vec x = S.generator_element(g);
      Vec back = rho.apply(d, iota.apply(d, x));
      if (!equal(field, back, x))
        throw ValidationError("rho(iota(" + S.generator_name(g) + ")) = " + S.describe_element(d, back) + ", not " +
                              S.generator_name(g));
    }
    for (int d = 0; d <= S.degree_bound(); ++d)
      for (std::size_t i = 0; i < S.dim(d); ++i) {
        Vec x = unit_vector(field, static_cast<std::uint32_t>(i));
        if (!equal(field, rho.apply(d, iota.apply(d, x)), x))
          throw ValidationError("rho(iota(" + S.basis_label(d, i) + ")) != " + S.basis_label(d, i));
      }
  }

  bool augmented() const { return rho.preserves_augmentation() && iota.preserves_augmentation(); }
};

}  // namespace fpn
