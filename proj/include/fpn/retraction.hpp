#pragma once

// Retractive pairs over a ring retraction R -> S, their kernel and image
// pairs, and the twin resolutions that carry a resolution of M over R to a
// resolution of L over S.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/enveloping.hpp"
#include "fpn/resolution.hpp"
#include "fpn/ring_hom.hpp"

namespace fpn {

template <Field F>
using RetractionPtr = std::shared_ptr<const RingRetraction<F>>;

// M over R, L over S, alpha+ : M -> L and alpha- : L -> M degreewise.  When
// sub_M / sub_L are set the pair is their restriction.
template <Field F>
struct RetractivePair {
  using Vec = SparseVec<F>;

  RetractionPtr<F> retraction;
  ModulePtr<F> M;
  ModulePtr<F> L;
  DegreeMaps<F> plus;
  DegreeMaps<F> minus;
  std::optional<Submodule<F>> sub_M;
  std::optional<Submodule<F>> sub_L;

  int degree_bound() const { return M->degree_bound(); }

  std::vector<Vec> basis_M(int d) const {
    if (sub_M) return sub_M->basis(d);
    std::vector<Vec> out;
    for (std::uint32_t i = 0; i < M->dim(d); ++i) out.push_back(unit_vector(M->field(), i));
    return out;
  }
  std::vector<Vec> basis_L(int d) const {
    if (sub_L) return sub_L->basis(d);
    std::vector<Vec> out;
    for (std::uint32_t i = 0; i < L->dim(d); ++i) out.push_back(unit_vector(L->field(), i));
    return out;
  }
  std::size_t dim_L(int d) const { return sub_L ? sub_L->dim(d) : L->dim(d); }

  // Throws ValidationError naming the first failing identity.
  void validate() const {
    const F& field = M->field();
    const auto& rho = retraction->rho;
    const auto& iota = retraction->iota;
    const Ring<F>& R = M->ring();
    const Ring<F>& S = L->ring();
    if (&R != &retraction->big() || &S != &retraction->small()) throw ValidationError("pair modules are not over the retraction's rings");
    int D = degree_bound();
    for (int d = 0; d <= D; ++d) {
      for (const auto& l : basis_L(d)) {
        auto m = apply(field, minus[d], l);
        if (!equal(field, apply(field, plus[d], m), l))
          throw ValidationError("alpha+ alpha- != id in degree " + std::to_string(d));
        if (sub_M && !sub_M->contains(d, m)) throw ValidationError("alpha- leaves the submodule in degree " + std::to_string(d));
        for (std::size_t s = 0; s < S.num_generators(); ++s) {
          int ds = S.generator_degree(s);
          if (d + ds > D) continue;
          auto lhs = apply(field, minus[d + ds], L->act_gen(s, d, l));
          auto rhs = act(*M, iota({ds, S.generator_element(s)}), d, m);
          if (!equal(field, lhs, rhs))
            throw ValidationError("alpha- is not S-linear for " + S.generator_name(s) + " in degree " + std::to_string(d));
        }
      }
      for (const auto& m : basis_M(d)) {
        auto l = apply(field, plus[d], m);
        if (sub_L && !sub_L->contains(d, l)) throw ValidationError("alpha+ leaves the submodule in degree " + std::to_string(d));
        for (std::size_t x = 0; x < R.num_generators(); ++x) {
          int dx = R.generator_degree(x);
          if (d + dx > D) continue;
          auto lhs = apply(field, plus[d + dx], M->act_gen(x, d, m));
          auto rhs = act(*L, RingElement<F>{dx, rho.images()[x]}, d, l);
          if (!equal(field, lhs, rhs))
            throw ValidationError("alpha+ is not R-linear for " + R.generator_name(x) + " in degree " + std::to_string(d));
        }
      }
    }
  }
};

template <Field F>
using PairPtr = std::shared_ptr<const RetractivePair<F>>;

// (phi, psi) from the source pair (alpha) to the target pair (beta).
template <Field F>
struct PairMap {
  PairPtr<F> source;
  PairPtr<F> target;
  DegreeMaps<F> phi;  // source.M -> target.M
  DegreeMaps<F> psi;  // source.L -> target.L

  // beta+ phi = psi alpha+ on M and beta- psi = phi alpha- on L.
  std::optional<std::string> violation() const {
    const F& field = source->M->field();
    for (int d = 0; d <= source->degree_bound(); ++d) {
      for (const auto& m : source->basis_M(d))
        if (!equal(field, apply(field, target->plus[d], apply(field, phi[d], m)),
                   apply(field, psi[d], apply(field, source->plus[d], m))))
          return "beta+ phi != psi alpha+ in degree " + std::to_string(d);
      for (const auto& l : source->basis_L(d))
        if (!equal(field, apply(field, target->minus[d], apply(field, psi[d], l)),
                   apply(field, phi[d], apply(field, source->minus[d], l))))
          return "beta- psi != phi alpha- in degree " + std::to_string(d);
    }
    return std::nullopt;
  }
};

namespace detail {

// Kernel of f restricted to the given basis, as a submodule of the ambient module.
template <Field F>
Submodule<F> restricted_kernel(ModulePtr<F> ambient, const DegreeMaps<F>& f, const std::function<std::vector<SparseVec<F>>(int)>& basis) {
  Submodule<F> out(ambient);
  const F& field = ambient->field();
  for (int d = 0; d <= ambient->degree_bound(); ++d) {
    auto b = basis(d);
    LinearMap<F> m{f[d].rows, {}};
    for (const auto& v : b) m.columns.push_back(apply(field, f[d], v));
    for (const auto& c : kernel(field, m)) {
      SparseVec<F> v;
      for (const auto& e : c) v = axpy(field, v, e.value, b[e.index]);
      out.insert(d, std::move(v));
    }
  }
  return out;
}

}  // namespace detail

// The pair (Ker phi, Ker psi) with the restricted maps of the source pair.
template <Field F>
RetractivePair<F> pair_kernel(const PairMap<F>& pm) {
  const auto& src = *pm.source;
  RetractivePair<F> out{src.retraction, src.M, src.L, src.plus, src.minus, std::nullopt, std::nullopt};
  out.sub_M = detail::restricted_kernel<F>(src.M, pm.phi, [&](int d) { return src.basis_M(d); });
  out.sub_L = detail::restricted_kernel<F>(src.L, pm.psi, [&](int d) { return src.basis_L(d); });
  out.validate();
  return out;
}

// The pair (Im phi, Im psi) inside the target pair.
template <Field F>
RetractivePair<F> pair_image(const PairMap<F>& pm) {
  const auto& src = *pm.source;
  const auto& tgt = *pm.target;
  const F& field = tgt.M->field();
  RetractivePair<F> out{tgt.retraction, tgt.M, tgt.L, tgt.plus, tgt.minus, Submodule<F>(tgt.M), Submodule<F>(tgt.L)};
  for (int d = 0; d <= tgt.degree_bound(); ++d) {
    for (const auto& m : src.basis_M(d)) out.sub_M->insert(d, apply(field, pm.phi[d], m));
    for (const auto& l : src.basis_L(d)) out.sub_L->insert(d, apply(field, pm.psi[d], l));
  }
  out.validate();
  return out;
}

template <Field F>
struct Proposition1Step {
  PairPtr<F> free_pair;  // (P, F) with beta+ and beta-
  PairMap<F> map;        // (d_top, d_bottom) from free_pair to the input pair
  GradedMap<F> top;      // P -> M
  GradedMap<F> bottom;   // F -> L
};

// P = (sum R e) + (sum R e') of rank 2|gens|, F = sum S e-bar of rank |gens|,
//   d(e) = a- a+ m,  d(e') = m - a- a+ m,  delta(e-bar) = a+ m,
//   b+(w e) = rho(w) e-bar,  b+(e') = 0,  b-(s e-bar) = iota(s) e.
template <Field F>
Proposition1Step<F> proposition1_step(PairPtr<F> pair, const std::vector<ModuleElement<F>>& gens) {
  const auto& ret = *pair->retraction;
  const RingPtr<F>& R = ret.big_ptr();
  const RingPtr<F>& S = ret.small_ptr();
  const F& field = R->field();
  int D = pair->degree_bound();
  std::size_t n = gens.size();
  std::vector<int> degs, pdegs;
  std::vector<SparseVec<F>> top_images(2 * n), bottom_images(n);
  for (const auto& g : gens) degs.push_back(g.degree);
  pdegs = degs;
  pdegs.insert(pdegs.end(), degs.begin(), degs.end());
  for (std::size_t k = 0; k < n; ++k) {
    int d = gens[k].degree;
    if (d > D) continue;
    auto ap = apply(field, pair->plus[d], gens[k].coords);
    auto amap = apply(field, pair->minus[d], ap);
    top_images[k] = amap;
    top_images[n + k] = sub(field, gens[k].coords, amap);
    bottom_images[k] = ap;
  }
  auto P = FreeModule<F>::make(R, pdegs);
  auto Fb = FreeModule<F>::make(S, degs);
  GradedMap<F> top(P, pair->M, std::move(top_images));
  GradedMap<F> bottom(Fb, pair->L, std::move(bottom_images));

  // The generators must generate M (or the restricted submodule).
  for (int d = 0; d <= D; ++d) {
    Span<F> im(field, pair->M->dim(d));
    for (const auto& c : top.matrix(d).columns) im.insert(c);
    std::size_t want = pair->sub_M ? pair->sub_M->dim(d) : pair->M->dim(d);
    if (im.rank() != want)
      throw ValidationError("generators do not generate M: a quotient of dimension " + std::to_string(want - im.rank()) +
                            " is unreached in degree " + std::to_string(d));
  }

  DegreeMaps<F> bplus(D + 1), bminus(D + 1);
  for (int d = 0; d <= D; ++d) {
    bplus[d].rows = Fb->dim(d);
    bplus[d].columns.assign(P->dim(d), {});
    bminus[d].rows = P->dim(d);
    bminus[d].columns.assign(Fb->dim(d), {});
    for (std::size_t k = 0; k < n; ++k) {
      int rd = d - degs[k];
      if (rd < 0) continue;
      for (std::size_t i = 0; i < R->dim(rd); ++i) {
        SparseVec<F> col;
        append_shifted<F>(col, ret.rho.matrix(rd).columns[i], static_cast<std::uint32_t>(Fb->offset(d, k)));
        bplus[d].columns[P->index(d, k, i)] = std::move(col);
      }
      for (std::size_t i = 0; i < S->dim(rd); ++i) {
        SparseVec<F> col;
        append_shifted<F>(col, ret.iota.matrix(rd).columns[i], static_cast<std::uint32_t>(P->offset(d, k)));
        bminus[d].columns[Fb->index(d, k, i)] = std::move(col);
      }
    }
  }
  auto free_pair = std::make_shared<const RetractivePair<F>>(
      RetractivePair<F>{pair->retraction, P, Fb, std::move(bplus), std::move(bminus), std::nullopt, std::nullopt});
  free_pair->validate();
  PairMap<F> pm{free_pair, pair, top.matrices(), bottom.matrices()};
  if (auto w = pm.violation()) throw ValidationError("pair map squares fail: " + *w);
  return {free_pair, std::move(pm), std::move(top), std::move(bottom)};
}

template <Field F>
struct TwinResolution {
  PartialFreeResolution<F> top;     // over R, resolving M
  PartialFreeResolution<F> bottom;  // over S, resolving L
  std::vector<std::size_t> generator_counts;
};

// Steps 0..n, each on the kernel pair of the previous step with generators
// of the top kernel (minimal over connected graded rings, greedy otherwise).
template <Field F>
TwinResolution<F> proposition1_resolve(PairPtr<F> pair, int n, Side side = Side::left, TargetKind kind = TargetKind::trivial) {
  pair->validate();
  const auto& ret = *pair->retraction;
  TwinResolution<F> out{{side, kind, ret.big_ptr(), pair->M, {}, {}}, {side, kind, ret.small_ptr(), pair->L, {}, {}}, {}};
  PairPtr<F> current = pair;
  auto gens = minimal_generators(current->sub_M ? *current->sub_M : Submodule<F>::whole(current->M));
  for (int i = 0; i <= n; ++i) {
    auto step = proposition1_step(current, gens);
    out.generator_counts.push_back(gens.size());
    out.top.terms.push_back(step.top.source_ptr());
    out.top.maps.push_back(step.top);
    out.bottom.terms.push_back(step.bottom.source_ptr());
    out.bottom.maps.push_back(step.bottom);
    if (i == n) break;
    current = std::make_shared<const RetractivePair<F>>(pair_kernel(step.map));
    gens = minimal_generators(*current->sub_M);
  }
  return out;
}

// The identity pair K <-> K over an augmented retraction.
template <Field F>
PairPtr<F> trivial_pair(RetractionPtr<F> ret) {
  if (!ret->augmented()) throw ValidationError("transport of K needs an augmented retraction");
  const F& field = ret->big().field();
  DegreeMaps<F> id(ret->big().degree_bound() + 1);
  for (std::size_t d = 0; d < id.size(); ++d) id[d].rows = d == 0 ? 1 : 0;
  id[0].columns = {unit_vector(field, 0)};
  return std::make_shared<const RetractivePair<F>>(RetractivePair<F>{
      ret, TrivialModule<F>::make(ret->big_ptr()), TrivialModule<F>::make(ret->small_ptr()), id, id, std::nullopt, std::nullopt});
}

template <Field F>
struct TransportResult {
  TwinResolution<F> twin;
  ExactnessReport top_exactness;
  ExactnessReport bottom_exactness;
  bool rank_law = true;  // top rank = 2 * generators, bottom rank = generators
  VerdictRecord verdict;  // for L
};

// Runs the twin construction and certifies the bottom row.  The verdict for L
// follows the top row's boundary pattern: generators of the top kernels at
// the cutoff degree make it inconclusive.
template <Field F>
TransportResult<F> transport_fpn(PairPtr<F> pair, int n, Side side = Side::left, TargetKind kind = TargetKind::trivial) {
  TransportResult<F> out{proposition1_resolve(pair, n, side, kind), {}, {}, true, {}};
  out.top_exactness = check_exactness(out.twin.top);
  out.bottom_exactness = check_exactness(out.twin.bottom);
  for (int i = 0; i <= n; ++i) {
    std::size_t g = out.twin.generator_counts[i];
    if (out.twin.top.terms[i]->rank() != 2 * g || out.twin.bottom.terms[i]->rank() != g) out.rank_law = false;
  }
  auto top_verdict = fpn_verdict(out.twin.top, n);
  out.verdict = fpn_verdict(out.twin.bottom, n);
  out.verdict.verdict = top_verdict.verdict == Verdict::certified && out.bottom_exactness.ok() ? Verdict::certified : Verdict::inconclusive;
  if (top_verdict.verdict != Verdict::certified) out.verdict.reason = "top row: " + top_verdict.reason;
  return out;
}

// Transport of K along an augmented retraction.
template <Field F>
TransportResult<F> transport_trivial(RetractionPtr<F> ret, int n, Side side = Side::left) {
  return transport_fpn(trivial_pair(std::move(ret)), n, side, TargetKind::trivial);
}

// A graded retraction A -> D given by generator images.
template <Field F>
RingRetraction<F> graded_retraction(RingPtr<F> big, RingPtr<F> small, std::vector<SparseVec<F>> rho_images,
                                    std::vector<SparseVec<F>> iota_images) {
  RingRetraction<F> r{RingHom<F>(big, small, std::move(rho_images)), RingHom<F>(small, big, std::move(iota_images))};
  r.validate();
  return r;
}

// The retraction E_A -> E_D induced by A -> D: x (x) 1 -> rho(x) (x) 1 and
// 1 (x) x^opp -> 1 (x) rho(x)^opp, with the section built the same way.
template <Field F>
RingRetraction<F> enveloping_retraction(const Enveloping<F>& big, const Enveloping<F>& small, const RingRetraction<F>& r) {
  auto induced = [](const Enveloping<F>& from, const Enveloping<F>& to, const RingHom<F>& h) {
    auto src = std::dynamic_pointer_cast<const GradedAlgebra<F>>(from.A);
    auto tgt = std::dynamic_pointer_cast<const GradedAlgebra<F>>(to.A);
    auto tgt_op = std::dynamic_pointer_cast<const GradedAlgebra<F>>(to.Aop);
    if (!src || !tgt || !tgt_op) throw Unsupported("induced enveloping retractions need graded algebras");
    std::vector<SparseVec<F>> images;
    std::size_t n = src->num_generators();
    for (std::size_t g = 0; g < n; ++g) {
      int d = src->generator_degree(g);
      images.push_back(to.left.apply(d, h.images()[g]));
    }
    for (std::size_t g = 0; g < n; ++g) {
      int d = src->generator_degree(g);
      // h(x)^opp: the same polynomial read backwards in the opposite algebra.
      auto p = tgt->to_poly({d, h.images()[g]});
      auto q = tgt_op->element(p.reversed());
      images.push_back(to.right.apply(d, q.coords));
    }
    return RingHom<F>(from.E, to.E, std::move(images));
  };
  RingRetraction<F> out{induced(big, small, r.rho), induced(small, big, r.iota)};
  out.validate();
  return out;
}

// The pair (A as E_A-module, D as E_D-module) with alpha+ = rho and alpha- = iota.
template <Field F>
PairPtr<F> algebra_pair(RetractionPtr<F> env_ret, const Enveloping<F>& big, const Enveloping<F>& small, const RingRetraction<F>& r) {
  return std::make_shared<const RetractivePair<F>>(RetractivePair<F>{
      std::move(env_ret), algebra_as_E_module(big), algebra_as_E_module(small), r.rho.matrices(), r.iota.matrices(), std::nullopt, std::nullopt});
}

}  // namespace fpn
