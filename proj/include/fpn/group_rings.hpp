#pragma once

// Finite group and monoid algebras: resolutions of K, transport of left
// resolutions to right ones along an involution, the twisted tensor
// M (x)^ KG and the conversion of left resolutions of K into bimodule
// resolutions of KG.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/enveloping.hpp"
#include "fpn/monoid.hpp"
#include "fpn/resolution.hpp"

namespace fpn {

// A resolution of K over KB by greedy closure generators.
template <Field F>
PartialFreeResolution<F> left_resolution_K(RingPtr<F> KB, int n) {
  return build_resolution(KB, ModulePtr<F>(TrivialModule<F>::make(KB)), n, Side::left, TargetKind::trivial);
}

// The ring hom KB -> KC induced by a monoid hom given elementwise.
template <Field F>
RingHom<F> monoid_ring_hom(MonoidAlgebraPtr<F> B, MonoidAlgebraPtr<F> C, const std::vector<std::size_t>& map) {
  if (map.size() != B->monoid().size() || map[0] != 0) throw ValidationError("monoid map must send the identity to the identity");
  std::vector<SparseVec<F>> images;
  for (std::size_t b = 1; b < map.size(); ++b) images.push_back(unit_vector(B->field(), static_cast<std::uint32_t>(map[b])));
  return RingHom<F>(B, C, std::move(images));
}

// Rewrites a resolution over KB as one over KB^opp (left <-> right) through
// b -> b*.  A basis element b e_k becomes b* e_k.
template <Field F>
PartialFreeResolution<F> involution_transport(const PartialFreeResolution<F>& res, const Involution& star) {
  auto KB = std::dynamic_pointer_cast<const MonoidAlgebra<F>>(res.ring);
  if (!KB) throw Unsupported("involution transport needs a monoid algebra");
  const FiniteMonoid& B = KB->monoid();
  if (auto w = involution_violation(B, star)) {
    auto [b, c] = *w;
    if (b == c && star[star[b]] != b) throw ValidationError("not an involution: (" + B.name(b) + "*)* != " + B.name(b));
    throw ValidationError("not an anti-automorphism: (" + B.name(b) + "*" + B.name(c) + ")* != " + B.name(c) + "* " + B.name(b) + "*");
  }
  if (res.target_kind != TargetKind::trivial) throw Unsupported("involution transport applies to resolutions of K");
  std::size_t n = B.size();
  auto KBop = MonoidAlgebra<F>::make(KB->field(), B.opposite());
  Side side = res.side == Side::left ? Side::right : Side::left;
  PartialFreeResolution<F> out{side, TargetKind::trivial, KBop, TrivialModule<F>::make(KBop), {}, {}};
  for (int i = 0; i <= res.length(); ++i) {
    auto Fi = FreeModule<F>::make(KBop, res.terms[i]->generator_degrees());
    std::vector<SparseVec<F>> images;
    for (const auto& v : res.maps[i].images()) {
      if (i == 0) {
        images.push_back(v);
        continue;
      }
      std::vector<Entry<typename F::value_type>> terms;
      for (const auto& e : v) terms.push_back({static_cast<std::uint32_t>((e.index / n) * n + star[e.index % n]), e.value});
      images.push_back(collect(KB->field(), std::move(terms)));
    }
    ModulePtr<F> tgt = i == 0 ? out.target : ModulePtr<F>(out.terms.back());
    out.maps.emplace_back(Fi, tgt, std::move(images));
    out.terms.push_back(Fi);
  }
  return out;
}

namespace detail {

template <Field F>
const MonoidAlgebra<F>& group_algebra_of(const Enveloping<F>& env) {
  auto KG = std::dynamic_pointer_cast<const MonoidAlgebra<F>>(env.A);
  if (!KG) throw Unsupported("expected a group algebra");
  if (!KG->monoid().is_group())
    throw Unsupported("the monoid has elements without inverses; the inverse map g -> g^-1 used by alpha(g (x)^ h) = g (x) g^-1 h does not exist");
  return *KG;
}

}  // namespace detail

// M (x)^ KG over E = K[G x G^opp]: basis m_i (x) x has index i |G| + x and
// (g, h) (m (x) x) = g m (x) g x h.
template <Field F>
ModulePtr<F> hat_tensor(const Enveloping<F>& env, ModulePtr<F> M) {
  const auto& KG = detail::group_algebra_of(env);
  if (&M->ring() != env.A.get()) throw ValidationError("module is not over the group algebra");
  const FiniteMonoid& G = KG.monoid();
  std::size_t n = G.size();
  // Precompute g * e_i in M for every group element g and basis index i.
  std::size_t dm = M->dim(0);
  auto left = std::make_shared<std::vector<std::vector<SparseVec<F>>>>(n, std::vector<SparseVec<F>>(dm));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t i = 0; i < dm; ++i) (*left)[g][i] = act_basis(*M, 0, g, 0, unit_vector(M->field(), static_cast<std::uint32_t>(i)));
  FiniteMonoid Gc = G;
  F field = M->field();
  auto action = [left, Gc, n, field](std::size_t k, int, const SparseVec<F>& v) {
    std::size_t g = (k + 1) / n, h = (k + 1) % n;
    std::vector<Entry<typename F::value_type>> terms;
    for (const auto& e : v) {
      std::size_t i = e.index / n, x = e.index % n;
      std::size_t y = Gc.mul(Gc.mul(g, x), h);
      for (const auto& t : (*left)[g][i]) terms.push_back({static_cast<std::uint32_t>(t.index * n + y), field.mul(e.value, t.value)});
    }
    return collect(field, std::move(terms));
  };
  return std::make_shared<const ActionModule<F>>(env.E, std::vector<std::size_t>{dm * n}, action, "t");
}

// Verdict of an exhaustive identity check.
struct CheckReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void record(bool good, const std::string& what) {
    ++checked;
    if (!good && failures.size() < 20) failures.push_back(what);
  }
};

// beta(g (x) h) = g (x)^ g h and alpha(g (x)^ h) = g (x) g^-1 h between the
// free bimodule KG (x) KG and KG (x)^ KG, and theta: K (x)^ KG -> KG.
template <Field F>
CheckReport lemma3_check(const Enveloping<F>& env) {
  const auto& KG = detail::group_algebra_of(env);
  const FiniteMonoid& G = KG.monoid();
  const F& field = KG.field();
  std::size_t n = G.size();
  CheckReport rep;
  auto free = to_left_E_module(env, free_bimodule(env.A));                                  // index g n + h = g (x) h
  auto hat = hat_tensor(env, ModulePtr<F>(regular_module(env.A)));                          // index g n + h = g (x)^ h
  auto khat = hat_tensor(env, ModulePtr<F>(TrivialModule<F>::make(env.A)));                 // index x = 1 (x)^ x
  auto KGmod = algebra_as_E_module(env);                                                    // index x
  auto beta = [&](std::size_t idx) { std::size_t g = idx / n, h = idx % n; return g * n + G.mul(g, h); };
  auto alpha = [&](std::size_t idx) { std::size_t g = idx / n, h = idx % n; return g * n + G.mul(*G.inverse(g), h); };
  auto map_vec = [&](const SparseVec<F>& v, auto f) {
    std::vector<Entry<typename F::value_type>> t;
    for (const auto& e : v) t.push_back({static_cast<std::uint32_t>(f(e.index)), e.value});
    return collect(field, std::move(t));
  };
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    std::string at = G.name(idx / n) + " (x) " + G.name(idx % n);
    rep.record(alpha(beta(idx)) == idx, "alpha beta != id on " + at);
    rep.record(beta(alpha(idx)) == idx, "beta alpha != id on " + at);
  }
  // Equivariance on every (x, basis, y) triple; E-element (x, y) has index x n + y.
  for (std::size_t e = 0; e < n * n; ++e)
    for (std::size_t idx = 0; idx < n * n; ++idx) {
      auto v = unit_vector(field, static_cast<std::uint32_t>(idx));
      auto lhs = map_vec(act_basis(*free, 0, e, 0, v), beta);
      auto rhs = act_basis(*hat, 0, e, 0, map_vec(v, beta));
      rep.record(equal(field, lhs, rhs), "beta not equivariant for (" + G.name(e / n) + ", " + G.name(e % n) + ") on basis " +
                                             std::to_string(idx));
      auto la = map_vec(act_basis(*hat, 0, e, 0, v), alpha);
      auto ra = act_basis(*free, 0, e, 0, map_vec(v, alpha));
      rep.record(equal(field, la, ra), "alpha not equivariant for (" + G.name(e / n) + ", " + G.name(e % n) + ")");
    }
  // theta(k (x)^ x) = k x is the identity on indices.
  for (std::size_t e = 0; e < n * n; ++e)
    for (std::size_t x = 0; x < n; ++x) {
      auto v = unit_vector(field, static_cast<std::uint32_t>(x));
      rep.record(equal(field, act_basis(*khat, 0, e, 0, v), act_basis(*KGmod, 0, e, 0, v)),
                 "theta does not intertwine (" + G.name(e / n) + ", " + G.name(e % n) + ") on " + G.name(x));
    }
  return rep;
}

template <Field F>
struct Theorem2Result {
  PartialFreeResolution<F> bires;
  CheckReport checks;  // beta, alpha and d^ = alpha (d (x) id) beta on every term
};

// Left resolution of K over KG -> bimodule resolution of KG.  The generator
// e_s of degree i maps to sum lambda (b (x) (b^-1)^opp) e_r where
// d(e_s) = sum lambda b e_r; degree 0 goes to KG through theta.
template <Field F>
Theorem2Result<F> theorem2_biresolution(const Enveloping<F>& env, const PartialFreeResolution<F>& leftres) {
  const auto& KG = detail::group_algebra_of(env);
  if (leftres.ring != env.A) throw ValidationError("resolution is not over this group algebra");
  if (leftres.target_kind != TargetKind::trivial || leftres.side != Side::left)
    throw ValidationError("expected a left resolution of K");
  const FiniteMonoid& G = KG.monoid();
  const F& field = KG.field();
  std::size_t n = G.size(), nn = n * n;
  auto KGmod = algebra_as_E_module(env);
  PartialFreeResolution<F> out{Side::bi, TargetKind::algebra, env.E, KGmod, {}, {}};
  for (int i = 0; i <= leftres.length(); ++i) {
    const auto& P = *leftres.terms[i];
    auto Fi = FreeModule<F>::make(env.E, P.generator_degrees());
    std::vector<SparseVec<F>> images;
    for (const auto& v : leftres.maps[i].images()) {
      std::vector<Entry<typename F::value_type>> t;
      for (const auto& e : v) {
        if (i == 0) {
          t.push_back({0, e.value});
          continue;
        }
        std::size_t r = e.index / n, b = e.index % n;
        t.push_back({static_cast<std::uint32_t>(r * nn + b * n + *G.inverse(b)), e.value});
      }
      images.push_back(collect(field, std::move(t)));
    }
    ModulePtr<F> tgt = i == 0 ? ModulePtr<F>(KGmod) : ModulePtr<F>(out.terms.back());
    out.maps.emplace_back(Fi, tgt, std::move(images));
    out.terms.push_back(Fi);
  }

  // Independent check through the twisted tensor modules.
  CheckReport rep;
  auto beta = [&](std::size_t idx) {  // (g, h) e_s -> g e_s (x)^ g h
    std::size_t s = idx / nn, g = (idx % nn) / n, h = idx % n;
    return (s * n + g) * n + G.mul(g, h);
  };
  auto alpha = [&](std::size_t idx) {  // b e_s (x)^ x -> (b, b^-1 x) e_s
    std::size_t m = idx / n, x = idx % n, s = m / n, b = m % n;
    return s * nn + b * n + G.mul(*G.inverse(b), x);
  };
  for (int i = 0; i <= leftres.length(); ++i) {
    auto Pi = std::dynamic_pointer_cast<const FreeModule<F>>(leftres.terms[i]);
    auto H = hat_tensor(env, ModulePtr<F>(Pi));
    std::size_t dim = out.terms[i]->dim(0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      rep.record(alpha(beta(idx)) == idx, "alpha beta != id on F_" + std::to_string(i));
      rep.record(beta(alpha(idx)) == idx, "beta alpha != id on F_" + std::to_string(i));
    }
    // beta is E-linear: beta(e . v) = e . beta(v) on generators e of E.
    for (std::size_t k = 0; k < env.E->num_generators(); ++k)
      for (std::size_t idx = 0; idx < dim; ++idx) {
        auto v = unit_vector(field, static_cast<std::uint32_t>(idx));
        auto lhs = out.terms[i]->act_gen(k, 0, v);
        std::vector<Entry<typename F::value_type>> t;
        for (const auto& e : lhs) t.push_back({static_cast<std::uint32_t>(beta(e.index)), e.value});
        auto rhs = H->act_gen(k, 0, unit_vector(field, static_cast<std::uint32_t>(beta(idx))));
        rep.record(equal(field, collect(field, std::move(t)), rhs), "beta is not E-linear on F_" + std::to_string(i));
      }
    // d^_i = alpha (d_i (x) id) beta, or theta (d_0 (x) id) beta in degree 0.
    for (std::size_t idx = 0; idx < dim; ++idx) {
      auto lhs = out.maps[i].apply(0, unit_vector(field, static_cast<std::uint32_t>(idx)));
      std::size_t b = beta(idx), m = b / n, x = b % n;
      auto dm = leftres.maps[i].apply(0, unit_vector(field, static_cast<std::uint32_t>(m)));
      std::vector<Entry<typename F::value_type>> t;
      for (const auto& e : dm) {
        if (i == 0) {
          t.push_back({static_cast<std::uint32_t>(x), e.value});  // theta(k (x)^ x) = k x
        } else {
          t.push_back({static_cast<std::uint32_t>(alpha(e.index * n + x)), e.value});
        }
      }
      rep.record(equal(field, lhs, collect(field, std::move(t))), "differential mismatch on F_" + std::to_string(i));
    }
  }
  return {std::move(out), std::move(rep)};
}

}  // namespace fpn
