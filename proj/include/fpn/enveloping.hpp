#pragma once

// Opposite and enveloping algebras, bimodules as left modules over the
// enveloping algebra and back, and the retraction of E = A (x) A^opp onto A.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/graded_algebra.hpp"
#include "fpn/module.hpp"
#include "fpn/monoid.hpp"
#include "fpn/resolution.hpp"
#include "fpn/ring_hom.hpp"

namespace fpn {

// Same generators, every relation read backwards.
template <Field F>
AlgebraPresentation<F> opposite(const AlgebraPresentation<F>& pres) {
  AlgebraPresentation<F> out{pres.field, pres.alphabet, {}};
  for (const auto& r : pres.relations) out.relations.push_back(r.reversed());
  return out;
}

// Left and right parts of one generator of E: it acts as left multiplication
// by a generator of A followed by right multiplication by a generator of A.
struct EnvelopingGenerator {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
};

template <Field F>
struct Enveloping {
  RingPtr<F> A;
  RingPtr<F> Aop;
  RingPtr<F> E;
  RingHom<F> left;                       // a -> a (x) 1
  RingHom<F> right;                      // b^opp -> 1 (x) b^opp, from Aop
  RingRetraction<F> retraction;          // rho(a (x) b^opp) = eps(b) a, iota = left
  std::vector<EnvelopingGenerator> generators;

  const RingRetraction<F>& env_retraction() const { return retraction; }
};

template <Field F>
std::vector<std::size_t> convolution(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, std::size_t len) {
  std::vector<std::size_t> out(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  return out;
}

// E presented on x (x) 1 (A's order) followed by 1 (x) x^opp, with A's
// relations, the reversed relations and all cross commutators; then
// completed to D and checked against the dimension convolution.
template <Field F>
Enveloping<F> graded_enveloping(const AlgebraPresentation<F>& pres, int D) {
  auto A = GradedAlgebra<F>::make(pres, D);
  auto Aop = GradedAlgebra<F>::make(opposite(pres), D);
  const Alphabet& alpha = *pres.alphabet;
  std::uint32_t n = static_cast<std::uint32_t>(alpha.size());
  std::vector<Generator> gens = alpha.generators();
  for (std::uint32_t g = 0; g < n; ++g) gens.push_back({alpha[g].name + ".op", alpha[g].degree});
  auto ealpha = std::make_shared<const Alphabet>(std::move(gens));
  AlgebraPresentation<F> epres{pres.field, ealpha, {}};
  auto shifted = [&](const NCPoly<F>& p, std::uint32_t shift) {
    NCPoly<F> q(pres.field, ealpha);
    for (const auto& [w, c] : p.terms()) {
      Word v = w;
      for (auto& l : v) l += shift;
      q.add_term(v, c);
    }
    return q;
  };
  for (const auto& r : pres.relations) epres.relations.push_back(shifted(r, 0));
  for (const auto& r : pres.relations) epres.relations.push_back(shifted(r.reversed(), n));
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      NCPoly<F> c(pres.field, ealpha);
      c.add_term({n + y, x}, pres.field.one());
      c.add_term({x, n + y}, pres.field.neg(pres.field.one()));
      epres.relations.push_back(std::move(c));
    }
  auto E = GradedAlgebra<F>::make(epres, D);
  auto expected = convolution<F>(A->hilbert_series(), A->hilbert_series(), D + 1);
  if (E->hilbert_series() != expected) throw Error("enveloping algebra dimensions differ from the convolution of A's");

  std::vector<SparseVec<F>> left_images, right_images, rho_images, iota_images;
  std::vector<EnvelopingGenerator> egens;
  for (std::uint32_t g = 0; g < n; ++g) {
    left_images.push_back(E->generator_element(g));
    right_images.push_back(E->generator_element(n + g));
  }
  for (std::uint32_t g = 0; g < 2 * n; ++g) {
    rho_images.push_back(g < n ? A->generator_element(g) : SparseVec<F>{});
    egens.push_back(g < n ? EnvelopingGenerator{g, std::nullopt} : EnvelopingGenerator{std::nullopt, g - n});
  }
  RingPtr<F> a = A, aop = Aop, e = E;
  RingHom<F> left(a, e, left_images);
  RingHom<F> right(aop, e, right_images);
  RingHom<F> rho(e, a, rho_images);
  return {a, aop, e, left, right, RingRetraction<F>{rho, left}, std::move(egens)};
}

// K[B x B^opp] for a finite monoid, with its retraction (b, c) -> b onto KB.
template <Field F>
Enveloping<F> monoid_enveloping(const F& field, const FiniteMonoid& B) {
  std::size_t n = B.size();
  auto A = MonoidAlgebra<F>::make(field, B);
  auto Aop = MonoidAlgebra<F>::make(field, B.opposite());
  auto E = MonoidAlgebra<F>::make(field, product(B, B.opposite()));
  std::vector<SparseVec<F>> left_images, right_images, rho_images;
  std::vector<EnvelopingGenerator> egens;
  auto elem = [&](std::size_t i) { return unit_vector(field, static_cast<std::uint32_t>(i)); };
  for (std::size_t b = 1; b < n; ++b) {
    left_images.push_back(elem(b * n));
    right_images.push_back(elem(b));
  }
  for (std::size_t x = 1; x < n * n; ++x) {
    std::size_t b = x / n, c = x % n;
    rho_images.push_back(elem(b));
    egens.push_back({b ? std::optional<std::size_t>(b - 1) : std::nullopt, c ? std::optional<std::size_t>(c - 1) : std::nullopt});
  }
  RingPtr<F> a = A, aop = Aop, e = E;
  RingHom<F> left(a, e, left_images);
  RingHom<F> right(aop, e, right_images);
  RingHom<F> rho(e, a, rho_images);
  return {a, aop, e, left, right, RingRetraction<F>{rho, left}, std::move(egens)};
}

// An A-bimodule: graded pieces with left and right actions of A's generators.
template <Field F>
struct BimoduleData {
  using Vec = SparseVec<F>;
  RingPtr<F> ring;
  std::vector<std::size_t> dims;
  std::function<Vec(std::size_t g, int d, const Vec& v)> left;   // g * v
  std::function<Vec(int d, const Vec& v, std::size_t g)> right;  // v * g

  std::size_t dim(int d) const { return d < 0 || d >= static_cast<int>(dims.size()) ? 0 : dims[d]; }
};

// The first (left generator, right generator, degree, basis index) with (g v) h != g (v h).
template <Field F>
void check_bimodule_axiom(const BimoduleData<F>& M) {
  const Ring<F>& A = *M.ring;
  const F& field = A.field();
  int D = A.degree_bound();
  for (int d = 0; d <= D; ++d)
    for (std::uint32_t i = 0; i < M.dim(d); ++i)
      for (std::size_t g = 0; g < A.num_generators(); ++g)
        for (std::size_t h = 0; h < A.num_generators(); ++h) {
          int dg = A.generator_degree(g), dh = A.generator_degree(h);
          if (d + dg + dh > D) continue;
          auto v = unit_vector(field, i);
          auto a = M.right(d + dg, M.left(g, d, v), h);
          auto b = M.left(g, d + dh, M.right(d, v, h));
          if (!equal(field, a, b))
            throw ValidationError("bimodule axiom fails: (" + A.generator_name(g) + " m) " + A.generator_name(h) + " != " +
                                  A.generator_name(g) + " (m " + A.generator_name(h) + ") for basis vector " + std::to_string(i) +
                                  " of degree " + std::to_string(d));
        }
}

// The functor from bimodules to left E-modules: (a (x) b^opp) m = a m b.
template <Field F>
ModulePtr<F> to_left_E_module(const Enveloping<F>& env, const BimoduleData<F>& M) {
  check_bimodule_axiom(M);
  auto gens = env.generators;
  auto left = M.left;
  auto right = M.right;
  RingPtr<F> A = env.A;
  auto action = [gens, left, right, A](std::size_t k, int d, const SparseVec<F>& v) {
    SparseVec<F> w = v;
    int dw = d;
    if (gens[k].left) {
      w = left(*gens[k].left, dw, w);
      dw += A->generator_degree(*gens[k].left);
    }
    if (gens[k].right) w = right(dw, w, *gens[k].right);
    return w;
  };
  return std::make_shared<const ActionModule<F>>(env.E, M.dims, action, "m");
}

// The inverse functor: a n = (a (x) 1) n and n b = (1 (x) b^opp) n.
template <Field F>
BimoduleData<F> from_left_E_module(const Enveloping<F>& env, ModulePtr<F> N) {
  using Vec = SparseVec<F>;
  BimoduleData<F> out;
  out.ring = env.A;
  out.dims = N->dims();
  const Ring<F>& A = *env.A;
  std::vector<RingElement<F>> lefts, rights;
  for (std::size_t g = 0; g < A.num_generators(); ++g) {
    int dg = A.generator_degree(g);
    lefts.push_back(env.left({dg, A.generator_element(g)}));
    rights.push_back(env.right({dg, env.Aop->generator_element(g)}));
  }
  out.left = [N, lefts](std::size_t g, int d, const Vec& v) { return act(*N, lefts[g], d, v); };
  out.right = [N, rights](int d, const Vec& v, std::size_t g) { return act(*N, rights[g], d, v); };
  return out;
}

// A as a bimodule over itself.
template <Field F>
BimoduleData<F> algebra_bimodule(RingPtr<F> A) {
  BimoduleData<F> out;
  out.ring = A;
  for (int d = 0; d <= A->degree_bound(); ++d) out.dims.push_back(A->dim(d));
  out.left = [A](std::size_t g, int d, const SparseVec<F>& v) { return A->gen_times(g, d, v); };
  out.right = [A](int d, const SparseVec<F>& v, std::size_t g) { return A->times_gen(d, v, g); };
  return out;
}

// K with both actions through the augmentation.
template <Field F>
BimoduleData<F> trivial_bimodule(RingPtr<F> A) {
  BimoduleData<F> out;
  out.ring = A;
  out.dims.assign(A->degree_bound() + 1, 0);
  out.dims[0] = 1;
  std::vector<typename F::value_type> eps;
  for (std::size_t g = 0; g < A->num_generators(); ++g)
    eps.push_back(A->generator_degree(g) == 0 ? A->augment({0, A->generator_element(g)}) : A->field().zero());
  out.left = [A, eps](std::size_t g, int d, const SparseVec<F>& v) {
    return d == 0 && A->generator_degree(g) == 0 ? scale(A->field(), eps[g], v) : SparseVec<F>{};
  };
  out.right = [A, eps](int d, const SparseVec<F>& v, std::size_t g) {
    return d == 0 && A->generator_degree(g) == 0 ? scale(A->field(), eps[g], v) : SparseVec<F>{};
  };
  return out;
}

// A (x)_K A, the free bimodule of rank 1.  Degree-d basis: pairs (p, i; q, j)
// with p + q = d, ordered by p, then i, then j.
template <Field F>
BimoduleData<F> free_bimodule(RingPtr<F> A) {
  int D = A->degree_bound();
  auto offsets = std::make_shared<std::vector<std::vector<std::size_t>>>(D + 1);
  BimoduleData<F> out;
  out.ring = A;
  for (int d = 0; d <= D; ++d) {
    std::size_t off = 0;
    for (int p = 0; p <= d; ++p) {
      (*offsets)[d].push_back(off);
      off += A->dim(p) * A->dim(d - p);
    }
    out.dims.push_back(off);
  }
  auto locate = [A, offsets](int d, std::size_t idx) {
    const auto& off = (*offsets)[d];
    int p = 0;
    while (p + 1 <= d && off[p + 1] <= idx) ++p;
    std::size_t r = idx - off[p];
    std::size_t q_dim = A->dim(d - p);
    return std::make_tuple(p, r / q_dim, r % q_dim);
  };
  auto index = [A, offsets](int d, int p, std::size_t i, std::size_t j) {
    return static_cast<std::uint32_t>((*offsets)[d][p] + i * A->dim(d - p) + j);
  };
  out.left = [A, locate, index](std::size_t g, int d, const SparseVec<F>& v) {
    int dg = A->generator_degree(g);
    std::vector<Entry<typename F::value_type>> terms;
    for (const auto& e : v) {
      auto [p, i, j] = locate(d, e.index);
      for (const auto& t : A->gen_times_basis(g, p, i))
        terms.push_back({index(d + dg, p + dg, t.index, j), A->field().mul(e.value, t.value)});
    }
    return collect(A->field(), std::move(terms));
  };
  out.right = [A, locate, index](int d, const SparseVec<F>& v, std::size_t g) {
    int dg = A->generator_degree(g);
    std::vector<Entry<typename F::value_type>> terms;
    for (const auto& e : v) {
      auto [p, i, j] = locate(d, e.index);
      for (const auto& t : A->basis_times_gen(d - p, j, g))
        terms.push_back({index(d + dg, p, i, t.index), A->field().mul(e.value, t.value)});
    }
    return collect(A->field(), std::move(terms));
  };
  return out;
}

// The left E-module of A itself.
template <Field F>
ModulePtr<F> algebra_as_E_module(const Enveloping<F>& env) {
  return to_left_E_module(env, algebra_bimodule(env.A));
}

// Applies - (x)_A K to a bi-resolution of A (a left E-resolution of A):
// coefficients go through rho, and the target A becomes K via eps.
template <Field F>
PartialFreeResolution<F> contract_to_left(const PartialFreeResolution<F>& bires, const Enveloping<F>& env) {
  if (bires.target_kind != TargetKind::algebra)
    throw Unsupported("contraction applies to resolutions of the algebra itself, not of K");
  if (bires.ring != env.E) throw ValidationError("resolution is not over this enveloping algebra");
  const Ring<F>& A = *env.A;
  const F& field = A.field();
  const RingHom<F>& rho = env.retraction.rho;
  PartialFreeResolution<F> out{Side::left, TargetKind::trivial, env.A, TrivialModule<F>::make(env.A), {}, {}};
  for (int i = 0; i <= bires.length(); ++i) {
    const auto& src = *bires.terms[i];
    auto Fi = FreeModule<F>::make(env.A, src.generator_degrees());
    std::vector<SparseVec<F>> images;
    for (std::size_t s = 0; s < src.rank(); ++s) {
      int d = src.generator_degrees()[s];
      const auto& v = bires.maps[i].images()[s];
      if (d > A.degree_bound()) {
        images.push_back({});
        continue;
      }
      if (i == 0) {
        // The image lies in A_d; only its augmentation survives in K.
        auto c = A.augment({d, v});
        images.push_back(field.is_zero(c) ? SparseVec<F>{} : SparseVec<F>{{0, c}});
        continue;
      }
      const auto& tgt = *bires.terms[i - 1];
      SparseVec<F> w;
      for (std::size_t k = 0; k < tgt.rank(); ++k) {
        int rd = d - tgt.generator_degrees()[k];
        if (rd < 0) continue;
        auto comp = tgt.component(d, v, k);
        if (comp.empty()) continue;
        auto a = rho.apply(rd, comp);
        append_shifted<F>(w, a, static_cast<std::uint32_t>(out.terms[i - 1]->offset(d, k)));
      }
      images.push_back(std::move(w));
    }
    ModulePtr<F> tgt = i == 0 ? out.target : ModulePtr<F>(out.terms.back());
    out.maps.emplace_back(Fi, tgt, std::move(images));
    out.terms.push_back(Fi);
  }
  return out;
}

template <Field F>
struct BimoduleComparison {
  PartialFreeResolution<F> bires;       // minimal resolution of A over E
  PartialFreeResolution<F> contracted;  // bires (x)_A K
  PartialFreeResolution<F> left;        // minimal resolution of K over A
  std::vector<std::string> mismatches;  // empty when the Betti tables agree positionwise
  bool contracted_exact = false;
  bool contracted_minimal = false;
  bool ok() const { return mismatches.empty() && contracted_exact && contracted_minimal; }
};

// Minimal bi-resolution of A, contracted, compared with the minimal left
// resolution of K.
template <Field F>
BimoduleComparison<F> bimodule_resolution_of_A(const Enveloping<F>& env, int n) {
  auto M = algebra_as_E_module(env);
  auto bires = minimal_resolution(env.E, M, n, Side::bi, TargetKind::algebra);
  auto contracted = contract_to_left(bires, env);
  auto left = minimal_resolution_of_K(env.A, n);
  BimoduleComparison<F> out{bires, contracted, left, {}, check_exactness(contracted).ok(), check_minimality(contracted).minimal};
  auto bt = generator_degree_table(bires);
  auto lt = betti_table(left);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= env.A->degree_bound(); ++j)
      if (bt.at(i, j) != lt.at(i, j))
        out.mismatches.push_back("beta[" + std::to_string(i) + "," + std::to_string(j) + "]: bimodule " + std::to_string(bt.at(i, j)) +
                                 ", left " + std::to_string(lt.at(i, j)));
  return out;
}

}  // namespace fpn
