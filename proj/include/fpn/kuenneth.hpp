#pragma once

// The tensor product over K of a left resolution of K and a right resolution
// of K, as a resolution of K by free left E-modules.
//
// F_k = sum over i + j = k of P_i (x) P'_j, with generators e_s (x) f_t
// ordered by (i, s, t) and
//   d(e_s (x) f_t) = d(e_s) (x) f_t + (-1)^i e_s (x) d'(f_t).

#include <cstddef>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "fpn/enveloping.hpp"
#include "fpn/resolution.hpp"

namespace fpn {

namespace detail {

template <Field F>
bool kernel_vanishes(const GradedMap<F>& m) {
  auto [ker, rk] = kernel_and_rank_dims(m);
  (void)rk;
  for (auto k : ker)
    if (k) return false;
  return true;
}

}  // namespace detail

// left resolves K over A, right resolves K over A^opp.  The output length is
// nL + nR when both inputs end in an injective map, otherwise min(nL, nR);
// trailing zero terms are dropped.
template <Field F>
PartialFreeResolution<F> kuenneth_biresolution(const Enveloping<F>& env, const PartialFreeResolution<F>& left,
                                               const PartialFreeResolution<F>& right) {
  if (left.ring != env.A || right.ring != env.Aop) throw AlphabetMismatch();
  if (left.target_kind != TargetKind::trivial || right.target_kind != TargetKind::trivial)
    throw ValidationError("the Kuenneth construction resolves K from resolutions of K");
  const F& field = env.E->field();
  int D = env.E->degree_bound();
  int nL = left.length(), nR = right.length();
  bool complete = detail::kernel_vanishes(left.maps[nL]) && detail::kernel_vanishes(right.maps[nR]);
  int N = complete ? nL + nR : std::min(nL, nR);

  // Generator index of (i, s, t) within F_{i+j}.
  std::vector<std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t>> index(N + 1);
  PartialFreeResolution<F> out{Side::bi, TargetKind::trivial, env.E, TrivialModule<F>::make(env.E), {}, {}};
  for (int k = 0; k <= N; ++k) {
    std::vector<int> degs;
    for (int i = 0; i <= std::min(k, nL); ++i) {
      int j = k - i;
      if (j > nR) continue;
      const auto& ls = left.terms[i]->generator_degrees();
      const auto& rs = right.terms[j]->generator_degrees();
      for (std::size_t s = 0; s < ls.size(); ++s)
        for (std::size_t t = 0; t < rs.size(); ++t) {
          index[k][{i, s, t}] = degs.size();
          degs.push_back(ls[s] + rs[t]);
        }
    }
    out.terms.push_back(FreeModule<F>::make(env.E, degs));
  }

  auto scalar_at_unit = [&](const PartialFreeResolution<F>& r, std::size_t s) {
    const auto& img = r.maps[0].images()[s];
    return img.empty() ? field.zero() : img.front().value;
  };

  for (int k = 0; k <= N; ++k) {
    const auto& Fk = *out.terms[k];
    std::vector<SparseVec<F>> images(Fk.rank());
    for (const auto& [key, g] : index[k]) {
      auto [i, s, t] = key;
      int j = k - i;
      int ds = left.terms[i]->generator_degrees()[s];
      int dt = right.terms[j]->generator_degrees()[t];
      int d = ds + dt;
      if (d > D) continue;
      if (k == 0) {
        auto c = field.mul(ds == 0 ? scalar_at_unit(left, s) : field.zero(), dt == 0 ? scalar_at_unit(right, t) : field.zero());
        if (!field.is_zero(c)) images[g] = {{0, c}};
        continue;
      }
      const auto& target = *out.terms[k - 1];
      std::vector<Entry<typename F::value_type>> terms;
      auto place = [&](std::size_t tg, const SparseVec<F>& e_coords, const typename F::value_type& sign) {
        for (const auto& e : e_coords)
          terms.push_back({target.index(d, tg, e.index), field.mul(sign, e.value)});
      };
      if (i >= 1) {
        const auto& P = *left.terms[i - 1];
        const auto& v = left.maps[i].images()[s];
        for (std::size_t r = 0; r < P.rank(); ++r) {
          int rd = ds - P.generator_degrees()[r];
          if (rd < 0) continue;
          auto comp = P.component(ds, v, r);
          if (comp.empty()) continue;
          place(index[k - 1].at({i - 1, r, t}), env.left.apply(rd, comp), field.one());
        }
      }
      if (j >= 1) {
        auto sign = i % 2 ? field.neg(field.one()) : field.one();
        const auto& P = *right.terms[j - 1];
        const auto& v = right.maps[j].images()[t];
        for (std::size_t u = 0; u < P.rank(); ++u) {
          int rd = dt - P.generator_degrees()[u];
          if (rd < 0) continue;
          auto comp = P.component(dt, v, u);
          if (comp.empty()) continue;
          place(index[k - 1].at({i, s, u}), env.right.apply(rd, comp), sign);
        }
      }
      images[g] = collect(field, std::move(terms));
    }
    ModulePtr<F> tgt = k == 0 ? out.target : ModulePtr<F>(out.terms[k - 1]);
    out.maps.emplace_back(out.terms[k], tgt, std::move(images));
  }
  while (out.length() > 0 && out.terms.back()->rank() == 0) {
    out.terms.pop_back();
    out.maps.pop_back();
  }
  return out;
}

}  // namespace fpn
