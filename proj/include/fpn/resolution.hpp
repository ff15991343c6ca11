#pragma once

// Partial free resolutions 0 <- M <- F_0 <- F_1 <- ... <- F_n, built by
// repeatedly taking kernels and generating them, plus the checkers that
// certify them: exactness, minimality, Betti tables and the Euler-Hilbert
// identity.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/module.hpp"

namespace fpn {

enum class Side { left, right, bi };

inline std::string to_string(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::bi: return "bi";
  }
  return "?";
}

// What is being resolved: the trivial module K, the ring itself (as a bimodule), or anything else.
enum class TargetKind { trivial, algebra, other };

template <Field F>
struct PartialFreeResolution {
  Side side = Side::left;
  TargetKind target_kind = TargetKind::trivial;
  RingPtr<F> ring;
  ModulePtr<F> target;
  std::vector<FreeModulePtr<F>> terms;  // F_0 .. F_n
  std::vector<GradedMap<F>> maps;       // maps[0]: F_0 -> M, maps[i]: F_i -> F_{i-1}

  int length() const { return static_cast<int>(terms.size()) - 1; }
  int degree_bound() const { return ring->degree_bound(); }
  const F& field() const { return ring->field(); }

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> out;
    for (const auto& t : terms) out.push_back(t->rank());
    return out;
  }
  std::vector<std::vector<int>> generator_degrees() const {
    std::vector<std::vector<int>> out;
    for (const auto& t : terms) out.push_back(t->generator_degrees());
    return out;
  }
};

namespace detail {

template <Field F>
std::pair<FreeModulePtr<F>, std::vector<SparseVec<F>>> free_cover(const RingPtr<F>& ring, std::vector<ModuleElement<F>> gens) {
  std::vector<int> degs;
  std::vector<SparseVec<F>> images;
  for (auto& g : gens) {
    degs.push_back(g.degree);
    images.push_back(std::move(g.coords));
  }
  return {FreeModule<F>::make(ring, std::move(degs)), std::move(images)};
}

}  // namespace detail

// Resolves M to homological length n.  Generators are minimal over connected
// graded rings and greedy closures over finite rings.
template <Field F>
PartialFreeResolution<F> build_resolution(RingPtr<F> ring, ModulePtr<F> M, int n, Side side = Side::left,
                                          TargetKind kind = TargetKind::trivial) {
  if (&M->ring() != ring.get()) throw ValidationError("module is not over the given ring");
  if (n < 0) throw ValidationError("homological bound must be nonnegative");
  PartialFreeResolution<F> res{side, kind, ring, M, {}, {}};
  auto gens = minimal_generators(Submodule<F>::whole(M));
  for (int i = 0; i <= n; ++i) {
    auto [Fi, images] = detail::free_cover(ring, std::move(gens));
    ModulePtr<F> tgt = i == 0 ? M : ModulePtr<F>(res.terms.back());
    res.maps.emplace_back(Fi, tgt, std::move(images));
    res.terms.push_back(Fi);
    if (i < n) gens = minimal_generators(kernel_degreewise(res.maps.back()));
  }
  return res;
}

// The minimal graded resolution; requires a connected graded ring.
template <Field F>
PartialFreeResolution<F> minimal_resolution(RingPtr<F> ring, ModulePtr<F> M, int n, Side side = Side::left,
                                            TargetKind kind = TargetKind::trivial) {
  if (!ring->connected_graded()) throw Unsupported("minimal resolutions need a connected graded ring");
  return build_resolution(std::move(ring), std::move(M), n, side, kind);
}

template <Field F>
PartialFreeResolution<F> minimal_resolution_of_K(RingPtr<F> ring, int n, Side side = Side::left) {
  auto K = TrivialModule<F>::make(ring);
  return minimal_resolution(ring, ModulePtr<F>(K), n, side, TargetKind::trivial);
}

// The first n+1 terms.
template <Field F>
PartialFreeResolution<F> truncate(PartialFreeResolution<F> res, int n) {
  if (n < res.length()) {
    res.terms.erase(res.terms.begin() + n + 1, res.terms.end());
    res.maps.erase(res.maps.begin() + n + 1, res.maps.end());
  }
  return res;
}

// dim Ker(maps[i])_d and rank(maps[i])_d for every d.
template <Field F>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> kernel_and_rank_dims(const GradedMap<F>& m) {
  std::vector<std::size_t> ker, rk;
  for (int d = 0; d <= m.degree_bound(); ++d) {
    std::size_t r = rank(m.source().field(), m.matrix(d));
    rk.push_back(r);
    ker.push_back(m.source().dim(d) - r);
  }
  return {ker, rk};
}

struct ExactnessFailure {
  enum class Kind { not_surjective, homology, composition };
  Kind kind;
  int position;  // homological index i
  int degree;
  long defect;   // missing dimension, or rank of the nonzero composite
};

inline std::string to_string(const ExactnessFailure& f) {
  std::string k = f.kind == ExactnessFailure::Kind::not_surjective ? "not surjective"
                  : f.kind == ExactnessFailure::Kind::homology     ? "homology"
                                                                   : "nonzero composite";
  return k + " at i=" + std::to_string(f.position) + " d=" + std::to_string(f.degree) + " defect " + std::to_string(f.defect);
}

struct ExactnessReport {
  std::vector<ExactnessFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Surjectivity of maps[0] and Ker maps[i] = Im maps[i+1] for i < n, with composites zero.
template <Field F>
ExactnessReport check_exactness(const PartialFreeResolution<F>& res) {
  ExactnessReport report;
  const F& field = res.field();
  int D = res.degree_bound();
  std::vector<std::vector<std::size_t>> ker, rk;
  for (const auto& m : res.maps) {
    auto [k, r] = kernel_and_rank_dims(m);
    ker.push_back(std::move(k));
    rk.push_back(std::move(r));
  }
  for (int d = 0; d <= D; ++d) {
    std::size_t target = res.target->dim(d);
    if (rk[0][d] != target)
      report.failures.push_back({ExactnessFailure::Kind::not_surjective, 0, d, static_cast<long>(target) - static_cast<long>(rk[0][d])});
  }
  for (int i = 0; i < res.length(); ++i) {
    for (int d = 0; d <= D; ++d) {
      LinearMap<F> comp = compose(field, res.maps[i].matrix(d), res.maps[i + 1].matrix(d));
      if (!is_zero_map(comp))
        report.failures.push_back({ExactnessFailure::Kind::composition, i, d, static_cast<long>(rank(field, comp))});
      if (ker[i][d] != rk[i + 1][d])
        report.failures.push_back({ExactnessFailure::Kind::homology, i, d, static_cast<long>(ker[i][d]) - static_cast<long>(rk[i + 1][d])});
    }
  }
  return report;
}

struct MinimalityReport {
  bool minimal = true;
  // First violating (homological index, generator index).
  std::optional<std::pair<int, std::size_t>> witness;
};

// Minimal iff no differential image of a generator (i >= 1) has a component
// on a degree-0 multiple of a target generator.
template <Field F>
MinimalityReport check_minimality(const PartialFreeResolution<F>& res) {
  MinimalityReport out;
  for (int i = 1; i <= res.length(); ++i) {
    const auto& m = res.maps[i];
    const auto& src = res.terms[i]->generator_degrees();
    const auto& tgt = *res.terms[i - 1];
    for (std::size_t s = 0; s < src.size(); ++s) {
      int d = src[s];
      for (const auto& e : m.images()[s]) {
        auto [k, idx] = tgt.locate(d, e.index);
        (void)idx;
        if (tgt.generator_degrees()[k] == d) {
          out.minimal = false;
          out.witness = std::make_pair(i, s);
          return out;
        }
      }
    }
  }
  return out;
}

// beta[i][j]: number of degree-j generators of F_i.
struct BettiTable {
  int degree_bound = 0;
  std::vector<std::vector<std::size_t>> entries;

  std::size_t at(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(entries.size()) || j < 0 || j > degree_bound) return 0;
    return entries[i][j];
  }
  std::vector<std::size_t> totals() const {
    std::vector<std::size_t> out;
    for (const auto& row : entries) {
      std::size_t s = 0;
      for (auto c : row) s += c;
      out.push_back(s);
    }
    return out;
  }
  bool operator==(const BettiTable&) const = default;
};

template <Field F>
BettiTable generator_degree_table(const PartialFreeResolution<F>& res) {
  BettiTable t{res.degree_bound(), {}};
  for (const auto& term : res.terms) {
    std::vector<std::size_t> row(res.degree_bound() + 1, 0);
    for (int d : term->generator_degrees())
      if (d <= res.degree_bound()) ++row[d];
    t.entries.push_back(std::move(row));
  }
  return t;
}

template <Field F>
BettiTable betti_table(const PartialFreeResolution<F>& res) {
  if (!res.ring->connected_graded()) throw Unsupported("Betti tables need a connected graded ring");
  auto m = check_minimality(res);
  if (!m.minimal)
    throw ValidationError("resolution is not minimal (F_" + std::to_string(m.witness->first) + ", generator " +
                          std::to_string(m.witness->second) + ")");
  return generator_degree_table(res);
}

// Degrees d where sum (-1)^i dim(F_i)_d - dim M_d != (-1)^n dim Ker(d_n)_d.
template <Field F>
std::vector<int> euler_hilbert_failures(const PartialFreeResolution<F>& res) {
  std::vector<int> bad;
  int n = res.length();
  auto [top_ker, top_rank] = kernel_and_rank_dims(res.maps[n]);
  (void)top_rank;
  for (int d = 0; d <= res.degree_bound(); ++d) {
    long lhs = -static_cast<long>(res.target->dim(d));
    for (int i = 0; i <= n; ++i) lhs += (i % 2 ? -1 : 1) * static_cast<long>(res.terms[i]->dim(d));
    long rhs = (n % 2 ? -1 : 1) * static_cast<long>(top_ker[d]);
    if (lhs != rhs) bad.push_back(d);
  }
  return bad;
}

enum class Verdict { certified, inconclusive };

inline std::string to_string(Verdict v) { return v == Verdict::certified ? "CERTIFIED-UP-TO-D" : "INCONCLUSIVE"; }

struct VerdictRecord {
  Verdict verdict = Verdict::inconclusive;
  int n = 0;
  int degree_bound = 0;
  std::vector<std::size_t> ranks;
  BettiTable table;
  std::string reason;
};

// FP_n up to the cutoff.  Certified when no term F_0..F_n has a generator in
// degree D and Ker d_n has no minimal generator in degree D; otherwise the
// truncation may hide generators and the verdict is inconclusive.  Finite
// rings are handled exactly and are always certified once exact.
template <Field F>
VerdictRecord fpn_verdict(const PartialFreeResolution<F>& full, int n) {
  if (full.length() < n) throw ValidationError("resolution is shorter than the requested n");
  auto res = truncate(full, n);
  VerdictRecord v;
  v.n = n;
  v.degree_bound = res.degree_bound();
  v.ranks = res.ranks();
  v.table = generator_degree_table(res);
  if (!check_exactness(res).ok()) {
    v.reason = "resolution is not exact";
    return v;
  }
  if (!res.ring->connected_graded()) {
    v.verdict = Verdict::certified;
    return v;
  }
  int D = res.degree_bound();
  for (int i = 0; i <= n; ++i)
    if (v.table.at(i, D) > 0) {
      v.reason = "F_" + std::to_string(i) + " has generators at the cutoff degree " + std::to_string(D);
      return v;
    }
  auto pending = minimal_generator_counts(kernel_degreewise(res.maps[n]));
  if (pending[D] > 0) {
    v.reason = "the kernel of d_" + std::to_string(n) + " needs generators at the cutoff degree " + std::to_string(D);
    return v;
  }
  v.verdict = Verdict::certified;
  return v;
}

}  // namespace fpn
