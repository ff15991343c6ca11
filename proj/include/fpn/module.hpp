#pragma once

// Graded left modules over a Ring, realised degree by degree as vector spaces
// with the action of the ring generators.  Finite rings live in degree 0, so
// the same code serves group and monoid algebras.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpn/errors.hpp"
#include "fpn/ring.hpp"
#include "fpn/sparse.hpp"

namespace fpn {

// A homogeneous module element.
template <Field F>
struct ModuleElement {
  int degree = 0;
  SparseVec<F> coords;
};

template <Field F>
class Module {
 public:
  using Vec = SparseVec<F>;

  virtual ~Module() = default;

  virtual const Ring<F>& ring() const = 0;
  virtual std::size_t dim(int d) const = 0;
  // Ring generator g applied to v in degree d; the result lies in degree d + deg g.
  virtual Vec act_gen(std::size_t g, int d, const Vec& v) const = 0;
  virtual std::string basis_label(int d, std::size_t i) const { return "b" + std::to_string(d) + "_" + std::to_string(i); }

  const F& field() const { return ring().field(); }
  int degree_bound() const { return ring().degree_bound(); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (int d = 0; d <= degree_bound(); ++d) out.push_back(dim(d));
    return out;
  }

  std::string describe(int d, const Vec& v) const {
    if (v.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += " + ";
      s += "(" + field().to_string(v[k].value) + ")" + basis_label(d, v[k].index);
    }
    return s;
  }
};

template <Field F>
using ModulePtr = std::shared_ptr<const Module<F>>;

// Ring basis element (rd, i) acting on v in degree d, via the generator factorisation.
template <Field F>
SparseVec<F> act_basis(const Module<F>& m, int rd, std::size_t i, int d, const SparseVec<F>& v) {
  auto f = m.ring().factor(rd, i);
  if (!f) return v;
  SparseVec<F> inner = act_basis(m, f->rest_degree, f->rest_index, d, v);
  return m.act_gen(f->generator, f->rest_degree + d, inner);
}

// A homogeneous ring element acting on v in degree d.
template <Field F>
SparseVec<F> act(const Module<F>& m, const RingElement<F>& a, int d, const SparseVec<F>& v) {
  int out = a.degree + d;
  if (out > m.degree_bound()) throw TruncationError(out, m.degree_bound());
  const F& field = m.field();
  SparseVec<F> r;
  for (const auto& e : a.coords) r = axpy(field, r, e.value, act_basis(m, a.degree, e.index, d, v));
  return r;
}

// Free module with generators e_k in degrees degs[k].  The degree-d basis is
// ordered by generator, then by the ring basis of degree d - deg e_k.
template <Field F>
class FreeModule final : public Module<F> {
 public:
  using Vec = SparseVec<F>;

  FreeModule(RingPtr<F> ring, std::vector<int> degs) : ring_(std::move(ring)), degs_(std::move(degs)) {
    int D = ring_->degree_bound();
    offsets_.assign(D + 1, {});
    for (int d = 0; d <= D; ++d) {
      std::size_t off = 0;
      for (int k : degs_) {
        offsets_[d].push_back(off);
        if (k < 0) throw ValidationError("free generator degrees must be nonnegative");
        off += d >= k ? ring_->dim(d - k) : 0;
      }
      offsets_[d].push_back(off);
    }
  }

  static std::shared_ptr<const FreeModule> make(RingPtr<F> ring, std::vector<int> degs) {
    return std::make_shared<const FreeModule>(std::move(ring), std::move(degs));
  }

  const Ring<F>& ring() const override { return *ring_; }
  const RingPtr<F>& ring_ptr() const { return ring_; }
  std::size_t rank() const { return degs_.size(); }
  const std::vector<int>& generator_degrees() const { return degs_; }

  std::size_t dim(int d) const override {
    if (d < 0 || d > ring_->degree_bound()) return 0;
    return offsets_[d].back();
  }

  // Index of the basis element (generator k) * (ring basis i of degree d - deg e_k).
  std::size_t offset(int d, std::size_t k) const { return offsets_[d][k]; }
  std::uint32_t index(int d, std::size_t k, std::size_t i) const { return static_cast<std::uint32_t>(offsets_[d][k] + i); }

  // (generator, ring basis index) of a basis element in degree d.
  std::pair<std::size_t, std::size_t> locate(int d, std::size_t idx) const {
    const auto& off = offsets_[d];
    auto it = std::upper_bound(off.begin(), off.end(), idx);
    std::size_t k = static_cast<std::size_t>(it - off.begin()) - 1;
    while (off[k + 1] == off[k]) ++k;
    return {k, idx - off[k]};
  }

  // e_k as an element of degree deg e_k.
  ModuleElement<F> generator(std::size_t k) const {
    int d = degs_[k];
    if (d > ring_->degree_bound()) throw TruncationError(d, ring_->degree_bound());
    return {d, unit_vector(ring_->field(), index(d, k, ring_->unit_index()))};
  }

  // The component of v (degree d) along generator k, as ring coordinates of degree d - deg e_k.
  Vec component(int d, const Vec& v, std::size_t k) const {
    Vec out;
    std::size_t lo = offsets_[d][k], hi = offsets_[d][k + 1];
    for (const auto& e : v)
      if (e.index >= lo && e.index < hi) out.push_back({static_cast<std::uint32_t>(e.index - lo), e.value});
    return out;
  }

  Vec act_gen(std::size_t g, int d, const Vec& v) const override {
    int out = d + ring_->generator_degree(g);
    if (out > ring_->degree_bound()) throw TruncationError(out, ring_->degree_bound());
    std::vector<Entry<typename F::value_type>> terms;
    const F& field = ring_->field();
    for (const auto& e : v) {
      auto [k, i] = locate(d, e.index);
      for (const auto& t : ring_->gen_times_basis(g, d - degs_[k], i))
        terms.push_back({index(out, k, t.index), field.mul(e.value, t.value)});
    }
    return collect(field, std::move(terms));
  }

  std::string basis_label(int d, std::size_t idx) const override {
    auto [k, i] = locate(d, idx);
    std::string r = ring_->basis_label(d - degs_[k], i);
    return (r == "1" ? "" : r + "*") + "e" + std::to_string(k);
  }

 private:
  RingPtr<F> ring_;
  std::vector<int> degs_;
  std::vector<std::vector<std::size_t>> offsets_;
};

template <Field F>
using FreeModulePtr = std::shared_ptr<const FreeModule<F>>;

// K in degree 0 with the ring acting through its augmentation.
template <Field F>
class TrivialModule final : public Module<F> {
 public:
  using Vec = SparseVec<F>;

  explicit TrivialModule(RingPtr<F> ring) : ring_(std::move(ring)) {
    for (std::size_t g = 0; g < ring_->num_generators(); ++g)
      eps_.push_back(ring_->generator_degree(g) == 0 ? ring_->augment({0, ring_->generator_element(g)}) : ring_->field().zero());
  }

  static std::shared_ptr<const TrivialModule> make(RingPtr<F> ring) { return std::make_shared<const TrivialModule>(std::move(ring)); }

  const Ring<F>& ring() const override { return *ring_; }
  std::size_t dim(int d) const override { return d == 0 ? 1 : 0; }
  Vec act_gen(std::size_t g, int d, const Vec& v) const override {
    if (d != 0 || ring_->generator_degree(g) != 0) return {};
    return scale(ring_->field(), eps_[g], v);
  }
  std::string basis_label(int, std::size_t) const override { return "1"; }

 private:
  RingPtr<F> ring_;
  std::vector<typename F::value_type> eps_;
};

// A module given by a callback per generator; used for bimodules seen as
// left modules over an enveloping algebra and for other derived actions.
template <Field F>
class ActionModule final : public Module<F> {
 public:
  using Vec = SparseVec<F>;
  using Action = std::function<Vec(std::size_t g, int d, const Vec& v)>;

  ActionModule(RingPtr<F> ring, std::vector<std::size_t> dims, Action action, std::string label_prefix = "m")
      : ring_(std::move(ring)), dims_(std::move(dims)), action_(std::move(action)), prefix_(std::move(label_prefix)) {}

  const Ring<F>& ring() const override { return *ring_; }
  std::size_t dim(int d) const override { return d < 0 || d >= static_cast<int>(dims_.size()) ? 0 : dims_[d]; }
  Vec act_gen(std::size_t g, int d, const Vec& v) const override {
    int out = d + ring_->generator_degree(g);
    if (out > ring_->degree_bound()) throw TruncationError(out, ring_->degree_bound());
    return action_(g, d, v);
  }
  std::string basis_label(int d, std::size_t i) const override {
    return prefix_ + std::to_string(d) + "_" + std::to_string(i);
  }

 private:
  RingPtr<F> ring_;
  std::vector<std::size_t> dims_;
  Action action_;
  std::string prefix_;
};

// The ring as a left module over itself (degree-d basis = ring basis).
template <Field F>
std::shared_ptr<const FreeModule<F>> regular_module(RingPtr<F> ring) {
  return FreeModule<F>::make(std::move(ring), {0});
}

// Per-degree linear maps between graded vector spaces, degree d at index d.
template <Field F>
using DegreeMaps = std::vector<LinearMap<F>>;

template <Field F>
SparseVec<F> apply_at(const F& field, const DegreeMaps<F>& maps, int d, const SparseVec<F>& v) {
  return apply(field, maps.at(d), v);
}

// A graded submodule: a subspace of each graded piece of the ambient module.
template <Field F>
class Submodule {
 public:
  using Vec = SparseVec<F>;

  explicit Submodule(ModulePtr<F> ambient) : ambient_(std::move(ambient)) {
    for (int d = 0; d <= ambient_->degree_bound(); ++d) spans_.emplace_back(ambient_->field(), ambient_->dim(d));
  }

  // The whole ambient module.
  static Submodule whole(ModulePtr<F> ambient) {
    Submodule s(ambient);
    for (int d = 0; d <= ambient->degree_bound(); ++d)
      for (std::uint32_t i = 0; i < ambient->dim(d); ++i) s.insert(d, unit_vector(ambient->field(), i));
    return s;
  }

  const Module<F>& ambient() const { return *ambient_; }
  const ModulePtr<F>& ambient_ptr() const { return ambient_; }
  int degree_bound() const { return ambient_->degree_bound(); }
  std::size_t dim(int d) const { return d < 0 || d > degree_bound() ? 0 : spans_[d].rank(); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (int d = 0; d <= degree_bound(); ++d) out.push_back(dim(d));
    return out;
  }
  bool is_zero() const {
    return std::all_of(spans_.begin(), spans_.end(), [](const auto& s) { return s.rank() == 0; });
  }

  bool insert(int d, Vec v) { return spans_.at(d).insert(std::move(v)); }
  bool contains(int d, const Vec& v) const { return spans_.at(d).contains(v); }
  const Span<F>& span(int d) const { return spans_.at(d); }
  // Reduced row echelon basis of the degree-d piece.
  std::vector<Vec> basis(int d) const { return spans_.at(d).reduced_basis(); }

  // First (degree, basis vector, generator) whose image leaves the submodule.
  struct ClosureWitness {
    int degree;
    Vec vector;
    std::size_t generator;
  };
  std::optional<ClosureWitness> closure_violation() const {
    const Ring<F>& R = ambient_->ring();
    for (int d = 0; d <= degree_bound(); ++d)
      for (const auto& v : spans_[d].rows())
        for (std::size_t g = 0; g < R.num_generators(); ++g) {
          int out = d + R.generator_degree(g);
          if (out > degree_bound()) continue;
          if (!contains(out, ambient_->act_gen(g, d, v))) return ClosureWitness{d, v, g};
        }
    return std::nullopt;
  }

 private:
  ModulePtr<F> ambient_;
  std::vector<Span<F>> spans_;
};

// A module map from a free module, determined by the images of its generators.
// matrix(d) sends the basis element a * e_k of degree d to a * image_k.
template <Field F>
class GradedMap {
 public:
  using Vec = SparseVec<F>;

  GradedMap(FreeModulePtr<F> source, ModulePtr<F> target, std::vector<Vec> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->rank()) throw ValidationError("one image per source generator is required");
    if (&source_->ring() != &target_->ring()) throw ValidationError("source and target are over different rings");
    for (std::size_t k = 0; k < images_.size(); ++k) {
      int d = source_->generator_degrees()[k];
      std::size_t bound = d <= source_->degree_bound() ? target_->dim(d) : 0;
      for (const auto& e : images_[k])
        if (e.index >= bound) throw ValidationError("image of generator " + std::to_string(k) + " is not of degree " + std::to_string(d));
    }
    assemble();
  }

  const FreeModule<F>& source() const { return *source_; }
  const Module<F>& target() const { return *target_; }
  const FreeModulePtr<F>& source_ptr() const { return source_; }
  const ModulePtr<F>& target_ptr() const { return target_; }
  const std::vector<Vec>& images() const { return images_; }
  const LinearMap<F>& matrix(int d) const { return matrices_.at(d); }
  const DegreeMaps<F>& matrices() const { return matrices_; }
  int degree_bound() const { return source_->degree_bound(); }

  Vec apply(int d, const Vec& v) const { return fpn::apply(source_->field(), matrices_.at(d), v); }

  // Replaces one matrix entry in place; only the mutation tests use this.
  void perturb(int d, std::size_t col, Vec column) { matrices_.at(d).columns.at(col) = std::move(column); }

 private:
  void assemble() {
    const Ring<F>& R = source_->ring();
    int D = R.degree_bound();
    const auto& degs = source_->generator_degrees();
    matrices_.assign(D + 1, {});
    for (int d = 0; d <= D; ++d) {
      LinearMap<F>& m = matrices_[d];
      m.rows = target_->dim(d);
      m.columns.assign(source_->dim(d), {});
      for (std::size_t k = 0; k < degs.size(); ++k) {
        int rd = d - degs[k];
        if (rd < 0) continue;
        for (std::size_t i = 0; i < R.dim(rd); ++i) {
          auto f = R.factor(rd, i);
          Vec col;
          if (!f) {
            col = images_[k];
          } else {
            int prev = d - R.generator_degree(f->generator);
            const Vec& inner = matrices_[prev].columns[source_->index(prev, k, f->rest_index)];
            col = target_->act_gen(f->generator, prev, inner);
          }
          m.columns[source_->index(d, k, i)] = std::move(col);
        }
      }
    }
  }

  FreeModulePtr<F> source_;
  ModulePtr<F> target_;
  std::vector<Vec> images_;
  DegreeMaps<F> matrices_;
};

// Kernel of a map degree by degree.  rank_out, when given, receives the rank
// in each degree; rank-nullity is asserted.
template <Field F>
Submodule<F> kernel_degreewise(const GradedMap<F>& phi, std::vector<std::size_t>* rank_out = nullptr) {
  Submodule<F> S(phi.source_ptr());
  const F& field = phi.source().field();
  if (rank_out) rank_out->clear();
  for (int d = 0; d <= phi.degree_bound(); ++d) {
    std::size_t r = 0;
    auto ker = kernel(field, phi.matrix(d), &r);
    if (ker.size() + r != phi.source().dim(d)) throw Error("rank-nullity failed in degree " + std::to_string(d));
    for (auto& v : ker) S.insert(d, std::move(v));
    if (rank_out) rank_out->push_back(r);
  }
  return S;
}

// Image of a map as a submodule of its target.
template <Field F>
Submodule<F> image_degreewise(const GradedMap<F>& phi) {
  Submodule<F> S(phi.target_ptr());
  for (int d = 0; d <= phi.degree_bound(); ++d)
    for (const auto& c : phi.matrix(d).columns) S.insert(d, c);
  return S;
}

// (A+ S)_d: spanned by x * s for ring generators x of positive degree and s in S.
template <Field F>
Span<F> augmentation_multiples(const Submodule<F>& S, int d) {
  const Module<F>& M = S.ambient();
  const Ring<F>& R = M.ring();
  Span<F> out(M.field(), M.dim(d));
  for (std::size_t g = 0; g < R.num_generators(); ++g) {
    int dg = R.generator_degree(g);
    if (dg <= 0 || dg > d) continue;
    for (const auto& v : S.span(d - dg).rows()) out.insert(M.act_gen(g, d - dg, v));
  }
  return out;
}

// Minimal generators of a graded submodule over a connected graded ring:
// per degree, a basis of (A+ S)_d is extended greedily by the reduced basis of
// S_d.  Over a finite ring (everything in degree 0) the selection instead
// admits nullspace vectors in order, closing under the ring action each time.
template <Field F>
std::vector<ModuleElement<F>> minimal_generators(const Submodule<F>& S) {
  const Module<F>& M = S.ambient();
  const Ring<F>& R = M.ring();
  std::vector<ModuleElement<F>> out;
  if (!R.connected_graded()) {
    for (int d = 0; d <= S.degree_bound(); ++d) {
      Span<F> closure(M.field(), M.dim(d));
      for (auto& v : S.basis(d)) {
        if (closure.contains(v)) continue;
        // The cyclic module R v is spanned by the images of v under all basis elements of R_0.
        for (std::size_t i = 0; i < R.dim(0); ++i) closure.insert(act_basis(M, 0, i, d, v));
        out.push_back({d, std::move(v)});
      }
      if (closure.rank() != S.dim(d)) throw Error("greedy generator closure left the submodule");
    }
    return out;
  }
  for (int d = 0; d <= S.degree_bound(); ++d) {
    if (S.dim(d) == 0) continue;
    Span<F> span = augmentation_multiples(S, d);
    std::size_t decomposable = span.rank();
    std::size_t before = out.size();
    for (auto& v : S.basis(d))
      if (span.insert(v)) out.push_back({d, std::move(v)});
    if (out.size() - before != S.dim(d) - decomposable)
      throw Error("minimal generator count mismatch in degree " + std::to_string(d));
  }
  return out;
}

// dim S_d - dim (A+ S)_d for each d, computed without selecting generators.
template <Field F>
std::vector<std::size_t> minimal_generator_counts(const Submodule<F>& S) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= S.degree_bound(); ++d) out.push_back(S.dim(d) - augmentation_multiples(S, d).rank());
  return out;
}

}  // namespace fpn
