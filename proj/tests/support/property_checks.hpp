#pragma once

// Randomized and exhaustive checks shared by the property suite and the
// acceptance binary.  Each returns a list of failure descriptions.

#include <random>
#include <string>
#include <vector>

#include "fpn/enveloping.hpp"
#include "fpn/graded_algebra.hpp"
#include "fpn/resolution.hpp"
#include "oracles.hpp"

namespace props {

using Q = fpn::RationalField;

struct TestAlgebra {
  std::string name;
  std::vector<std::string> relations;         // library syntax
  std::vector<oracle::Relation> oracle_rels;  // the same, over letters x = 0, y = 1
};

inline std::vector<TestAlgebra> three_algebras() {
  return {{"K[x,y]", {"x*y - y*x"}, {{{{0, 1}, 1}, {{1, 0}, -1}}}},
          {"K<x,y>", {}, {}},
          {"Ext(x,y)", {"x*x", "y*y", "x*y + y*x"}, {{{{0, 0}, 1}}, {{{1, 1}, 1}}, {{{0, 1}, 1}, {{1, 0}, 1}}}}};
}

inline fpn::AlgebraPresentation<Q> presentation(const TestAlgebra& a) {
  return fpn::make_presentation(Q{}, {{"x", 1}, {"y", 1}}, a.relations);
}

template <fpn::Field F>
fpn::RingElement<F> random_element(const fpn::Ring<F>& R, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coef(-4, 4);
  std::vector<fpn::Entry<typename F::value_type>> t;
  for (std::size_t i = 0; i < R.dim(d); ++i) t.push_back({static_cast<std::uint32_t>(i), R.field().from_int(coef(rng))});
  return {d, fpn::collect(R.field(), std::move(t))};
}

// Associativity, both distributive laws and the unit law on random homogeneous triples.
template <fpn::Field F>
std::vector<std::string> ring_axioms(const fpn::Ring<F>& R, std::size_t triples, std::mt19937_64& rng) {
  std::vector<std::string> bad;
  const F& f = R.field();
  int D = R.degree_bound();
  std::uniform_int_distribution<int> deg(0, D);
  for (std::size_t t = 0; t < triples && bad.size() < 5; ++t) {
    int da, db, dc;
    do {
      da = deg(rng), db = deg(rng), dc = deg(rng);
    } while (da + db + dc > D);
    auto a = random_element(R, da, rng), b = random_element(R, db, rng), c = random_element(R, dc, rng);
    auto c2 = random_element(R, dc, rng);
    if (!fpn::equal(f, R.multiply(R.multiply(a, b), c).coords, R.multiply(a, R.multiply(b, c)).coords))
      bad.push_back("associativity, triple " + std::to_string(t));
    fpn::RingElement<F> sum{dc, fpn::add(f, c.coords, c2.coords)};
    if (!fpn::equal(f, R.multiply(b, sum).coords, fpn::add(f, R.multiply(b, c).coords, R.multiply(b, c2).coords)))
      bad.push_back("left distributivity, triple " + std::to_string(t));
    if (!fpn::equal(f, R.multiply(sum, b).coords, fpn::add(f, R.multiply(c, b).coords, R.multiply(c2, b).coords)))
      bad.push_back("right distributivity, triple " + std::to_string(t));
    if (!fpn::equal(f, R.multiply(R.unit(), a).coords, a.coords) || !fpn::equal(f, R.multiply(a, R.unit()).coords, a.coords))
      bad.push_back("unit law, triple " + std::to_string(t));
  }
  return bad;
}

// dim A_d against the brute-force quotient, nf idempotent, w - nf(w) in the ideal.
inline std::vector<std::string> normal_forms(const TestAlgebra& spec, const fpn::GradedAlgebra<Q>& A, int D) {
  std::vector<std::string> bad;
  auto dims = oracle::quotient_dims(2, spec.oracle_rels, D);
  for (int d = 0; d <= D; ++d) {
    if (A.dim(d) != dims[d])
      bad.push_back(spec.name + ": dim A_" + std::to_string(d) + " = " + std::to_string(A.dim(d)) + ", oracle " + std::to_string(dims[d]));
    for (const auto& w : oracle::words(2, d)) {
      fpn::Word lw(w.begin(), w.end());
      auto p = fpn::NCPoly<Q>::monomial(Q{}, A.alphabet(), lw, Q{}.one());
      auto nf = A.normal_form(p);
      if (!(A.normal_form(nf) == nf)) bad.push_back(spec.name + ": normal form not idempotent");
      std::map<oracle::Word, mpq_class> diff;
      auto rest = p - nf;
      for (const auto& [u, c] : rest.terms()) diff[oracle::Word(u.begin(), u.end())] = c;
      if (!oracle::in_ideal(2, spec.oracle_rels, d, diff)) bad.push_back(spec.name + ": w - nf(w) outside the ideal");
    }
  }
  return bad;
}

// Euler characteristic in each degree, with free-module dimensions rebuilt
// from generator degrees and the top kernel from dense elimination.
template <fpn::Field F>
std::vector<std::string> euler_hilbert(const fpn::PartialFreeResolution<F>& res) {
  std::vector<std::string> bad;
  const auto& R = *res.ring;
  int n = res.length();
  for (int d = 0; d <= res.degree_bound(); ++d) {
    long chi = -static_cast<long>(res.target->dim(d));
    for (int i = 0; i <= n; ++i) {
      long dim = 0;
      for (int j : res.terms[i]->generator_degrees())
        if (j <= d) dim += static_cast<long>(R.dim(d - j));
      chi += (i % 2 ? -1 : 1) * dim;
    }
    auto top = oracle::dense(res.field(), res.maps[n].matrix(d));
    long ker = static_cast<long>(top.cols() - top.rank());
    if (chi != (n % 2 ? -1 : 1) * ker) bad.push_back("Euler-Hilbert fails in degree " + std::to_string(d));
  }
  return bad;
}

// dim E_i against the convolution of A's Hilbert series, i <= D.
inline std::vector<std::string> enveloping_dims(const TestAlgebra& spec, int D) {
  auto env = fpn::graded_enveloping(presentation(spec), D);
  auto dims = oracle::quotient_dims(2, spec.oracle_rels, D);
  std::vector<long> h(dims.begin(), dims.end());
  auto want = oracle::convolve(h, h, D + 1);
  std::vector<std::string> bad;
  for (int i = 0; i <= D; ++i)
    if (static_cast<long>(env.E->dim(i)) != want[i])
      bad.push_back(spec.name + ": dim E_" + std::to_string(i) + " = " + std::to_string(env.E->dim(i)) + ", expected " + std::to_string(want[i]));
  return bad;
}

}  // namespace props
