// One PASS/FAIL line per acceptance criterion.  Every comparison is exact;
// the time limits below are the only tolerances.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "fpn/group_rings.hpp"
#include "fpn/kuenneth.hpp"
#include "fpn/mutations.hpp"
#include "fpn/retraction.hpp"
#include "fpn/retraction_file.hpp"
#include "property_checks.hpp"

using namespace fpn;
using Q = RationalField;

namespace {

constexpr std::uint64_t kSeed = 20261015;
constexpr std::size_t kTriples = 1000;

using Failures = std::vector<std::string>;

void expect(Failures& f, bool ok, const std::string& what) {
  if (!ok) f.push_back(what);
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::vector<std::size_t> convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<long> la(a.begin(), a.end()), lb(b.begin(), b.end());
  auto c = oracle::convolve(la, lb, a.size() + b.size() - 1);
  return {c.begin(), c.end()};
}

// Each sub-case is timed against its own limit.
struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

void within(Failures& f, const Timer& t, double limit, const std::string& label) {
  double s = t.seconds();
  if (s > limit) f.push_back(label + " took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
}

Failures koszul() {
  Failures f;
  auto A = GradedAlgebra<Q>::make(props::presentation(props::three_algebras()[0]), 8);
  auto res = minimal_resolution_of_K(RingPtr<Q>(A), 3);
  for (int d = 0; d <= 8; ++d) expect(f, oracle::koszul_exact_in_degree(d), "oracle Koszul complex not exact in degree " + std::to_string(d));
  expect(f, res.generator_degrees() == oracle::koszul_generator_degrees(), "internal degrees differ from (0; 1,1; 2)");
  expect(f, betti_table(res).totals() == std::vector<std::size_t>{1, 2, 1, 0}, "Betti " + join(betti_table(res).totals()));
  auto dense = oracle::dense_exactness(res);
  expect(f, dense.empty(), "dense recheck: " + dense);
  return f;
}

Failures bimodule_contraction() {
  Failures f;
  for (const auto& a : props::three_algebras()) {
    Timer t;
    auto env = graded_enveloping(props::presentation(a), 6);
    auto cmp = bimodule_resolution_of_A(env, 3);
    auto contracted = betti_table(cmp.contracted);
    auto left = betti_table(cmp.left);
    expect(f, contracted.entries == left.entries, a.name + ": contracted Betti table differs from the left one");
    expect(f, generator_degree_table(cmp.bires).entries == left.entries, a.name + ": bimodule Betti table differs");
    auto d1 = oracle::dense_exactness(cmp.contracted), d2 = oracle::dense_exactness(cmp.left), d3 = oracle::dense_exactness(cmp.bires);
    expect(f, d1.empty() && d2.empty() && d3.empty(), a.name + ": dense recheck: " + d1 + d2 + d3);
    within(f, t, 60, a.name);
  }
  return f;
}

Failures transport_from_enveloping() {
  Failures f;
  auto env = graded_enveloping(props::presentation(props::three_algebras()[0]), 6);
  auto Eres = minimal_resolution_of_K(env.E, 3);
  expect(f, fpn_verdict(Eres, 3).verdict == Verdict::certified, "E is not certified left-FP_3 at D = 6");
  expect(f, oracle::dense_exactness(Eres).empty(), "resolution over E not exact");
  auto t = transport_trivial(std::make_shared<const RingRetraction<Q>>(env.retraction), 3);
  expect(f, t.bottom_exactness.ok(), "transported resolution has a nonempty exactness report");
  auto dense = oracle::dense_exactness(t.twin.bottom);
  expect(f, dense.empty(), "dense recheck: " + dense);
  expect(f, t.twin.bottom.ring == env.A, "transported resolution is not over A");
  return f;
}

Failures group_biresolutions() {
  Failures f;
  auto one = [&](auto field, FiniteMonoid G, const std::string& label) {
    Timer t;
    auto env = monoid_enveloping(field, G);
    auto L = left_resolution_K(env.A, 4);
    auto T = theorem2_biresolution(env, L);
    auto d = oracle::dense_exactness(T.bires);
    expect(f, d.empty(), label + ": bi-resolution " + d);
    expect(f, T.bires.ranks() == L.ranks(), label + ": ranks " + join(T.bires.ranks()) + " vs " + join(L.ranks()));
    auto C = contract_to_left(T.bires, env);
    auto dc = oracle::dense_exactness(C);
    expect(f, dc.empty(), label + ": contraction " + dc);
    expect(f, C.ranks() == L.ranks(), label + ": contracted ranks " + join(C.ranks()));
    within(f, t, 30, label);
  };
  one(PrimeField(2), cyclic_group(2), "C2/GF(2)");
  one(PrimeField(3), cyclic_group(3), "C3/GF(3)");
  one(PrimeField(3), symmetric_group_3(), "S3/GF(3)");
  one(Q{}, cyclic_group(2), "C2/Q");
  return f;
}

Failures twisted_tensor_identities() {
  Failures f;
  for (auto [name, G] : std::vector<std::pair<std::string, FiniteMonoid>>{
           {"C2", cyclic_group(2)}, {"C3", cyclic_group(3)}, {"S3", symmetric_group_3()}}) {
    auto env = monoid_enveloping(Q{}, G);
    auto r = lemma3_check(env);
    expect(f, r.ok(), name + ": " + (r.ok() ? "" : r.failures.front()));
    // Every basis triple (g, h, x) is visited: n^3 checks per identity at least.
    std::size_t n = G.size();
    expect(f, r.checked >= 2 * n * n * n, name + ": only " + std::to_string(r.checked) + " identities checked");
  }
  return f;
}

Failures weak_biresolutions() {
  Failures f;
  for (std::size_t k : {0, 1}) {
    const auto a = props::three_algebras()[k];
    auto env = graded_enveloping(props::presentation(a), 6);
    auto L = minimal_resolution_of_K(env.A, 3);
    auto R = minimal_resolution_of_K(env.Aop, 3, Side::right);
    auto B = kuenneth_biresolution(env, L, R);
    auto trim = [](std::vector<std::size_t> v) {
      while (v.size() > 1 && v.back() == 0) v.pop_back();
      return v;
    };
    auto want = convolve(trim(L.ranks()), trim(R.ranks()));
    std::vector<std::size_t> pinned = k == 0 ? std::vector<std::size_t>{1, 4, 6, 4, 1} : std::vector<std::size_t>{1, 4, 4};
    expect(f, want == pinned, a.name + ": convolution oracle gives " + join(want));
    expect(f, B.ranks() == pinned, a.name + ": ranks " + join(B.ranks()));
    auto d = oracle::dense_exactness(B);
    expect(f, d.empty(), a.name + ": " + d);
  }
  return f;
}

void rank_law(Failures& f, const TransportResult<Q>& t, const std::string& label) {
  for (std::size_t i = 0; i < t.twin.generator_counts.size(); ++i) {
    std::size_t g = t.twin.generator_counts[i];
    expect(f, t.twin.top.terms[i]->rank() == 2 * g, label + ": top rank at step " + std::to_string(i) + " is not 2|e|");
    expect(f, t.twin.bottom.terms[i]->rank() == g, label + ": bottom rank at step " + std::to_string(i) + " is not |e|");
  }
  auto top = oracle::dense_exactness(t.twin.top), bottom = oracle::dense_exactness(t.twin.bottom);
  expect(f, top.empty(), label + ": top row " + top);
  expect(f, bottom.empty(), label + ": bottom row " + bottom);
}

Failures twin_rank_law() {
  Failures f;
  auto env = graded_enveloping(props::presentation(props::three_algebras()[0]), 6);
  rank_law(f, transport_trivial(std::make_shared<const RingRetraction<Q>>(env.retraction), 3), "E -> K[x,y]");
  auto g = instantiate(parse_retraction_file(read_text_file(std::string(FPN_DATA_DIR) + "/poly2_to_poly1.ret")), Q{}, 8);
  auto t = transport_trivial(std::make_shared<const RingRetraction<Q>>(g.retraction), 2);
  rank_law(f, t, "K[x,y] -> K[x]");
  expect(f, t.twin.generator_counts == std::vector<std::size_t>{1, 3, 4}, "K[x,y] -> K[x]: generator counts " + join(t.twin.generator_counts));
  return f;
}

Failures invariant_suites() {
  Failures f;
  std::mt19937_64 rng(kSeed);
  std::size_t triples = 0;
  auto add = [&](const Failures& more) { f.insert(f.end(), more.begin(), more.end()); };
  for (const auto& a : props::three_algebras()) {
    auto A = GradedAlgebra<Q>::make(props::presentation(a), 6);
    add(props::ring_axioms<Q>(*A, kTriples, rng));
    triples += kTriples;
    auto A5 = GradedAlgebra<Q>::make(props::presentation(a), 5);
    add(props::normal_forms(a, *A5, 5));
    add(props::enveloping_dims(a, 6));
    auto env = graded_enveloping(props::presentation(a), 5);
    for (const auto& res : {minimal_resolution_of_K(env.A, 4), minimal_resolution_of_K(env.Aop, 4, Side::right),
                            bimodule_resolution_of_A(env, 3).bires, bimodule_resolution_of_A(env, 3).contracted})
      add(props::euler_hilbert(res));
  }
  auto KS3 = MonoidAlgebra<PrimeField>::make(PrimeField(3), symmetric_group_3());
  add(props::ring_axioms<PrimeField>(*KS3, kTriples, rng));
  triples += kTriples;
  for (auto G : {cyclic_group(2), cyclic_group(3), symmetric_group_3()}) {
    auto env = monoid_enveloping(PrimeField(3), G);
    auto L = left_resolution_K(env.A, 4);
    add(props::euler_hilbert(L));
    add(props::euler_hilbert(theorem2_biresolution(env, L).bires));
  }
  std::printf("  invariants: seed %llu, %zu random triples\n", static_cast<unsigned long long>(kSeed), triples);
  return f;
}

Failures negative_controls() {
  Failures f;
  auto A = GradedAlgebra<Q>::make(props::presentation(props::three_algebras()[0]), 6);
  auto res = minimal_resolution_of_K(RingPtr<Q>(A), 3);
  expect(f, !check_exactness(perturb_scale(res, 1, 0, 2)).ok(), "scaled differential not flagged");
  expect(f, !check_exactness(perturb_generator(res, 2, 0, {})).ok(), "zeroed differential not flagged");
  auto damaged = res;
  damaged.maps[1].perturb(2, 0, {});
  expect(f, !check_exactness(damaged).ok(), "zeroed matrix column not flagged");
  auto padded = pad_with_identity(res, 1, 3);
  auto m = check_minimality(padded);
  expect(f, check_exactness(padded).ok() && !m.minimal && m.witness.has_value(), "identity padding not flagged with a witness");

  auto w = involution_violation(cyclic_group(3), {0, 1, 1});
  expect(f, w.has_value(), "non-involution accepted");
  auto S3 = symmetric_group_3();
  auto v = involution_violation(S3, {0, 1, 2, 3, 4, 5});
  expect(f, v && S3.mul(v->first, v->second) != S3.mul(v->second, v->first), "identity on S3 accepted");
  try {
    instantiate(parse_retraction_file(read_text_file(std::string(FPN_DATA_DIR) + "/broken_section.ret")), Q{}, 4);
    f.push_back("broken section accepted");
  } catch (const ValidationError& e) {
    expect(f, std::string(e.what()).find("rho(iota(x))") != std::string::npos, std::string("no witness: ") + e.what());
  }
  return f;
}

struct Criterion {
  int id;
  std::string name;
  double limit;
  std::function<Failures()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all{
      {1, "Koszul resolution of K over K[x,y]", 5, koszul},
      {2, "bimodule resolution contracts to the left resolution", 180, bimodule_contraction},
      {3, "left resolution over K[x,y] transported from E", 120, transport_from_enveloping},
      {4, "group ring bi-resolutions and their contraction", 120, group_biresolutions},
      {5, "twisted tensor identities", 10, twisted_tensor_identities},
      {6, "weak bi-resolutions by tensor products", 30, weak_biresolutions},
      {7, "twin resolution rank law", 120, twin_rank_law},
      {8, "invariant suites", 120, invariant_suites},
      {9, "negative controls", 10, negative_controls},
  };
  int failed = 0;
  for (const auto& c : all) {
    Timer t;
    Failures f;
    try {
      f = c.run();
    } catch (const std::exception& e) {
      f.push_back(std::string("exception: ") + e.what());
    }
    double s = t.seconds();
    if (s > c.limit) f.push_back("took " + std::to_string(s) + " s, limit " + std::to_string(c.limit) + " s");
    std::printf("criterion %d: %s  %-55s %8.3f s (limit %g s)\n", c.id, f.empty() ? "PASS" : "FAIL", c.name.c_str(), s, c.limit);
    for (const auto& x : f) std::printf("    %s\n", x.c_str());
    failed += !f.empty();
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
