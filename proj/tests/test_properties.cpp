// Randomized invariants.  Run with --seed=<n>; the seed is printed first so a
// failure can be replayed.

#include <gtest/gtest.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include "fpn/group_rings.hpp"
#include "fpn/kuenneth.hpp"
#include "property_checks.hpp"

using namespace fpn;
using Q = RationalField;

namespace {
std::uint64_t g_seed = 1;

std::string first(const std::vector<std::string>& v) { return v.empty() ? "" : v.front(); }
}  // namespace

TEST(RingAxioms, GradedAlgebras) {
  std::mt19937_64 rng(g_seed);
  for (const auto& a : props::three_algebras()) {
    auto A = GradedAlgebra<Q>::make(props::presentation(a), 6);
    auto bad = props::ring_axioms<Q>(*A, 1000, rng);
    EXPECT_TRUE(bad.empty()) << a.name << ": " << first(bad);
  }
}

TEST(RingAxioms, EnvelopingAlgebras) {
  std::mt19937_64 rng(g_seed + 1);
  for (const auto& a : props::three_algebras()) {
    auto env = graded_enveloping(props::presentation(a), 4);
    auto bad = props::ring_axioms<Q>(*env.E, 300, rng);
    EXPECT_TRUE(bad.empty()) << a.name << ": " << first(bad);
  }
}

TEST(RingAxioms, GroupAndMonoidAlgebras) {
  std::mt19937_64 rng(g_seed + 2);
  auto KS3 = MonoidAlgebra<PrimeField>::make(PrimeField(3), symmetric_group_3());
  auto bad = props::ring_axioms<PrimeField>(*KS3, 1000, rng);
  EXPECT_TRUE(bad.empty()) << first(bad);
  auto KB = MonoidAlgebra<Q>::make(Q{}, product(semilattice2(), cyclic_group(3)));
  bad = props::ring_axioms<Q>(*KB, 1000, rng);
  EXPECT_TRUE(bad.empty()) << first(bad);
}

TEST(RingAxioms, FiniteCharacteristicPresentation) {
  std::mt19937_64 rng(g_seed + 3);
  auto A = GradedAlgebra<PrimeField>::make(
      make_presentation(PrimeField(5), {{"a", 1}, {"b", 1}}, {"a*b*a - b*a*b"}), 6);
  auto bad = props::ring_axioms<PrimeField>(*A, 1000, rng);
  EXPECT_TRUE(bad.empty()) << first(bad);
}

TEST(NormalForms, AgreeWithBruteForceIdeal) {
  for (const auto& a : props::three_algebras()) {
    auto A = GradedAlgebra<Q>::make(props::presentation(a), 5);
    auto bad = props::normal_forms(a, *A, 5);
    EXPECT_TRUE(bad.empty()) << first(bad);
  }
}

TEST(Enveloping, DimensionsAreConvolutions) {
  for (const auto& a : props::three_algebras()) {
    auto bad = props::enveloping_dims(a, 6);
    EXPECT_TRUE(bad.empty()) << first(bad);
  }
}

TEST(EulerHilbert, EveryConstructedResolution) {
  for (const auto& a : props::three_algebras()) {
    auto env = graded_enveloping(props::presentation(a), 5);
    for (const auto& res : {minimal_resolution_of_K(env.A, 4), minimal_resolution_of_K(env.Aop, 4, Side::right),
                            bimodule_resolution_of_A(env, 3).bires,
                            kuenneth_biresolution(env, minimal_resolution_of_K(env.A, 2), minimal_resolution_of_K(env.Aop, 2, Side::right))}) {
      auto bad = props::euler_hilbert(res);
      EXPECT_TRUE(bad.empty()) << a.name << ": " << first(bad);
      EXPECT_TRUE(euler_hilbert_failures(res).empty()) << a.name;
    }
  }
  for (auto G : {cyclic_group(2), cyclic_group(3), symmetric_group_3()}) {
    auto env = monoid_enveloping(PrimeField(3), G);
    auto L = left_resolution_K(env.A, 3);
    EXPECT_TRUE(props::euler_hilbert(L).empty());
    EXPECT_TRUE(props::euler_hilbert(theorem2_biresolution(env, L).bires).empty());
  }
}

TEST(Resolutions, RandomQuadraticAlgebrasAreExact) {
  // Random quadratic relations with small coefficients; every resolution must be exact.
  std::mt19937_64 rng(g_seed + 4);
  std::uniform_int_distribution<int> c(-2, 2);
  const char* words[] = {"x*x", "x*y", "y*x", "y*y"};
  for (int trial = 0; trial < 6; ++trial) {
    std::string rel;
    for (auto* w : words) {
      int k = c(rng);
      if (k) rel += (k > 0 ? " + " : " - ") + std::to_string(std::abs(k)) + "*" + w;
    }
    if (rel.rfind(" + ", 0) == 0) rel = rel.substr(3);
    if (rel.rfind(" - ", 0) == 0) rel = "-" + rel.substr(3);
    std::vector<std::string> rels;
    if (!rel.empty()) rels.push_back(rel);
    auto A = GradedAlgebra<Q>::make(make_presentation(Q{}, {{"x", 1}, {"y", 1}}, rels), 5);
    auto res = minimal_resolution_of_K(RingPtr<Q>(A), 3);
    EXPECT_EQ(oracle::dense_exactness(res), "") << rel;
    EXPECT_TRUE(check_minimality(res).minimal) << rel;
  }
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--seed=", 0) == 0) g_seed = std::stoull(a.substr(7));
  }
  std::cout << "seed " << g_seed << std::endl;
  return RUN_ALL_TESTS();
}
