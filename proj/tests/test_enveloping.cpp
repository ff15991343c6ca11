#include <gtest/gtest.h>

#include "fpn/enveloping.hpp"
#include "fpn/kuenneth.hpp"
#include "fpn/verify.hpp"
#include "oracles.hpp"

using namespace fpn;
using Q = RationalField;
using fpn::fixtures::commutative_plane;
using fpn::fixtures::exterior_plane;
using fpn::fixtures::free_plane;

namespace {
std::vector<long> as_long(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

RingElement<Q> gen(const Ring<Q>& R, std::size_t g) { return {R.generator_degree(g), R.generator_element(g)}; }
}  // namespace

TEST(Convolution, SmallSeries) {
  EXPECT_EQ(convolution<Q>({1, 2, 1}, {1, 2, 1}, 6), (std::vector<std::size_t>{1, 4, 6, 4, 1, 0}));
  EXPECT_EQ(convolution<Q>({1, 2, 3, 4}, {1, 2, 3, 4}, 4), (std::vector<std::size_t>{1, 4, 10, 20}));
}

TEST(Enveloping, DimensionsAreConvolutions) {
  for (const auto& [name, pres] : fixtures::three_algebras()) {
    auto env = graded_enveloping(pres, 5);
    auto hA = std::dynamic_pointer_cast<const GradedAlgebra<Q>>(env.A)->hilbert_series();
    auto want = oracle::convolve(as_long(hA), as_long(hA), 6);
    for (int d = 0; d <= 5; ++d) EXPECT_EQ(static_cast<long>(env.E->dim(d)), want[d]) << name << " degree " << d;
  }
  auto env = graded_enveloping(commutative_plane(Q{}), 4);
  EXPECT_EQ(env.E->dim(2), 10u);
  EXPECT_EQ(env.E->generator_name(2), "x.op");
}

TEST(Enveloping, OppositeFactorMultipliesInReverse) {
  auto pres = make_presentation(Q{}, {{"x", 1}, {"y", 1}}, {"x*x*y - y*x*x"});
  auto env = graded_enveloping(pres, 5);
  const auto& E = *env.E;
  auto A = std::dynamic_pointer_cast<const GradedAlgebra<Q>>(env.A);
  auto Aop = std::dynamic_pointer_cast<const GradedAlgebra<Q>>(env.Aop);
  EXPECT_EQ(A->hilbert_series(), Aop->hilbert_series());
  // (1 (x) b^op)(1 (x) d^op) = 1 (x) (d b)^op, with b = x, d = y.
  auto b = gen(E, 2), d = gen(E, 3);
  auto lhs = E.multiply(b, d);
  auto yx = A->to_poly(A->multiply(gen(*A, 1), gen(*A, 0)));
  auto rhs = env.right(Aop->element(yx.reversed()));
  EXPECT_TRUE(equal(Q{}, lhs.coords, rhs.coords));
  // Left and right factors commute.
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t h = 2; h < 4; ++h)
      EXPECT_TRUE(equal(Q{}, E.multiply(gen(E, g), gen(E, h)).coords, E.multiply(gen(E, h), gen(E, g)).coords));
}

TEST(Enveloping, InclusionsAndRetraction) {
  for (const auto& [name, pres] : fixtures::three_algebras()) {
    auto env = graded_enveloping(pres, 4);
    EXPECT_FALSE(env.left.multiplicativity_violation()) << name;
    EXPECT_FALSE(env.right.multiplicativity_violation()) << name;
    EXPECT_NO_THROW(env.retraction.validate()) << name;
    for (int d = 0; d <= 4; ++d)
      for (std::uint32_t i = 0; i < env.A->dim(d); ++i) {
        auto w = unit_vector(Q{}, i);
        EXPECT_TRUE(equal(Q{}, env.retraction.rho.apply(d, env.retraction.iota.apply(d, w)), w));
      }
  }
}

TEST(Bimodules, RoundTripThroughLeftEModules) {
  auto env = graded_enveloping(commutative_plane(Q{}), 4);
  for (auto M : {algebra_bimodule(env.A), trivial_bimodule(env.A), free_bimodule(env.A)}) {
    auto N = to_left_E_module(env, M);
    auto back = from_left_E_module(env, N);
    ASSERT_EQ(back.dims, M.dims);
    for (int d = 0; d < static_cast<int>(M.dims.size()); ++d)
      for (std::uint32_t i = 0; i < M.dim(d); ++i)
        for (std::size_t g = 0; g < 2; ++g) {
          if (d + 1 >= static_cast<int>(M.dims.size())) continue;
          auto v = unit_vector(Q{}, i);
          EXPECT_TRUE(equal(Q{}, back.left(g, d, v), M.left(g, d, v)));
          EXPECT_TRUE(equal(Q{}, back.right(d, v, g), M.right(d, v, g)));
        }
  }
}

TEST(Bimodules, NonCommutingActionsAreRejected) {
  auto env = graded_enveloping(free_plane(Q{}), 3);
  auto M = algebra_bimodule(env.A);
  auto A = env.A;
  // Right action replaced by left multiplication; x y m != y x m in the free algebra.
  M.right = [A](int d, const SparseVec<Q>& v, std::size_t g) { return A->gen_times(g, d, v); };
  EXPECT_THROW(to_left_E_module(env, M), ValidationError);
}

TEST(BimoduleResolution, ContractionAgreesWithLeftResolution) {
  for (const auto& [name, pres] : fixtures::three_algebras()) {
    auto env = graded_enveloping(pres, 6);
    auto cmp = bimodule_resolution_of_A(env, 3);
    EXPECT_TRUE(check_exactness(cmp.bires).ok()) << name;
    EXPECT_TRUE(cmp.contracted_exact) << name;
    EXPECT_TRUE(cmp.contracted_minimal) << name;
    EXPECT_TRUE(cmp.mismatches.empty()) << name;
    EXPECT_EQ(cmp.bires.ranks(), cmp.left.ranks()) << name;
  }
}

TEST(BimoduleResolution, ExteriorRanksGrow) {
  auto env = graded_enveloping(exterior_plane(Q{}), 5);
  auto cmp = bimodule_resolution_of_A(env, 3);
  EXPECT_EQ(cmp.bires.ranks(), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_TRUE(cmp.ok());
}

TEST(Kuenneth, CommutativePlane) {
  auto env = graded_enveloping(commutative_plane(Q{}), 6);
  auto B = kuenneth_biresolution(env, minimal_resolution_of_K(env.A, 3), minimal_resolution_of_K(env.Aop, 3, Side::right));
  EXPECT_EQ(B.ranks(), (std::vector<std::size_t>{1, 4, 6, 4, 1}));
  EXPECT_TRUE(check_exactness(B).ok());
  EXPECT_TRUE(check_minimality(B).minimal);
  EXPECT_EQ(oracle::dense_exactness(B), "");
}

TEST(Kuenneth, FreePlane) {
  auto env = graded_enveloping(free_plane(Q{}), 5);
  auto B = kuenneth_biresolution(env, minimal_resolution_of_K(env.A, 3), minimal_resolution_of_K(env.Aop, 3, Side::right));
  EXPECT_EQ(B.ranks(), (std::vector<std::size_t>{1, 4, 4}));
  EXPECT_TRUE(check_exactness(B).ok());
}

TEST(Kuenneth, LengthZero) {
  auto env = graded_enveloping(commutative_plane(Q{}), 4);
  auto B = kuenneth_biresolution(env, minimal_resolution_of_K(env.A, 0), minimal_resolution_of_K(env.Aop, 0, Side::right));
  EXPECT_EQ(B.ranks(), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(check_exactness(B).ok());
}

TEST(Kuenneth, RingMismatchIsRejected) {
  auto env = graded_enveloping(commutative_plane(Q{}), 4);
  auto other = graded_enveloping(commutative_plane(Q{}), 4);
  EXPECT_THROW(kuenneth_biresolution(env, minimal_resolution_of_K(other.A, 1), minimal_resolution_of_K(env.Aop, 1, Side::right)),
               Error);
}
