#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fpn/group_rings.hpp"
#include "fpn/retraction.hpp"
#include "fpn/retraction_file.hpp"
#include "fpn/verify.hpp"
#include "oracles.hpp"

using namespace fpn;
using Q = RationalField;

namespace {

std::string data(const std::string& name) { return read_text_file(std::string(FPN_DATA_DIR) + "/" + name); }

struct PlaneToLine {
  GradedAlgebraPtr<Q> R, S;
  RetractionPtr<Q> ret;
};

// K[x,y] -> K[x], y -> 0, with the inclusion as section.
PlaneToLine plane_to_line(int D) {
  Q f;
  auto R = GradedAlgebra<Q>::make(fixtures::commutative_plane(f), D);
  auto S = GradedAlgebra<Q>::make(make_presentation(f, {{"x", 1}}, {}), D);
  auto ret = std::make_shared<const RingRetraction<Q>>(
      graded_retraction<Q>(R, S, {S->generator_element(0), {}}, {R->generator_element(0)}));
  return {R, S, ret};
}

DegreeMaps<Q> identity_maps(const Module<Q>& M) {
  DegreeMaps<Q> out(M.degree_bound() + 1);
  for (int d = 0; d <= M.degree_bound(); ++d) {
    out[d].rows = M.dim(d);
    for (std::uint32_t i = 0; i < M.dim(d); ++i) out[d].columns.push_back(unit_vector(Q{}, i));
  }
  return out;
}

DegreeMaps<Q> zero_maps(const Module<Q>& from, const Module<Q>& to) {
  DegreeMaps<Q> out(from.degree_bound() + 1);
  for (int d = 0; d <= from.degree_bound(); ++d) {
    out[d].rows = to.dim(d);
    out[d].columns.assign(from.dim(d), {});
  }
  return out;
}

}  // namespace

TEST(Retraction, ValidRetractionIsAugmented) {
  auto p = plane_to_line(4);
  EXPECT_NO_THROW(p.ret->validate());
  EXPECT_TRUE(p.ret->augmented());
}

TEST(Retraction, BrokenSectionNamesAWitness) {
  Q f;
  auto R = GradedAlgebra<Q>::make(fixtures::commutative_plane(f), 4);
  auto S = GradedAlgebra<Q>::make(make_presentation(f, {{"x", 1}}, {}), 4);
  try {
    graded_retraction<Q>(R, S, {{}, S->generator_element(0)}, {R->generator_element(0)});
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("rho(iota(x))"), std::string::npos) << e.what();
  }
}

TEST(Pair, TrivialPairValidates) {
  auto p = plane_to_line(4);
  auto pair = trivial_pair(p.ret);
  EXPECT_NO_THROW(pair->validate());
  EXPECT_EQ(pair->dim_L(0), 1u);
}

TEST(Pair, ZeroPlusIsRejected) {
  auto p = plane_to_line(4);
  auto good = trivial_pair(p.ret);
  RetractivePair<Q> bad = *good;
  bad.plus = zero_maps(*bad.M, *bad.L);
  try {
    bad.validate();
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha+ alpha- != id"), std::string::npos);
  }
}

TEST(Pair, DamagedMinusIsRejected) {
  // M = R, L = S; then alpha- is moved off iota.
  auto p = plane_to_line(3);
  auto M = regular_module<Q>(p.R);
  auto L = regular_module<Q>(p.S);
  RetractivePair<Q> pair{p.ret, M, L, p.ret->rho.matrices(), p.ret->iota.matrices(), std::nullopt, std::nullopt};
  EXPECT_NO_THROW(pair.validate());
  for (int d = 1; d <= 3; ++d) pair.minus[d].columns[0] = unit_vector(Q{}, static_cast<std::uint32_t>(p.R->dim(d) - 1));
  EXPECT_THROW(pair.validate(), ValidationError);
}

TEST(Step, DoublesGenerators) {
  auto p = plane_to_line(4);
  auto pair = trivial_pair(p.ret);
  ModuleElement<Q> one{0, unit_vector(Q{}, 0)};
  auto step = proposition1_step(pair, {one, one, one});
  EXPECT_EQ(step.top.source().rank(), 6u);
  EXPECT_EQ(step.bottom.source().rank(), 3u);
  EXPECT_FALSE(step.map.violation().has_value());
  EXPECT_NO_THROW(step.free_pair->validate());
}

TEST(Step, NonGeneratingSetIsRejected) {
  auto p = plane_to_line(4);
  auto M = regular_module<Q>(p.R);
  auto L = regular_module<Q>(p.S);
  auto pair = std::make_shared<const RetractivePair<Q>>(
      RetractivePair<Q>{p.ret, M, L, p.ret->rho.matrices(), p.ret->iota.matrices(), std::nullopt, std::nullopt});
  ModuleElement<Q> x{1, unit_vector(Q{}, 0)};
  try {
    proposition1_step(pair, {x});
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("do not generate"), std::string::npos);
  }
}

TEST(Step, ZeroSmallModule) {
  auto p = plane_to_line(4);
  auto M = TrivialModule<Q>::make(p.R);
  auto L = std::make_shared<const ActionModule<Q>>(p.S, std::vector<std::size_t>(5, 0),
                                                   [](std::size_t, int, const SparseVec<Q>&) { return SparseVec<Q>{}; });
  auto pair = std::make_shared<const RetractivePair<Q>>(
      RetractivePair<Q>{p.ret, M, L, zero_maps(*M, *L), zero_maps(*L, *M), std::nullopt, std::nullopt});
  EXPECT_NO_THROW(pair->validate());
  auto t = transport_fpn<Q>(pair, 2);
  EXPECT_TRUE(t.top_exactness.ok());
  EXPECT_TRUE(t.bottom_exactness.ok());
  EXPECT_TRUE(t.rank_law);
}

TEST(PairKernel, IdentityMapHasZeroKernel) {
  auto p = plane_to_line(4);
  auto M = regular_module<Q>(p.R);
  auto L = regular_module<Q>(p.S);
  auto pair = std::make_shared<const RetractivePair<Q>>(
      RetractivePair<Q>{p.ret, M, L, p.ret->rho.matrices(), p.ret->iota.matrices(), std::nullopt, std::nullopt});
  PairMap<Q> id{pair, pair, identity_maps(*M), identity_maps(*L)};
  EXPECT_FALSE(id.violation().has_value());
  auto k = pair_kernel(id);
  EXPECT_TRUE(k.sub_M->is_zero());
  EXPECT_TRUE(k.sub_L->is_zero());
  auto im = pair_image(id);
  EXPECT_EQ(im.sub_M->dims(), M->dims());
}

TEST(PairKernel, ZeroMapKeepsEverything) {
  auto p = plane_to_line(4);
  auto M = regular_module<Q>(p.R);
  auto L = regular_module<Q>(p.S);
  auto pair = std::make_shared<const RetractivePair<Q>>(
      RetractivePair<Q>{p.ret, M, L, p.ret->rho.matrices(), p.ret->iota.matrices(), std::nullopt, std::nullopt});
  PairMap<Q> zero{pair, pair, zero_maps(*M, *M), zero_maps(*L, *L)};
  auto k = pair_kernel(zero);
  EXPECT_EQ(k.sub_M->dims(), M->dims());
  EXPECT_EQ(k.sub_L->dims(), L->dims());
  EXPECT_TRUE(pair_image(zero).sub_M->is_zero());
}

TEST(Transport, PlaneToLineRankLaw) {
  auto p = plane_to_line(8);
  auto t = transport_trivial(p.ret, 2);
  EXPECT_EQ(t.twin.generator_counts, (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_EQ(t.twin.top.ranks(), (std::vector<std::size_t>{2, 6, 8}));
  EXPECT_EQ(t.twin.bottom.ranks(), (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_TRUE(t.top_exactness.ok());
  EXPECT_TRUE(t.bottom_exactness.ok());
  EXPECT_TRUE(t.rank_law);
  EXPECT_EQ(t.verdict.verdict, Verdict::certified);
  EXPECT_EQ(oracle::dense_exactness(t.twin.bottom), "");
  EXPECT_EQ(oracle::dense_exactness(t.twin.top), "");
}

TEST(Transport, NonAugmentedRetractionIsRejected) {
  // K[C2] -> K with g -> -1 splits the unit map but moves the augmentation.
  auto KC2 = MonoidAlgebra<Q>::make(Q{}, cyclic_group(2));
  auto K = MonoidAlgebra<Q>::make(Q{}, cyclic_group(1));
  auto ret = std::make_shared<const RingRetraction<Q>>(
      RingRetraction<Q>{RingHom<Q>(KC2, K, {SparseVec<Q>{{0, mpq_class(-1)}}}), RingHom<Q>(K, KC2, {})});
  EXPECT_NO_THROW(ret->validate());
  EXPECT_FALSE(ret->augmented());
  EXPECT_THROW(transport_trivial(ret, 2), ValidationError);
}

TEST(RetractionFile, ParsesBothArrowStyles) {
  auto f = parse_retraction_file(data("poly2_to_poly1.ret"));
  EXPECT_EQ(f.rho.size(), 2u);
  EXPECT_EQ(f.iota.size(), 1u);
  auto g = instantiate(f, Q{}, 5);
  EXPECT_TRUE(g.retraction.augmented());
  auto id = parse_retraction_file(data("identity.ret"));
  EXPECT_EQ(id.rho.size(), 2u);
  EXPECT_NO_THROW(instantiate(id, Q{}, 4));
}

TEST(RetractionFile, BrokenSectionFailsValidation) {
  auto f = parse_retraction_file(data("broken_section.ret"));
  try {
    instantiate(f, Q{}, 4);
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("rho(iota(x))"), std::string::npos) << e.what();
  }
}

TEST(RetractionFile, Errors) {
  EXPECT_THROW(parse_retraction_file("field Q\n[big]\ngenerators x\n"), ParseError);
  try {
    instantiate(parse_retraction_file("field Q\n[big]\ngenerators x\n[small]\ngenerators x\nretraction x -> x*x\nsection x -> x\n"), Q{}, 4);
    FAIL() << "accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
}
