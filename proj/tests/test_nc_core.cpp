#include <gtest/gtest.h>

#include <random>

#include "fpn/ncpoly.hpp"
#include "fpn/presentation.hpp"
#include "fpn/sparse.hpp"
#include "oracles.hpp"

using namespace fpn;

TEST(PrimeFieldTest, CanonicalRepresentatives) {
  PrimeField f(7);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.from_int(15), 1u);
  EXPECT_EQ(f.from_integer(mpz_class("-100000000000000000000")), 5u);  // 10^20 = 2 mod 7
  for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_THROW(f.inv(0), Error);
  EXPECT_THROW(PrimeField(8), Error);
}

TEST(RationalFieldTest, LowestTerms) {
  RationalField q;
  auto x = q.mul(q.from_int(6), q.inv(q.from_int(-4)));
  EXPECT_EQ(x.get_num(), -3);
  EXPECT_EQ(x.get_den(), 2);
}

TEST(FieldSpecTest, Parses) {
  EXPECT_EQ(parse_field_spec("Q").characteristic, 0u);
  EXPECT_EQ(parse_field_spec("GF(5)").characteristic, 5u);
  EXPECT_THROW(parse_field_spec("GF(6)"), Error);
  EXPECT_THROW(parse_field_spec("R"), Error);
}

TEST(WordOrderTest, Deglex) {
  Alphabet a({{"x", 1}, {"y", 1}});
  EXPECT_TRUE(deglex_compare(a, Word{0}, Word{0, 1}) < 0);
  EXPECT_TRUE(deglex_compare(a, Word{0, 1}, Word{1, 0}) < 0);
  EXPECT_TRUE(deglex_compare(a, Word{1, 0}, Word{1, 0}) == 0);
}

TEST(WordOrderTest, WeightedDegree) {
  Alphabet a({{"x", 1}, {"z", 3}});
  EXPECT_EQ(word_degree(a, Word{1, 0}), 4);
  EXPECT_TRUE(deglex_compare(a, Word{0, 0}, Word{1}) < 0);
}

namespace {
template <class F>
NCPoly<F> poly(const F& f, const AlphabetPtr& a, const std::string& s) {
  return to_ncpoly(parse_integer_poly(s, *a), f, a);
}
}  // namespace

TEST(NCPolyTest, MultiplicationIsConcatenation) {
  RationalField q;
  auto a = std::make_shared<const Alphabet>(std::vector<Generator>{{"x", 1}, {"y", 1}});
  auto p = poly(q, a, "x + y") * poly(q, a, "x");
  EXPECT_EQ(p, poly(q, a, "x*x + y*x"));
  EXPECT_FALSE(p == poly(q, a, "x*x + x*y"));
  EXPECT_EQ(poly(q, a, "1") * p, p);
}

TEST(NCPolyTest, CharacteristicTwo) {
  PrimeField f(2);
  auto a = std::make_shared<const Alphabet>(std::vector<Generator>{{"x", 1}, {"y", 1}});
  auto p = poly(f, a, "x + y");
  EXPECT_TRUE((p + p).is_zero());
}

TEST(NCPolyTest, ReversedAndHomogeneity) {
  RationalField q;
  auto a = std::make_shared<const Alphabet>(std::vector<Generator>{{"x", 1}, {"y", 1}});
  auto p = poly(q, a, "x*x*y - 2*y*x");
  EXPECT_FALSE(p.is_homogeneous());
  EXPECT_EQ(p.reversed(), poly(q, a, "y*x*x - 2*x*y"));
}

TEST(SparseTest, KernelMatchesDenseRank) {
  RationalField q;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> v(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + trial % 6, cols = 1 + (trial * 7) % 8;
    LinearMap<RationalField> m{rows, {}};
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<Entry<mpq_class>> t;
      for (std::size_t r = 0; r < rows; ++r)
        if (int x = v(rng); x != 0 && v(rng) > 0) t.push_back({static_cast<std::uint32_t>(r), mpq_class(x)});
      m.columns.push_back(collect(q, std::move(t)));
    }
    std::size_t rk = 0;
    auto ker = kernel(q, m, &rk);
    auto d = oracle::dense(q, m);
    EXPECT_EQ(rk, d.rank());
    EXPECT_EQ(ker.size(), cols - d.rank());
    for (const auto& k : ker) EXPECT_TRUE(apply(q, m, k).empty());
  }
}

TEST(SparseTest, SpanMembership) {
  PrimeField f(3);
  Span<PrimeField> s(f, 3);
  EXPECT_TRUE(s.insert({{0, 1}, {1, 1}}));
  EXPECT_TRUE(s.insert({{1, 1}, {2, 2}}));
  EXPECT_FALSE(s.insert({{0, 1}, {1, 2}, {2, 2}}));
  EXPECT_TRUE(s.contains({{0, 2}, {2, 2}}));
  EXPECT_FALSE(s.contains({{2, 1}}));
  EXPECT_EQ(s.rank(), 2u);
}
