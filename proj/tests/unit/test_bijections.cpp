#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "vfk/bijections.hpp"

namespace {

using namespace vfk::bijections;

Natural N(std::uint64_t v) { return Natural(v); }

TEST(Pairing, ReproducesThePrintedTriangle) {
  // (a, b) -> subscript, as laid out in the five-by-five triangle.
  const std::vector<std::tuple<int, int, int>> table{
      {0, 0, 0},  {1, 0, 1},  {0, 1, 2},  {2, 0, 3},  {1, 1, 4},  {0, 2, 5},  {3, 0, 6}, {2, 1, 7},
      {1, 2, 8},  {0, 3, 9},  {4, 0, 10}, {3, 1, 11}, {2, 2, 12}, {1, 3, 13}, {0, 4, 14}};
  for (const auto& [a, b, n] : table) {
    EXPECT_EQ(pair(N(a), N(b)), N(n)) << a << "," << b;
    EXPECT_EQ(unpair(N(n)), std::make_pair(N(a), N(b)));
  }
}

TEST(Pairing, MatchesDiagonalWalk) {
  const auto walk = vfk::testing::diagonal_walk(5000);
  for (std::size_t n = 0; n < walk.size(); ++n) {
    ASSERT_EQ(pair(N(walk[n].first), N(walk[n].second)), N(n));
  }
}

TEST(Pairing, RoundTrips) {
  for (int a = 0; a <= 120; ++a) {
    for (int b = 0; b <= 120; ++b) {
      const auto [x, y] = unpair(pair(N(a), N(b)));
      ASSERT_EQ(x, N(a));
      ASSERT_EQ(y, N(b));
    }
  }
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    const auto [a, b] = unpair(N(n));
    ASSERT_EQ(pair(a, b), N(n));
  }
}

TEST(Pairing, MonotoneAcrossDiagonals) {
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      for (int c = 0; c <= 20; ++c) {
        for (int d = 0; d <= 20; ++d) {
          if (a + b < c + d) ASSERT_LT(pair(N(a), N(b)), pair(N(c), N(d)));
        }
      }
    }
  }
}

TEST(Pairing, ArbitraryPrecision) {
  const Natural big = parse_natural("340282366920938463463374607431768211457");  // 2^128 + 1
  const Natural n = pair(big, big * 3);
  EXPECT_EQ(unpair(n), std::make_pair(big, Natural(big * 3)));
  const Natural perfect = (Natural(1) << 300);
  EXPECT_EQ(isqrt(perfect * perfect), perfect);
  EXPECT_EQ(isqrt(perfect * perfect - 1), perfect - 1);
}

TEST(Triple, Examples) {
  EXPECT_EQ(triple(N(0), N(0), N(0)), N(0));
  EXPECT_EQ(triple(N(0), N(1), N(0)), N(2));
  EXPECT_EQ(triple(N(1), N(1), N(1)), N(19));
  EXPECT_EQ(untriple(N(19)), std::make_tuple(N(1), N(1), N(1)));
}

TEST(Triple, RoundTrips) {
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      for (int c = 0; c <= 20; ++c) {
        ASSERT_EQ(untriple(triple(N(a), N(b), N(c))), std::make_tuple(N(a), N(b), N(c)));
      }
    }
  }
}

TEST(StringRank, BinaryExamples) {
  EXPECT_EQ(string_rank(U"", U"01"), N(0));
  EXPECT_EQ(string_rank(U"0", U"01"), N(1));
  EXPECT_EQ(string_rank(U"1", U"01"), N(2));
  EXPECT_EQ(string_rank(U"00", U"01"), N(3));
  EXPECT_EQ(string_rank(U"000", U"01"), N(7));
  EXPECT_EQ(string_unrank(N(4), U"01"), U"01");
  EXPECT_EQ(string_rank(U"aaa", U"a"), N(3));
  EXPECT_EQ(string_unrank(N(3), U"a"), U"aaa");
}

TEST(StringRank, MatchesShortlexEnumeration) {
  for (const std::u32string alphabet : {U"01", U"abc", U"○□△x"}) {
    const auto all = vfk::testing::all_strings(alphabet, 6);
    for (std::size_t r = 0; r < all.size(); ++r) {
      ASSERT_EQ(string_rank(all[r], alphabet), N(r));
      ASSERT_EQ(string_unrank(N(r), alphabet), all[r]);
    }
  }
}

TEST(StringRank, AlphabetOrderIsAsGiven) {
  EXPECT_EQ(string_rank(U"1", U"10"), N(1));
  EXPECT_EQ(string_rank(U"0", U"10"), N(2));
}

TEST(StringRank, Errors) {
  EXPECT_THROW(string_rank(U"012", U"01"), vfk::InvalidArgument);
  EXPECT_THROW(string_rank(U"0", U""), vfk::InvalidArgument);
  EXPECT_THROW(string_rank(U"0", U"00"), vfk::InvalidArgument);
}

TEST(Rational, FirstValues) {
  EXPECT_EQ(rational_rank(ReducedFraction(N(0), N(1))), N(0));
  EXPECT_EQ(rational_unrank(N(0)), ReducedFraction(N(0), N(1)));
  const ReducedFraction q(N(3), N(7));
  EXPECT_EQ(rational_unrank(rational_rank(q)), q);
}

TEST(Rational, MatchesFilteredDiagonalWalk) {
  const auto walk = vfk::testing::rational_walk(3000);
  for (std::size_t n = 0; n < walk.size(); ++n) {
    const ReducedFraction q(N(walk[n].first), N(walk[n].second));
    ASSERT_EQ(rational_rank(q), N(n)) << q.str();
    ASSERT_EQ(rational_unrank(N(n)), q) << n;
  }
}

TEST(Rational, FirstHundredDistinctAndReduced) {
  std::set<std::pair<Natural, Natural>> seen;
  for (int n = 0; n < 100; ++n) {
    const ReducedFraction q = rational_unrank(N(n));
    EXPECT_EQ(boost::multiprecision::gcd(q.numerator(), q.denominator()), 1);
    EXPECT_TRUE(seen.emplace(q.numerator(), q.denominator()).second);
  }
}

TEST(Rational, RejectsNonReduced) {
  EXPECT_THROW(ReducedFraction(N(2), N(4)), NonReducedError);
  EXPECT_THROW(ReducedFraction(N(0), N(2)), NonReducedError);
  EXPECT_THROW(ReducedFraction(N(1), N(0)), vfk::InvalidArgument);
  EXPECT_THROW(ReducedFraction::parse("6/9"), NonReducedError);
  EXPECT_EQ(ReducedFraction::parse("5"), ReducedFraction(N(5), N(1)));
  EXPECT_EQ(ReducedFraction::parse("3/7").str(), "3/7");
}

TEST(Totient, SmallValues) {
  const int phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12};
  for (int m = 1; m < 14; ++m) EXPECT_EQ(totient(N(m)), N(phi[m])) << m;
}

TEST(Naturals, ParseAndPrint) {
  EXPECT_EQ(to_decimal(parse_natural("0")), "0");
  EXPECT_EQ(to_decimal(parse_natural("18446744073709551617")), "18446744073709551617");
  EXPECT_THROW(parse_natural("-1"), vfk::InvalidArgument);
  EXPECT_THROW(parse_natural(""), vfk::InvalidArgument);
  EXPECT_THROW(parse_natural("12a"), vfk::InvalidArgument);
}

}  // namespace
