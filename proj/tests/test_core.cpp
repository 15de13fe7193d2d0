#include <gtest/gtest.h>

#include <set>

#include "linkage/core.hpp"

using namespace linkage;

TEST(LocusSet, BasicOperations) {
  LocusSet s{3, 0, 5};
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(0));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.front(), 0u);
  EXPECT_EQ(s.back(), 5u);
  EXPECT_EQ(s.to_string(), "{0,3,5}");
  EXPECT_EQ(s.to_vector(), (std::vector<Locus>{0, 3, 5}));
  EXPECT_EQ((s - LocusSet{3}).to_string(), "{0,5}");
  EXPECT_TRUE(LocusSet({0, 5}).subset_of(s));
  EXPECT_TRUE(LocusSet({1, 2}).disjoint(s));
  EXPECT_EQ(LocusSet::range(2, 5), (LocusSet{2, 3, 4}));
  EXPECT_EQ(LocusSet::all(3), (LocusSet{0, 1, 2}));
}

TEST(LocusSet, LexOrder) {
  EXPECT_TRUE(lex_less(LocusSet{0, 5}, LocusSet{1, 2}));
  EXPECT_TRUE(lex_less(LocusSet{0, 1}, LocusSet{0, 2}));
  EXPECT_TRUE(lex_less(LocusSet{0}, LocusSet{0, 1}));
  EXPECT_FALSE(lex_less(LocusSet{1, 2}, LocusSet{1, 2}));
}

TEST(Enumeration, PatternsInTextOrder) {
  std::vector<std::string> seen;
  for_each_pattern(LocusSet{1, 3}, [&](std::uint64_t values) {
    seen.push_back(Assignment::from_masks(LocusSet{1, 3}, values).to_pattern(4));
    return true;
  });
  EXPECT_EQ(seen, (std::vector<std::string>{"*0*0", "*0*1", "*1*0", "*1*1"}));
}

TEST(Enumeration, CombinationsLexicographic) {
  std::vector<std::string> seen;
  for_each_combination(LocusSet{0, 2, 3, 7}, 2, [&](LocusSet s) {
    seen.push_back(s.to_string());
    return true;
  });
  EXPECT_EQ(seen, (std::vector<std::string>{"{0,2}", "{0,3}", "{0,7}", "{2,3}", "{2,7}", "{3,7}"}));
  int count = 0;
  for_each_combination(LocusSet::all(6), 0, [&](LocusSet s) {
    EXPECT_TRUE(s.empty());
    ++count;
    return true;
  });
  EXPECT_EQ(count, 1);
}

TEST(Enumeration, SubmasksVisitEachOnce) {
  std::set<std::uint64_t> seen;
  for_each_submask(0b101100, [&](std::uint64_t m) {
    EXPECT_TRUE(seen.insert(m).second);
    EXPECT_EQ(m & ~std::uint64_t{0b101100}, 0u);
    return true;
  });
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Enumeration, EarlyStop) {
  int calls = 0;
  const bool finished = for_each_pattern(LocusSet{0, 1, 2}, [&](std::uint64_t) { return ++calls < 3; });
  EXPECT_FALSE(finished);
  EXPECT_EQ(calls, 3);
}

TEST(Fitness, HalfUnitsAreExact) {
  EXPECT_EQ(Fitness::from_double(1.5), Fitness::halves(3));
  EXPECT_EQ(Fitness::units(2) + Fitness::halves(1), Fitness::from_double(2.5));
  EXPECT_EQ(Fitness::from_double(1.5).to_string(), "1.5");
  EXPECT_EQ(Fitness::from_double(-0.5).to_string(), "-0.5");
  EXPECT_EQ(Fitness::units(-3).to_string(), "-3");
  EXPECT_LT(Fitness::lowest(), Fitness::units(-1000000));
  EXPECT_THROW(Fitness::from_double(0.3), ParseError);
}

TEST(Chromosome, TextFormAndOrder) {
  const Chromosome c = Chromosome::parse("1011");
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], 1);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c.to_string(), "1011");
  EXPECT_EQ(c.count_ones(), 3u);
  EXPECT_EQ(c.complement().to_string(), "0100");
  EXPECT_LT(Chromosome::parse("0111"), Chromosome::parse("1000"));
  EXPECT_LT(Chromosome::parse("0010"), Chromosome::parse("0011"));
  EXPECT_THROW(Chromosome::parse("10a"), ParseError);
  EXPECT_THROW(c[4], InvalidArgument);
  EXPECT_THROW(Chromosome(65), InvalidArgument);
}

TEST(Assignment, ApplyAndCoverage) {
  const Assignment a{{1, 0}, {3, 1}};
  EXPECT_EQ(a.coverage(), (LocusSet{1, 3}));
  EXPECT_EQ(a.to_string(), "{1:0, 3:1}");
  EXPECT_EQ(a.to_pattern(5), "*0*1*");
  EXPECT_EQ(a[1], std::optional<Allele>(0));
  EXPECT_EQ(a[2], std::nullopt);
  EXPECT_EQ(a.apply(Chromosome::parse("11100")).to_string(), "10110");
  EXPECT_TRUE(a.matches(Chromosome::parse("00010")));
  EXPECT_FALSE(a.matches(Chromosome::parse("01010")));
  EXPECT_THROW(a.apply(Chromosome::parse("111")), InvalidArgument);
  EXPECT_THROW((Assignment{{1, 0}, {1, 1}}), InvalidArgument);
}

TEST(Assignment, BatchMergeWithout) {
  const Chromosome g = Chromosome::parse("1010");
  EXPECT_EQ(batch(LocusSet{0, 1, 2}, g).to_pattern(4), "101*");
  EXPECT_EQ(batch(LocusSet{0, 3}, Allele{1}).to_pattern(4), "1**1");
  const Assignment a = batch(LocusSet{0}, Allele{1}).merged(batch(LocusSet{2}, Allele{0}));
  EXPECT_EQ(a.to_pattern(3), "1*0");
  EXPECT_EQ(a.without(0).to_pattern(3), "**0");
  EXPECT_EQ(a.restricted(LocusSet{2}).to_pattern(3), "**0");
  EXPECT_THROW(a.merged(Assignment{{0, 1}}), InvalidArgument);
  EXPECT_EQ(apply(a, Chromosome::zeros(3)).to_string(), "100");
  EXPECT_EQ(coverage(a), (LocusSet{0, 2}));
}

TEST(Ratio, ReducedAndCompared) {
  const Ratio r = Ratio::make(6, 8);
  EXPECT_EQ(r.num, 3);
  EXPECT_EQ(r.den, 4);
  EXPECT_EQ(r.to_string(), "3/4");
  EXPECT_EQ(Ratio::make(2, 2).to_string(), "1");
  EXPECT_EQ(Ratio::make(1, 2), Ratio::make(2, 4));
  EXPECT_LT(Ratio::make(1, 3), Ratio::make(1, 2));
  EXPECT_THROW(Ratio::make(1, 0), InvalidArgument);
}

TEST(Limits, CapExceededCarriesSizes) {
  const Limits l;
  try {
    l.require(30, 24, "enumeration");
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.required_bits(), 30u);
    EXPECT_EQ(e.cap_bits(), 24u);
  }
  EXPECT_NO_THROW(l.require(24, 24, "enumeration"));
}
