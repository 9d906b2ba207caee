#include <gtest/gtest.h>

#include "qmhs/multiindex.hpp"

using namespace qmhs;
using S = std::set<std::size_t>;

TEST(MultiIndex, ParseAndValidate) {
  EXPECT_EQ(MultiIndex::parse("2,1,3"), (MultiIndex{2, 1, 3}));
  EXPECT_EQ(MultiIndex::parse(" 4 "), (MultiIndex{4}));
  EXPECT_EQ(MultiIndex::parse("2,1,3").to_string(), "2,1,3");
  EXPECT_THROW(MultiIndex::parse(""), std::invalid_argument);
  EXPECT_THROW(MultiIndex::parse("1,0"), std::invalid_argument);
  EXPECT_THROW(MultiIndex::parse("-1"), std::invalid_argument);
  EXPECT_THROW(MultiIndex::parse("1,,2"), std::invalid_argument);
  EXPECT_THROW(MultiIndex::parse("1,a"), std::invalid_argument);
  EXPECT_THROW(MultiIndex(std::vector<unsigned>{}), std::invalid_argument);
  MultiIndex m{3, 1};
  EXPECT_EQ(m.weight(), 4u);
  EXPECT_EQ(m.length(), 2u);
}

TEST(SubsetEncoding, Examples) {
  EXPECT_EQ(subset_encode(MultiIndex{3}), S{});
  EXPECT_EQ(subset_encode(MultiIndex{1, 2}), S{1});
  EXPECT_EQ(subset_encode(MultiIndex{2, 1}), S{2});
  EXPECT_EQ(subset_encode(MultiIndex{1, 1, 1}), (S{1, 2}));
  EXPECT_EQ(subset_decode(3, S{2}), (MultiIndex{2, 1}));
  EXPECT_EQ(subset_decode(1, S{}), (MultiIndex{1}));
  EXPECT_EQ(subset_decode(4, S{1, 2, 3}), (MultiIndex{1, 1, 1, 1}));
  EXPECT_THROW(subset_decode(3, S{3}), std::invalid_argument);
  EXPECT_THROW(subset_decode(3, S{0}), std::invalid_argument);
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual(MultiIndex{2, 2}), (MultiIndex{1, 2, 1}));
  EXPECT_EQ(dual(MultiIndex{1, 1, 2}), (MultiIndex{3, 1}));
  EXPECT_EQ(dual(MultiIndex{4}), (MultiIndex{1, 1, 1, 1}));
  EXPECT_EQ(dual(MultiIndex{1}), (MultiIndex{1}));
}

TEST(MinusReduce, Examples) {
  EXPECT_EQ(minus_reduce(MultiIndex{3, 1}), (MultiIndex{2, 1}));
  EXPECT_EQ(minus_reduce(MultiIndex{1, 2}), (MultiIndex{2}));
  EXPECT_EQ(minus_reduce(MultiIndex{2}), (MultiIndex{1}));
  EXPECT_THROW(minus_reduce(MultiIndex{1}), std::domain_error);
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_by_weight(1), (std::vector<MultiIndex>{{1}}));
  EXPECT_EQ(enumerate_by_weight(2), (std::vector<MultiIndex>{{2}, {1, 1}}));
  EXPECT_EQ(enumerate_by_weight(3), (std::vector<MultiIndex>{{3}, {1, 2}, {2, 1}, {1, 1, 1}}));
  EXPECT_EQ(enumerate_up_to_weight(5).size(), 31u);
  EXPECT_THROW(enumerate_by_weight(0), std::invalid_argument);
}

TEST(Dual, PropertiesUpToWeight8) {
  for (std::size_t m = 1; m <= 8; ++m) {
    auto all = enumerate_by_weight(m);
    EXPECT_EQ(all.size(), std::size_t{1} << (m - 1));
    std::set<MultiIndex> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    for (const auto& mu : all) {
      const MultiIndex d = dual(mu);
      EXPECT_EQ(dual(d), mu);
      EXPECT_EQ(d.weight(), mu.weight());
      EXPECT_EQ((mu.length() - 1) + (d.length() - 1), mu.weight() - 1);
      EXPECT_EQ(subset_decode(m, subset_encode(mu)), mu);
      if (m >= 2) EXPECT_EQ(minus_reduce(d), dual(minus_reduce(mu))) << mu;
    }
  }
}
