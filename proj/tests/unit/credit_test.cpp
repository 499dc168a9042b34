#include "fss/credit.hpp"

#include <numeric>

#include <gtest/gtest.h>

#include "fss/error.hpp"
#include "support/fixtures.hpp"

namespace fss {
namespace {

using testing::byline;

const BylinePolicy kEqual{BylineKind::EqualSplit, {}};
const BylinePolicy kEmphasis{BylineKind::FirstLastEmphasis, {}};

void expect_weights(const std::vector<double>& got, const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12) << "position " << i + 1;
}

TEST(Credit, EqualSplit) {
  expect_weights(byline_weights(byline(4, {"I"}), kEqual), {0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(fractional_contribution(byline(1, {"I"}), 1, kEqual), 1.0);
}

TEST(Credit, IntramuralFive) {
  const auto b = byline(5, {"I"});
  ASSERT_TRUE(is_intramural(b));
  expect_weights(byline_weights(b, kEmphasis), {0.40, 0.20 / 3, 0.20 / 3, 0.20 / 3, 0.40});
}

TEST(Credit, ExtramuralSix) {
  const auto b = byline(6, {"I", "J", "K", "L", "M", "N"});
  ASSERT_FALSE(is_intramural(b));
  expect_weights(byline_weights(b, kEmphasis), {0.30, 0.15, 0.05, 0.05, 0.15, 0.30});
}

TEST(Credit, ShortBylinesRenormalize) {
  // n=4 extramural: ends and near-ends only, 0.9 rescaled to 1.
  expect_weights(byline_weights(byline(4, {"I", "J"}), kEmphasis), {1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3});
  // n=3 extramural: one near-end role for the middle author.
  expect_weights(byline_weights(byline(3, {"I", "J", "K"}), kEmphasis), {0.4, 0.2, 0.4});
  // n=2 either way splits evenly.
  expect_weights(byline_weights(byline(2, {"I", "J"}), kEmphasis), {0.5, 0.5});
  expect_weights(byline_weights(byline(2, {"I"}), kEmphasis), {0.5, 0.5});
  expect_weights(byline_weights(byline(1, {"I"}), kEmphasis), {1.0});
}

TEST(Credit, SumsToOneForEveryShape) {
  for (std::size_t n = 1; n <= 50; ++n) {
    for (const auto& institutions : {std::vector<std::string>{"I"}, std::vector<std::string>{"I", "J"}}) {
      auto b = byline(n, institutions);
      // Force the mural branch via the last author's institution.
      b.back().institution_id = institutions.size() == 1 ? "I" : "X";
      for (const auto& policy : {kEqual, kEmphasis}) {
        const auto w = byline_weights(b, policy);
        EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12) << "n=" << n;
        for (double x : w) EXPECT_GE(x, 0.0);
      }
    }
  }
}

TEST(Credit, PositionOutOfRange) {
  const auto b = byline(3, {"I"});
  EXPECT_THROW(fractional_contribution(b, 0, kEqual), InvalidArgument);
  EXPECT_THROW(fractional_contribution(b, 4, kEmphasis), InvalidArgument);
}

TEST(Credit, NegativeWeightsRejected) {
  BylinePolicy p = kEmphasis;
  p.weights.extramural_rest = -0.1;
  EXPECT_THROW(p.weights.validate(), InvalidArgument);
  EXPECT_THROW(byline_weights(byline(6, {"I", "J"}), p), InvalidArgument);
}

TEST(Credit, CustomWeightsStillSumToOne) {
  BylinePolicy p = kEmphasis;
  p.weights = {0.5, 0.1, 0.25, 0.2, 0.3};
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto w = byline_weights(byline(n, {"I", "J"}), p);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(Credit, ParseKind) {
  EXPECT_EQ(parse_byline_kind("equal"), BylineKind::EqualSplit);
  EXPECT_EQ(parse_byline_kind("first-last"), BylineKind::FirstLastEmphasis);
  EXPECT_EQ(parse_byline_kind(to_string(BylineKind::FirstLastEmphasis)), BylineKind::FirstLastEmphasis);
  EXPECT_THROW(parse_byline_kind("alphabetical"), InvalidArgument);
}

TEST(PolicyTable, FallbackAndOverrides) {
  PolicyTable t(kEqual);
  t.set("BIO/11", kEmphasis);
  EXPECT_EQ(t.for_field("BIO/11"), kEmphasis);
  EXPECT_EQ(t.for_field("MAT/05"), kEqual);
}

}  // namespace
}  // namespace fss
