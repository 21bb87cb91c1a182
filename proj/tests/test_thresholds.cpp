#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "factor_forge/thresholds.hpp"
#include "support.hpp"

using namespace factor_forge;

namespace {

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidParams;
}

template <class Fn>
void for_grid(Fn&& fn) {
  for (std::int64_t r = 1; r <= 6; ++r)
    for (std::int64_t s = 0; s <= 4; ++s)
      for (std::int64_t a = 1; a <= 6; ++a)
        for (std::int64_t t = 1; t <= 4; ++t) fn(ThresholdParams{r, s, a, t});
}

// Cells with r even, a odd where the interval search lands below the
// closed form; the search value there equals pi.
const std::set<std::tuple<int, int, int, int>> kLowEvenOddCells = {
    {2, 0, 1, 1}, {2, 0, 3, 2}, {2, 0, 5, 3}, {2, 2, 3, 1}, {2, 2, 5, 2},
    {2, 4, 5, 1}, {4, 0, 3, 1}, {4, 2, 5, 1}, {6, 0, 5, 1},
};

}  // namespace

TEST(Parity, Classification) {
  EXPECT_EQ((ThresholdParams{2, 0, 2, 1}.parity()), Parity::EE);
  EXPECT_EQ((ThresholdParams{3, 0, 2, 1}.parity()), Parity::OE);
  EXPECT_EQ((ThresholdParams{2, 0, 1, 1}.parity()), Parity::EO);
  EXPECT_EQ((ThresholdParams{1, 0, 1, 1}.parity()), Parity::OO);
}

TEST(BigN, Examples) {
  EXPECT_EQ(big_n({2, 0, 2, 1}), 2);
  EXPECT_EQ(big_n({2, 0, 1, 5}), 26);
  EXPECT_EQ(big_n({1, 0, 1, 1}), 0);
  EXPECT_EQ(kind_of([] { big_n({2, 0, 0, 1}); }), ErrorKind::DivisionByZero);
}

TEST(Beta, EqualsN) {
  EXPECT_EQ(beta({2, 0, 2, 1}), 2);
  EXPECT_EQ(beta({2, 0, 1, 5}), 26);
  EXPECT_EQ(beta({1, 0, 1, 1}), 0);
  EXPECT_EQ(kind_of([] { beta({1, 0, 0, 1}); }), ErrorKind::DivisionByZero);
}

TEST(Sigma, PublishedValues) {
  EXPECT_EQ(sigma({2, 0, 1, 5}), 28);
  EXPECT_EQ(sigma({1, 0, 1, 1}), 1);
  EXPECT_EQ(sigma({4, 0, 1, 1}), 16);
  EXPECT_EQ(sigma({3, 0, 1, 1}), 10);
}

TEST(Sigma, RegularCaseMatchesSquareFormula) {
  for (std::int64_t r = 3; r <= 9; ++r)
    EXPECT_EQ(sigma({r, 0, 1, 1}), r % 2 == 0 ? r * r : r * r + 1) << "r=" << r;
}

TEST(Sigma, EvenEvenAgreesWithIndependentSearch) {
  EXPECT_EQ(sigma({2, 0, 2, 1}), 2);
  EXPECT_EQ(ff_test::sigma_direct(2, 0, 2, 1, 20), std::optional<std::int64_t>(2));
}

TEST(Sigma, SmallSpecialCases) {
  // t = 1 and a large: the graph's own degree already fits one factor.
  EXPECT_EQ(sigma({3, 0, 4, 1}), 3);
  EXPECT_EQ(sigma({3, 1, 5, 1}), 3);
  EXPECT_EQ(sigma({3, 1, 3, 2}), 3 * 3 + 3 + 1);  // odd/odd, t = 2 takes the main branch
}

TEST(Sigma, Errors) {
  EXPECT_EQ(kind_of([] { sigma({0, 0, 1, 1}); }), ErrorKind::OutOfScope);
  EXPECT_EQ(kind_of([] { sigma({1, 0, 0, 1}); }), ErrorKind::OutOfScope);
}

TEST(FeasibleSet, TwentyNineRegularExample) {
  const auto fs = feasible_x_set(29, 0, 2, 1);
  EXPECT_EQ(fs.members, (std::vector<std::int64_t>{10, 11, 12, 13, 14}));
  EXPECT_TRUE(fs.side_condition_met);
  EXPECT_TRUE(fs.lower_open);
  EXPECT_FALSE(fs.upper_open);
}

TEST(FeasibleSet, EvenEvenClosed) {
  const auto fs = feasible_x_set(4, 0, 2, 2);
  EXPECT_EQ(fs.members, (std::vector<std::int64_t>{1, 2}));
  EXPECT_FALSE(fs.lower_open);
  EXPECT_FALSE(fs.upper_open);
}

TEST(FeasibleSet, SideConditionFailureAddsSingleFactor) {
  const auto fs = feasible_x_set(3, 0, 3, 1);
  EXPECT_EQ(fs.members, (std::vector<std::int64_t>{1}));
  EXPECT_FALSE(fs.side_condition_met);
}

TEST(FeasibleSet, Errors) {
  EXPECT_EQ(kind_of([] { feasible_x_set(4, 0, 0, 1); }), ErrorKind::OutOfScope);
}

TEST(FeasibleSet, MatchesDirectComparisonsEverywhere) {
  for (std::int64_t r = 1; r <= 6; ++r)
    for (std::int64_t a = 0; a <= 6; ++a)
      for (std::int64_t s = 0; s <= 5; ++s)
        for (std::int64_t d = 1; d <= 70; ++d) {
          const auto fs = feasible_x_set(d, s, r, a);
          ASSERT_EQ(fs.members, ff_test::members_direct(d, s, r, a)) << d << ' ' << s << ' ' << r << ' ' << a;
          for (std::size_t i = 1; i < fs.members.size(); ++i) ASSERT_EQ(fs.members[i], fs.members[i - 1] + 1);
        }
}

TEST(FeasibleSet, RandomProbesAgreeWithMembership) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t r = 1 + static_cast<std::int64_t>(rng() % 8), a = static_cast<std::int64_t>(rng() % 8);
    const std::int64_t s = static_cast<std::int64_t>(rng() % 8), d = 1 + static_cast<std::int64_t>(rng() % 200);
    const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % 60);
    const auto fs = feasible_x_set(d, s, r, a);
    const bool lo_ok = fs.lower_open ? fs.lower < x : fs.lower <= x;
    const bool hi_ok = fs.upper_open ? x < fs.upper : x <= fs.upper;
    bool expect = lo_ok && hi_ok;
    if (!fs.side_condition_met && x == 1 && r <= d && d + s <= r + a) expect = true;
    EXPECT_EQ(fs.contains(x), expect);
  }
}

TEST(FeasibleSet, EvenEvenEndpointsAreMembers) {
  for (std::int64_t r = 2; r <= 8; r += 2)
    for (std::int64_t a = 2; a <= 8; a += 2)
      for (std::int64_t s = 0; s <= 6; ++s)
        for (std::int64_t d = 1; d <= 80; ++d) {
          const auto fs = feasible_x_set(d, s, r, a);
          const std::int64_t lo = std::max<std::int64_t>(1, fs.lower.ceil()), hi = fs.upper.floor();
          if (lo > hi) continue;
          EXPECT_TRUE(fs.contains(lo));
          EXPECT_TRUE(fs.contains(hi));
        }
}

TEST(SigmaBySearch, Examples) {
  EXPECT_EQ(sigma_by_search({2, 0, 1, 5}, 60), 28);
  EXPECT_EQ(sigma_by_search({2, 0, 2, 1}, 20), 2);
  EXPECT_EQ(sigma_by_search({3, 0, 2, 2}, 60), 16);
  EXPECT_EQ(sigma({3, 0, 2, 2}), 16);
}

TEST(SigmaBySearch, ExhaustedWhenCapTooLow) {
  EXPECT_EQ(kind_of([] { sigma_by_search({2, 0, 1, 5}, 10); }), ErrorKind::SearchExhausted);
}

TEST(SigmaBySearch, AgreesWithIndependentScanOnGrid) {
  for_grid([](const ThresholdParams& p) {
    const std::int64_t cap = sigma_upper_formula(p) + 3 * (p.r + p.a);
    ASSERT_EQ(std::optional<std::int64_t>(sigma_by_search(p, cap)), ff_test::sigma_direct(p.r, p.s, p.a, p.t, cap))
        << to_string(p);
  });
}

TEST(SigmaBySearch, ClosedFormDivergesOnlyOnKnownCells) {
  for_grid([](const ThresholdParams& p) {
    const auto search = sigma_by_search(p, sigma(p) + 3 * (p.r + p.a));
    const bool known = kLowEvenOddCells.count({int(p.r), int(p.s), int(p.a), int(p.t)}) > 0;
    if (!known) {
      EXPECT_EQ(search, sigma(p)) << to_string(p);
    } else {
      EXPECT_LT(search, sigma(p)) << to_string(p);
      const auto pv = pi(p);
      ASSERT_TRUE(pv.finite()) << to_string(p);
      EXPECT_EQ(search, pv.value) << to_string(p);
    }
  });
}

TEST(SigmaBounds, Examples) {
  EXPECT_EQ(sigma_bounds({2, 0, 2, 1}), (std::pair<std::int64_t, std::int64_t>{2, 5}));
  const auto [lo, hi] = sigma_bounds({3, 1, 2, 2});
  EXPECT_LE(lo, sigma({3, 1, 2, 2}));
  EXPECT_LE(sigma({3, 1, 2, 2}), hi);
  EXPECT_EQ(big_n({2, 0, 1, 5}), 26);
  EXPECT_EQ(sigma_upper_formula({2, 0, 1, 5}), 31);
  EXPECT_EQ(kind_of([] { sigma_bounds({2, 0, 1, 5}); }), ErrorKind::OutOfScope);
}

TEST(SigmaBounds, ChainHoldsOnGrid) {
  for_grid([](const ThresholdParams& p) {
    EXPECT_LE(big_n(p), sigma(p)) << to_string(p);
    EXPECT_LE(sigma(p), sigma_upper_formula(p)) << to_string(p);
  });
}

TEST(Pi, Examples) {
  EXPECT_EQ(pi({3, 2, 0, 1}).kind, PiValue::Kind::Infinite);
  EXPECT_EQ(pi({1, 0, 1, 1}).value, 1);
  EXPECT_TRUE(pi({1, 0, 1, 1}).finite());
  EXPECT_EQ(pi({2, 0, 2, 1}).value, 2);
  EXPECT_EQ(pi({2, 0, 1, 1}).value, 2);
  EXPECT_EQ(pi({3, 0, 1, 1}).kind, PiValue::Kind::Infinite);
}

TEST(Pi, OddRWithAEqualTwoIsFlagged) {
  EXPECT_TRUE(pi({1, 0, 2, 1}).conjectured);
  EXPECT_EQ(pi({1, 0, 2, 1}).value, 1);
  EXPECT_EQ(pi({3, 2, 2, 1}).kind, PiValue::Kind::Infinite);
  EXPECT_EQ(pi({3, 0, 2, 1}).kind, PiValue::Kind::Undetermined);
}

TEST(Pi, ResidueCorrections) {
  // r even, a odd: N(r,s,a-1,t), minus r when rt+s = 2 mod (a-1).
  EXPECT_EQ(pi({2, 0, 3, 1}).value, big_n({2, 0, 2, 1}) - 2);
  EXPECT_EQ(pi({2, 1, 3, 1}).value, big_n({2, 1, 2, 1}));
  // r odd, a odd: N(r+1,s,a-1,t) - 1, or - (r+1) - 1 when (r+1)t+s = 2 mod (a-1).
  EXPECT_EQ(pi({1, 0, 3, 1}).value, big_n({2, 0, 2, 1}) - 2 - 1);
  EXPECT_EQ(pi({1, 1, 3, 1}).value, big_n({2, 1, 2, 1}) - 1);
}

TEST(Pi, ChainViolationsAreReportedByCrosscheck) {
  int violations = 0;
  for_grid([&](const ThresholdParams& p) {
    const auto pv = pi(p);
    if (!pv.finite() || pv.value >= sigma(p)) return;
    ++violations;
    const auto rep = crosscheck(p);
    const auto* d = rep.discrepancy(formula::kSigma, formula::kPi);
    ASSERT_NE(d, nullptr) << to_string(p);
    EXPECT_EQ(d->difference, sigma(p) - pv.value);
  });
  EXPECT_GT(violations, 0);
}

TEST(MuBounds, Examples) {
  EXPECT_EQ(mu_bounds(3), (std::pair<std::int64_t, std::int64_t>{10, 10}));
  EXPECT_EQ(mu_bounds(4), (std::pair<std::int64_t, std::int64_t>{15, 37}));
  EXPECT_EQ(mu_bounds(1), (std::pair<std::int64_t, std::int64_t>{2, 2}));
}

TEST(Crosscheck, AllAgreeAtTwentyEight) {
  const auto rep = crosscheck({2, 0, 1, 5});
  for (const char* name : {formula::kSigma, formula::kSigmaA1, formula::kSigmaSearch}) {
    const auto* v = rep.find(name);
    ASSERT_NE(v, nullptr) << name;
    EXPECT_EQ(v->value, 28) << name;
  }
  // 2 * ceil(9 / 1) + 4 * 2 = 26 sits strictly below the threshold here.
  EXPECT_EQ(rep.find(formula::kBigN)->value, 26);
  EXPECT_TRUE(rep.discrepancies.empty());
}

TEST(Crosscheck, ReportsFormulaConflictWithoutResolving) {
  const auto rep = crosscheck({2, 2, 1, 1});
  EXPECT_EQ(rep.find(formula::kSigmaA1)->value, 11);
  EXPECT_EQ(rep.find(formula::kSigma)->value, 8);
  const auto* d = rep.discrepancy(formula::kSigma, formula::kSigmaA1);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(std::abs(d->difference), 3);
}

TEST(Crosscheck, EvenEvenOracleAgreement) {
  const auto rep = crosscheck({4, 0, 2, 2});
  const auto n = big_n({4, 0, 2, 2});
  EXPECT_EQ(rep.find(formula::kSigma)->value, n);
  EXPECT_EQ(rep.find(formula::kSigmaSearch)->value, n);
  EXPECT_EQ(rep.find(formula::kSigmaEven)->value, n);
  EXPECT_EQ(rep.discrepancy(formula::kSigma, formula::kSigmaSearch), nullptr);
}

TEST(Crosscheck, EachApplicableFormulaAppearsOnce) {
  for_grid([](const ThresholdParams& p) {
    const auto rep = crosscheck(p);
    std::set<std::string> names;
    for (const auto& v : rep.values) EXPECT_TRUE(names.insert(v.name).second) << v.name;
    EXPECT_EQ(names.count(formula::kSigmaA1), p.a == 1 ? 1u : 0u);
    EXPECT_EQ(names.count(formula::kSigmaBounds), p.a >= 2 ? 1u : 0u);
    EXPECT_EQ(names.count(formula::kSigmaRegular), (p.r >= 3 && p.s == 0 && p.a == 1 && p.t == 1) ? 1u : 0u);
  });
}

TEST(Crosscheck, FormulaConflictDifferenceOnGrid) {
  for_grid([](const ThresholdParams& p) {
    if (p.a != 1 || p.s < 2) return;
    const auto rep = crosscheck(p);
    const auto* d = rep.discrepancy(formula::kSigma, formula::kSigmaA1);
    ASSERT_NE(d, nullptr) << to_string(p);
    const auto expected = p.r % 2 == 0 ? p.r + 1 : p.r;
    EXPECT_EQ(rep.find(formula::kSigmaA1)->value - rep.find(formula::kSigma)->value, expected) << to_string(p);
  });
}

TEST(Crosscheck, OneOneOneOneShowsEarlierFormulaDisagreement) {
  const auto rep = crosscheck({1, 0, 1, 1});
  EXPECT_EQ(rep.find(formula::kSigma)->value, 1);
  EXPECT_EQ(rep.find(formula::kSigmaA1)->value, 2);
  EXPECT_NE(rep.discrepancy(formula::kSigma, formula::kSigmaA1), nullptr);
}
