#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "arimle/agreement.h"
#include "arimle/error.h"
#include "arimle/synth.h"
#include "test_util.h"

namespace arimle {
namespace {

using testing::Columns;
using testing::FromGrid;

// Agreement of independent classifiers written through the centred-accuracy
// form (1 + (1 - 2 e1)(1 - 2 e2)) / 2 rather than the expanded polynomial
// the library uses.
AgreementMatrix OracleAgreement(const std::vector<double>& e) {
  const std::size_t m = e.size();
  std::vector<double> a(m * m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (i != k) a[i * m + k] = 0.5 * (1.0 + (1.0 - 2.0 * e[i]) * (1.0 - 2.0 * e[k]));
    }
  }
  return AgreementMatrix::FromValues(m, std::move(a));
}

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(ComputeAgreementRates, IdenticalAndOppositeColumns) {
  const auto p = FromGrid(Columns({{1, -1, 1, 1}, {1, -1, 1, 1}, {-1, 1, -1, -1}}));
  const auto a = ComputeAgreementRates(p);
  EXPECT_EQ(a(0, 1), 1.0);
  EXPECT_EQ(a(0, 2), 0.0);
  EXPECT_EQ(a(2, 0), 0.0);
  EXPECT_EQ(a(1, 1), 1.0);
}

TEST(ComputeAgreementRates, HalfAgreementByCount) {
  const auto p = FromGrid(Columns({{1, 1, -1, -1}, {1, -1, -1, 1}}));
  EXPECT_EQ(ComputeAgreementRates(p)(0, 1), 0.5);
}

TEST(ComputeAgreementRates, MatchesPairwiseCountOnRandomMatrices) {
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto p = testing::RandomMatrix(37, 6, seed);
    const auto a = ComputeAgreementRates(p);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t k = 0; k < 6; ++k) {
        const auto ci = p.column(i);
        const auto ck = p.column(k);
        double same = 0;
        for (std::size_t j = 0; j < 37; ++j) same += ci[j] == ck[j];
        EXPECT_DOUBLE_EQ(a(i, k), same / 37.0);
        EXPECT_EQ(a(i, k), a(k, i));
      }
    }
  }
}

TEST(PredictedAgreement, Examples) {
  EXPECT_EQ(PredictedAgreement(0.0, 0.0), 1.0);
  for (double x : {0.0, 0.1, 0.37, 1.0}) {
    EXPECT_DOUBLE_EQ(PredictedAgreement(0.5, x), 0.5);
  }
  EXPECT_NEAR(PredictedAgreement(0.1, 0.2), 0.74, 1e-15);
  EXPECT_THROW(PredictedAgreement(-0.1, 0.2), Error);
  EXPECT_THROW(PredictedAgreement(0.1, 1.5), Error);
}

TEST(PredictedAgreement, FlipSymmetryOnGrid) {
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      const double e1 = a / 20.0, e2 = b / 20.0;
      const double v = PredictedAgreement(e1, e2);
      EXPECT_NEAR(v, PredictedAgreement(1.0 - e1, 1.0 - e2), 1e-15);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(SolveErrorRates, AllAgreeGivesPerfectClassifiers) {
  const auto a = AgreementMatrix::FromValues(4, std::vector<double>(16, 1.0));
  const auto est = SolveErrorRates(a);
  for (double e : est.e) EXPECT_NEAR(e, 0.0, 1e-6);
  EXPECT_NEAR(est.residual, 0.0, 1e-6);
  EXPECT_FALSE(est.flipped);
}

TEST(SolveErrorRates, RecoversThreeClassifierSystem) {
  const double a12 = 0.74, a13 = 0.66, a23 = 0.62;
  const auto a = AgreementMatrix::FromValues(
      3, {1.0, a12, a13, a12, 1.0, a23, a13, a23, 1.0});
  const auto est = SolveErrorRates(a);
  EXPECT_LT(MaxAbsDiff(est.e, {0.1, 0.2, 0.3}), 1e-4);
  EXPECT_LT(est.residual, 1e-6);
  EXPECT_FALSE(est.flipped);
}

TEST(SolveErrorRates, ReflectsWorseThanChanceSolution) {
  const auto a = OracleAgreement({0.9, 0.8, 0.7});
  const auto est = SolveErrorRates(a);
  EXPECT_LT(MaxAbsDiff(est.e, {0.1, 0.2, 0.3}), 1e-4);
  // The reflected and unreflected systems are the same matrix.
  EXPECT_LT(MaxAbsDiff(OracleAgreement({0.1, 0.2, 0.3}).values(), a.values()), 1e-15);
}

TEST(SolveErrorRates, FlipsWhenStartedOnTheWrongSide) {
  SolverConfig config;
  config.initial_error_rate = 0.75;
  const auto est = SolveErrorRates(OracleAgreement({0.1, 0.2, 0.3, 0.15}), config);
  EXPECT_TRUE(est.flipped);
  EXPECT_LT(MaxAbsDiff(est.e, {0.1, 0.2, 0.3, 0.15}), 1e-4);
}

TEST(SolveErrorRates, TooFewClassifiers) {
  const auto a = AgreementMatrix::FromValues(2, {1.0, 0.7, 0.7, 1.0});
  try {
    SolveErrorRates(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewClassifiers);
  }
}

TEST(SolveErrorRates, ForwardInverseConsistency) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.02, 0.48);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 3 + trial % 10;
    std::vector<double> e(m);
    do {
      for (double& x : e) x = unif(rng);
      std::vector<double> sorted = e;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
    } while (true);
    const auto est = SolveErrorRates(OracleAgreement(e));
    EXPECT_LT(MaxAbsDiff(est.e, e), 1e-3) << "trial " << trial;
    const double mean = std::accumulate(est.e.begin(), est.e.end(), 0.0) / m;
    EXPECT_LE(mean, 0.5);
    EXPECT_GE(est.residual, 0.0);
  }
}

TEST(SolveErrorRates, BitIdenticalOnRepeat) {
  const auto p = Generate(PaperlikeSpec(5)).matrix;
  const auto a = ComputeAgreementRates(p);
  const auto x = SolveErrorRates(a);
  const auto y = SolveErrorRates(a);
  ASSERT_EQ(x.e.size(), y.e.size());
  EXPECT_EQ(std::memcmp(x.e.data(), y.e.data(), x.e.size() * sizeof(double)), 0);
  EXPECT_EQ(x.residual, y.residual);
}

TEST(SolveErrorRates, EstimatesImproveWithSampleSize) {
  const std::vector<std::size_t> sizes = {100, 1000, 10000};
  std::vector<double> mean_max_error(sizes.size(), 0.0);
  constexpr int kSeeds = 40;
  int good_at_largest = 0;
  for (int s = 0; s < kSeeds; ++s) {
    EnsembleSpec spec;
    spec.m = 9;
    spec.class_prior = 0.5;
    spec.profiles = ProfileSampler{0.6, 0.9, 0.0}.Sample(spec.m, 1000 + s);
    spec.seed = 77 + s;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      spec.n = sizes[k];
      const auto est = SolveErrorRates(ComputeAgreementRates(Generate(spec).matrix));
      double worst = 0.0;
      for (std::size_t i = 0; i < spec.m; ++i) {
        worst = std::max(worst, std::abs(est.e[i] - TrueErrorRate(spec.profiles[i], 0.5)));
      }
      mean_max_error[k] += worst / kSeeds;
      if (k + 1 == sizes.size() && worst < 0.03) ++good_at_largest;
    }
  }
  EXPECT_GT(mean_max_error[0], mean_max_error[1]);
  EXPECT_GT(mean_max_error[1], mean_max_error[2]);
  EXPECT_GE(good_at_largest, 38);  // 95% of 40
}

TEST(BcaFromErrorRates, Examples) {
  EXPECT_EQ(BcaFromErrorRates(std::vector<double>{0.0}), std::vector<double>{1.0});
  EXPECT_EQ(BcaFromErrorRates(std::vector<double>{0.5}), std::vector<double>{0.5});
  const auto pi = BcaFromErrorRates(std::vector<double>{0.1, 0.2, 0.3});
  EXPECT_DOUBLE_EQ(pi[0], 0.9);
  EXPECT_DOUBLE_EQ(pi[1], 0.8);
  EXPECT_DOUBLE_EQ(pi[2], 0.7);
  EXPECT_THROW(BcaFromErrorRates(std::vector<double>{1.1}), Error);
}

TEST(AgreementMatrix, RejectsMalformedValues) {
  EXPECT_THROW(AgreementMatrix::FromValues(2, {1.0, 0.5, 0.4, 1.0}), Error);
  EXPECT_THROW(AgreementMatrix::FromValues(2, {0.9, 0.5, 0.5, 1.0}), Error);
  EXPECT_THROW(AgreementMatrix::FromValues(2, {1.0, 1.5, 1.5, 1.0}), Error);
}

}  // namespace
}  // namespace arimle
