#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "arimle/baselines.h"
#include "arimle/error.h"
#include "arimle/eval.h"
#include "arimle/mle.h"
#include "arimle/synth.h"
#include "test_util.h"

namespace arimle {
namespace {

using testing::Columns;
using testing::FromGrid;
using testing::RandomMatrix;

ClassifierProfile P(double psi, double eta) {
  return ClassifierProfile::FromRates(psi, eta);
}

TEST(ComputeMleWeights, CoinFlipCarriesNoWeight) {
  const std::vector<ClassifierProfile> p = {P(0.5, 0.5)};
  const auto w = ComputeMleWeights(p);
  EXPECT_EQ(w.log_alpha[0], 0.0);
  EXPECT_EQ(w.log_beta[0], 0.0);
}

TEST(ComputeMleWeights, HandEvaluatedExamples) {
  const std::vector<ClassifierProfile> p = {P(0.9, 0.9), P(0.8, 0.6)};
  const auto w = ComputeMleWeights(p);
  EXPECT_NEAR(w.log_alpha[0], std::log(81.0), 1e-12);
  EXPECT_NEAR(w.log_alpha[0], 4.3944, 1e-4);
  EXPECT_NEAR(w.log_beta[0], 0.0, 1e-12);
  EXPECT_NEAR(w.log_alpha[1], std::log(6.0), 1e-12);
  EXPECT_NEAR(w.log_alpha[1], 1.7918, 1e-4);
  EXPECT_NEAR(w.log_beta[1], std::log(0.16 / 0.24), 1e-12);
  EXPECT_NEAR(w.log_beta[1], -0.4055, 1e-4);
}

TEST(ComputeMleWeights, RejectsBoundaryRates) {
  for (auto p : {P(1.0, 0.7), P(0.7, 0.0), P(0.0, 0.7)}) {
    const std::vector<ClassifierProfile> v = {p};
    try {
      ComputeMleWeights(v);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBoundaryRate);
    }
  }
}

TEST(ComputeMleWeights, LogAlphaIncreasesWithSensitivity) {
  for (double eta = 0.05; eta < 1.0; eta += 0.1) {
    double prev = -INFINITY;
    for (int k = 1; k < 100; ++k) {
      const std::vector<ClassifierProfile> v = {P(k / 100.0, eta)};
      const double la = ComputeMleWeights(v).log_alpha[0];
      EXPECT_GT(la, prev);
      prev = la;
    }
  }
}

TEST(MleDecision, ZeroWeightsTieToPositive) {
  const auto p = RandomMatrix(10, 3, 1);
  const auto r = MleDecision(p, MleWeights{{0, 0, 0}, {0, 0, 0}});
  for (std::size_t j = 0; j < 10; ++j) {
    EXPECT_EQ(r.scores[j], 0.0);
    EXPECT_EQ(r.labels[j], 1);
  }
  EXPECT_EQ(r.iterations, 0);
}

TEST(MleDecision, SingleStrongClassifierIsFollowed) {
  const auto p = FromGrid({{1}, {-1}, {-1}, {1}});
  const std::vector<ClassifierProfile> prof = {P(0.9, 0.9)};
  const auto r = MleDecision(p, ComputeMleWeights(prof));
  EXPECT_EQ(r.labels.values(), (std::vector<Vote>{1, -1, -1, 1}));
}

TEST(MleDecision, HandDotProduct) {
  const auto p = FromGrid({{1, -1}});
  const auto r = MleDecision(p, MleWeights{{1.7918, 4.3944}, {-0.4055, 0.0}});
  EXPECT_NEAR(r.scores[0], -3.0081, 1e-12);
  EXPECT_EQ(r.labels[0], -1);
}

TEST(MleDecision, DimensionMismatch) {
  const auto p = RandomMatrix(4, 3, 2);
  EXPECT_THROW(MleDecision(p, MleWeights{{1, 1}, {0, 0}}), Error);
}

TEST(MleDecision, ScoreLabelCoherenceAndFlipEquivariance) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> rate(0.05, 0.95);
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const auto p = RandomMatrix(50, 7, seed);
    std::vector<ClassifierProfile> prof, swapped;
    for (int i = 0; i < 7; ++i) {
      const double psi = rate(rng), eta = rate(rng);
      prof.push_back(P(psi, eta));
      swapped.push_back(P(eta, psi));
    }
    const auto r = MleDecision(p, ComputeMleWeights(prof));
    const auto f = MleDecision(p.Negated(), ComputeMleWeights(swapped));
    for (std::size_t j = 0; j < 50; ++j) {
      EXPECT_EQ(SignWithTiebreak(r.scores[j]), r.labels[j]);
      EXPECT_NEAR(f.scores[j], -r.scores[j], 1e-12);
      if (r.scores[j] != 0.0) EXPECT_EQ(f.labels[j], -r.labels[j]);
    }
  }
}

TEST(InitializeLabels, UniformWeightsEqualMajorityVote) {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const std::size_t m = 2 + seed % 8;
    const auto p = RandomMatrix(40, m, seed);
    const double pi = 0.55 + 0.01 * (seed % 40);
    const std::vector<double> bca(m, pi);
    EXPECT_EQ(InitializeLabels(p, bca), MajorityVote(p).labels) << seed;
  }
}

TEST(InitializeLabels, ZeroWeightClassifierIgnored) {
  const auto p = RandomMatrix(25, 2, 3);
  const std::vector<double> bca = {1.0, 0.5};
  EXPECT_EQ(InitializeLabels(p, bca).values(), p.column(0));
}

TEST(InitializeLabels, HandEvaluatedRow) {
  // 0.8 - 0.6 + 0.2 = 0.4
  const auto p = FromGrid({{1, -1, 1}});
  const std::vector<double> bca = {0.9, 0.8, 0.6};
  EXPECT_EQ(InitializeLabels(p, bca)[0], 1);
  EXPECT_THROW(InitializeLabels(p, std::vector<double>{0.9}), Error);
}

TEST(EstimateProfiles, PseudoCounts) {
  std::vector<int> truth(20);
  for (int j = 0; j < 20; ++j) truth[j] = j < 10 ? 1 : -1;
  std::vector<int> opposite(truth);
  for (int& v : opposite) v = -v;
  const auto p = FromGrid(Columns({truth, opposite}));
  const LabelVector labels(std::vector<Vote>(truth.begin(), truth.end()));
  const auto prof = EstimateProfiles(p, labels, 1.0);
  EXPECT_DOUBLE_EQ(prof[0].psi, 11.0 / 12.0);
  EXPECT_DOUBLE_EQ(prof[0].eta, 11.0 / 12.0);
  EXPECT_DOUBLE_EQ(prof[1].psi, 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(prof[1].eta, 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(prof[0].pi, 11.0 / 12.0);
  EXPECT_DOUBLE_EQ(prof[0].e, 1.0 / 12.0);
}

TEST(EstimateProfiles, EmptyNegativeClassIsPurePrior) {
  const auto p = RandomMatrix(15, 4, 8);
  const LabelVector all_pos(std::vector<Vote>(15, 1));
  for (const auto& prof : EstimateProfiles(p, all_pos, 1.0)) {
    EXPECT_EQ(prof.eta, 0.5);
  }
  EXPECT_THROW(EstimateProfiles(p, all_pos, 0.0), Error);
  EXPECT_THROW(EstimateProfiles(p, LabelVector({1, 1}), 1.0), Error);
}

TEST(EmRefine, UnanimousEnsembleConvergesInOnePass) {
  std::vector<int> col = {1, -1, -1, 1, 1, -1};
  const auto p = FromGrid(Columns({col, col, col, col}));
  const auto r = EmRefine(p, MajorityVote(p).labels, EmConfig{});
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.labels.values(), std::vector<Vote>(col.begin(), col.end()));
}

// Three classifiers, eight samples. Every quantity below was computed by hand
// from the smoothed count formula (pseudo-count 1) and the closed-form
// weights; see the comments for the counts.
TEST(EmRefine, MatchesHandTrace) {
  const auto p = FromGrid(Columns({
      {1, 1, 1, 1, -1, -1, -1, 1},     // strong, misses sample 8
      {1, 1, 1, -1, -1, -1, -1, -1},   // strong, misses sample 4
      {1, -1, 1, -1, 1, -1, 1, -1},    // weak
  }));
  const LabelVector init({1, 1, 1, 1, -1, -1, -1, -1});
  EmConfig config;
  config.record_trace = true;
  const auto r = EmRefine(p, init, config);
  ASSERT_EQ(r.trace.size(), 2u);
  constexpr double kTol = 1e-12;

  // Pass 1: n+ = 4, n- = 4, denominators 6.
  //   c1: TP 4, TN 3 -> psi 5/6, eta 4/6; alpha 10, beta 5/8
  //   c2: TP 3, TN 4 -> psi 4/6, eta 5/6; alpha 10, beta 8/5
  //   c3: TP 2, TN 2 -> psi 1/2, eta 1/2; alpha 1,  beta 1
  const auto& p1 = r.trace[0];
  const double psi1[] = {5.0 / 6, 4.0 / 6, 0.5};
  const double eta1[] = {4.0 / 6, 5.0 / 6, 0.5};
  const double la1[] = {std::log(10.0), std::log(10.0), 0.0};
  const double lb1[] = {std::log(5.0 / 8), std::log(8.0 / 5), 0.0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(p1.profiles[i].psi, psi1[i], kTol);
    EXPECT_NEAR(p1.profiles[i].eta, eta1[i], kTol);
    EXPECT_NEAR(p1.profiles[i].pi, 0.5 * (psi1[i] + eta1[i]), kTol);
    EXPECT_NEAR(p1.weights.log_alpha[i], la1[i], kTol);
    EXPECT_NEAR(p1.weights.log_beta[i], lb1[i], kTol);
  }
  // Score = ln10 (v1 + v2); samples 4 and 8 tie at 0 and go to +1.
  const double l10 = std::log(10.0);
  const double s1[] = {2 * l10, 2 * l10, 2 * l10, 0, -2 * l10, -2 * l10, -2 * l10, 0};
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(p1.scores[j], s1[j], kTol);
  EXPECT_EQ(p1.labels.values(), (std::vector<Vote>{1, 1, 1, 1, -1, -1, -1, 1}));
  EXPECT_EQ(p1.changed, 1u);

  // Pass 2: n+ = 5, n- = 3, denominators 7 and 5.
  //   c1: TP 5, TN 3 -> psi 6/7, eta 4/5; alpha 24,   beta 75/98
  //   c2: TP 3, TN 3 -> psi 4/7, eta 4/5; alpha 16/3, beta 75/49
  //   c3: TP 2, TN 1 -> psi 3/7, eta 2/5; alpha 1/2,  beta 50/49
  const auto& p2 = r.trace[1];
  const double psi2[] = {6.0 / 7, 4.0 / 7, 3.0 / 7};
  const double eta2[] = {4.0 / 5, 4.0 / 5, 2.0 / 5};
  const double la2[] = {std::log(24.0), std::log(16.0 / 3), std::log(0.5)};
  const double lb2[] = {std::log(75.0 / 98), std::log(75.0 / 49), std::log(50.0 / 49)};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(p2.profiles[i].psi, psi2[i], kTol);
    EXPECT_NEAR(p2.profiles[i].eta, eta2[i], kTol);
    EXPECT_NEAR(p2.weights.log_alpha[i], la2[i], kTol);
    EXPECT_NEAR(p2.weights.log_beta[i], lb2[i], kTol);
  }
  const double b = std::log(281250.0 / 235298.0);  // sum of log_beta
  const double s2[] = {
      la2[0] + la2[1] + la2[2] + b, la2[0] + la2[1] - la2[2] + b,
      la2[0] + la2[1] + la2[2] + b, la2[0] - la2[1] - la2[2] + b,
      -la2[0] - la2[1] + la2[2] + b, -la2[0] - la2[1] - la2[2] + b,
      -la2[0] - la2[1] + la2[2] + b, la2[0] - la2[1] - la2[2] + b};
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(p2.scores[j], s2[j], kTol);
  EXPECT_EQ(p2.labels, p1.labels);
  EXPECT_EQ(p2.changed, 0u);

  EXPECT_EQ(r.iterations, 2);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.labels, p1.labels);
  EXPECT_EQ(r.scores, p2.scores);
}

TEST(EmRefine, FixedPointAndTermination) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto data = Generate(PaperlikeSpec(seed));
    EmConfig config;
    config.max_iters = 1 + static_cast<int>(seed % 7);
    const auto r = EmRefine(data.matrix, MajorityVote(data.matrix).labels, config);
    EXPECT_LE(r.iterations, config.max_iters);
    EXPECT_GE(r.iterations, 1);
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
      EXPECT_EQ(SignWithTiebreak(r.scores[j]), r.labels[j]);
    }
    if (r.converged) {
      const auto again = EmRefine(data.matrix, r.labels, config);
      EXPECT_EQ(again.labels, r.labels);
      EXPECT_EQ(again.iterations, 1);
    }
  }
}

TEST(EmRefine, NoEarlyStopRunsAllPasses) {
  const auto data = Generate(PaperlikeSpec(3));
  EmConfig config;
  config.early_stop = false;
  config.max_iters = 12;
  const auto r = EmRefine(data.matrix, MajorityVote(data.matrix).labels, config);
  EXPECT_EQ(r.iterations, 12);
  EXPECT_THROW(EmRefine(data.matrix, r.labels, EmConfig{0, 1.0, true, false}), Error);
}

TEST(Arimle, IdenticalClassifiersReturnTheirVotes) {
  std::vector<int> col = {1, -1, 1, 1, -1, -1, 1, -1};
  const auto p = FromGrid(Columns({col, col, col}));
  const auto r = Arimle(p);
  EXPECT_EQ(r.labels.values(), std::vector<Vote>(col.begin(), col.end()));
}

TEST(Arimle, TwoClassifiersRejected) {
  try {
    Arimle(RandomMatrix(10, 2, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewClassifiers);
  }
}

TEST(Arimle, BeatsMajorityVoteOnLargeHeterogeneousEnsemble) {
  EnsembleSpec spec;
  spec.m = 9;
  spec.n = 10000;
  spec.class_prior = 0.3;
  spec.profiles = {{0.95, 0.9}, {0.9, 0.95}, {0.6, 0.55}, {0.55, 0.6},
                   {0.6, 0.6}, {0.58, 0.62}, {0.65, 0.55}, {0.55, 0.55},
                   {0.6, 0.58}};
  spec.seed = 11;
  const auto data = Generate(spec);
  EXPECT_GE(Bca(Arimle(data.matrix).labels, data.truth),
            Bca(MajorityVote(data.matrix).labels, data.truth));
}

TEST(Arimle, PermutationEquivariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = Generate(PaperlikeSpec(seed));
    std::vector<std::size_t> order(data.matrix.m());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), std::mt19937(seed));
    EXPECT_EQ(Arimle(data.matrix.PermuteColumns(order)).labels,
              Arimle(data.matrix).labels);
  }
}

TEST(Arimle, LabelFlipEquivariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = Generate(PaperlikeSpec(seed));
    const auto r = Arimle(data.matrix);
    const auto f = Arimle(data.matrix.Negated());
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
      if (std::abs(r.scores[j]) > 1e-9) EXPECT_EQ(f.labels[j], -r.labels[j]);
    }
  }
}

TEST(Arimle, RunExposesIntermediates) {
  const auto data = Generate(PaperlikeSpec(1));
  const auto run = RunArimle(data.matrix);
  EXPECT_EQ(run.agreement.m(), 13u);
  EXPECT_EQ(run.error_rates.e.size(), 13u);
  for (double pi : run.balanced_accuracy) {
    EXPECT_GE(pi, kMinInitBca);
    EXPECT_LE(pi, kMaxInitBca);
  }
  EXPECT_EQ(run.initial_labels, InitializeLabels(data.matrix, run.balanced_accuracy));
}

}  // namespace
}  // namespace arimle
