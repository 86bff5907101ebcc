#ifndef ARIMLE_MLE_H_
#define ARIMLE_MLE_H_

#include <span>
#include <vector>

#include "arimle/agreement.h"
#include "arimle/types.h"

namespace arimle {

struct EmConfig {
  int max_iters = 100;
  // Pseudo-count added to each cell of a classifier's 2x2 confusion table.
  double smoothing = 1.0;
  // Stop as soon as a pass leaves every label unchanged.
  bool early_stop = true;
  // Keep a copy of every pass in AggregationResult::trace.
  bool record_trace = false;
};

// Balanced accuracies are clamped into this interval before they weight the
// initial vote, so solver noise can never yield a zero or negative weight.
inline constexpr double kMinInitBca = 0.5 + 1e-6;
inline constexpr double kMaxInitBca = 1.0 - 1e-6;

// log_alpha = ln(psi eta) - ln((1-psi)(1-eta)),
// log_beta  = ln(psi (1-psi)) - ln(eta (1-eta)).
// Throws kBoundaryRate if any psi or eta is not strictly inside (0, 1).
MleWeights ComputeMleWeights(std::span<const ClassifierProfile> profiles);

// score_j = sum_i (vote_ji * log_alpha_i + log_beta_i), label_j = sign.
AggregationResult MleDecision(const PredictionMatrix& predictions,
                              const MleWeights& weights);

// label_j = sign(sum_i (2 pi_i - 1) vote_ji). The positive normalizer of
// the weighted vote is omitted; it cannot change the sign.
LabelVector InitializeLabels(const PredictionMatrix& predictions,
                             std::span<const double> balanced_accuracy);

// Smoothed sensitivity/specificity of every classifier, treating `labels` as
// ground truth:
//   psi_i = (#{label=+1, vote=+1} + s) / (n+ + 2s)
//   eta_i = (#{label=-1, vote=-1} + s) / (n- + 2s)
std::vector<ClassifierProfile> EstimateProfiles(
    const PredictionMatrix& predictions, const LabelVector& labels,
    double smoothing);

// Alternates EstimateProfiles -> ComputeMleWeights -> MleDecision starting
// from `init`. `converged` is true when the final pass changed no label.
AggregationResult EmRefine(const PredictionMatrix& predictions,
                           const LabelVector& init, const EmConfig& config);

// Everything the full pipeline computed, for diagnostics.
struct ArimleRun {
  AgreementMatrix agreement;
  ErrorRateEstimate error_rates;
  std::vector<double> balanced_accuracy;  // after clamping
  LabelVector initial_labels;
  AggregationResult result;
};

// Agreement rates -> error rates -> balanced accuracies -> weighted-vote
// initialization -> EM refinement. Requires m >= 3.
ArimleRun RunArimle(const PredictionMatrix& predictions,
                    const SolverConfig& solver = {}, const EmConfig& em = {});

AggregationResult Arimle(const PredictionMatrix& predictions,
                         const SolverConfig& solver = {},
                         const EmConfig& em = {});

}  // namespace arimle

#endif  // ARIMLE_MLE_H_
