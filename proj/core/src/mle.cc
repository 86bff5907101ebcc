#include "arimle/mle.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "arimle/error.h"

namespace arimle {
namespace {

void CheckSampleCount(const PredictionMatrix& predictions,
                      std::size_t labels) {
  if (labels != predictions.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "label count " + std::to_string(labels) +
                    " does not match sample count " +
                    std::to_string(predictions.n()));
  }
}

void CheckClassifierCount(const PredictionMatrix& predictions,
                          std::size_t count) {
  if (count != predictions.m()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "got " + std::to_string(count) + " per-classifier values for " +
                    std::to_string(predictions.m()) + " classifiers");
  }
}

std::size_t CountChanged(const LabelVector& a, const LabelVector& b) {
  std::size_t changed = 0;
  for (std::size_t j = 0; j < a.size(); ++j) changed += (a[j] != b[j]);
  return changed;
}

}  // namespace

MleWeights ComputeMleWeights(std::span<const ClassifierProfile> profiles) {
  MleWeights w;
  w.log_alpha.reserve(profiles.size());
  w.log_beta.reserve(profiles.size());
  for (const auto& p : profiles) {
    if (!(p.psi > 0.0 && p.psi < 1.0 && p.eta > 0.0 && p.eta < 1.0)) {
      throw Error(ErrorCode::kBoundaryRate,
                  "sensitivity and specificity must lie strictly inside (0, 1)");
    }
    w.log_alpha.push_back(std::log(p.psi * p.eta) -
                          std::log((1.0 - p.psi) * (1.0 - p.eta)));
    w.log_beta.push_back(std::log(p.psi * (1.0 - p.psi)) -
                         std::log(p.eta * (1.0 - p.eta)));
  }
  return w;
}

AggregationResult MleDecision(const PredictionMatrix& predictions,
                              const MleWeights& weights) {
  CheckClassifierCount(predictions, weights.log_alpha.size());
  CheckClassifierCount(predictions, weights.log_beta.size());
  const std::size_t n = predictions.n();
  const std::size_t m = predictions.m();

  AggregationResult out;
  out.scores.resize(n);
  std::vector<Vote> labels(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = predictions.row(j);
    double score = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      score += row[i] * weights.log_alpha[i] + weights.log_beta[i];
    }
    out.scores[j] = score;
    labels[j] = SignWithTiebreak(score);
  }
  out.labels = LabelVector(std::move(labels));
  out.converged = true;
  return out;
}

LabelVector InitializeLabels(const PredictionMatrix& predictions,
                             std::span<const double> balanced_accuracy) {
  CheckClassifierCount(predictions, balanced_accuracy.size());
  const std::size_t m = predictions.m();
  std::vector<double> weight(m);
  for (std::size_t i = 0; i < m; ++i) {
    weight[i] = 2.0 * balanced_accuracy[i] - 1.0;
  }
  std::vector<Vote> labels(predictions.n());
  for (std::size_t j = 0; j < predictions.n(); ++j) {
    const auto row = predictions.row(j);
    double score = 0.0;
    for (std::size_t i = 0; i < m; ++i) score += weight[i] * row[i];
    labels[j] = SignWithTiebreak(score);
  }
  return LabelVector(std::move(labels));
}

std::vector<ClassifierProfile> EstimateProfiles(
    const PredictionMatrix& predictions, const LabelVector& labels,
    double smoothing) {
  CheckSampleCount(predictions, labels.size());
  if (!(smoothing > 0.0) || !std::isfinite(smoothing)) {
    throw Error(ErrorCode::kInvalidConfig, "smoothing must be positive");
  }
  const std::size_t m = predictions.m();
  std::vector<std::size_t> true_pos(m, 0);
  std::vector<std::size_t> true_neg(m, 0);
  std::size_t n_pos = 0;
  for (std::size_t j = 0; j < predictions.n(); ++j) {
    const auto row = predictions.row(j);
    if (labels[j] > 0) {
      ++n_pos;
      for (std::size_t i = 0; i < m; ++i) true_pos[i] += (row[i] > 0);
    } else {
      for (std::size_t i = 0; i < m; ++i) true_neg[i] += (row[i] < 0);
    }
  }
  const std::size_t n_neg = predictions.n() - n_pos;

  std::vector<ClassifierProfile> profiles;
  profiles.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double psi = (static_cast<double>(true_pos[i]) + smoothing) /
                       (static_cast<double>(n_pos) + 2.0 * smoothing);
    const double eta = (static_cast<double>(true_neg[i]) + smoothing) /
                       (static_cast<double>(n_neg) + 2.0 * smoothing);
    profiles.push_back(ClassifierProfile::FromRates(psi, eta));
  }
  return profiles;
}

AggregationResult EmRefine(const PredictionMatrix& predictions,
                           const LabelVector& init, const EmConfig& config) {
  CheckSampleCount(predictions, init.size());
  if (config.max_iters < 1) {
    throw Error(ErrorCode::kInvalidConfig, "EM needs max_iters >= 1");
  }

  AggregationResult out;
  LabelVector labels = init;
  for (int pass = 1; pass <= config.max_iters; ++pass) {
    std::vector<ClassifierProfile> profiles =
        EstimateProfiles(predictions, labels, config.smoothing);
    MleWeights weights = ComputeMleWeights(profiles);
    AggregationResult decision = MleDecision(predictions, weights);
    const std::size_t changed = CountChanged(labels, decision.labels);

    if (config.record_trace) {
      out.trace.push_back(
          EmPass{profiles, weights, decision.scores, decision.labels, changed});
    }
    out.iterations = pass;
    out.profiles = std::move(profiles);
    out.scores = std::move(decision.scores);
    labels = std::move(decision.labels);
    out.converged = (changed == 0);
    if (out.converged && config.early_stop) break;
  }
  out.labels = std::move(labels);
  return out;
}

ArimleRun RunArimle(const PredictionMatrix& predictions,
                    const SolverConfig& solver, const EmConfig& em) {
  if (predictions.m() < 3) {
    throw Error(ErrorCode::kTooFewClassifiers,
                "ARIMLE needs at least 3 classifiers, got " +
                    std::to_string(predictions.m()));
  }
  AgreementMatrix agreement = ComputeAgreementRates(predictions);
  ErrorRateEstimate error_rates = SolveErrorRates(agreement, solver);
  std::vector<double> pi = BcaFromErrorRates(error_rates.e);
  for (double& p : pi) p = std::clamp(p, kMinInitBca, kMaxInitBca);
  LabelVector init = InitializeLabels(predictions, pi);
  AggregationResult result = EmRefine(predictions, init, em);
  if (error_rates.flipped) {
    result.warnings.emplace_back(
        "error-rate solution reflected to keep mean error <= 0.5");
  }
  if (!error_rates.converged) {
    result.warnings.emplace_back(
        "error-rate solver stopped at its iteration limit");
  }
  return ArimleRun{std::move(agreement), std::move(error_rates), std::move(pi),
                   std::move(init), std::move(result)};
}

AggregationResult Arimle(const PredictionMatrix& predictions,
                         const SolverConfig& solver, const EmConfig& em) {
  return RunArimle(predictions, solver, em).result;
}

}  // namespace arimle
