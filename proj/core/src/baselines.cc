#include "arimle/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "arimle/error.h"

namespace arimle {
namespace {

void MultiplySymmetric(const std::vector<double>& a, std::size_t m,
                       const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += a[i * m + k] * x[k];
    y[i] = s;
  }
}

double Norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Power iteration from the normalized all-ones vector.
std::pair<double, std::vector<double>> PowerIterate(
    const std::vector<double>& a, std::size_t m, int max_iters, double tol) {
  std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> av(m);
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    MultiplySymmetric(a, m, v, av);
    lambda = std::inner_product(v.begin(), v.end(), av.begin(), 0.0);
    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      err += (av[i] - lambda * v[i]) * (av[i] - lambda * v[i]);
    }
    if (std::sqrt(err) <= tol * std::max(std::abs(lambda), 1e-300)) break;
    const double norm = Norm(av);
    if (norm == 0.0) break;
    for (std::size_t i = 0; i < m; ++i) v[i] = av[i] / norm;
  }
  return {lambda, v};
}

void CheckSpectralShape(const PredictionMatrix& predictions) {
  if (predictions.m() < 3) {
    throw Error(ErrorCode::kTooFewClassifiers,
                "spectral meta-learner needs at least 3 classifiers, got " +
                    std::to_string(predictions.m()));
  }
  if (predictions.n() < 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "spectral meta-learner needs at least 2 samples");
  }
}

}  // namespace

AggregationResult MajorityVote(const PredictionMatrix& predictions) {
  AggregationResult out;
  out.scores.resize(predictions.n());
  std::vector<Vote> labels(predictions.n());
  for (std::size_t j = 0; j < predictions.n(); ++j) {
    int sum = 0;
    for (Vote v : predictions.row(j)) sum += v;
    out.scores[j] = static_cast<double>(sum);
    labels[j] = SignWithTiebreak(out.scores[j]);
  }
  out.labels = LabelVector(std::move(labels));
  out.converged = true;
  return out;
}

std::vector<double> VoteCovariance(const PredictionMatrix& predictions) {
  const std::size_t n = predictions.n();
  const std::size_t m = predictions.m();
  std::vector<double> mean(m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = predictions.row(j);
    for (std::size_t i = 0; i < m; ++i) mean[i] += row[i];
  }
  for (double& x : mean) x /= static_cast<double>(n);

  std::vector<double> cov(m * m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = predictions.row(j);
    for (std::size_t i = 0; i < m; ++i) {
      const double di = row[i] - mean[i];
      for (std::size_t k = i; k < m; ++k) {
        cov[i * m + k] += di * (row[k] - mean[k]);
      }
    }
  }
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i; k < m; ++k) {
      cov[i * m + k] /= denom;
      cov[k * m + i] = cov[i * m + k];
    }
  }
  return cov;
}

SpectralFit FitSpectral(const PredictionMatrix& predictions,
                        const SpectralOptions& options) {
  CheckSpectralShape(predictions);
  const std::size_t m = predictions.m();
  std::vector<double> q = VoteCovariance(predictions);

  SpectralFit fit;
  const double threshold =
      options.degenerate_z / std::sqrt(static_cast<double>(predictions.n()));
  double max_corr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double scale = std::sqrt(q[i * m + i] * q[k * m + k]);
      if (scale > 0.0) {
        max_corr = std::max(max_corr, std::abs(q[i * m + k]) / scale);
      }
    }
  }
  fit.degenerate = !(max_corr > threshold);

  for (std::size_t i = 0; i < m; ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) d = std::max(d, std::abs(q[i * m + k]));
    }
    q[i * m + i] = d;
  }
  std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
  double lambda = 0.0;
  for (int round = 0; round < options.outer_rounds; ++round) {
    std::tie(lambda, v) =
        PowerIterate(q, m, options.power_max_iters, options.power_tol);
    for (std::size_t i = 0; i < m; ++i) q[i * m + i] = lambda * v[i] * v[i];
  }
  if (std::accumulate(v.begin(), v.end(), 0.0) < 0.0) {
    for (double& x : v) x = -x;
  }
  fit.eigenvector = std::move(v);
  fit.eigenvalue = lambda;
  return fit;
}

AggregationResult Sml(const PredictionMatrix& predictions,
                      const SpectralOptions& options) {
  const SpectralFit fit = FitSpectral(predictions, options);
  AggregationResult out;
  if (fit.degenerate) {
    out = MajorityVote(predictions);
    out.warnings.emplace_back(
        "vote covariance is degenerate; fell back to majority vote");
  } else {
    const std::size_t m = predictions.m();
    out.scores.resize(predictions.n());
    std::vector<Vote> labels(predictions.n());
    for (std::size_t j = 0; j < predictions.n(); ++j) {
      const auto row = predictions.row(j);
      double score = 0.0;
      for (std::size_t i = 0; i < m; ++i) score += fit.eigenvector[i] * row[i];
      out.scores[j] = score;
      labels[j] = SignWithTiebreak(score);
    }
    out.labels = LabelVector(std::move(labels));
    out.converged = true;
  }
  out.profiles = EstimateProfiles(predictions, out.labels, 1.0);
  return out;
}

AggregationResult Imle(const PredictionMatrix& predictions, const EmConfig& em,
                       const SpectralOptions& options) {
  AggregationResult spectral = Sml(predictions, options);
  AggregationResult out = EmRefine(predictions, spectral.labels, em);
  out.warnings = std::move(spectral.warnings);
  return out;
}

OracleProfiles::OracleProfiles(
    std::span<const std::pair<double, double>> psi_eta) {
  profiles_.reserve(psi_eta.size());
  for (const auto& [psi, eta] : psi_eta) {
    if (!std::isfinite(psi) || !std::isfinite(eta) || psi < 0.0 || psi > 1.0 ||
        eta < 0.0 || eta > 1.0) {
      throw Error(ErrorCode::kOutOfRange,
                  "oracle sensitivity/specificity must lie in [0, 1]");
    }
    profiles_.push_back(ClassifierProfile::FromRates(
        std::clamp(psi, kOracleRateFloor, 1.0 - kOracleRateFloor),
        std::clamp(eta, kOracleRateFloor, 1.0 - kOracleRateFloor)));
  }
}

OracleProfiles::OracleProfiles(std::span<const ClassifierProfile> profiles) {
  std::vector<std::pair<double, double>> rates;
  rates.reserve(profiles.size());
  for (const auto& p : profiles) rates.emplace_back(p.psi, p.eta);
  *this = OracleProfiles(std::span<const std::pair<double, double>>(rates));
}

AggregationResult OracleSml(const PredictionMatrix& predictions,
                            const OracleProfiles& truth) {
  if (truth.size() != predictions.m()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "oracle has " + std::to_string(truth.size()) +
                    " profiles for " + std::to_string(predictions.m()) +
                    " classifiers");
  }
  AggregationResult out =
      MleDecision(predictions, ComputeMleWeights(truth.profiles()));
  out.profiles = truth.profiles();
  return out;
}

}  // namespace arimle
