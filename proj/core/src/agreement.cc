#include "arimle/agreement.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "arimle/error.h"

namespace arimle {
namespace {

void CheckRate(double e) {
  if (!(e >= 0.0 && e <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "error rate " + std::to_string(e) + " outside [0, 1]");
  }
}

// Sum of squared pairwise misfits; fills `gradient` when non-empty.
double Objective(const AgreementMatrix& a, std::span<const double> e,
                 std::span<double> gradient) {
  const std::size_t m = a.m();
  std::fill(gradient.begin(), gradient.end(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double r = a(i, k) - (1.0 - e[i] - e[k] + 2.0 * e[i] * e[k]);
      total += r * r;
      if (!gradient.empty()) {
        gradient[i] += 2.0 * r * (1.0 - 2.0 * e[k]);
        gradient[k] += 2.0 * r * (1.0 - 2.0 * e[i]);
      }
    }
  }
  return total;
}

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double ProjectedGradientNorm(std::span<const double> e,
                             std::span<const double> gradient) {
  double norm = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    norm = std::max(norm, std::abs(Clamp01(e[i] - gradient[i]) - e[i]));
  }
  return norm;
}

}  // namespace

AgreementMatrix AgreementMatrix::FromValues(std::size_t m,
                                            std::vector<double> values) {
  if (values.size() != m * m) {
    throw Error(ErrorCode::kDimensionMismatch, "agreement buffer is not m*m");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (values[i * m + i] != 1.0) {
      throw Error(ErrorCode::kOutOfRange, "agreement diagonal must be 1");
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double v = values[i * m + k];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kOutOfRange, "agreement rate outside [0, 1]");
      }
      if (v != values[k * m + i]) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "agreement matrix is not symmetric");
      }
    }
  }
  return AgreementMatrix(m, std::move(values));
}

AgreementMatrix AgreementMatrix::FromErrorRates(
    std::span<const double> error_rates) {
  const std::size_t m = error_rates.size();
  std::vector<double> values(m * m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double a = PredictedAgreement(error_rates[i], error_rates[k]);
      values[i * m + k] = a;
      values[k * m + i] = a;
    }
  }
  return AgreementMatrix(m, std::move(values));
}

AgreementMatrix ComputeAgreementRates(const PredictionMatrix& predictions) {
  const std::size_t n = predictions.n();
  const std::size_t m = predictions.m();
  std::vector<std::size_t> matches(m * m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = predictions.row(j);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t k = i + 1; k < m; ++k) {
        matches[i * m + k] += (row[i] == row[k]);
      }
    }
  }
  std::vector<double> values(m * m, 1.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double a = static_cast<double>(matches[i * m + k]) * inv_n;
      values[i * m + k] = a;
      values[k * m + i] = a;
    }
  }
  return AgreementMatrix::FromValues(m, std::move(values));
}

double PredictedAgreement(double e1, double e2) {
  CheckRate(e1);
  CheckRate(e2);
  return 1.0 - e1 - e2 + 2.0 * e1 * e2;
}

ErrorRateEstimate SolveErrorRates(const AgreementMatrix& agreement,
                                  const SolverConfig& config) {
  const std::size_t m = agreement.m();
  if (m < 3) {
    throw Error(ErrorCode::kTooFewClassifiers,
                "error-rate estimation needs at least 3 classifiers, got " +
                    std::to_string(m));
  }
  if (config.max_iters < 1 || !(config.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "solver needs max_iters >= 1 and tol > 0");
  }

  constexpr double kArmijo = 1e-4;
  constexpr double kMaxStep = 1e6;
  constexpr int kMaxBacktracks = 60;

  std::vector<double> e(m, Clamp01(config.initial_error_rate));
  std::vector<double> gradient(m);
  std::vector<double> trial(m);
  std::vector<double> unused;

  ErrorRateEstimate out;
  double value = Objective(agreement, e, gradient);
  double step = 1.0;
  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    if (ProjectedGradientNorm(e, gradient) < config.tol) {
      out.converged = true;
      break;
    }
    step = std::min(step * 2.0, kMaxStep);
    bool accepted = false;
    double trial_value = value;
    for (int b = 0; b < kMaxBacktracks; ++b) {
      double moved_sq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        trial[i] = Clamp01(e[i] - step * gradient[i]);
        moved_sq += (trial[i] - e[i]) * (trial[i] - e[i]);
      }
      trial_value = Objective(agreement, trial, unused);
      if (trial_value <= value - kArmijo / step * moved_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No step length decreases the objective: stationary to machine
      // precision.
      out.converged = true;
      break;
    }
    e.swap(trial);
    value = Objective(agreement, e, gradient);
  }
  if (!out.converged && ProjectedGradientNorm(e, gradient) < config.tol) {
    out.converged = true;
  }

  const double pairs = 0.5 * static_cast<double>(m * (m - 1));
  out.residual = std::sqrt(value / pairs);
  out.iterations = iter;
  if (!std::isfinite(out.residual)) {
    throw Error(ErrorCode::kSolverDiverged,
                "agreement solver residual is not finite");
  }

  const double mean = std::accumulate(e.begin(), e.end(), 0.0) /
                      static_cast<double>(m);
  if (mean > 0.5) {
    for (double& x : e) x = 1.0 - x;
    out.flipped = true;
  }
  out.e = std::move(e);
  return out;
}

std::vector<double> BcaFromErrorRates(std::span<const double> error_rates) {
  std::vector<double> pi;
  pi.reserve(error_rates.size());
  for (double e : error_rates) {
    CheckRate(e);
    pi.push_back(1.0 - e);
  }
  return pi;
}

}  // namespace arimle
