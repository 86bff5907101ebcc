#ifndef ARIMLE_BASELINES_H_
#define ARIMLE_BASELINES_H_

#include <span>
#include <utility>
#include <vector>

#include "arimle/mle.h"
#include "arimle/types.h"

namespace arimle {

// label_j = sign(sum_i vote_ji). No profiles, no iterations.
AggregationResult MajorityVote(const PredictionMatrix& predictions);

struct SpectralOptions {
  int outer_rounds = 20;
  int power_max_iters = 200;
  double power_tol = 1e-10;
  // The covariance counts as degenerate when every pairwise vote correlation
  // is within this many standard errors (1/sqrt(n)) of zero.
  double degenerate_z = 4.0;
};

struct SpectralFit {
  std::vector<double> eigenvector;  // unit norm, sum >= 0
  double eigenvalue = 0.0;
  bool degenerate = false;
};

// m x m sample covariance (n - 1 denominator) of the vote columns, row-major.
std::vector<double> VoteCovariance(const PredictionMatrix& predictions);

// Leading eigenpair of a rank-one model fitted to the off-diagonal part of
// the vote covariance. The diagonal starts at each row's largest absolute
// off-diagonal entry; each outer round runs power iteration from the
// normalized all-ones vector and then resets diagonal i to lambda v_i^2.
SpectralFit FitSpectral(const PredictionMatrix& predictions,
                        const SpectralOptions& options = {});

// Spectral meta-learner: votes weighted by the leading eigenvector. Falls
// back to majority vote (with a warning) when the covariance is degenerate.
// Reported profiles are estimated against its own labels. Needs m >= 3 and
// n >= 2.
AggregationResult Sml(const PredictionMatrix& predictions,
                      const SpectralOptions& options = {});

// Spectral meta-learner labels refined by EM.
AggregationResult Imle(const PredictionMatrix& predictions,
                       const EmConfig& em = {},
                       const SpectralOptions& options = {});

// Known per-classifier sensitivity/specificity, clamped into
// [kOracleRateFloor, 1 - kOracleRateFloor] so the MLE weights stay finite.
inline constexpr double kOracleRateFloor = 1e-6;

class OracleProfiles {
 public:
  explicit OracleProfiles(
      std::span<const std::pair<double, double>> psi_eta);
  explicit OracleProfiles(std::span<const ClassifierProfile> profiles);

  const std::vector<ClassifierProfile>& profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }

 private:
  std::vector<ClassifierProfile> profiles_;
};

// MLE decision with the true rates: the upper bound for this family of
// aggregators. No estimation, no EM.
AggregationResult OracleSml(const PredictionMatrix& predictions,
                            const OracleProfiles& truth);

}  // namespace arimle

#endif  // ARIMLE_BASELINES_H_
