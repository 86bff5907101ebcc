#ifndef ARIMLE_SYNTH_H_
#define ARIMLE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "arimle/types.h"

namespace arimle {

struct RatePair {
  double psi = 0.5;  // P(vote = +1 | truth = +1)
  double eta = 0.5;  // P(vote = -1 | truth = -1)

  friend bool operator==(const RatePair&, const RatePair&) = default;
};

// Generative description of a planted ensemble.
//
// Without correlation groups every vote is drawn independently given the true
// label. Classifiers that share a group also share one uniform draw per
// sample; each member reuses it with probability `rho` instead of its own,
// which correlates their errors while leaving every marginal rate intact.
// rho = 0 reproduces the independent ensemble bit for bit.
struct EnsembleSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  double class_prior = 0.5;  // P(truth = +1), strictly inside (0, 1)
  std::vector<RatePair> profiles;
  std::uint64_t seed = 0;
  // Zero-based classifier indices; must partition {0, ..., m-1} when set.
  std::vector<std::vector<std::size_t>> correlation_groups;
  double rho = 0.0;  // in [0, 1)

  // Throws kInvalidSpec describing the first violated constraint.
  void Validate() const;
};

struct SyntheticDataset {
  PredictionMatrix matrix;
  LabelVector truth;
  EnsembleSpec spec;
};

SyntheticDataset Generate(const EnsembleSpec& spec);

// Draws heterogeneous classifier profiles: pi_i ~ U[pi_min, pi_max], then
// psi_i = pi_i + d_i and eta_i = pi_i - d_i with d_i ~ U[-h_i, h_i],
// h_i = min(asymmetry, 0.99 min(pi_i, 1 - pi_i)). Classifier i uses its own
// substream, so profiles of the first k classifiers do not depend on m.
struct ProfileSampler {
  double pi_min = 0.55;
  double pi_max = 0.9;
  double asymmetry = 0.1;

  std::vector<RatePair> Sample(std::size_t m, std::uint64_t seed) const;
};

// Ensemble sized like the paper's experiment: 13 classifiers, 270 samples,
// 34 of them positive in expectation, pi_i drawn from [0.55, 0.9].
inline constexpr std::size_t kPaperlikeClassifiers = 13;
inline constexpr std::size_t kPaperlikeSamples = 270;
inline constexpr double kPaperlikePrior = 34.0 / 270.0;

EnsembleSpec PaperlikeSpec(std::uint64_t seed);

// True (unbalanced) error rate of a classifier under the given class prior:
// prior (1 - psi) + (1 - prior) (1 - eta).
double TrueErrorRate(const RatePair& rates, double class_prior);

}  // namespace arimle

#endif  // ARIMLE_SYNTH_H_
