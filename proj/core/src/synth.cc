#include "arimle/synth.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "arimle/error.h"
#include "arimle/random.h"

namespace arimle {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidSpec, what);
}

}  // namespace

void EnsembleSpec::Validate() const {
  if (m == 0) Invalid("m must be at least 1");
  if (n == 0) Invalid("n must be at least 1");
  if (!(class_prior > 0.0 && class_prior < 1.0)) {
    Invalid("class prior must lie strictly inside (0, 1)");
  }
  if (profiles.size() != m) {
    Invalid("expected " + std::to_string(m) + " profiles, got " +
            std::to_string(profiles.size()));
  }
  for (const auto& p : profiles) {
    if (!(p.psi >= 0.0 && p.psi <= 1.0 && p.eta >= 0.0 && p.eta <= 1.0)) {
      Invalid("sensitivity and specificity must lie in [0, 1]");
    }
  }
  if (!(rho >= 0.0 && rho < 1.0)) Invalid("rho must lie in [0, 1)");
  if (!correlation_groups.empty()) {
    std::vector<int> seen(m, 0);
    for (const auto& group : correlation_groups) {
      if (group.empty()) Invalid("correlation groups must be non-empty");
      for (std::size_t i : group) {
        if (i >= m) Invalid("correlation group index out of range");
        ++seen[i];
      }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      Invalid("correlation groups must partition the classifiers exactly");
    }
  }
}

SyntheticDataset Generate(const EnsembleSpec& spec) {
  spec.Validate();
  const std::size_t n = spec.n;
  const std::size_t m = spec.m;

  std::vector<Vote> truth(n);
  RandomStream truth_stream(DeriveSeed(spec.seed, kTruthStream));
  for (std::size_t j = 0; j < n; ++j) {
    truth[j] = truth_stream.NextBernoulli(spec.class_prior) ? 1 : -1;
  }

  // group_of[i] indexes `shared`; singleton classifiers have no entry.
  constexpr std::size_t kNoGroup = static_cast<std::size_t>(-1);
  std::vector<std::size_t> group_of(m, kNoGroup);
  std::vector<std::vector<double>> shared;
  for (std::size_t g = 0; g < spec.correlation_groups.size(); ++g) {
    const auto& group = spec.correlation_groups[g];
    if (group.size() < 2) continue;
    RandomStream stream(DeriveSeed(spec.seed, kGroupStream + g));
    std::vector<double> draws(n);
    for (double& u : draws) u = stream.NextUniform();
    for (std::size_t i : group) group_of[i] = shared.size();
    shared.push_back(std::move(draws));
  }

  std::vector<Vote> votes(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    RandomStream stream(DeriveSeed(spec.seed, kVoteStream + i));
    const RatePair rates = spec.profiles[i];
    for (std::size_t j = 0; j < n; ++j) {
      double u = stream.NextUniform();
      const double copy = stream.NextUniform();
      if (group_of[i] != kNoGroup && copy < spec.rho) {
        u = shared[group_of[i]][j];
      }
      const double p_correct = truth[j] > 0 ? rates.psi : rates.eta;
      votes[j * m + i] = u < p_correct ? truth[j] : static_cast<Vote>(-truth[j]);
    }
  }

  std::vector<std::string> ids;
  ids.reserve(m);
  for (std::size_t i = 0; i < m; ++i) ids.push_back("c" + std::to_string(i + 1));

  return SyntheticDataset{
      PredictionMatrix::FromRowMajor(n, m, std::move(votes), std::move(ids)),
      LabelVector(std::move(truth)), spec};
}

std::vector<RatePair> ProfileSampler::Sample(std::size_t m,
                                             std::uint64_t seed) const {
  if (!(pi_min >= 0.0 && pi_min <= pi_max && pi_max <= 1.0)) {
    Invalid("balanced-accuracy range must satisfy 0 <= pi_min <= pi_max <= 1");
  }
  if (!(asymmetry >= 0.0)) Invalid("asymmetry must be non-negative");
  std::vector<RatePair> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    RandomStream stream(DeriveSeed(seed, kProfileStream + i));
    const double pi = stream.NextUniform(pi_min, pi_max);
    const double half_width =
        std::min(asymmetry, 0.99 * std::min(pi, 1.0 - pi));
    const double d = stream.NextUniform(-half_width, half_width);
    out.push_back(RatePair{pi + d, pi - d});
  }
  return out;
}

EnsembleSpec PaperlikeSpec(std::uint64_t seed) {
  EnsembleSpec spec;
  spec.m = kPaperlikeClassifiers;
  spec.n = kPaperlikeSamples;
  spec.class_prior = kPaperlikePrior;
  spec.profiles = ProfileSampler{}.Sample(spec.m, seed);
  spec.seed = seed;
  return spec;
}

double TrueErrorRate(const RatePair& rates, double class_prior) {
  return class_prior * (1.0 - rates.psi) +
         (1.0 - class_prior) * (1.0 - rates.eta);
}

}  // namespace arimle
