#ifndef ARIMLE_EVAL_H_
#define ARIMLE_EVAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arimle/json_util.h"
#include "arimle/methods.h"
#include "arimle/synth.h"
#include "arimle/types.h"

namespace arimle {

// Balanced classification accuracy of `predicted` against `truth`:
// (sensitivity + specificity) / 2. Throws kLengthMismatch or, when truth
// holds a single class, kSingleClassTruth.
double Bca(const LabelVector& predicted, const LabelVector& truth);

struct BenchmarkConfig {
  // n, m, class prior, correlation structure and (unless `resample` is set)
  // the profiles. The template's seed is ignored; each repetition gets its
  // own.
  EnsembleSpec spec_template;
  // When set, every repetition redraws its profiles from its own seed.
  std::optional<ProfileSampler> resample;
  std::vector<Method> methods;
  int repetitions = 30;
  std::uint64_t master_seed = 0;
  AggregateOptions options;  // oracle is filled per repetition for osml
  // Re-run EM on every converged EM result and count changed labels.
  bool check_fixed_point = true;
  unsigned threads = 1;
};

struct MethodSummary {
  Method method = Method::kMv;
  double mean_bca = 0.0;
  double std_bca = 0.0;  // sample standard deviation, 0 for one value
  // NaN marks a repetition where the method failed.
  std::vector<double> per_seed_bca;
  // Paired against majority vote: wins count 1, ties 1/2.
  double win_rate_vs_mv = 0.0;
  int failures = 0;
  int fixed_point_violations = 0;
  double mean_seconds = 0.0;
};

struct BenchmarkFailure {
  int repetition = 0;
  std::string method;
  std::string message;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<MethodSummary> methods;
  std::vector<BenchmarkFailure> failures;
};

// Seed of repetition r: DeriveSeed(master_seed, r).
std::uint64_t RepetitionSeed(std::uint64_t master_seed, int repetition);

// Paired benchmark: each repetition generates one dataset and scores every
// method on it. Repetitions may run on several threads; results are
// assembled by repetition index, so the report does not depend on scheduling.
BenchmarkReport RunBenchmark(const BenchmarkConfig& config);

// `include_timings` adds mean_seconds per method; leave it off for
// byte-reproducible output.
Json ReportToJson(const BenchmarkReport& report, bool include_timings = false);
std::string ReportToTable(const BenchmarkReport& report,
                          bool include_timings = false);

}  // namespace arimle

#endif  // ARIMLE_EVAL_H_
