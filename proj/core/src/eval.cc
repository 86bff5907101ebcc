#include "arimle/eval.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "arimle/error.h"
#include "arimle/random.h"

namespace arimle {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RepetitionOutcome {
  std::vector<double> bca;
  std::vector<double> seconds;
  std::vector<int> fixed_point_violations;
  double mv_bca = kNaN;
  std::vector<BenchmarkFailure> failures;
};

bool UsesEm(Method method) {
  return method == Method::kImle || method == Method::kArimle;
}

RepetitionOutcome RunRepetition(const BenchmarkConfig& config, int repetition,
                                std::uint64_t seed) {
  const std::size_t k = config.methods.size();
  RepetitionOutcome out;
  out.bca.assign(k, kNaN);
  out.seconds.assign(k, kNaN);
  out.fixed_point_violations.assign(k, 0);

  EnsembleSpec spec = config.spec_template;
  spec.seed = seed;
  std::optional<SyntheticDataset> data;
  try {
    if (config.resample) spec.profiles = config.resample->Sample(spec.m, seed);
    data = Generate(spec);
    out.mv_bca = Bca(MajorityVote(data->matrix).labels, data->truth);
  } catch (const std::exception& e) {
    for (Method method : config.methods) {
      out.failures.push_back(
          {repetition, std::string(MethodName(method)), e.what()});
    }
    return out;
  }

  for (std::size_t i = 0; i < k; ++i) {
    const Method method = config.methods[i];
    try {
      AggregateOptions options = config.options;
      if (method == Method::kOsml) {
        std::vector<std::pair<double, double>> rates;
        for (const auto& p : spec.profiles) rates.emplace_back(p.psi, p.eta);
        options.oracle.emplace(
            std::span<const std::pair<double, double>>(rates));
      }
      const auto start = std::chrono::steady_clock::now();
      AggregationResult result = Aggregate(data->matrix, method, options);
      const auto stop = std::chrono::steady_clock::now();
      out.seconds[i] = std::chrono::duration<double>(stop - start).count();
      out.bca[i] = Bca(result.labels, data->truth);

      if (config.check_fixed_point && UsesEm(method) && result.converged) {
        const AggregationResult again =
            EmRefine(data->matrix, result.labels, options.em);
        for (std::size_t j = 0; j < again.labels.size(); ++j) {
          out.fixed_point_violations[i] +=
              (again.labels[j] != result.labels[j]);
        }
      }
    } catch (const std::exception& e) {
      out.bca[i] = kNaN;
      out.failures.push_back(
          {repetition, std::string(MethodName(method)), e.what()});
    }
  }
  return out;
}

}  // namespace

double Bca(const LabelVector& predicted, const LabelVector& truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "prediction and truth lengths differ");
  }
  std::size_t pos = 0, neg = 0, true_pos = 0, true_neg = 0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (truth[j] > 0) {
      ++pos;
      true_pos += (predicted[j] > 0);
    } else {
      ++neg;
      true_neg += (predicted[j] < 0);
    }
  }
  if (pos == 0 || neg == 0) {
    throw Error(ErrorCode::kSingleClassTruth,
                "balanced accuracy needs both classes in the truth labels");
  }
  const double sensitivity =
      static_cast<double>(true_pos) / static_cast<double>(pos);
  const double specificity =
      static_cast<double>(true_neg) / static_cast<double>(neg);
  return 0.5 * (sensitivity + specificity);
}

std::uint64_t RepetitionSeed(std::uint64_t master_seed, int repetition) {
  return DeriveSeed(master_seed, static_cast<std::uint64_t>(repetition));
}

BenchmarkReport RunBenchmark(const BenchmarkConfig& config) {
  if (config.repetitions < 1) {
    throw Error(ErrorCode::kInvalidConfig, "repetitions must be at least 1");
  }
  if (config.methods.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no methods selected");
  }
  const int reps = config.repetitions;

  BenchmarkReport report;
  report.config = config;
  report.config.options.oracle.reset();
  for (int r = 1; r <= reps; ++r) {
    report.seeds.push_back(RepetitionSeed(config.master_seed, r));
  }

  std::vector<RepetitionOutcome> outcomes(reps);
  const unsigned threads =
      std::clamp<unsigned>(config.threads, 1, static_cast<unsigned>(reps));
  if (threads == 1) {
    for (int r = 0; r < reps; ++r) {
      outcomes[r] = RunRepetition(config, r + 1, report.seeds[r]);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int r = next++; r < reps; r = next++) {
          outcomes[r] = RunRepetition(config, r + 1, report.seeds[r]);
        }
      });
    }
  }

  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    MethodSummary s;
    s.method = config.methods[i];
    double sum = 0.0, seconds = 0.0, wins = 0.0;
    int ok = 0, paired = 0;
    for (const auto& o : outcomes) {
      const double b = o.bca[i];
      s.per_seed_bca.push_back(b);
      s.fixed_point_violations += o.fixed_point_violations[i];
      if (std::isnan(b)) {
        ++s.failures;
        continue;
      }
      ++ok;
      sum += b;
      seconds += o.seconds[i];
      if (!std::isnan(o.mv_bca)) {
        ++paired;
        wins += b > o.mv_bca ? 1.0 : (b == o.mv_bca ? 0.5 : 0.0);
      }
    }
    if (ok > 0) {
      s.mean_bca = sum / ok;
      s.mean_seconds = seconds / ok;
      double ss = 0.0;
      for (double b : s.per_seed_bca) {
        if (!std::isnan(b)) ss += (b - s.mean_bca) * (b - s.mean_bca);
      }
      s.std_bca = ok > 1 ? std::sqrt(ss / (ok - 1)) : 0.0;
    } else {
      s.mean_bca = s.std_bca = s.mean_seconds = kNaN;
    }
    s.win_rate_vs_mv = paired > 0 ? wins / paired : kNaN;
    report.methods.push_back(std::move(s));
  }
  for (auto& o : outcomes) {
    for (auto& f : o.failures) report.failures.push_back(std::move(f));
  }
  return report;
}

Json ReportToJson(const BenchmarkReport& report, bool include_timings) {
  const BenchmarkConfig& c = report.config;
  Json config = Json::object();
  config["m"] = c.spec_template.m;
  config["n"] = c.spec_template.n;
  config["class_prior"] = JsonNumber(c.spec_template.class_prior);
  if (c.resample) {
    config["pi_min"] = JsonNumber(c.resample->pi_min);
    config["pi_max"] = JsonNumber(c.resample->pi_max);
    config["asymmetry"] = JsonNumber(c.resample->asymmetry);
  } else {
    Json profiles = Json::array();
    for (const auto& p : c.spec_template.profiles) {
      profiles.push_back({{"psi", JsonNumber(p.psi)}, {"eta", JsonNumber(p.eta)}});
    }
    config["profiles"] = std::move(profiles);
  }
  config["correlation_groups"] = c.spec_template.correlation_groups;
  config["rho"] = JsonNumber(c.spec_template.rho);
  config["repetitions"] = c.repetitions;
  config["master_seed"] = c.master_seed;
  Json methods = Json::array();
  for (Method m : c.methods) methods.push_back(MethodName(m));
  config["methods"] = std::move(methods);
  config["solver_max_iters"] = c.options.solver.max_iters;
  config["solver_tol"] = JsonNumber(c.options.solver.tol);
  config["em_max_iters"] = c.options.em.max_iters;
  config["smoothing"] = JsonNumber(c.options.em.smoothing);
  config["early_stop"] = c.options.em.early_stop;

  Json out = Json::object();
  out["config"] = std::move(config);
  out["seeds"] = report.seeds;
  Json results = Json::array();
  for (const auto& s : report.methods) {
    Json r = Json::object();
    r["method"] = MethodName(s.method);
    r["mean_bca"] = JsonNumber(s.mean_bca);
    r["std_bca"] = JsonNumber(s.std_bca);
    r["win_rate_vs_mv"] = JsonNumber(s.win_rate_vs_mv);
    r["failures"] = s.failures;
    r["fixed_point_violations"] = s.fixed_point_violations;
    if (include_timings) r["mean_seconds"] = JsonNumber(s.mean_seconds);
    r["per_seed_bca"] = JsonNumbers(s.per_seed_bca);
    results.push_back(std::move(r));
  }
  out["results"] = std::move(results);
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"repetition", f.repetition},
                        {"method", f.method},
                        {"message", f.message}});
  }
  out["failures"] = std::move(failures);
  return out;
}

std::string ReportToTable(const BenchmarkReport& report, bool include_timings) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %10s %10s %12s %9s", "method",
                "mean_bca", "std_bca", "win_vs_mv", "failures");
  out += line;
  out += include_timings ? "       ms/run\n" : "\n";
  for (const auto& s : report.methods) {
    std::snprintf(line, sizeof(line), "%-8s %10.4f %10.4f %12.3f %9d",
                  std::string(MethodName(s.method)).c_str(), s.mean_bca,
                  s.std_bca, s.win_rate_vs_mv, s.failures);
    out += line;
    if (include_timings) {
      std::snprintf(line, sizeof(line), " %12.3f", s.mean_seconds * 1e3);
      out += line;
    }
    out += '\n';
  }
  std::snprintf(line, sizeof(line), "repetitions=%d master_seed=%llu m=%zu n=%zu\n",
                report.config.repetitions,
                static_cast<unsigned long long>(report.config.master_seed),
                report.config.spec_template.m, report.config.spec_template.n);
  out += line;
  return out;
}

}  // namespace arimle
