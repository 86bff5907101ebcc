#include "cli.h"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arimle/csv.h"
#include "arimle/error.h"
#include "arimle/eval.h"
#include "arimle/json_util.h"
#include "arimle/methods.h"
#include "arimle/synth.h"
#include "manifest.h"

namespace arimle::cli {
namespace {

// Flags shared by `generate` and `benchmark`.
struct EnsembleFlags {
  std::size_t m = kPaperlikeClassifiers;
  std::size_t n = kPaperlikeSamples;
  double prior = kPaperlikePrior;
  double pi_min = 0.55;
  double pi_max = 0.9;
  double asymmetry = 0.1;
  std::string corr_groups;
  double rho = 0.0;
};

struct AlgorithmFlags {
  int solver_max_iters = 2000;
  double solver_tol = 1e-8;
  int em_max_iters = 100;
  double smoothing = 1.0;
  bool no_early_stop = false;
};

void AddEnsembleFlags(CLI::App* cmd, EnsembleFlags& f) {
  cmd->add_option("--m", f.m, "Number of classifiers")->capture_default_str();
  cmd->add_option("--n", f.n, "Number of samples")->capture_default_str();
  cmd->add_option("--prior", f.prior, "P(truth = +1)")->capture_default_str();
  cmd->add_option("--pi-min", f.pi_min, "Lowest balanced accuracy")
      ->capture_default_str();
  cmd->add_option("--pi-max", f.pi_max, "Highest balanced accuracy")
      ->capture_default_str();
  cmd->add_option("--asymmetry", f.asymmetry,
                  "Largest |psi - eta| / 2 drawn per classifier")
      ->capture_default_str();
  cmd->add_option("--corr-groups", f.corr_groups,
                  "Correlated groups of zero-based classifier indices, e.g. "
                  "'0,1,2;3,4'; unlisted classifiers stay independent");
  cmd->add_option("--rho", f.rho, "Within-group error sharing in [0, 1)")
      ->capture_default_str();
}

void AddAlgorithmFlags(CLI::App* cmd, AlgorithmFlags& f) {
  cmd->add_option("--solver-max-iters", f.solver_max_iters,
                  "Error-rate solver iteration limit")
      ->capture_default_str();
  cmd->add_option("--solver-tol", f.solver_tol,
                  "Error-rate solver projected-gradient tolerance")
      ->capture_default_str();
  cmd->add_option("--em-max-iters", f.em_max_iters, "EM pass limit")
      ->capture_default_str();
  cmd->add_option("--smoothing", f.smoothing,
                  "Pseudo-count per confusion-table cell")
      ->capture_default_str();
  cmd->add_flag("--no-early-stop", f.no_early_stop,
                "Run every EM pass even after labels stop changing");
}

AggregateOptions ToOptions(const AlgorithmFlags& f) {
  AggregateOptions options;
  options.solver.max_iters = f.solver_max_iters;
  options.solver.tol = f.solver_tol;
  options.em.max_iters = f.em_max_iters;
  options.em.smoothing = f.smoothing;
  options.em.early_stop = !f.no_early_stop;
  if (f.solver_max_iters < 1 || !(f.solver_tol > 0.0) || f.em_max_iters < 1 ||
      !(f.smoothing > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "iteration limits must be >= 1; tolerance and smoothing must "
                "be positive");
  }
  return options;
}

Json AlgorithmFlagsJson(const AlgorithmFlags& f) {
  Json j = Json::object();
  j["solver_max_iters"] = f.solver_max_iters;
  j["solver_tol"] = JsonNumber(f.solver_tol);
  j["em_max_iters"] = f.em_max_iters;
  j["smoothing"] = JsonNumber(f.smoothing);
  j["early_stop"] = !f.no_early_stop;
  return j;
}

Json EnsembleFlagsJson(const EnsembleFlags& f) {
  Json j = Json::object();
  j["m"] = f.m;
  j["n"] = f.n;
  j["prior"] = JsonNumber(f.prior);
  j["pi_min"] = JsonNumber(f.pi_min);
  j["pi_max"] = JsonNumber(f.pi_max);
  j["asymmetry"] = JsonNumber(f.asymmetry);
  j["corr_groups"] = f.corr_groups;
  j["rho"] = JsonNumber(f.rho);
  return j;
}

std::vector<std::vector<std::size_t>> ParseGroups(const std::string& text,
                                                  std::size_t m) {
  std::vector<std::vector<std::size_t>> groups;
  if (text.empty()) return groups;
  std::vector<int> used(m, 0);
  std::stringstream all(text);
  std::string group_text;
  while (std::getline(all, group_text, ';')) {
    std::vector<std::size_t> group;
    std::stringstream gs(group_text);
    std::string item;
    while (std::getline(gs, item, ',')) {
      std::size_t consumed = 0;
      unsigned long idx = 0;
      try {
        idx = std::stoul(item, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed == 0 || consumed != item.size() || idx >= m) {
        throw Error(ErrorCode::kInvalidSpec,
                    "bad classifier index '" + item + "' in --corr-groups");
      }
      group.push_back(idx);
      ++used[idx];
    }
    if (group.empty()) {
      throw Error(ErrorCode::kInvalidSpec, "empty group in --corr-groups");
    }
    groups.push_back(std::move(group));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (used[i] == 0) groups.push_back({i});
  }
  return groups;
}

EnsembleSpec BuildSpec(const EnsembleFlags& f) {
  EnsembleSpec spec;
  spec.m = f.m;
  spec.n = f.n;
  spec.class_prior = f.prior;
  spec.correlation_groups = ParseGroups(f.corr_groups, f.m);
  spec.rho = f.rho;
  return spec;
}

ProfileSampler BuildSampler(const EnsembleFlags& f) {
  return ProfileSampler{f.pi_min, f.pi_max, f.asymmetry};
}

void WriteOutput(const std::string& text, const std::string& path,
                 std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kEmptyMatrix:
    case ErrorCode::kRaggedGrid:
    case ErrorCode::kNonBinaryEntry:
    case ErrorCode::kDuplicateClassifierId:
      return kExitParse;
    case ErrorCode::kIo:
      return kExitIo;
    default:
      return kExitPrecondition;
  }
}

Json ResultJson(const AggregationResult& r, Method method) {
  Json j = Json::object();
  j["method"] = MethodName(method);
  j["labels"] = JsonLabels(r.labels);
  j["scores"] = JsonNumbers(r.scores);
  Json profiles = Json::array();
  for (const auto& p : r.profiles) profiles.push_back(JsonProfile(p));
  j["profiles"] = std::move(profiles);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace

OracleProfiles ReadOracleProfiles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "oracle profiles: " + std::string(e.what()));
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kParse, "oracle profiles must be a JSON array");
  }
  std::vector<std::pair<double, double>> rates;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("psi") || !item.contains("eta") ||
        !item["psi"].is_number() || !item["eta"].is_number()) {
      throw Error(ErrorCode::kParse,
                  "each oracle profile needs numeric 'psi' and 'eta'");
    }
    rates.emplace_back(item["psi"].get<double>(), item["eta"].get<double>());
  }
  return OracleProfiles(std::span<const std::pair<double, double>>(rates));
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Unsupervised fusion of binary classifier ensembles", "arimle"};
  app.set_version_flag("--version", ToolVersion());
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress warnings on standard error");

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "Fuse a vote CSV");
  std::string input, method_name = "arimle", oracle_path, agg_out;
  AlgorithmFlags agg_algo;
  bool with_trace = false;
  aggregate->add_option("input", input, "Vote CSV (header of ids, rows of -1/1)")
      ->required();
  aggregate->add_option("--method", method_name, "mv, sml, imle, arimle or osml")
      ->capture_default_str();
  aggregate->add_option("--oracle-profiles", oracle_path,
                        "JSON array of {psi, eta} per classifier (osml)");
  aggregate->add_option("--out", agg_out, "Write JSON here instead of stdout");
  aggregate->add_flag("--trace", with_trace, "Include every EM pass in the output");
  AddAlgorithmFlags(aggregate, agg_algo);

  // generate
  auto* generate = app.add_subcommand("generate", "Write a planted ensemble");
  EnsembleFlags gen;
  std::uint64_t gen_seed = 0;
  std::string gen_out, truth_out, profiles_out;
  AddEnsembleFlags(generate, gen);
  generate->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Vote CSV path")->required();
  generate->add_option("--truth-out", truth_out, "Truth label CSV path")->required();
  generate->add_option("--profiles-out", profiles_out,
                       "Planted {psi, eta} JSON, usable as --oracle-profiles");

  // benchmark
  auto* benchmark = app.add_subcommand("benchmark", "Paired synthetic benchmark");
  EnsembleFlags bench;
  AlgorithmFlags bench_algo;
  int reps = 30;
  std::string methods_text = "mv,sml,imle,arimle,osml", format = "both",
              json_out;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  bool timings = false;
  AddEnsembleFlags(benchmark, bench);
  AddAlgorithmFlags(benchmark, bench_algo);
  benchmark->add_option("--reps", reps, "Repetitions")->capture_default_str();
  benchmark->add_option("--methods", methods_text, "Comma-separated methods")
      ->capture_default_str();
  benchmark->add_option("--master-seed", master_seed, "Seed for all repetitions")
      ->capture_default_str();
  benchmark->add_option("--threads", threads, "Worker threads")->capture_default_str();
  benchmark->add_option("--format", format, "both, json or table")
      ->check(CLI::IsMember({"both", "json", "table"}))
      ->capture_default_str();
  benchmark->add_option("--json-out", json_out, "Also write the JSON report here");
  benchmark->add_flag("--timings", timings,
                      "Include wall-clock seconds in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    if (aggregate->parsed()) {
      const Method method = ParseMethod(method_name);
      AggregateOptions options = ToOptions(agg_algo);
      options.em.record_trace = with_trace;
      std::vector<std::filesystem::path> inputs = {input};
      if (!oracle_path.empty()) {
        options.oracle = ReadOracleProfiles(oracle_path);
        inputs.emplace_back(oracle_path);
      }
      if (method == Method::kOsml && !options.oracle) {
        throw Error(ErrorCode::kInvalidConfig,
                    "method osml requires --oracle-profiles");
      }
      const PredictionMatrix predictions = ReadPredictionCsv(input);
      const AggregationResult result = Aggregate(predictions, method, options);

      Json doc = ResultJson(result, method);
      if (with_trace) {
        Json trace = Json::array();
        for (const auto& pass : result.trace) {
          Json p = Json::object();
          Json profiles = Json::array();
          for (const auto& prof : pass.profiles) profiles.push_back(JsonProfile(prof));
          p["profiles"] = std::move(profiles);
          p["log_alpha"] = JsonNumbers(pass.weights.log_alpha);
          p["log_beta"] = JsonNumbers(pass.weights.log_beta);
          p["labels"] = JsonLabels(pass.labels);
          p["changed"] = pass.changed;
          trace.push_back(std::move(p));
        }
        doc["trace"] = std::move(trace);
      }
      Json flags = AlgorithmFlagsJson(agg_algo);
      flags["method"] = method_name;
      flags["oracle_profiles"] = oracle_path;
      doc["manifest"] = BuildManifest("aggregate", std::move(flags), inputs);
      if (!quiet) {
        for (const auto& w : result.warnings) err << "warning: " << w << '\n';
      }
      WriteOutput(doc.dump(2) + "\n", agg_out, out);
      return kExitOk;
    }

    if (generate->parsed()) {
      EnsembleSpec spec = BuildSpec(gen);
      spec.profiles = BuildSampler(gen).Sample(gen.m, gen_seed);
      spec.seed = gen_seed;
      const SyntheticDataset data = Generate(spec);
      WritePredictionCsv(gen_out, data.matrix);
      WriteLabelCsv(truth_out, data.truth);
      if (!profiles_out.empty()) {
        Json profiles = Json::array();
        for (const auto& p : spec.profiles) {
          profiles.push_back({{"psi", JsonNumber(p.psi)}, {"eta", JsonNumber(p.eta)}});
        }
        WriteOutput(profiles.dump(2) + "\n", profiles_out, out);
      }
      return kExitOk;
    }

    if (benchmark->parsed()) {
      BenchmarkConfig config;
      config.spec_template = BuildSpec(bench);
      config.resample = BuildSampler(bench);
      config.methods = ParseMethodList(methods_text);
      config.repetitions = reps;
      config.master_seed = master_seed;
      config.options = ToOptions(bench_algo);
      config.threads = threads;
      const BenchmarkReport report = RunBenchmark(config);

      Json doc = ReportToJson(report, timings);
      Json flags = EnsembleFlagsJson(bench);
      flags.update(AlgorithmFlagsJson(bench_algo));
      flags["reps"] = reps;
      flags["methods"] = methods_text;
      flags["master_seed"] = master_seed;
      doc["manifest"] = BuildManifest("benchmark", std::move(flags), {});
      const std::string json = doc.dump(2) + "\n";
      if (!json_out.empty()) WriteOutput(json, json_out, out);
      if (format != "table") out << json;
      if (format == "both") out << '\n';
      if (format != "json") out << ReportToTable(report, timings);
      if (!quiet) {
        for (const auto& f : report.failures) {
          err << "warning: repetition " << f.repetition << " " << f.method
              << ": " << f.message << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitPrecondition;
}

}  // namespace arimle::cli
