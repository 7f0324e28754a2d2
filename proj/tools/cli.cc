//
// Copyright 2026 The DP Partition Selection Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dp_partition/csv.h"
#include "dp_partition/evaluation.h"
#include "dp_partition/histogram.h"
#include "dp_partition/parallel.h"
#include "dp_partition/primitive.h"
#include "dp_partition/privacy_params.h"
#include "dp_partition/release.h"
#include "dp_partition/tsgd.h"

namespace dp_partition::cli {
namespace {

struct BudgetFlags {
  double epsilon = 1;
  double delta = 1e-5;
  std::string neighboring = "add-remove";
};

void AddBudgetFlags(CLI::App* command, BudgetFlags& flags, bool required) {
  CLI::Option* epsilon =
      command->add_option("--epsilon", flags.epsilon, "Privacy parameter epsilon");
  CLI::Option* delta =
      command->add_option("--delta", flags.delta, "Privacy parameter delta");
  if (required) {
    epsilon->required();
    delta->required();
  } else {
    epsilon->capture_default_str();
    delta->capture_default_str();
  }
  command
      ->add_option("--neighboring", flags.neighboring, "Neighboring model")
      ->check(CLI::IsMember({"add-remove", "replace"}))
      ->capture_default_str();
}

absl::StatusOr<PrivacyParams> ToParams(const BudgetFlags& flags) {
  absl::StatusOr<Neighboring> neighboring = ParseNeighboring(flags.neighboring);
  if (!neighboring.ok()) return neighboring.status();
  PrivacyParams params{flags.epsilon, flags.delta, *neighboring};
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  return params;
}

absl::Status WriteOutput(const std::string& text, const std::string& path,
                         std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return out ? absl::OkStatus()
               : absl::DataLossError("failed writing to standard output");
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  file << text;
  file.close();
  if (!file) return absl::DataLossError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

struct ProbsFlags {
  BudgetFlags budget;
  int64_t n_max = 20;
  int64_t kappa = 1;
  std::string strategy = "opt";
};

absl::StatusOr<std::string> RunProbs(const ProbsFlags& flags) {
  absl::StatusOr<PrivacyParams> params = ToParams(flags.budget);
  if (!params.ok()) return params.status();
  absl::StatusOr<Strategy> strategy = ParseStrategy(flags.strategy);
  if (!strategy.ok()) return strategy.status();
  // Same convention as the kappa comparison: the Gaussian strategy uses the
  // full budget at sensitivity sqrt(kappa), the others split it.
  if (*strategy != Strategy::kGaussian) {
    params = DivideBudget(*params, flags.kappa);
    if (!params.ok()) return params.status();
  }
  absl::StatusOr<std::vector<double>> probabilities =
      KeepProbabilities(*strategy, *params, flags.n_max, flags.kappa);
  if (!probabilities.ok()) return probabilities.status();
  return FormatProbabilitiesCsv(*probabilities);
}

struct MidpointsFlags {
  std::string figure = "midpoint-vs-eps";
  double epsilon = 1;
  double delta = 1e-5;
  int64_t kappa_max = 8;
  int64_t n_max = 20;
};

absl::StatusOr<std::string> RunMidpoints(const MidpointsFlags& flags) {
  absl::StatusOr<FigureId> id = ParseFigureId(flags.figure);
  if (!id.ok()) return id.status();
  FigureSpec spec = DefaultFigureSpec(*id, flags.epsilon, flags.delta);
  spec.kappa_max = flags.kappa_max;
  spec.n_max = flags.n_max;
  return GenerateFigureCsv(spec);
}

struct KappaFlags {
  BudgetFlags budget;
  int64_t kappa_max = 8;
};

absl::StatusOr<std::string> RunKappa(const KappaFlags& flags) {
  absl::StatusOr<PrivacyParams> params = ToParams(flags.budget);
  if (!params.ok()) return params.status();
  absl::StatusOr<std::vector<KappaRow>> rows =
      CompareKappa(*params, flags.kappa_max);
  if (!rows.ok()) return rows.status();
  return FormatKappaCsv(*rows);
}

struct SelectFlags {
  BudgetFlags budget;
  std::string input;
  std::string mode = "select";
  std::string ingest = "strict";
  int64_t kappa = 1;
  uint64_t seed = 0;
  std::optional<int64_t> cap;
  std::string public_file;
  std::optional<int64_t> public_threshold;
};

absl::StatusOr<std::vector<std::string>> ReadPublicKeys(
    const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::vector<std::string> keys;
  for (std::string line; std::getline(file, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) keys.push_back(std::move(line));
  }
  return keys;
}

absl::StatusOr<PartitionHistogram> LoadHistogram(std::istream& input,
                                                 const IngestOptions& options) {
  const int threads = ThreadCount();
  if (threads <= 1) return IngestCsv(input, options);
  absl::StatusOr<std::vector<Contribution>> rows = ReadContributions(input);
  if (!rows.ok()) return rows.status();
  return IngestSharded(*rows, options, threads);
}

std::string FormatRecords(const std::vector<ReleaseRecord>& records) {
  std::string out = "partition,noisy_count\n";
  for (const ReleaseRecord& record : records) {
    absl::StrAppend(&out, CsvEscape(record.partition), ",",
                    *record.noisy_count, "\n");
  }
  return out;
}

absl::StatusOr<std::string> RunSelect(const SelectFlags& flags,
                                      std::istream& in) {
  absl::StatusOr<PrivacyParams> total = ToParams(flags.budget);
  if (!total.ok()) return total.status();
  absl::StatusOr<PrivacyParams> params = DivideBudget(*total, flags.kappa);
  if (!params.ok()) return params.status();
  absl::StatusOr<ContributionPolicy> policy =
      ParseContributionPolicy(flags.ingest);
  if (!policy.ok()) return policy.status();
  const bool dual = flags.mode == "dual";
  if (dual != !flags.public_file.empty()) {
    return absl::InvalidArgumentError(
        "--public-file is required by, and only valid with, --mode dual");
  }
  if (dual != flags.public_threshold.has_value()) {
    return absl::InvalidArgumentError(
        "--public-threshold is required by, and only valid with, --mode dual");
  }
  if (flags.cap.has_value() && flags.mode != "select") {
    return absl::InvalidArgumentError(
        "--cap only applies to --mode select; noisy counts need true counts");
  }

  IngestOptions options;
  options.policy = *policy;
  options.max_partitions_per_user = flags.kappa;
  std::optional<OptimalPrimitive> primitive;
  std::vector<std::string> public_keys;
  // Build the mechanism before reading data so bad settings fail fast.
  if (flags.mode == "select") {
    absl::StatusOr<OptimalPrimitive> created = OptimalPrimitive::Create(*params);
    if (!created.ok()) return created.status();
    primitive = *created;
    options.cap = flags.cap.has_value() ? flags.cap : primitive->SaturationCount();
    if (options.cap.has_value() && *options.cap < 1) {
      return absl::InvalidArgumentError("--cap must be positive");
    }
  } else {
    absl::StatusOr<TruncatedGeometric> noise =
        TruncatedGeometric::ForPrivacy(*params);
    if (!noise.ok()) return noise.status();
    if (dual) {
      absl::StatusOr<std::vector<std::string>> keys =
          ReadPublicKeys(flags.public_file);
      if (!keys.ok()) return keys.status();
      public_keys = *std::move(keys);
    }
  }

  std::ifstream file;
  std::istream* input = &in;
  if (flags.input != "-") {
    file.open(flags.input, std::ios::binary);
    if (!file) {
      return absl::NotFoundError(absl::StrCat("cannot open ", flags.input));
    }
    input = &file;
  }
  absl::StatusOr<PartitionHistogram> histogram = LoadHistogram(*input, options);
  if (!histogram.ok()) return histogram.status();

  if (primitive.has_value()) {
    absl::StatusOr<std::vector<std::string>> selected =
        SelectPartitions(*histogram, *primitive, flags.seed);
    if (!selected.ok()) return selected.status();
    std::string out;
    for (const std::string& key : *selected) absl::StrAppend(&out, key, "\n");
    return out;
  }
  absl::StatusOr<std::vector<ReleaseRecord>> records =
      dual ? DualThresholdRelease(*histogram, public_keys, *params,
                                  *flags.public_threshold, flags.seed)
           : ThresholdedRelease(*histogram, *params, flags.seed);
  if (!records.ok()) return records.status();
  return FormatRecords(*records);
}

struct BenchFlags {
  BudgetFlags budget;
  int64_t iterations = 1'000'000;
  int64_t first_count = 1;
  int64_t span = 64;
  uint64_t seed = 0;
};

absl::StatusOr<std::string> RunBench(const BenchFlags& flags) {
  absl::StatusOr<PrivacyParams> params = ToParams(flags.budget);
  if (!params.ok()) return params.status();
  if (flags.iterations < 1 || flags.span < 1 || flags.first_count < 0) {
    return absl::InvalidArgumentError(
        "--iterations and --span must be positive, --first-count non-negative");
  }
  absl::StatusOr<OptimalPrimitive> primitive = OptimalPrimitive::Create(*params);
  if (!primitive.ok()) return primitive.status();
  const BenchReport report = RunDecisionBenchmark(
      *primitive, flags.iterations, flags.first_count, flags.span, flags.seed);
  return absl::StrCat("iterations,seconds,ns_per_op,kept\n", report.iterations,
                      ",", FormatDouble(report.seconds), ",",
                      FormatDouble(report.ns_per_op), ",", report.kept, "\n");
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return kExitConfig;
    case absl::StatusCode::kFailedPrecondition:
      return kExitContribution;
    default:
      return kExitFailure;
  }
}

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app("Differentially private partition selection", "dp-partition");
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Output file (default: stdout)");

  ProbsFlags probs;
  CLI::App* probs_cmd =
      app.add_subcommand("probs", "Keep probability for each user count");
  AddBudgetFlags(probs_cmd, probs.budget, true);
  probs_cmd->add_option("--n-max", probs.n_max)->capture_default_str();
  probs_cmd->add_option("--kappa", probs.kappa, "Partitions per user")
      ->capture_default_str();
  probs_cmd->add_option("--strategy", probs.strategy)
      ->check(CLI::IsMember({"opt", "laplace", "gauss"}))
      ->capture_default_str();

  MidpointsFlags midpoints;
  CLI::App* midpoints_cmd =
      app.add_subcommand("midpoints", "Figure data comparing strategies");
  midpoints_cmd->add_option("--figure", midpoints.figure)
      ->check(CLI::IsMember(
          {"prob-curve", "midpoint-vs-eps", "midpoint-vs-delta",
           "kappa-compare"}))
      ->capture_default_str();
  midpoints_cmd->add_option("--epsilon", midpoints.epsilon)
      ->capture_default_str();
  midpoints_cmd->add_option("--delta", midpoints.delta)->capture_default_str();
  midpoints_cmd->add_option("--kappa", midpoints.kappa_max, "Largest kappa")
      ->capture_default_str();
  midpoints_cmd->add_option("--n-max", midpoints.n_max)->capture_default_str();

  KappaFlags kappa;
  CLI::App* kappa_cmd = app.add_subcommand(
      "kappa", "Midpoints as a function of partitions per user");
  AddBudgetFlags(kappa_cmd, kappa.budget, false);
  kappa_cmd->add_option("--kappa,--kappa-max", kappa.kappa_max, "Largest kappa")
      ->capture_default_str();

  SelectFlags select;
  CLI::App* select_cmd =
      app.add_subcommand("select", "Select or release partitions from a CSV");
  AddBudgetFlags(select_cmd, select.budget, true);
  select_cmd->add_option("input,--input", select.input,
                         "user_id,partition CSV, or - for stdin")
      ->required();
  select_cmd->add_option("--mode", select.mode)
      ->check(CLI::IsMember({"select", "release-counts", "dual"}))
      ->capture_default_str();
  select_cmd->add_option("--ingest", select.ingest,
                         "Handling of users in too many partitions")
      ->check(CLI::IsMember({"strict", "first-wins"}))
      ->capture_default_str();
  select_cmd->add_option("--kappa", select.kappa, "Partitions per user")
      ->capture_default_str();
  select_cmd->add_option("--seed", select.seed)->capture_default_str();
  select_cmd->add_option("--cap", select.cap,
                         "Per-partition count cap (default: saturation count)");
  select_cmd->add_option("--public-file", select.public_file,
                         "Public partition keys, one per line");
  select_cmd->add_option("--public-threshold", select.public_threshold,
                         "Release threshold for public keys, in [0, k]");

  BenchFlags bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time closed-form keep decisions");
  AddBudgetFlags(bench_cmd, bench.budget, false);
  bench_cmd->add_option("--iterations", bench.iterations)
      ->capture_default_str();
  bench_cmd->add_option("--first-count", bench.first_count)
      ->capture_default_str();
  bench_cmd->add_option("--span", bench.span)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();

  // The subcommands accept --out after their own flags too.
  for (CLI::App* command :
       {probs_cmd, midpoints_cmd, kappa_cmd, select_cmd, bench_cmd}) {
    command->fallthrough();
  }

  std::vector<const char*> argv = {"dp-partition"};
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  absl::StatusOr<std::string> text;
  if (probs_cmd->parsed()) {
    text = RunProbs(probs);
  } else if (midpoints_cmd->parsed()) {
    text = RunMidpoints(midpoints);
  } else if (kappa_cmd->parsed()) {
    text = RunKappa(kappa);
  } else if (select_cmd->parsed()) {
    text = RunSelect(select, in);
  } else {
    text = RunBench(bench);
  }
  absl::Status status =
      text.ok() ? WriteOutput(*text, out_path, out) : text.status();
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
  }
  return ExitCodeFor(status);
}

}  // namespace dp_partition::cli
