// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEADSEL_BENCH_H_
#define LEADSEL_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "leadsel/graph.h"
#include "leadsel/greedy.h"

namespace leadsel::bench {

enum class ExperimentKind {
  kScaling,         // wall time and call counts against n
  kLazyProfile,     // ordinary vs lazy across topologies and k
  kEpsilonSweep,    // stochastic deviation-vs-k curves per epsilon
  kMonteCarlo,      // stochastic deviation distribution over seeds
  kSbmDistributed,  // distributed greedy on stochastic block models
};

std::string_view ToString(ExperimentKind kind);
ExperimentKind ParseExperimentKind(std::string_view name);

struct TopologySpec {
  std::string model = "er";  // er | ba | rg
  double p = 0.05;           // er edge probability
  std::size_t m_attach = 2;  // ba
  // rg connection radius; unset means sqrt(p / pi), which matches the ER
  // mean degree away from the boundary.
  std::optional<double> radius;

  double EffectiveRadius() const;
  std::string Label() const;
};

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::kOrdinary;
  OracleKind oracle = OracleKind::kAccelerated;
  std::string Label() const;
};

// Either a fixed k, used as is, or round(fraction * n) clamped to
// [1, n - 1].
struct KRule {
  std::optional<std::size_t> fixed = 10;
  double fraction = 0.0;
  std::size_t Resolve(std::size_t n) const;
};

struct SbmSweep {
  std::vector<std::size_t> clusters = {4};
  std::vector<std::size_t> nodes_per_cluster = {100};
  double p_in = 0.05;
  std::vector<double> p_out_ratios = {0.4};  // p_out = ratio * p_in
  bool equal_partition = false;  // false: ground-truth SBM clusters
  GreedyConfig inner = {Algorithm::kStochastic, OracleKind::kAccelerated, 0.5,
                        0};
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kScaling;
  std::vector<TopologySpec> topologies = {TopologySpec{}};
  std::vector<std::size_t> n_values = {100, 200, 400, 800};
  KRule k;
  std::vector<std::size_t> k_values = {10, 20, 30, 40, 50};  // lazy-profile
  std::vector<double> epsilons = {0.01};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::uint64_t graph_seed = 1;  // monte-carlo: the one shared graph
  std::vector<AlgorithmSpec> algorithms = {
      {Algorithm::kOrdinary, OracleKind::kAccelerated},
      {Algorithm::kLazy, OracleKind::kAccelerated},
      {Algorithm::kStochastic, OracleKind::kAccelerated}};
  SbmSweep sbm;
  std::optional<std::size_t> at_k;  // deviation iteration; defaults to k
  std::size_t histogram_bins = 20;
  bool warmup = true;  // one discarded run per timed cell
  std::string output_dir = "results";
};

// Desk-scale defaults for each experiment.
ExperimentConfig DefaultConfig(ExperimentKind kind);

// Missing keys keep DefaultConfig(kind) values. Throws InvalidArgument on
// unknown keys or bad values.
ExperimentConfig ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const ExperimentConfig& cfg);
void ValidateConfig(const ExperimentConfig& cfg);

// One optimizer run in an experiment.
struct CellResult {
  // Cells with equal `instance` ran on the same graph.
  std::size_t instance = 0;
  // The full-graph ordinary run that deviations and speedups are measured
  // against.
  bool baseline = false;
  std::string group;  // SBM setting label; empty elsewhere
  std::string topology;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;        // optimizer seed
  std::uint64_t graph_seed = 0;  // generator seed
  AlgorithmSpec algorithm;
  double epsilon = 0.0;
  std::optional<SelectionTrace> trace;
  std::string error;  // set iff trace is absent

  bool ok() const { return trace.has_value(); }
};

// Aggregate table; cells are strings or numbers.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

// y = a * n^d fitted by least squares on (ln n, ln y).
struct ScalingFit {
  double coefficient = 0.0;  // a
  double exponent = 0.0;     // d
  double r_squared = 0.0;
  // 95% confidence interval on d (Student t, points - 2 dof); collapses to
  // d for exactly-fitting or 2-point data.
  double exponent_low = 0.0;
  double exponent_high = 0.0;
  std::size_t points = 0;
};

struct NamedFit {
  std::string series;  // e.g. "stochastic/accelerated"
  std::string metric;  // "calls" | "seconds"
  ScalingFit fit;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;
  std::vector<Table> tables;
  std::vector<NamedFit> fits;

  std::size_t failed_cells() const;
};

// Requires >= 3 points, all coordinates positive.
ScalingFit FitScalingExponent(std::span<const std::pair<double, double>> points);

struct DeviationSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
};

// 100 * (f_candidate - f_baseline) / f_baseline at iteration at_k (1-based).
double DeviationPercent(const SelectionTrace& baseline,
                        const SelectionTrace& candidate, std::size_t at_k);

// Summary over candidates; traces must share the graph and reach at_k.
DeviationSummary DeviationStats(const SelectionTrace& baseline,
                                std::span<const SelectionTrace> candidates,
                                std::size_t at_k);

// Runs every cell. Cells are independent; `jobs` > 1 spreads them over
// threads without changing any selection, objective or call count.
ExperimentReport RunExperiment(const ExperimentConfig& cfg,
                               std::size_t jobs = 1);

enum class ReportFormat { kCsv, kJson };
ReportFormat ParseReportFormat(std::string_view name);

// One row per iteration per successful cell, one row for each failed cell.
// Header only when there are no cells.
std::string CellsCsv(const ExperimentReport& report);
std::string TableCsv(const Table& table);
std::string FitsCsv(const ExperimentReport& report);
nlohmann::json ReportToJson(const ExperimentReport& report);

// csv: cells.csv, fits.csv and <table>.csv; json: report.json. Returns the
// files written. Throws Error on I/O failure.
std::vector<std::filesystem::path> EmitReport(
    const ExperimentReport& report, ReportFormat format,
    const std::filesystem::path& dir);

}  // namespace leadsel::bench

#endif  // LEADSEL_BENCH_H_
