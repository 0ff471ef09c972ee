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

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

#include "leadsel/bench.h"
#include "leadsel/errors.h"
#include "leadsel/oracle.h"
#include "leadsel/trace_io.h"

namespace leadsel::bench {
namespace {

using nlohmann::json;

struct Variant {
  AlgorithmSpec spec;
  double epsilon = 0.0;
};

// Stochastic entries fan out over every epsilon; the rest run once.
std::vector<Variant> ExpandVariants(const ExperimentConfig& cfg) {
  std::vector<Variant> out;
  for (const AlgorithmSpec& a : cfg.algorithms) {
    if (a.algorithm == Algorithm::kStochastic) {
      for (double e : cfg.epsilons) out.push_back({a, e});
    } else if (a.algorithm == Algorithm::kDistributed) {
      out.push_back({a, cfg.sbm.inner.algorithm == Algorithm::kStochastic
                            ? cfg.sbm.inner.epsilon
                            : 0.0});
    } else {
      out.push_back({a, 0.0});
    }
  }
  return out;
}

Graph MakeGraph(const TopologySpec& t, std::size_t n, std::uint64_t seed) {
  if (t.model == "ba") return GenerateBarabasiAlbert(n, t.m_attach, seed);
  if (t.model == "rg") return GenerateRandomGeometric(n, t.EffectiveRadius(), seed);
  return GenerateErdosRenyi(n, t.p, seed);
}

// One graph instance and the cells planned on it.
struct Task {
  std::vector<CellResult> cells;
  std::function<std::shared_ptr<const ObjectiveContext>()> context;
  std::shared_ptr<const NodePartition> partition;
  std::function<void(Task&)> prepare;  // runs after `context`, may set partition
};

SelectionTrace RunVariant(const ObjectiveContext& ctx, const CellResult& cell,
                          const NodePartition* partition,
                          const GreedyConfig& inner) {
  const OracleKind oracle = cell.algorithm.oracle;
  switch (cell.algorithm.algorithm) {
    case Algorithm::kOrdinary:
      return OrdinaryGreedy(ctx, cell.k, oracle);
    case Algorithm::kLazy:
      return LazyGreedy(ctx, cell.k, oracle);
    case Algorithm::kStochastic:
      return StochasticGreedy(ctx, cell.k, cell.epsilon, cell.seed, oracle);
    case Algorithm::kDistributed: {
      if (partition == nullptr) {
        throw InvalidArgument("distributed run without a partition");
      }
      GreedyConfig in = inner;
      in.oracle = oracle;
      return DistributedGreedy(ctx, cell.k, *partition, in, cell.seed);
    }
  }
  throw InvalidArgument("unknown algorithm");
}

CellResult PlanCell(std::size_t instance, const std::string& topology,
                    std::size_t n, std::size_t k, std::uint64_t seed,
                    std::uint64_t graph_seed, const Variant& v) {
  CellResult c;
  c.instance = instance;
  c.topology = topology;
  c.n = n;
  c.k = k;
  c.seed = seed;
  c.graph_seed = graph_seed;
  c.algorithm = v.spec;
  c.epsilon = v.epsilon;
  return c;
}

CellResult PlanBaseline(std::size_t instance, const std::string& topology,
                        std::size_t n, std::size_t k, std::uint64_t graph_seed) {
  CellResult c = PlanCell(instance, topology, n, k, 0, graph_seed,
                          {{Algorithm::kOrdinary, OracleKind::kAccelerated}, 0.0});
  c.baseline = true;
  return c;
}

// A unit of parallel work: some cells of one task.
struct Job {
  std::size_t task;
  std::vector<std::size_t> cells;
};

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, std::vector<Task>& tasks)
      : cfg_(cfg), tasks_(tasks), contexts_(tasks.size()),
        partitions_(tasks.size()), errors_(tasks.size()),
        once_(tasks.size()) {}

  void Run(const std::vector<Job>& jobs, std::size_t threads) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t j = next++; j < jobs.size(); j = next++) RunJob(jobs[j]);
    };
    threads = std::max<std::size_t>(1, std::min(threads, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
  }

 private:
  void Prepare(std::size_t t) {
    std::call_once(once_[t], [&] {
      try {
        contexts_[t] = tasks_[t].context();
        // Bootstrapped once here so no timed run pays for it.
        contexts_[t]->pseudo_inverse();
        if (tasks_[t].prepare) tasks_[t].prepare(tasks_[t]);
        partitions_[t] = tasks_[t].partition;
      } catch (const std::exception& e) {
        errors_[t] = std::string("instance setup failed: ") + e.what();
      }
    });
  }

  void RunJob(const Job& job) {
    Prepare(job.task);
    for (std::size_t idx : job.cells) {
      CellResult& cell = tasks_[job.task].cells[idx];
      if (!errors_[job.task].empty()) {
        cell.error = errors_[job.task];
        continue;
      }
      try {
        const ObjectiveContext& ctx = *contexts_[job.task];
        const NodePartition* part = partitions_[job.task].get();
        if (cfg_.warmup) RunVariant(ctx, cell, part, cfg_.sbm.inner);
        cell.trace = RunVariant(ctx, cell, part, cfg_.sbm.inner);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  }

  const ExperimentConfig& cfg_;
  std::vector<Task>& tasks_;
  std::vector<std::shared_ptr<const ObjectiveContext>> contexts_;
  std::vector<std::shared_ptr<const NodePartition>> partitions_;
  std::vector<std::string> errors_;
  std::vector<std::once_flag> once_;
};

std::function<std::shared_ptr<const ObjectiveContext>()> ContextFor(
    TopologySpec t, std::size_t n, std::uint64_t seed) {
  return [t, n, seed] {
    return std::make_shared<const ObjectiveContext>(MakeGraph(t, n, seed));
  };
}

// ---- planning ----

void PlanScaling(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto variants = ExpandVariants(cfg);
  for (const TopologySpec& t : cfg.topologies) {
    for (std::size_t n : cfg.n_values) {
      for (std::uint64_t seed : cfg.seeds) {
        Task task;
        const std::size_t k = cfg.k.Resolve(n);
        for (const Variant& v : variants) {
          task.cells.push_back(
              PlanCell(tasks.size(), t.Label(), n, k, seed, seed, v));
        }
        task.context = ContextFor(t, n, seed);
        tasks.push_back(std::move(task));
      }
    }
  }
}

void PlanLazyProfile(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto variants = ExpandVariants(cfg);
  for (const TopologySpec& t : cfg.topologies) {
    for (std::size_t n : cfg.n_values) {
      for (std::uint64_t seed : cfg.seeds) {
        Task task;
        for (std::size_t k : cfg.k_values) {
          task.cells.push_back(PlanBaseline(tasks.size(), t.Label(), n, k, seed));
          for (const Variant& v : variants) {
            task.cells.push_back(
                PlanCell(tasks.size(), t.Label(), n, k, seed, seed, v));
          }
        }
        task.context = ContextFor(t, n, seed);
        tasks.push_back(std::move(task));
      }
    }
  }
}

void PlanEpsilonSweep(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto variants = ExpandVariants(cfg);
  for (const TopologySpec& t : cfg.topologies) {
    for (std::size_t n : cfg.n_values) {
      const std::size_t k = cfg.k.Resolve(n);
      for (std::uint64_t seed : cfg.seeds) {
        Task task;
        task.cells.push_back(PlanBaseline(tasks.size(), t.Label(), n, k, seed));
        for (const Variant& v : variants) {
          task.cells.push_back(
              PlanCell(tasks.size(), t.Label(), n, k, seed, seed, v));
        }
        task.context = ContextFor(t, n, seed);
        tasks.push_back(std::move(task));
      }
    }
  }
}

void PlanMonteCarlo(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto variants = ExpandVariants(cfg);
  for (const TopologySpec& t : cfg.topologies) {
    for (std::size_t n : cfg.n_values) {
      const std::size_t k = cfg.k.Resolve(n);
      Task task;
      task.cells.push_back(
          PlanBaseline(tasks.size(), t.Label(), n, k, cfg.graph_seed));
      for (std::uint64_t seed : cfg.seeds) {
        for (const Variant& v : variants) {
          task.cells.push_back(PlanCell(tasks.size(), t.Label(), n, k, seed,
                                        cfg.graph_seed, v));
        }
      }
      task.context = ContextFor(t, n, cfg.graph_seed);
      tasks.push_back(std::move(task));
    }
  }
}

std::string SbmGroup(std::size_t c, std::size_t nc, double ratio, bool equal) {
  return "c=" + std::to_string(c) + ";n_c=" + std::to_string(nc) +
         ";p_out_ratio=" + FormatReal(ratio) +
         (equal ? ";partition=equal" : ";partition=ground-truth");
}

void PlanSbm(const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto variants = ExpandVariants(cfg);
  const SbmSweep& s = cfg.sbm;
  for (std::size_t c : s.clusters) {
    for (std::size_t nc : s.nodes_per_cluster) {
      for (double ratio : s.p_out_ratios) {
        for (std::uint64_t seed : cfg.seeds) {
          const std::size_t n = c * nc;
          const SbmParams params{c, nc, s.p_in, ratio * s.p_in};
          const std::string group = SbmGroup(c, nc, ratio, s.equal_partition);
          Task task;
          const std::size_t k = n >= 2 ? cfg.k.Resolve(n) : 1;
          task.cells.push_back(PlanBaseline(tasks.size(), "sbm", n, k, seed));
          for (const Variant& v : variants) {
            task.cells.push_back(
                PlanCell(tasks.size(), "sbm", n, k, seed, seed, v));
          }
          for (CellResult& cell : task.cells) cell.group = group;
          // Generation and partitioning share one closure so the partition
          // matches the generated graph.
          auto sbm = std::make_shared<std::shared_ptr<SbmGraph>>();
          task.context = [params, seed, sbm] {
            *sbm = std::make_shared<SbmGraph>(GenerateSbm(params, seed));
            return std::make_shared<const ObjectiveContext>((*sbm)->graph);
          };
          const bool equal = s.equal_partition;
          task.prepare = [sbm, seed, c, equal](Task& self) {
            self.partition = std::make_shared<const NodePartition>(
                equal ? PartitionEqual((*sbm)->graph, c, seed)
                      : (*sbm)->partition);
          };
          tasks.push_back(std::move(task));
        }
      }
    }
  }
}

// ---- aggregation ----

double SafeRatio(double num, double den) {
  return den > 0.0 ? num / den : 0.0;
}

std::string SeriesLabel(const CellResult& c) {
  std::string s = c.algorithm.Label();
  if (c.algorithm.algorithm == Algorithm::kStochastic ||
      c.algorithm.algorithm == Algorithm::kDistributed) {
    s += "@eps=" + FormatReal(c.epsilon);
  }
  return s;
}

const CellResult* BaselineOf(const std::vector<CellResult>& cells,
                             const CellResult& c) {
  for (const CellResult& b : cells) {
    if (b.baseline && b.instance == c.instance && b.k == c.k) return &b;
  }
  return nullptr;
}

struct Acc {
  std::size_t runs = 0, failed = 0;
  double calls = 0, seconds = 0, objective = 0;
  std::vector<std::pair<double, double>> ratios;  // (call, time) vs baseline
  std::vector<double> deviations;
  std::size_t identical = 0;
  void Add(const CellResult& c) {
    if (!c.ok()) {
      ++failed;
      return;
    }
    ++runs;
    calls += static_cast<double>(c.trace->TotalCalls());
    seconds += c.trace->TotalSeconds();
    objective += c.trace->FinalObjective();
  }
  double Mean(double total) const {
    return runs ? total / static_cast<double>(runs) : 0.0;
  }
};

double MeanOf(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double MaxOf(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

void AggregateScaling(ExperimentReport& r) {
  using Key = std::tuple<std::string, std::string, std::size_t>;
  std::map<Key, Acc> acc;
  std::map<Key, std::size_t> ks;
  for (const CellResult& c : r.cells) {
    const Key key{c.topology, SeriesLabel(c), c.n};
    acc[key].Add(c);
    ks[key] = c.k;
  }
  Table t{"scaling",
          {"topology", "series", "n", "k", "runs", "failed", "mean_calls",
           "mean_seconds", "mean_objective"},
          {}};
  std::map<std::pair<std::string, std::string>,
           std::vector<std::pair<double, double>>>
      calls, seconds;
  for (const auto& [key, a] : acc) {
    const auto& [topo, series, n] = key;
    t.rows.push_back({topo, series, n, ks[key], a.runs, a.failed,
                      a.Mean(a.calls), a.Mean(a.seconds), a.Mean(a.objective)});
    if (a.runs == 0) continue;
    calls[{topo, series}].push_back({double(n), a.Mean(a.calls)});
    seconds[{topo, series}].push_back({double(n), a.Mean(a.seconds)});
  }
  r.tables.push_back(std::move(t));
  auto fit = [&](const auto& series_map, const std::string& metric) {
    for (const auto& [key, pts] : series_map) {
      try {
        r.fits.push_back({key.first + ":" + key.second, metric,
                          FitScalingExponent(pts)});
      } catch (const InvalidArgument&) {
        // Fewer than three usable sizes: no fit for this series.
      }
    }
  };
  fit(calls, "calls");
  fit(seconds, "seconds");
}

void AggregateLazy(ExperimentReport& r) {
  using Key = std::tuple<std::string, std::string, std::size_t, std::size_t>;
  std::map<Key, Acc> acc;
  std::map<Key, Acc> base;
  for (const CellResult& c : r.cells) {
    if (c.baseline) continue;
    const Key key{c.topology, SeriesLabel(c), c.n, c.k};
    Acc& a = acc[key];
    a.Add(c);
    const CellResult* b = BaselineOf(r.cells, c);
    if (b == nullptr) continue;
    base[key].Add(*b);
    if (c.ok() && b->ok()) {
      a.ratios.push_back(
          {SafeRatio(double(b->trace->TotalCalls()), double(c.trace->TotalCalls())),
           SafeRatio(b->trace->TotalSeconds(), c.trace->TotalSeconds())});
      bool same = c.trace->Leaders() == b->trace->Leaders();
      for (std::size_t i = 0; same && i < c.trace->records.size(); ++i) {
        same = std::abs(c.trace->records[i].objective -
                        b->trace->records[i].objective) <=
               1e-9 * std::max(1.0, std::abs(b->trace->records[i].objective));
      }
      a.identical += same;
    }
  }
  Table t{"lazy_profile",
          {"topology", "series", "n", "k", "runs", "failed", "baseline_calls",
           "mean_calls", "call_ratio", "baseline_seconds", "mean_seconds",
           "time_ratio", "identical_to_baseline"},
          {}};
  for (const auto& [key, a] : acc) {
    const auto& [topo, series, n, k] = key;
    const Acc& b = base[key];
    t.rows.push_back({topo, series, n, k, a.runs, a.failed, b.Mean(b.calls),
                      a.Mean(a.calls), SafeRatio(b.calls, a.calls),
                      b.Mean(b.seconds), a.Mean(a.seconds),
                      SafeRatio(b.seconds, a.seconds), a.identical});
  }
  r.tables.push_back(std::move(t));
}

// Deviation-vs-iteration curves plus speed ratios against the baseline.
void AggregateDeviationCurves(ExperimentReport& r, const std::string& name) {
  using Key = std::tuple<std::string, std::size_t, std::string>;
  std::map<Key, std::vector<std::vector<double>>> curves;  // per iteration
  std::map<Key, Acc> acc;
  for (const CellResult& c : r.cells) {
    if (c.baseline) continue;
    const Key key{c.topology, c.n, SeriesLabel(c)};
    Acc& a = acc[key];
    a.Add(c);
    const CellResult* b = BaselineOf(r.cells, c);
    if (!c.ok() || b == nullptr || !b->ok()) continue;
    auto& curve = curves[key];
    curve.resize(c.k);
    for (std::size_t i = 1; i <= c.k; ++i) {
      curve[i - 1].push_back(DeviationPercent(*b->trace, *c.trace, i));
    }
    a.ratios.push_back(
        {SafeRatio(double(b->trace->TotalCalls()), double(c.trace->TotalCalls())),
         SafeRatio(b->trace->TotalSeconds(), c.trace->TotalSeconds())});
  }
  Table curve_table{name + "_curve",
                    {"topology", "n", "series", "iteration", "samples",
                     "mean_deviation_pct", "max_deviation_pct"},
                    {}};
  for (const auto& [key, curve] : curves) {
    const auto& [topo, n, series] = key;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      curve_table.rows.push_back({topo, n, series, i + 1, curve[i].size(),
                                  MeanOf(curve[i]), MaxOf(curve[i])});
    }
  }
  Table speed{name + "_speedup",
              {"topology", "n", "series", "runs", "failed", "mean_call_ratio",
               "mean_time_ratio"},
              {}};
  for (const auto& [key, a] : acc) {
    const auto& [topo, n, series] = key;
    std::vector<double> cr, tr;
    for (const auto& [c, t] : a.ratios) {
      cr.push_back(c);
      tr.push_back(t);
    }
    speed.rows.push_back({topo, n, series, a.runs, a.failed, MeanOf(cr), MeanOf(tr)});
  }
  r.tables.push_back(std::move(curve_table));
  r.tables.push_back(std::move(speed));
}

void AggregateMonteCarlo(ExperimentReport& r) {
  AggregateDeviationCurves(r, "monte_carlo");
  using Key = std::tuple<std::string, std::size_t, std::string>;
  std::map<Key, std::vector<SelectionTrace>> candidates;
  std::map<Key, const CellResult*> baselines;
  std::map<Key, std::size_t> ks;
  for (const CellResult& c : r.cells) {
    if (c.baseline || !c.ok()) continue;
    const CellResult* b = BaselineOf(r.cells, c);
    if (b == nullptr || !b->ok()) continue;
    const Key key{c.topology, c.n, SeriesLabel(c)};
    candidates[key].push_back(*c.trace);
    baselines[key] = b;
    ks[key] = c.k;
  }
  Table summary{"deviation_summary",
                {"topology", "n", "series", "at_k", "count", "mean_pct",
                 "min_pct", "max_pct", "p50_pct", "p90_pct", "p95_pct"},
                {}};
  Table hist{"deviation_histogram",
             {"topology", "n", "series", "at_k", "bin_low_pct", "bin_high_pct",
              "count"},
             {}};
  for (const auto& [key, traces] : candidates) {
    const auto& [topo, n, series] = key;
    const std::size_t at_k = std::min(r.config.at_k.value_or(ks[key]), ks[key]);
    const SelectionTrace& base = *baselines[key]->trace;
    const DeviationSummary s = DeviationStats(base, traces, at_k);
    summary.rows.push_back({topo, n, series, at_k, s.count, s.mean, s.min,
                            s.max, s.p50, s.p90, s.p95});
    const std::size_t bins = r.config.histogram_bins;
    std::vector<std::size_t> counts(bins, 0);
    const double width = (s.max - s.min) / static_cast<double>(bins);
    for (const SelectionTrace& t : traces) {
      const double d = DeviationPercent(base, t, at_k);
      std::size_t b = width > 0.0 ? static_cast<std::size_t>((d - s.min) / width)
                                  : 0;
      counts[std::min(b, bins - 1)] += 1;
    }
    for (std::size_t b = 0; b < bins; ++b) {
      hist.rows.push_back({topo, n, series, at_k, s.min + width * double(b),
                           s.min + width * double(b + 1), counts[b]});
    }
  }
  r.tables.push_back(std::move(summary));
  r.tables.push_back(std::move(hist));
}

void AggregateSbm(ExperimentReport& r) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, Acc> acc;
  for (const CellResult& c : r.cells) {
    if (c.baseline) continue;
    Acc& a = acc[{c.group, SeriesLabel(c)}];
    a.Add(c);
    const CellResult* b = BaselineOf(r.cells, c);
    if (!c.ok() || b == nullptr || !b->ok()) continue;
    const std::size_t at_k = std::min(r.config.at_k.value_or(c.k), c.k);
    a.deviations.push_back(DeviationPercent(*b->trace, *c.trace, at_k));
    a.ratios.push_back(
        {SafeRatio(double(b->trace->TotalCalls()), double(c.trace->TotalCalls())),
         SafeRatio(b->trace->TotalSeconds(), c.trace->TotalSeconds())});
  }
  Table t{"sbm_distributed",
          {"setting", "series", "runs", "failed", "mean_deviation_pct",
           "max_deviation_pct", "mean_call_ratio", "mean_time_ratio"},
          {}};
  for (const auto& [key, a] : acc) {
    std::vector<double> cr, tr;
    for (const auto& [c, tm] : a.ratios) {
      cr.push_back(c);
      tr.push_back(tm);
    }
    t.rows.push_back({key.first, key.second, a.runs, a.failed,
                      MeanOf(a.deviations), MaxOf(a.deviations), MeanOf(cr),
                      MeanOf(tr)});
  }
  r.tables.push_back(std::move(t));
}

}  // namespace

std::size_t ExperimentReport::failed_cells() const {
  return static_cast<std::size_t>(std::count_if(
      cells.begin(), cells.end(), [](const CellResult& c) { return !c.ok(); }));
}

ExperimentReport RunExperiment(const ExperimentConfig& cfg, std::size_t jobs) {
  ValidateConfig(cfg);
  std::vector<Task> tasks;
  switch (cfg.kind) {
    case ExperimentKind::kScaling: PlanScaling(cfg, tasks); break;
    case ExperimentKind::kLazyProfile: PlanLazyProfile(cfg, tasks); break;
    case ExperimentKind::kEpsilonSweep: PlanEpsilonSweep(cfg, tasks); break;
    case ExperimentKind::kMonteCarlo: PlanMonteCarlo(cfg, tasks); break;
    case ExperimentKind::kSbmDistributed: PlanSbm(cfg, tasks); break;
  }

  // Cells never read each other's results, so each is its own job.
  std::vector<Job> job_list;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    for (std::size_t c = 0; c < tasks[t].cells.size(); ++c) {
      job_list.push_back({t, {c}});
    }
  }
  Runner(cfg, tasks).Run(job_list, jobs);

  ExperimentReport report;
  report.config = cfg;
  for (Task& t : tasks) {
    for (CellResult& c : t.cells) report.cells.push_back(std::move(c));
  }
  switch (cfg.kind) {
    case ExperimentKind::kScaling: AggregateScaling(report); break;
    case ExperimentKind::kLazyProfile: AggregateLazy(report); break;
    case ExperimentKind::kEpsilonSweep:
      AggregateDeviationCurves(report, "epsilon");
      break;
    case ExperimentKind::kMonteCarlo: AggregateMonteCarlo(report); break;
    case ExperimentKind::kSbmDistributed: AggregateSbm(report); break;
  }
  return report;
}

}  // namespace leadsel::bench
