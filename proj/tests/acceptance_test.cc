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

// End-to-end acceptance checks. Prints one [PASS]/[FAIL] line per criterion
// and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leadsel/bench.h"
#include "leadsel/dense_matrix.h"
#include "leadsel/errors.h"
#include "leadsel/graph.h"
#include "leadsel/greedy.h"
#include "leadsel/linalg.h"
#include "leadsel/oracle.h"

namespace leadsel {
namespace {

// Tolerances.
constexpr double kInverseRelTol = 1e-8;        // chained removals vs direct
constexpr double kPinvTol = 1e-8;              // Moore-Penrose and grounding
constexpr double kBetaTarget = 2.17;
constexpr double kBetaTol = 0.005;
constexpr std::uint64_t kStochasticCalls = 4590;  // n=1000, k=10, eps=0.01
constexpr double kCallRatioLow = 2.0;
constexpr double kCallRatioHigh = 2.4;
constexpr double kMaxMeanDeviationPct = 2.0;
constexpr double kBruteForceRatio = 1.10;
constexpr double kDistributedDeviationPct = 2.0;
constexpr double kStochasticExponent = 1.0;
constexpr double kOrdinaryExponent = 2.0;
constexpr double kExponentTol = 0.15;
constexpr double kOracleAgreementTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << "violated: " << what;
    }
  }
};

std::string Fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

Graph ConnectedEr(std::size_t n, std::uint64_t seed) {
  // Comfortably above the connectivity threshold so retries are rare.
  const double p = std::min(1.0, 3.0 * std::log(double(n)) / double(n));
  return GenerateErdosRenyi(n, p, seed);
}

// ---- 1: chained Woodbury removals vs direct inversion ----

struct ChainStats {
  std::size_t chains = 0;
  std::size_t steps = 0;
  double worst = 0.0;
};

// Extends `removed` by every (or a sampled) next index down to `depth`
// further removals, comparing each chained inverse with a direct one.
void WalkChains(const DenseMatrix& grounded, const DenseMatrix& inverse,
                std::size_t depth, bool exhaustive, std::mt19937_64& rng,
                ChainStats& stats) {
  if (depth == 0 || grounded.rows() < 2) {
    ++stats.chains;
    return;
  }
  std::vector<std::size_t> next(grounded.rows());
  std::iota(next.begin(), next.end(), 0);
  if (!exhaustive) {
    std::uniform_int_distribution<std::size_t> pick(0, grounded.rows() - 1);
    next = {pick(rng)};
  }
  for (std::size_t m : next) {
    const DenseMatrix reduced = DeleteRowCol(grounded, m);
    const DenseMatrix chained = WoodburyRemove(inverse, grounded, m);
    const DenseMatrix direct = Invert(reduced);
    stats.worst = std::max(stats.worst,
                           MaxAbsDiff(chained, direct) / direct.MaxAbs());
    ++stats.steps;
    WalkChains(reduced, chained, depth - 1, exhaustive, rng, stats);
  }
}

Outcome WoodburyChains() {
  Outcome out;
  ChainStats stats;
  std::mt19937_64 rng(2024);
  for (std::uint64_t g = 0; g < 100; ++g) {
    const std::size_t n = 5 + static_cast<std::size_t>(g * 55 / 99);
    const Graph graph = ConnectedEr(n, 1000 + g);
    const DenseMatrix lap = Laplacian(graph);
    // Small graphs: every sequence. Larger: 20 random sequences per first
    // leader choice sampled over 5 leaders.
    const bool exhaustive = n <= 7;
    std::vector<std::size_t> firsts(n);
    std::iota(firsts.begin(), firsts.end(), 0);
    if (!exhaustive) {
      std::shuffle(firsts.begin(), firsts.end(), rng);
      firsts.resize(5);
    }
    for (std::size_t first : firsts) {
      const DenseMatrix grounded = DeleteRowCol(lap, first);
      const DenseMatrix inverse = Invert(grounded);
      const std::size_t depth = std::min<std::size_t>(5, n - 2);
      const int repeats = exhaustive ? 1 : 20;
      for (int r = 0; r < repeats; ++r) {
        WalkChains(grounded, inverse, depth, exhaustive, rng, stats);
      }
    }
  }
  out.Require(stats.worst <= kInverseRelTol,
              "worst relative error " + Fmt(stats.worst) + " > 1e-8");
  if (out.pass) {
    out.detail << stats.chains << " chains, " << stats.steps
               << " removals, worst rel. max-norm error " << Fmt(stats.worst, 3);
  }
  return out;
}

// ---- 2: pseudo-inverse bootstrap ----

Outcome PseudoInverse() {
  Outcome out;
  double worst_mp = 0.0, worst_ground = 0.0;
  std::size_t graphs = 0, groundings = 0;
  for (std::size_t n : {5, 20, 50}) {
    std::vector<Graph> gs = {ConnectedEr(n, 7 * n),
                             GenerateBarabasiAlbert(n, 2, 7 * n + 1)};
    for (const Graph& g : gs) {
      ++graphs;
      const DenseMatrix l = Laplacian(g);
      const DenseMatrix p = PinvLaplacian(l);
      const DenseMatrix lp = l * p, pl = p * l;
      const double scale = std::max(1.0, l.MaxAbs() * p.MaxAbs());
      worst_mp = std::max({worst_mp, MaxAbsDiff(lp * l, l) / scale,
                           MaxAbsDiff(pl * p, p) / scale,
                           MaxAbsDiff(lp, lp.Transpose()),
                           MaxAbsDiff(pl, pl.Transpose())});
      for (std::size_t m = 0; m < n; ++m) {
        const DenseMatrix prod = GroundFromPinv(p, m) * DeleteRowCol(l, m);
        worst_ground = std::max(
            worst_ground, MaxAbsDiff(prod, DenseMatrix::Identity(n - 1)));
        ++groundings;
      }
    }
  }
  out.Require(worst_mp <= kPinvTol, "Moore-Penrose residual " + Fmt(worst_mp));
  out.Require(worst_ground <= kPinvTol, "grounding residual " + Fmt(worst_ground));
  if (out.pass) {
    out.detail << graphs << " graphs, " << groundings
               << " groundings; worst MP residual " << Fmt(worst_mp, 3)
               << ", worst grounding residual " << Fmt(worst_ground, 3);
  }
  return out;
}

// ---- 3: lazy exactness and savings ----

Graph MixedTopology(std::size_t i, std::size_t n, std::uint64_t seed) {
  switch (i % 3) {
    case 0: return ConnectedEr(n, seed);
    case 1: return GenerateBarabasiAlbert(n, 2, seed);
    default:
      return GenerateRandomGeometric(
          n, std::sqrt(3.0 * std::log(double(n)) / (M_PI * double(n))), seed);
  }
}

Outcome LazyExactness() {
  Outcome out;
  constexpr std::size_t kK = 30;
  const std::vector<std::size_t> checkpoints = {5, 10, 15, 20, 25, 30};
  std::vector<double> ord_sum(checkpoints.size(), 0.0);
  std::vector<double> lazy_sum(checkpoints.size(), 0.0);
  std::size_t mismatches = 0, over_budget = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    const std::size_t n = 100 + 50 * (i % 5);
    const ObjectiveContext ctx(MixedTopology(i, n, 500 + i));
    const SelectionTrace ord = OrdinaryGreedy(ctx, kK);
    const SelectionTrace lazy = LazyGreedy(ctx, kK);
    bool same = ord.Leaders() == lazy.Leaders();
    for (std::size_t j = 0; same && j < kK; ++j) {
      same = ord.records[j].objective == lazy.records[j].objective;
    }
    mismatches += !same;
    over_budget += lazy.TotalCalls() > ord.TotalCalls();
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      ord_sum[c] += double(ord.records[checkpoints[c] - 1].calls);
      lazy_sum[c] += double(lazy.records[checkpoints[c] - 1].calls);
    }
  }
  out.Require(mismatches == 0, std::to_string(mismatches) + " instances differ");
  out.Require(over_budget == 0,
              std::to_string(over_budget) + " instances with more lazy calls");
  std::ostringstream ratios;
  bool growing = true;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const double r = ord_sum[c] / lazy_sum[c];
    ratios << (c ? ", " : "") << "k=" << checkpoints[c] << ": " << Fmt(r, 3);
    if (c > 0 && r <= ord_sum[c - 1] / lazy_sum[c - 1]) growing = false;
  }
  out.Require(growing, "aggregate call ratio not increasing in k (" +
                           ratios.str() + ")");
  if (out.pass) {
    out.detail << "50 instances identical; ordinary/lazy call ratio "
               << ratios.str();
  }
  return out;
}

// ---- 4: stochastic call budget ----

Outcome StochasticBudget() {
  Outcome out;
  constexpr std::size_t kN = 1000, kK = 10;
  constexpr double kEps = 0.01;
  const double beta = SamplingFactor(kK, kEps);
  out.Require(std::abs(beta - kBetaTarget) <= kBetaTol, "beta = " + Fmt(beta, 6));
  std::uint64_t expected = 0;
  for (std::size_t i = 0; i < kK; ++i) {
    expected += static_cast<std::uint64_t>(std::ceil(double(kN - i) / beta));
  }
  const ObjectiveContext ctx(GenerateErdosRenyi(kN, 0.05, 42));
  const SelectionTrace st = StochasticGreedy(ctx, kK, kEps, 42);
  const SelectionTrace ord = OrdinaryGreedy(ctx, kK);
  out.Require(expected == kStochasticCalls,
              "closed form gives " + std::to_string(expected));
  out.Require(st.TotalCalls() == expected,
              "stochastic made " + std::to_string(st.TotalCalls()) + " calls");
  const double ratio = double(ord.TotalCalls()) / double(st.TotalCalls());
  out.Require(ratio >= kCallRatioLow && ratio <= kCallRatioHigh,
              "call ratio " + Fmt(ratio));
  if (out.pass) {
    out.detail << "beta " << Fmt(beta, 6) << ", stochastic calls "
               << st.TotalCalls() << ", ordinary calls " << ord.TotalCalls()
               << ", ratio " << Fmt(ratio, 4) << " (wall-time ratio "
               << Fmt(ord.TotalSeconds() / st.TotalSeconds(), 3) << ")";
  }
  return out;
}

// ---- 5: stochastic deviation distribution ----

const bench::Table& FindTable(const bench::ExperimentReport& r,
                              const std::string& name) {
  for (const bench::Table& t : r.tables) {
    if (t.name == name) return t;
  }
  throw Error("report has no table " + name);
}

Outcome StochasticDeviation() {
  Outcome out;
  bench::ExperimentConfig cfg =
      bench::DefaultConfig(bench::ExperimentKind::kMonteCarlo);
  cfg.n_values = {300};
  cfg.k = bench::KRule{12, 0.0};
  cfg.epsilons = {0.5};
  cfg.seeds.resize(100);
  std::iota(cfg.seeds.begin(), cfg.seeds.end(), std::uint64_t{1});
  cfg.graph_seed = 1;
  const bench::ExperimentReport r = bench::RunExperiment(cfg);
  out.Require(r.failed_cells() == 0, "failed cells");
  const auto& summary = FindTable(r, "deviation_summary").rows.at(0);
  const double mean = summary[5].get<double>();
  const double max = summary[7].get<double>();
  out.Require(mean < kMaxMeanDeviationPct, "mean deviation " + Fmt(mean) + "%");
  std::vector<double> curve;
  for (const auto& row : FindTable(r, "monte_carlo_curve").rows) {
    curve.push_back(row[5].get<double>());
  }
  const double early = (curve[0] + curve[1] + curve[2] + curve[3]) / 4.0;
  const double late = (curve[8] + curve[9] + curve[10] + curve[11]) / 4.0;
  out.Require(late < early, "mean deviation k=9..12 (" + Fmt(late) +
                                "%) not below k=1..4 (" + Fmt(early) + "%)");
  out.Require(curve[11] < curve[0], "deviation at k=12 not below k=1");
  if (out.pass) {
    out.detail << "100 seeds, deviation at k=12 mean " << Fmt(mean, 3)
               << "% max " << Fmt(max, 3) << "%; curve k=1 " << Fmt(curve[0], 3)
               << "%, k=1..4 " << Fmt(early, 3) << "%, k=9..12 " << Fmt(late, 3)
               << "%, k=12 " << Fmt(curve[11], 3) << "%";
  }
  return out;
}

// ---- 6: greedy vs brute force ----

Outcome BruteForce() {
  Outcome out;
  constexpr const char* kTopology[] = {"er", "ba", "rg"};
  double worst = 1.0;
  std::string worst_case;
  std::size_t exact = 0, above = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t n = 6 + i % 7;
    const std::size_t k = 1 + i % 3;
    const Graph g = MixedTopology(i, n, 900 + i);
    const ObjectiveContext ctx(g);
    const double greedy = OrdinaryGreedy(ctx, k).FinalObjective();
    const double opt = BruteForceOptimum(g, k).objective;
    const double ratio = greedy / opt;
    if (ratio > worst) {
      worst = ratio;
      worst_case = std::string(kTopology[i % 3]) + " n=" + std::to_string(n) +
                   " k=" + std::to_string(k);
    }
    exact += ratio <= 1.0 + 1e-12;
    above += ratio > kBruteForceRatio;
  }
  out.Require(worst <= kBruteForceRatio,
              std::to_string(above) + "/30 graphs above 1.10, worst ratio " +
                  Fmt(worst, 6) + " (" + worst_case + ")");
  if (out.pass) {
    out.detail << "30 graphs, greedy optimal on " << exact
               << ", worst greedy/optimum " << Fmt(worst, 6);
  } else {
    out.detail << "; greedy optimal on " << exact << "/30";
  }
  return out;
}

// ---- 7: distributed greedy on SBM ----

Outcome Distributed() {
  Outcome out;
  std::ostringstream detail;
  for (bool equal : {false, true}) {
    bench::ExperimentConfig cfg =
        bench::DefaultConfig(bench::ExperimentKind::kSbmDistributed);
    cfg.sbm.clusters = {4};
    cfg.sbm.nodes_per_cluster = {100};
    cfg.sbm.p_in = 0.05;
    cfg.sbm.p_out_ratios = {equal ? 1.0 : 0.4};
    cfg.sbm.equal_partition = equal;
    cfg.sbm.inner = {Algorithm::kStochastic, OracleKind::kAccelerated, 0.5, 0};
    cfg.k = bench::KRule{10, 0.0};
    cfg.seeds = {1, 2, 3};
    const bench::ExperimentReport r = bench::RunExperiment(cfg);
    out.Require(r.failed_cells() == 0, "failed cells");
    const auto& row = FindTable(r, "sbm_distributed").rows.at(0);
    const double mean = row[4].get<double>(), max = row[5].get<double>();
    const std::string label =
        equal ? "p_out=p_in, equal partition" : "p_out=0.02, SBM clusters";
    out.Require(max <= kDistributedDeviationPct,
                label + ": max deviation " + Fmt(max) + "%");
    detail << (equal ? "; " : "") << label << ": mean " << Fmt(mean, 3)
           << "% max " << Fmt(max, 3) << "%";
  }
  if (out.pass) out.detail << "3 seeds each; " << detail.str();
  return out;
}

// ---- 8: call-count scaling exponents ----

Outcome ScalingExponents() {
  Outcome out;
  bench::ExperimentConfig cfg =
      bench::DefaultConfig(bench::ExperimentKind::kScaling);
  cfg.n_values = {100, 200, 400, 800};
  cfg.k = bench::KRule{std::nullopt, 0.05};
  cfg.epsilons = {0.01};
  cfg.algorithms = {{Algorithm::kOrdinary, OracleKind::kAccelerated},
                    {Algorithm::kStochastic, OracleKind::kAccelerated}};
  cfg.seeds = {1};
  cfg.warmup = false;
  const bench::ExperimentReport r = bench::RunExperiment(cfg);
  out.Require(r.failed_cells() == 0, "failed cells");
  std::ostringstream detail;
  for (const bench::NamedFit& f : r.fits) {
    const bool ordinary = f.series.find("ordinary") != std::string::npos;
    if (f.metric == "calls") {
      const double target = ordinary ? kOrdinaryExponent : kStochasticExponent;
      out.Require(std::abs(f.fit.exponent - target) <= kExponentTol,
                  f.series + " call exponent " + Fmt(f.fit.exponent));
    }
    detail << (detail.tellp() ? "; " : "") << (ordinary ? "ordinary" : "stochastic")
           << " " << f.metric << " d=" << Fmt(f.fit.exponent, 4) << " [95% "
           << Fmt(f.fit.exponent_low, 3) << ", " << Fmt(f.fit.exponent_high, 3)
           << "]";
  }
  out.Require(r.fits.size() == 4, "expected 4 fits");
  if (out.pass) out.detail << detail.str() << " (wall-time exponents informational)";
  return out;
}

// ---- 9: naive vs accelerated oracle ----

Outcome OracleEquivalence() {
  Outcome out;
  std::size_t runs = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    const std::size_t n = 20 + 2 * i;
    const std::size_t k = 2 + i % 5;
    const ObjectiveContext ctx(MixedTopology(i, n, 300 + i));
    const NodePartition part = PartitionEqual(ctx.graph(), 3, i);
    auto run = [&](OracleKind kind) {
      return std::vector<SelectionTrace>{
          OrdinaryGreedy(ctx, k, kind), LazyGreedy(ctx, k, kind),
          StochasticGreedy(ctx, k, 0.3, i, kind),
          DistributedGreedy(ctx, k, part,
                            {Algorithm::kStochastic, kind, 0.5, 0}, i)};
    };
    const auto naive = run(OracleKind::kNaive);
    const auto fast = run(OracleKind::kAccelerated);
    for (std::size_t a = 0; a < naive.size(); ++a) {
      ++runs;
      if (naive[a].Leaders() != fast[a].Leaders()) {
        out.Require(false, "instance " + std::to_string(i) + " algorithm " +
                               std::string(ToString(naive[a].algorithm)) +
                               " selects differently");
        continue;
      }
      for (std::size_t j = 0; j < k; ++j) {
        const double x = naive[a].records[j].objective;
        const double y = fast[a].records[j].objective;
        worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(x)));
      }
    }
  }
  out.Require(worst <= kOracleAgreementTol, "objective gap " + Fmt(worst));
  if (out.pass) {
    out.detail << "30 instances x 4 optimizers = " << runs
               << " runs identical; worst objective gap " << Fmt(worst, 3);
  }
  return out;
}

}  // namespace
}  // namespace leadsel

int main() {
  using leadsel::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 woodbury chain vs direct inverse", leadsel::WoodburyChains},
      {"2 pseudo-inverse bootstrap", leadsel::PseudoInverse},
      {"3 lazy greedy exactness", leadsel::LazyExactness},
      {"4 stochastic call budget", leadsel::StochasticBudget},
      {"5 stochastic deviation", leadsel::StochasticDeviation},
      {"6 greedy vs brute force", leadsel::BruteForce},
      {"7 distributed greedy on SBM", leadsel::Distributed},
      {"8 call-count scaling exponents", leadsel::ScalingExponents},
      {"9 naive vs accelerated oracle", leadsel::OracleEquivalence},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      Outcome o = check();
      pass = o.pass;
      detail = o.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start).count();
    failures += !pass;
    std::printf("[%s] %s: %s (%.1fs)\n", pass ? "PASS" : "FAIL", name,
                detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
