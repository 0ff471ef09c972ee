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

#include "leadsel/greedy.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "leadsel/errors.h"
#include "random.h"

namespace leadsel {
namespace {

using Clock = std::chrono::steady_clock;

// Lowest id among the candidates whose score is within kTieTolerance of the
// best score. Independent of candidate order.
std::size_t PickBest(std::span<const NodeId> ids,
                     std::span<const double> scores) {
  double best = -std::numeric_limits<double>::infinity();
  for (double s : scores) best = std::max(best, s);
  std::size_t winner = ids.size();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (scores[i] >= best - kTieTolerance &&
        (winner == ids.size() || ids[i] < ids[winner])) {
      winner = i;
    }
  }
  return winner;
}

void ValidatePool(const ObjectiveContext& ctx, std::span<const NodeId> pool,
                  std::size_t k) {
  const std::size_t n = ctx.num_nodes();
  if (k < 1 || k > n - 1) {
    throw InvalidArgument("k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(n - 1) + "]");
  }
  if (k > pool.size()) {
    throw InvalidArgument("k = " + std::to_string(k) +
                          " exceeds the candidate pool (" +
                          std::to_string(pool.size()) + ")");
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i] >= n || (i > 0 && pool[i] <= pool[i - 1])) {
      throw InvalidArgument("candidate pool must be ascending node ids < n");
    }
  }
}

// Shared driver state for one run.
class Run {
 public:
  Run(const ObjectiveContext& ctx, const GreedyConfig& config, std::size_t k)
      : state_(ctx, config.oracle), start_(Clock::now()) {
    trace_.algorithm = config.algorithm;
    trace_.oracle = config.oracle;
    trace_.k = k;
    trace_.seed = config.seed;
    if (config.algorithm == Algorithm::kStochastic) {
      trace_.epsilon = config.epsilon;
    }
  }

  const OracleState& state() const { return state_; }

  // Scores every candidate: -f({v}) on the first iteration, the marginal
  // gain afterwards, so that higher is better either way.
  std::vector<double> Score(std::span<const NodeId> candidates) const {
    if (state_.leaders().empty()) {
      std::vector<double> s = state_.SingletonObjectives(candidates);
      for (double& v : s) v = -v;
      return s;
    }
    std::vector<double> s;
    s.reserve(candidates.size());
    for (NodeId v : candidates) s.push_back(state_.MarginalGain(v));
    return s;
  }

  void Commit(NodeId v, std::size_t evaluations,
              std::vector<NodeId> sample = {}) {
    IterationRecord rec;
    const bool first = state_.leaders().empty();
    const double before = first ? 0.0 : state_.objective();
    state_ = state_.Commit(v);
    rec.chosen = v;
    rec.objective = state_.objective();
    if (!first) rec.gain = before - rec.objective;
    rec.calls = state_.call_count();
    rec.seconds =
        std::chrono::duration<double>(Clock::now() - start_).count();
    rec.recomputations = evaluations;
    rec.sample = std::move(sample);
    trace_.records.push_back(std::move(rec));
  }

  SelectionTrace Finish() { return std::move(trace_); }

 private:
  OracleState state_;
  Clock::time_point start_;
  SelectionTrace trace_;
};

void EraseSorted(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

SelectionTrace Ordinary(const ObjectiveContext& ctx,
                        std::span<const NodeId> pool, std::size_t k,
                        const GreedyConfig& config) {
  Run run(ctx, config, k);
  std::vector<NodeId> remaining(pool.begin(), pool.end());
  for (std::size_t i = 0; i < k; ++i) {
    const auto scores = run.Score(remaining);
    const NodeId chosen = remaining[PickBest(remaining, scores)];
    run.Commit(chosen, remaining.size());
    EraseSorted(remaining, chosen);
  }
  return run.Finish();
}

SelectionTrace Stochastic(const ObjectiveContext& ctx,
                          std::span<const NodeId> pool, std::size_t k,
                          const GreedyConfig& config) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  Run run(ctx, config, k);
  auto rng = internal::MakeRng(config.seed);
  std::vector<NodeId> remaining(pool.begin(), pool.end());
  std::vector<NodeId> scratch;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t size = SampleSize(remaining.size(), k, config.epsilon);
    // Partial Fisher-Yates: the first `size` slots become a uniform sample
    // without replacement.
    scratch = remaining;
    for (std::size_t j = 0; j < size; ++j) {
      std::uniform_int_distribution<std::size_t> pick(j, scratch.size() - 1);
      std::swap(scratch[j], scratch[pick(rng)]);
    }
    std::vector<NodeId> sample(scratch.begin(), scratch.begin() + size);
    std::sort(sample.begin(), sample.end());
    const auto scores = run.Score(sample);
    const NodeId chosen = sample[PickBest(sample, scores)];
    const std::size_t evaluated = sample.size();
    run.Commit(chosen, evaluated, std::move(sample));
    EraseSorted(remaining, chosen);
  }
  return run.Finish();
}

// Alg. 2 style lazy evaluation with cached upper bounds. Every bound is
// marked stale at the start of an iteration; stale entries are refreshed in
// descending bound order until no stale bound can reach the best fresh gain
// (within the tie tolerance), which makes the pick identical to Ordinary's.
SelectionTrace Lazy(const ObjectiveContext& ctx, std::span<const NodeId> pool,
                    std::size_t k, const GreedyConfig& config) {
  struct Entry {
    double bound;
    NodeId id;
    bool operator<(const Entry& o) const {
      return bound != o.bound ? bound < o.bound : id > o.id;
    }
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();

  Run run(ctx, config, k);
  std::vector<NodeId> remaining(pool.begin(), pool.end());

  // f(empty) is undefined, so the first iteration scores everything and its
  // values are not bounds on later gains: everyone restarts at +inf.
  {
    const auto scores = run.Score(remaining);
    const NodeId chosen = remaining[PickBest(remaining, scores)];
    run.Commit(chosen, remaining.size());
    EraseSorted(remaining, chosen);
  }
  std::priority_queue<Entry> queue;
  for (NodeId v : remaining) queue.push({kInf, v});

  std::vector<NodeId> fresh_ids;
  std::vector<double> fresh_gains;
  for (std::size_t i = 1; i < k; ++i) {
    fresh_ids.clear();
    fresh_gains.clear();
    double best = -kInf;
    while (!queue.empty()) {
      const Entry top = queue.top();
      if (top.bound < best - 2.0 * kTieTolerance) break;
      queue.pop();
      const double gain = run.state().MarginalGain(top.id);
      fresh_ids.push_back(top.id);
      fresh_gains.push_back(gain);
      best = std::max(best, gain);
    }
    const std::size_t winner = PickBest(fresh_ids, fresh_gains);
    const NodeId chosen = fresh_ids[winner];
    for (std::size_t j = 0; j < fresh_ids.size(); ++j) {
      if (j != winner) queue.push({fresh_gains[j], fresh_ids[j]});
    }
    run.Commit(chosen, fresh_ids.size());
  }
  return run.Finish();
}

}  // namespace

std::string_view ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kOrdinary:
      return "ordinary";
    case Algorithm::kLazy:
      return "lazy";
    case Algorithm::kStochastic:
      return "stochastic";
    case Algorithm::kDistributed:
      return "distributed";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "ordinary") return Algorithm::kOrdinary;
  if (name == "lazy") return Algorithm::kLazy;
  if (name == "stochastic") return Algorithm::kStochastic;
  if (name == "distributed") return Algorithm::kDistributed;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

std::vector<NodeId> SelectionTrace::Leaders() const {
  std::vector<NodeId> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.chosen);
  return out;
}

double SelectionTrace::FinalObjective() const {
  if (records.empty()) throw InvalidArgument("empty selection trace");
  return records.back().objective;
}

std::uint64_t SelectionTrace::TotalCalls() const {
  return records.empty() ? 0 : records.back().calls;
}

double SelectionTrace::TotalSeconds() const {
  return records.empty() ? 0.0 : records.back().seconds;
}

double SamplingFactor(std::size_t k, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  if (k < 1) throw InvalidArgument("k must be at least 1");
  return static_cast<double>(k) / std::log(1.0 / epsilon);
}

std::size_t SampleSize(std::size_t remaining, std::size_t k, double epsilon) {
  const double beta = SamplingFactor(k, epsilon);
  if (remaining < 1) throw InvalidArgument("no candidates remain");
  if (beta <= 1.0) return remaining;
  const double raw = std::ceil(static_cast<double>(remaining) / beta);
  return std::clamp(static_cast<std::size_t>(raw), std::size_t{1}, remaining);
}

SelectionTrace RunGreedy(const ObjectiveContext& ctx,
                         std::span<const NodeId> pool, std::size_t k,
                         const GreedyConfig& config) {
  ValidatePool(ctx, pool, k);
  switch (config.algorithm) {
    case Algorithm::kOrdinary:
      return Ordinary(ctx, pool, k, config);
    case Algorithm::kLazy:
      return Lazy(ctx, pool, k, config);
    case Algorithm::kStochastic:
      return Stochastic(ctx, pool, k, config);
    case Algorithm::kDistributed:
      break;
  }
  throw InvalidArgument("RunGreedy: distributed greedy needs a partition");
}

namespace {

std::vector<NodeId> AllNodes(const ObjectiveContext& ctx) {
  std::vector<NodeId> all(ctx.num_nodes());
  for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
  return all;
}

}  // namespace

SelectionTrace OrdinaryGreedy(const ObjectiveContext& ctx, std::size_t k,
                              OracleKind oracle) {
  return RunGreedy(ctx, AllNodes(ctx), k, {Algorithm::kOrdinary, oracle});
}

SelectionTrace LazyGreedy(const ObjectiveContext& ctx, std::size_t k,
                          OracleKind oracle) {
  return RunGreedy(ctx, AllNodes(ctx), k, {Algorithm::kLazy, oracle});
}

SelectionTrace StochasticGreedy(const ObjectiveContext& ctx, std::size_t k,
                                double epsilon, std::uint64_t seed,
                                OracleKind oracle) {
  return RunGreedy(ctx, AllNodes(ctx), k,
                   {Algorithm::kStochastic, oracle, epsilon, seed});
}

SelectionTrace DistributedGreedy(const ObjectiveContext& ctx, std::size_t k,
                                 const NodePartition& partition,
                                 const GreedyConfig& inner,
                                 std::uint64_t seed) {
  if (inner.algorithm == Algorithm::kDistributed) {
    throw InvalidArgument("DistributedGreedy: inner algorithm must be "
                          "ordinary, lazy or stochastic");
  }
  if (partition.num_nodes() != ctx.num_nodes()) {
    throw InvalidArgument("DistributedGreedy: partition covers " +
                          std::to_string(partition.num_nodes()) +
                          " nodes, graph has " +
                          std::to_string(ctx.num_nodes()));
  }
  if (k < 1 || k > ctx.num_nodes() - 1) {
    throw InvalidArgument("DistributedGreedy: k outside [1, n - 1]");
  }

  SelectionTrace out;
  out.algorithm = Algorithm::kDistributed;
  out.oracle = inner.oracle;
  out.inner = inner.algorithm;
  out.k = k;
  out.epsilon = inner.algorithm == Algorithm::kStochastic ? inner.epsilon : 0;
  out.clusters = partition.num_clusters();
  out.seed = seed;

  const auto start = Clock::now();
  std::vector<NodeId> finalists;
  std::uint64_t stage_one_calls = 0;
  const auto clusters = partition.Clusters();
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    const auto& members = clusters[j];
    if (members.size() <= k) {
      // Too small to select from: the whole cluster goes through.
      finalists.insert(finalists.end(), members.begin(), members.end());
      SelectionTrace passthrough;
      passthrough.algorithm = inner.algorithm;
      passthrough.oracle = inner.oracle;
      passthrough.k = members.size();
      passthrough.seed = seed + j;
      out.stage_one.push_back(std::move(passthrough));
      continue;
    }
    GreedyConfig cfg = inner;
    cfg.seed = seed + j;
    SelectionTrace t = RunGreedy(ctx, members, k, cfg);
    stage_one_calls += t.TotalCalls();
    for (NodeId v : t.Leaders()) finalists.push_back(v);
    out.stage_one.push_back(std::move(t));
  }
  std::sort(finalists.begin(), finalists.end());
  const double stage_one_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();

  GreedyConfig cfg = inner;
  cfg.seed = seed + clusters.size();
  SelectionTrace second = RunGreedy(ctx, finalists, k, cfg);
  for (auto& rec : second.records) {
    rec.calls += stage_one_calls;
    rec.seconds += stage_one_seconds;
  }
  out.records = std::move(second.records);
  return out;
}

}  // namespace leadsel
