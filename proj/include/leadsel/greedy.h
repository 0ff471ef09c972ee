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

#ifndef LEADSEL_GREEDY_H_
#define LEADSEL_GREEDY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadsel/graph.h"
#include "leadsel/oracle.h"

namespace leadsel {

enum class Algorithm { kOrdinary, kLazy, kStochastic, kDistributed };

std::string_view ToString(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);

// One committed selection.
struct IterationRecord {
  NodeId chosen = 0;
  double objective = 0.0;  // f(S) right after the commit
  // f(S) - f(S + chosen); absent on the first iteration, where f(empty) is
  // undefined.
  std::optional<double> gain;
  std::uint64_t calls = 0;  // cumulative oracle evaluations
  double seconds = 0.0;     // cumulative wall time
  std::size_t recomputations = 0;  // evaluations spent on this iteration
  std::vector<NodeId> sample;      // stochastic only: candidates evaluated
};

struct SelectionTrace {
  Algorithm algorithm = Algorithm::kOrdinary;
  OracleKind oracle = OracleKind::kAccelerated;
  // Inner algorithm of a distributed run.
  std::optional<Algorithm> inner;
  std::size_t k = 0;
  double epsilon = 0.0;  // stochastic runs (and stochastic inner stages)
  std::size_t clusters = 0;  // distributed runs
  std::uint64_t seed = 0;
  std::vector<IterationRecord> records;
  // Distributed runs: the per-cluster first-stage runs. `records` then holds
  // the second stage, whose counters include the first stage's totals.
  std::vector<SelectionTrace> stage_one;

  std::vector<NodeId> Leaders() const;
  double FinalObjective() const;
  std::uint64_t TotalCalls() const;
  double TotalSeconds() const;
};

// Settings for one greedy pass. `epsilon` and `seed` only matter to the
// stochastic algorithm.
struct GreedyConfig {
  Algorithm algorithm = Algorithm::kOrdinary;
  OracleKind oracle = OracleKind::kAccelerated;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
};

// beta = k / ln(1/epsilon).
double SamplingFactor(std::size_t k, double epsilon);

// Candidates drawn per stochastic iteration: ceil(remaining / beta) clamped to
// [1, remaining]; `remaining` itself when beta <= 1.
std::size_t SampleSize(std::size_t remaining, std::size_t k, double epsilon);

// Runs Ordinary, Lazy or Stochastic greedy for k iterations with candidates
// restricted to `pool` (ascending, distinct). The objective is always the
// full-graph one.
SelectionTrace RunGreedy(const ObjectiveContext& ctx,
                         std::span<const NodeId> pool, std::size_t k,
                         const GreedyConfig& config);

SelectionTrace OrdinaryGreedy(const ObjectiveContext& ctx, std::size_t k,
                              OracleKind oracle = OracleKind::kAccelerated);
SelectionTrace LazyGreedy(const ObjectiveContext& ctx, std::size_t k,
                          OracleKind oracle = OracleKind::kAccelerated);
SelectionTrace StochasticGreedy(const ObjectiveContext& ctx, std::size_t k,
                                double epsilon, std::uint64_t seed,
                                OracleKind oracle = OracleKind::kAccelerated);

// Two-stage GreeDi: `inner` selects min(k, |cluster|) nodes from every
// cluster (cluster j seeded with seed + j), then selects k from the union of
// those picks (seeded with seed + c). `inner.seed` is ignored.
SelectionTrace DistributedGreedy(const ObjectiveContext& ctx, std::size_t k,
                                 const NodePartition& partition,
                                 const GreedyConfig& inner,
                                 std::uint64_t seed);

}  // namespace leadsel

#endif  // LEADSEL_GREEDY_H_
