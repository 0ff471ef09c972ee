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

#ifndef LEADSEL_ORACLE_H_
#define LEADSEL_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <span>
#include <string_view>
#include <vector>

#include "leadsel/dense_matrix.h"
#include "leadsel/graph.h"

namespace leadsel {

// Leader-selection objective: f(S) = 0.5 * trace(L_ff^-1), where L_ff is the
// Laplacian with the rows and columns of the leaders S removed. Lower is
// better; optimizers maximise the decrease f(S) - f(S + v).

enum class OracleKind {
  kNaive,        // direct inverse of the grounded Laplacian per evaluation
  kAccelerated,  // pseudo-inverse bootstrap, then rank-2 Woodbury updates
};

std::string_view ToString(OracleKind kind);
OracleKind ParseOracleKind(std::string_view name);

// Gains (or objectives) closer than this are treated as ties; the lowest
// node id wins.
inline constexpr double kTieTolerance = 1e-12;
// The incremental inverse is rebuilt from scratch after this many chained
// Woodbury updates.
inline constexpr std::size_t kRefreshInterval = 64;

// Read-only problem data shared by every oracle state and optimizer run on a
// graph. The Laplacian pseudo-inverse is computed on first use and cached;
// that is thread-safe.
class ObjectiveContext {
 public:
  // Throws InvalidArgument if g is disconnected or has fewer than 2 nodes.
  explicit ObjectiveContext(Graph g);

  ObjectiveContext(const ObjectiveContext&) = delete;
  ObjectiveContext& operator=(const ObjectiveContext&) = delete;

  const Graph& graph() const { return graph_; }
  std::size_t num_nodes() const { return graph_.num_nodes(); }
  const DenseMatrix& laplacian() const { return laplacian_; }
  const DenseMatrix& pseudo_inverse() const;

  // Laplacian restricted to `followers`, in the given order.
  DenseMatrix FollowerLaplacian(std::span<const NodeId> followers) const;

 private:
  Graph graph_;
  DenseMatrix laplacian_;
  mutable std::once_flag pinv_once_;
  mutable DenseMatrix pinv_;
};

// f(S) by direct inversion. Throws InvalidArgument for an empty leader set,
// for S = V, for duplicates or out-of-range ids.
double Objective(const ObjectiveContext& ctx, std::span<const NodeId> leaders);
double Objective(const Graph& g, std::span<const NodeId> leaders);

// f({v}) for every node, from a single pseudo-inverse.
std::vector<double> FirstIterationObjectives(const Graph& g);
// f({v}) for each candidate v, reusing the context's cached pseudo-inverse.
std::vector<double> FirstIterationObjectives(const ObjectiveContext& ctx,
                                             std::span<const NodeId> candidates);

// Snapshot of an optimizer's progress: current leaders, and for the
// accelerated kind, the inverse of the current grounded Laplacian. Commit()
// returns a new snapshot; evaluation methods leave the snapshot unchanged
// apart from the call counter.
//
// The context must outlive every state built from it.
class OracleState {
 public:
  OracleState(const ObjectiveContext& ctx, OracleKind kind);

  OracleKind kind() const { return kind_; }
  const ObjectiveContext& context() const { return *ctx_; }
  const std::vector<NodeId>& leaders() const { return leaders_; }
  bool is_leader(NodeId v) const;
  std::size_t num_followers() const { return followers_.size(); }

  // Row r of grounded_inverse() corresponds to graph node index_map()[r].
  const std::vector<NodeId>& index_map() const { return followers_; }
  // Empty for the naive kind and before the first commit.
  const DenseMatrix& grounded_inverse() const { return grounded_inverse_; }

  // f(S) for the current leaders; undefined (throws) while S is empty.
  double objective() const;

  // f({v}) for each candidate; only legal while S is empty. One call per
  // candidate.
  std::vector<double> SingletonObjectives(
      std::span<const NodeId> candidates) const;

  // f(S) - f(S + v). Requires S non-empty, v a follower, and at least one
  // follower left after v is removed. One call.
  double MarginalGain(NodeId v) const;

  // State with v appended to the leaders.
  OracleState Commit(NodeId v) const;

  std::uint64_t call_count() const { return call_count_; }
  // Chained Woodbury updates since the inverse was last built from scratch.
  std::size_t refresh_counter() const { return refresh_counter_; }

  // max |grounded_inverse * L_ff - I|; accelerated kind only.
  double InverseResidual() const;

 private:
  void CheckCandidate(NodeId v, const char* op) const;
  std::vector<double> FollowerColumn(std::size_t pos) const;

  const ObjectiveContext* ctx_;
  OracleKind kind_;
  std::vector<NodeId> leaders_;
  std::vector<NodeId> followers_;
  // position_[v] = row of v in followers_, or npos for leaders.
  std::vector<std::size_t> position_;
  DenseMatrix grounded_inverse_;
  double objective_ = std::numeric_limits<double>::quiet_NaN();
  std::size_t refresh_counter_ = 0;
  mutable std::uint64_t call_count_ = 0;
};

struct BruteForceResult {
  std::vector<NodeId> leaders;  // ascending
  double objective = 0.0;
};

inline constexpr std::size_t kBruteForceMaxNodes = 20;
inline constexpr std::uint64_t kBruteForceMaxSubsets = 200000;

// Exhaustive minimiser of f over all k-subsets. Ties keep the
// lexicographically smallest subset. Guarded by n <= 20 and C(n, k) <= 200000.
BruteForceResult BruteForceOptimum(const Graph& g, std::size_t k);

}  // namespace leadsel

#endif  // LEADSEL_ORACLE_H_
