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

#include "leadsel/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "leadsel/errors.h"
#include "leadsel/linalg.h"

namespace leadsel {
namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

std::vector<NodeId> Complement(std::size_t n, std::span<const NodeId> leaders) {
  std::vector<bool> is_leader(n, false);
  for (NodeId v : leaders) {
    if (v >= n) {
      throw InvalidArgument("leader id " + std::to_string(v) +
                            " out of range");
    }
    if (is_leader[v]) {
      throw InvalidArgument("duplicate leader id " + std::to_string(v));
    }
    is_leader[v] = true;
  }
  std::vector<NodeId> followers;
  followers.reserve(n - leaders.size());
  for (NodeId v = 0; v < n; ++v) {
    if (!is_leader[v]) followers.push_back(v);
  }
  return followers;
}

double HalfTraceOfInverse(const DenseMatrix& grounded) {
  return 0.5 * Trace(Invert(grounded));
}

}  // namespace

std::string_view ToString(OracleKind kind) {
  switch (kind) {
    case OracleKind::kNaive:
      return "naive";
    case OracleKind::kAccelerated:
      return "accelerated";
  }
  return "unknown";
}

OracleKind ParseOracleKind(std::string_view name) {
  if (name == "naive") return OracleKind::kNaive;
  if (name == "accelerated") return OracleKind::kAccelerated;
  throw InvalidArgument("unknown oracle kind '" + std::string(name) + "'");
}

ObjectiveContext::ObjectiveContext(Graph g)
    : graph_(std::move(g)), laplacian_(Laplacian(graph_)) {
  if (graph_.num_nodes() < 2) {
    throw InvalidArgument("objective needs a graph with at least 2 nodes");
  }
  if (!IsConnected(graph_)) {
    throw InvalidArgument("objective needs a connected graph");
  }
}

const DenseMatrix& ObjectiveContext::pseudo_inverse() const {
  std::call_once(pinv_once_, [this] { pinv_ = PinvLaplacian(laplacian_); });
  return pinv_;
}

DenseMatrix ObjectiveContext::FollowerLaplacian(
    std::span<const NodeId> followers) const {
  const std::size_t d = followers.size();
  DenseMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    auto src = laplacian_.row(followers[i]);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[followers[j]];
  }
  return out;
}

double Objective(const ObjectiveContext& ctx, std::span<const NodeId> leaders) {
  if (leaders.empty()) {
    throw InvalidArgument("objective undefined at empty set");
  }
  const auto followers = Complement(ctx.num_nodes(), leaders);
  if (followers.empty()) {
    throw InvalidArgument("objective undefined when every node is a leader");
  }
  return HalfTraceOfInverse(ctx.FollowerLaplacian(followers));
}

double Objective(const Graph& g, std::span<const NodeId> leaders) {
  return Objective(ObjectiveContext(g), leaders);
}

std::vector<double> FirstIterationObjectives(const Graph& g) {
  ObjectiveContext ctx(g);
  std::vector<NodeId> all(g.num_nodes());
  for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
  return FirstIterationObjectives(ctx, all);
}

std::vector<double> FirstIterationObjectives(
    const ObjectiveContext& ctx, std::span<const NodeId> candidates) {
  const DenseMatrix& pinv = ctx.pseudo_inverse();
  std::vector<double> out;
  out.reserve(candidates.size());
  for (NodeId v : candidates) out.push_back(HalfTraceGroundedFromPinv(pinv, v));
  return out;
}

OracleState::OracleState(const ObjectiveContext& ctx, OracleKind kind)
    : ctx_(&ctx), kind_(kind), position_(ctx.num_nodes()) {
  followers_.resize(ctx.num_nodes());
  for (NodeId v = 0; v < followers_.size(); ++v) {
    followers_[v] = v;
    position_[v] = v;
  }
}

bool OracleState::is_leader(NodeId v) const {
  return v < position_.size() && position_[v] == kNpos;
}

double OracleState::objective() const {
  if (leaders_.empty()) {
    throw InvalidArgument("objective undefined at empty set");
  }
  return objective_;
}

void OracleState::CheckCandidate(NodeId v, const char* op) const {
  if (v >= position_.size()) {
    throw InvalidArgument(std::string(op) + ": node " + std::to_string(v) +
                          " out of range");
  }
  if (position_[v] == kNpos) {
    throw InvalidArgument(std::string(op) + ": node " + std::to_string(v) +
                          " is already a leader");
  }
  if (followers_.size() < 2) {
    throw InvalidArgument(std::string(op) + ": node " + std::to_string(v) +
                          " would leave no followers");
  }
}

std::vector<double> OracleState::SingletonObjectives(
    std::span<const NodeId> candidates) const {
  if (!leaders_.empty()) {
    throw InvalidArgument("SingletonObjectives: leader set is not empty");
  }
  for (NodeId v : candidates) CheckCandidate(v, "SingletonObjectives");
  std::vector<double> out;
  if (kind_ == OracleKind::kAccelerated) {
    out = FirstIterationObjectives(*ctx_, candidates);
  } else {
    out.reserve(candidates.size());
    for (NodeId v : candidates) {
      const NodeId one[] = {v};
      out.push_back(Objective(*ctx_, one));
    }
  }
  call_count_ += candidates.size();
  return out;
}

std::vector<double> OracleState::FollowerColumn(std::size_t pos) const {
  auto lap_row = ctx_->laplacian().row(followers_[pos]);
  std::vector<double> col(followers_.size());
  for (std::size_t i = 0; i < followers_.size(); ++i) {
    col[i] = lap_row[followers_[i]];
  }
  return col;
}

double OracleState::MarginalGain(NodeId v) const {
  CheckCandidate(v, "MarginalGain");
  if (leaders_.empty()) {
    throw InvalidArgument(
        "MarginalGain: undefined at empty set; use SingletonObjectives");
  }
  double after = 0.0;
  if (kind_ == OracleKind::kAccelerated) {
    const std::size_t pos = position_[v];
    // Laplacian is symmetric, so row and column coincide.
    const auto col = FollowerColumn(pos);
    after = 0.5 * WoodburyRemovedTrace(grounded_inverse_, 2.0 * objective_,
                                       col, col, pos);
  } else {
    std::vector<NodeId> next = leaders_;
    next.push_back(v);
    after = Objective(*ctx_, next);
  }
  ++call_count_;
  return objective_ - after;
}

OracleState OracleState::Commit(NodeId v) const {
  CheckCandidate(v, "Commit");
  OracleState next = *this;
  const std::size_t pos = position_[v];

  if (kind_ == OracleKind::kAccelerated) {
    if (leaders_.empty()) {
      next.grounded_inverse_ = GroundFromPinv(ctx_->pseudo_inverse(), v);
      next.refresh_counter_ = 0;
    } else {
      const auto col = FollowerColumn(pos);
      next.grounded_inverse_ =
          WoodburyRemoveSwapped(grounded_inverse_, col, col, pos);
      ++next.refresh_counter_;
    }
  }

  // Bookkeeping mirrors the matrix: the first grounding keeps stable order,
  // later removals move the last follower into the vacated slot.
  next.leaders_.push_back(v);
  next.position_[v] = kNpos;
  if (leaders_.empty()) {
    next.followers_.erase(next.followers_.begin() + pos);
    for (std::size_t i = pos; i < next.followers_.size(); ++i) {
      next.position_[next.followers_[i]] = i;
    }
  } else {
    const NodeId moved = next.followers_.back();
    next.followers_[pos] = moved;
    next.followers_.pop_back();
    if (moved != v) next.position_[moved] = pos;
  }

  if (kind_ == OracleKind::kAccelerated) {
    if (next.refresh_counter_ >= kRefreshInterval) {
      next.grounded_inverse_ =
          Invert(ctx_->FollowerLaplacian(next.followers_));
      next.refresh_counter_ = 0;
    }
    next.objective_ = 0.5 * Trace(next.grounded_inverse_);
  } else {
    next.objective_ = HalfTraceOfInverse(ctx_->FollowerLaplacian(next.followers_));
  }
  return next;
}

double OracleState::InverseResidual() const {
  if (kind_ != OracleKind::kAccelerated || leaders_.empty()) {
    throw InvalidArgument("InverseResidual: no incremental inverse held");
  }
  const DenseMatrix product =
      grounded_inverse_ * ctx_->FollowerLaplacian(followers_);
  return MaxAbsDiff(product, DenseMatrix::Identity(product.rows()));
}

BruteForceResult BruteForceOptimum(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw InvalidArgument("BruteForceOptimum: instance too large (n = " +
                          std::to_string(n) + ")");
  }
  if (k < 1 || k >= n) {
    throw InvalidArgument("BruteForceOptimum: need 1 <= k <= n - 1");
  }
  // C(n, k) without overflow for n <= 20.
  std::uint64_t subsets = 1;
  for (std::size_t i = 0; i < k; ++i) subsets = subsets * (n - i) / (i + 1);
  if (subsets > kBruteForceMaxSubsets) {
    throw InvalidArgument("BruteForceOptimum: instance too large (" +
                          std::to_string(subsets) + " subsets)");
  }

  ObjectiveContext ctx(g);
  std::vector<NodeId> current(k);
  for (std::size_t i = 0; i < k; ++i) current[i] = i;
  BruteForceResult best;
  best.objective = std::numeric_limits<double>::infinity();
  while (true) {
    const double value = Objective(ctx, current);
    if (value < best.objective - kTieTolerance) {
      best.objective = value;
      best.leaders = current;
    }
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && current[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return best;
}

}  // namespace leadsel
