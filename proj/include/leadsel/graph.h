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

#ifndef LEADSEL_GRAPH_H_
#define LEADSEL_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "leadsel/dense_matrix.h"

namespace leadsel {

using NodeId = std::size_t;

struct Edge {
  NodeId u = 0;  // u < v after normalisation
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected weighted graph on nodes [0, n). Construction validates: no
// self-loops, no duplicate edges, indices in range, weights > 0. Edges are
// stored normalised (u < v) and sorted.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbours of v with edge weights, ascending by node id.
  const std::vector<std::pair<NodeId, double>>& neighbors(NodeId v) const {
    return adjacency_[v];
  }
  double weighted_degree(NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, double>>> adjacency_;
};

// Cluster assignment for every node. Cluster ids are dense in [0, c) and no
// cluster is empty.
class NodePartition {
 public:
  NodePartition() = default;
  NodePartition(std::vector<std::size_t> assignment, std::size_t num_clusters);

  std::size_t num_nodes() const { return assignment_.size(); }
  std::size_t num_clusters() const { return num_clusters_; }
  std::size_t cluster_of(NodeId v) const { return assignment_[v]; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  // Members of every cluster, ascending node ids.
  std::vector<std::vector<NodeId>> Clusters() const;

  friend bool operator==(const NodePartition&, const NodePartition&) = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t num_clusters_ = 0;
};

struct SbmParams {
  std::size_t clusters = 1;           // c
  std::size_t nodes_per_cluster = 1;  // n_C
  double p_in = 1.0;
  double p_out = 0.0;
};

inline constexpr int kDefaultMaxAttempts = 1000;

// Connected Erdos-Renyi G(n, p). Attempt t draws from seed + t; fails with
// GenerationError after max_attempts disconnected draws.
Graph GenerateErdosRenyi(std::size_t n, double p, std::uint64_t seed,
                         int max_attempts = kDefaultMaxAttempts);

// Barabasi-Albert preferential attachment. The first m_attach nodes form a
// clique; every later node attaches to m_attach distinct earlier nodes chosen
// with probability proportional to degree. Edge count is
// m(m-1)/2 + (n-m)m. Requires 1 <= m_attach < n - 1.
Graph GenerateBarabasiAlbert(std::size_t n, std::size_t m_attach,
                             std::uint64_t seed);

// Random geometric graph on the unit square: edge iff distance <= radius.
// Retried like GenerateErdosRenyi until connected.
Graph GenerateRandomGeometric(std::size_t n, double radius, std::uint64_t seed,
                              int max_attempts = kDefaultMaxAttempts);

struct SbmGraph {
  Graph graph;
  NodePartition partition;
};

// Stochastic block model with equal-sized clusters; node v belongs to cluster
// v / nodes_per_cluster. Retried until connected.
SbmGraph GenerateSbm(const SbmParams& params, std::uint64_t seed,
                     int max_attempts = kDefaultMaxAttempts);

// L = D - A with weighted degrees on the diagonal.
DenseMatrix Laplacian(const Graph& g);

bool IsConnected(const Graph& g);

// Shuffles the nodes with `seed` and cuts them into c contiguous chunks whose
// sizes differ by at most one (the first n % c chunks are the larger ones).
NodePartition PartitionEqual(const Graph& g, std::size_t c, std::uint64_t seed);

// Edge-list text format: header "n m", then one "i j w" line per edge.
void WriteEdgeList(std::ostream& os, const Graph& g);
Graph ReadEdgeList(std::istream& is);

// Partition format: one "node cluster" line per node.
void WritePartition(std::ostream& os, const NodePartition& p);
NodePartition ReadPartition(std::istream& is);

}  // namespace leadsel

#endif  // LEADSEL_GRAPH_H_
