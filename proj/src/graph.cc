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

#include "leadsel/graph.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>

#include "leadsel/errors.h"
#include "random.h"

namespace leadsel {
namespace {

template <typename Sampler>
Graph RetryUntilConnected(const char* what, std::uint64_t seed,
                          int max_attempts, Sampler&& sample) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g = sample(seed + static_cast<std::uint64_t>(attempt));
    if (IsConnected(g)) return g;
  }
  throw GenerationError(std::string(what) +
                        ": could not generate connected graph after " +
                        std::to_string(max_attempts) + " attempts");
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  if (n == 0) throw InvalidArgument("Graph: node count must be positive");
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidArgument("Graph: edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) {
      throw InvalidArgument("Graph: self-loop at node " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument("Graph: edge weights must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw InvalidArgument("Graph: duplicate edge (" +
                            std::to_string(edges[i].u) + ", " +
                            std::to_string(edges[i].v) + ")");
    }
  }
  edges_ = std::move(edges);
  adjacency_.assign(n, {});
  for (const Edge& e : edges_) {
    adjacency_[e.u].emplace_back(e.v, e.weight);
    adjacency_[e.v].emplace_back(e.u, e.weight);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

double Graph::weighted_degree(NodeId v) const {
  double d = 0.0;
  for (const auto& [_, w] : adjacency_[v]) d += w;
  return d;
}

NodePartition::NodePartition(std::vector<std::size_t> assignment,
                             std::size_t num_clusters)
    : assignment_(std::move(assignment)), num_clusters_(num_clusters) {
  if (num_clusters_ == 0) {
    throw InvalidArgument("NodePartition: need at least one cluster");
  }
  std::vector<bool> seen(num_clusters_, false);
  for (std::size_t c : assignment_) {
    if (c >= num_clusters_) {
      throw InvalidArgument("NodePartition: cluster id " + std::to_string(c) +
                            " out of range");
    }
    seen[c] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidArgument("NodePartition: empty cluster");
  }
}

std::vector<std::vector<NodeId>> NodePartition::Clusters() const {
  std::vector<std::vector<NodeId>> out(num_clusters_);
  for (NodeId v = 0; v < assignment_.size(); ++v) {
    out[assignment_[v]].push_back(v);
  }
  return out;
}

Graph GenerateErdosRenyi(std::size_t n, double p, std::uint64_t seed,
                         int max_attempts) {
  if (n < 2) throw InvalidArgument("GenerateErdosRenyi: need n >= 2");
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("GenerateErdosRenyi: p must lie in (0, 1]");
  }
  return RetryUntilConnected("GenerateErdosRenyi", seed, max_attempts,
                             [&](std::uint64_t s) {
                               auto rng = internal::MakeRng(s);
                               std::bernoulli_distribution coin(p);
                               std::vector<Edge> edges;
                               for (NodeId i = 0; i < n; ++i) {
                                 for (NodeId j = i + 1; j < n; ++j) {
                                   if (coin(rng)) edges.push_back({i, j, 1.0});
                                 }
                               }
                               return Graph(n, std::move(edges));
                             });
}

Graph GenerateBarabasiAlbert(std::size_t n, std::size_t m_attach,
                             std::uint64_t seed) {
  // m_attach = n - 1 would only ever produce K_n; it is rejected with the
  // other degenerate choices.
  if (m_attach < 1 || m_attach + 1 >= n) {
    throw InvalidArgument("GenerateBarabasiAlbert: need 1 <= m_attach < n - 1");
  }
  auto rng = internal::MakeRng(seed);
  std::vector<Edge> edges;
  // Each endpoint appears once per incident edge: sampling uniformly from
  // this list is sampling proportional to degree.
  std::vector<NodeId> endpoints;
  for (NodeId i = 0; i < m_attach; ++i) {
    for (NodeId j = i + 1; j < m_attach; ++j) {
      edges.push_back({i, j, 1.0});
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  for (NodeId v = m_attach; v < n; ++v) {
    std::set<NodeId> targets;
    if (v == m_attach) {
      for (NodeId t = 0; t < m_attach; ++t) targets.insert(t);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      while (targets.size() < m_attach) targets.insert(endpoints[pick(rng)]);
    }
    for (NodeId t : targets) {
      edges.push_back({t, v, 1.0});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph GenerateRandomGeometric(std::size_t n, double radius, std::uint64_t seed,
                              int max_attempts) {
  if (n < 2) throw InvalidArgument("GenerateRandomGeometric: need n >= 2");
  if (!(radius > 0.0 && radius <= std::sqrt(2.0))) {
    throw InvalidArgument("GenerateRandomGeometric: radius must lie in "
                          "(0, sqrt(2)]");
  }
  return RetryUntilConnected(
      "GenerateRandomGeometric", seed, max_attempts, [&](std::uint64_t s) {
        auto rng = internal::MakeRng(s);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = unit(rng);
          y[i] = unit(rng);
        }
        // Compare squared distances; the sqrt(2) radius must still connect
        // opposite corners, hence the tiny slack.
        const double r2 = radius * radius * (1.0 + 1e-12);
        std::vector<Edge> edges;
        for (NodeId i = 0; i < n; ++i) {
          for (NodeId j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx * dx + dy * dy <= r2) edges.push_back({i, j, 1.0});
          }
        }
        return Graph(n, std::move(edges));
      });
}

SbmGraph GenerateSbm(const SbmParams& params, std::uint64_t seed,
                     int max_attempts) {
  if (params.clusters < 1 || params.nodes_per_cluster < 1) {
    throw InvalidArgument("GenerateSbm: need c >= 1 and n_C >= 1");
  }
  if (!(params.p_in > 0.0 && params.p_in <= 1.0) ||
      !(params.p_out >= 0.0 && params.p_out <= 1.0)) {
    throw InvalidArgument("GenerateSbm: need p_in in (0, 1], p_out in [0, 1]");
  }
  const std::size_t n = params.clusters * params.nodes_per_cluster;
  if (n < 2) throw InvalidArgument("GenerateSbm: need at least two nodes");

  std::vector<std::size_t> assignment(n);
  for (NodeId v = 0; v < n; ++v) assignment[v] = v / params.nodes_per_cluster;

  Graph g = RetryUntilConnected(
      "GenerateSbm", seed, max_attempts, [&](std::uint64_t s) {
        auto rng = internal::MakeRng(s);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<Edge> edges;
        for (NodeId i = 0; i < n; ++i) {
          for (NodeId j = i + 1; j < n; ++j) {
            const double p =
                assignment[i] == assignment[j] ? params.p_in : params.p_out;
            if (unit(rng) < p) edges.push_back({i, j, 1.0});
          }
        }
        return Graph(n, std::move(edges));
      });
  return {std::move(g), NodePartition(std::move(assignment), params.clusters)};
}

DenseMatrix Laplacian(const Graph& g) {
  const std::size_t n = g.num_nodes();
  DenseMatrix l(n, n);
  for (const Edge& e : g.edges()) {
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
    l(e.u, e.u) += e.weight;
    l(e.v, e.v) += e.weight;
  }
  return l;
}

bool IsConnected(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (const auto& [w, _] : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

NodePartition PartitionEqual(const Graph& g, std::size_t c,
                             std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  if (c < 1 || c > n) {
    throw InvalidArgument("PartitionEqual: cluster count " + std::to_string(c) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  auto rng = internal::MakeRng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::size_t> assignment(n);
  const std::size_t base = n / c, extra = n % c;
  std::size_t pos = 0;
  for (std::size_t cluster = 0; cluster < c; ++cluster) {
    const std::size_t size = base + (cluster < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) assignment[order[pos++]] = cluster;
  }
  return NodePartition(std::move(assignment), c);
}

void WriteEdgeList(std::ostream& os, const Graph& g) {
  os << g.num_nodes() << ' ' << g.num_edges() << '\n';
  const auto old_precision = os.precision(17);
  for (const Edge& e : g.edges()) {
    os << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  }
  os.precision(old_precision);
}

Graph ReadEdgeList(std::istream& is) {
  std::size_t n = 0, m = 0;
  if (!(is >> n >> m)) {
    throw InvalidArgument("ReadEdgeList: missing 'n m' header");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Edge e;
    if (!(is >> e.u >> e.v >> e.weight)) {
      throw InvalidArgument("ReadEdgeList: expected " + std::to_string(m) +
                            " edges, read " + std::to_string(k));
    }
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

void WritePartition(std::ostream& os, const NodePartition& p) {
  for (NodeId v = 0; v < p.num_nodes(); ++v) {
    os << v << ' ' << p.cluster_of(v) << '\n';
  }
}

NodePartition ReadPartition(std::istream& is) {
  std::vector<std::pair<NodeId, std::size_t>> pairs;
  NodeId v = 0;
  std::size_t c = 0;
  while (is >> v >> c) pairs.emplace_back(v, c);
  if (!is.eof()) throw InvalidArgument("ReadPartition: malformed line");
  std::vector<std::size_t> assignment(pairs.size());
  std::vector<bool> filled(pairs.size(), false);
  std::size_t clusters = 0;
  for (const auto& [node, cluster] : pairs) {
    if (node >= pairs.size() || filled[node]) {
      throw InvalidArgument("ReadPartition: node ids must cover [0, n) once");
    }
    filled[node] = true;
    assignment[node] = cluster;
    clusters = std::max(clusters, cluster + 1);
  }
  return NodePartition(std::move(assignment), clusters);
}

}  // namespace leadsel
