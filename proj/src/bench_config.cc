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
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "leadsel/bench.h"
#include "leadsel/errors.h"
#include "leadsel/trace_io.h"

namespace leadsel::bench {
namespace {

using nlohmann::json;

std::vector<std::uint64_t> SeedRange(std::uint64_t count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  return seeds;
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& known,
                       const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw InvalidArgument("unknown key '" + key + "' in " + where);
    }
  }
}

TopologySpec TopologyFromJson(const json& j) {
  if (j.is_string()) {
    TopologySpec t;
    t.model = j.get<std::string>();
    return t;
  }
  RejectUnknownKeys(j, {"model", "p", "m", "radius"}, "topology");
  TopologySpec t;
  t.model = j.value("model", t.model);
  t.p = j.value("p", t.p);
  t.m_attach = j.value("m", t.m_attach);
  if (j.contains("radius") && !j["radius"].is_null()) {
    t.radius = j["radius"].get<double>();
  }
  return t;
}

json TopologyToJson(const TopologySpec& t) {
  json j;
  j["model"] = t.model;
  j["p"] = RoundReal(t.p);
  j["m"] = t.m_attach;
  j["radius"] = t.radius ? json(RoundReal(*t.radius)) : json(nullptr);
  return j;
}

AlgorithmSpec AlgorithmFromJson(const json& j) {
  AlgorithmSpec a;
  if (j.is_string()) {
    // "stochastic" or "stochastic/naive"
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    a.algorithm = ParseAlgorithm(s.substr(0, slash));
    if (slash != std::string::npos) {
      a.oracle = ParseOracleKind(s.substr(slash + 1));
    }
    return a;
  }
  RejectUnknownKeys(j, {"algorithm", "oracle"}, "algorithm entry");
  a.algorithm = ParseAlgorithm(j.at("algorithm").get<std::string>());
  if (j.contains("oracle")) {
    a.oracle = ParseOracleKind(j["oracle"].get<std::string>());
  }
  return a;
}

template <typename T>
std::vector<T> ScalarOrList(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

void SbmFromJson(const json& j, SbmSweep& s) {
  RejectUnknownKeys(j,
                    {"clusters", "nodes_per_cluster", "p_in", "p_out_ratios",
                     "partition", "inner", "inner_oracle", "inner_epsilon"},
                    "sbm");
  if (j.contains("clusters")) s.clusters = ScalarOrList<std::size_t>(j["clusters"]);
  if (j.contains("nodes_per_cluster")) {
    s.nodes_per_cluster = ScalarOrList<std::size_t>(j["nodes_per_cluster"]);
  }
  s.p_in = j.value("p_in", s.p_in);
  if (j.contains("p_out_ratios")) {
    s.p_out_ratios = ScalarOrList<double>(j["p_out_ratios"]);
  }
  if (j.contains("partition")) {
    const std::string mode = j["partition"].get<std::string>();
    if (mode == "ground-truth") {
      s.equal_partition = false;
    } else if (mode == "equal") {
      s.equal_partition = true;
    } else {
      throw InvalidArgument("sbm.partition must be ground-truth or equal");
    }
  }
  if (j.contains("inner")) {
    s.inner.algorithm = ParseAlgorithm(j["inner"].get<std::string>());
  }
  if (j.contains("inner_oracle")) {
    s.inner.oracle = ParseOracleKind(j["inner_oracle"].get<std::string>());
  }
  s.inner.epsilon = j.value("inner_epsilon", s.inner.epsilon);
}

}  // namespace

std::string_view ToString(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kScaling: return "scaling";
    case ExperimentKind::kLazyProfile: return "lazy-profile";
    case ExperimentKind::kEpsilonSweep: return "epsilon-sweep";
    case ExperimentKind::kMonteCarlo: return "monte-carlo";
    case ExperimentKind::kSbmDistributed: return "sbm-distributed";
  }
  return "unknown";
}

ExperimentKind ParseExperimentKind(std::string_view name) {
  if (name == "scaling") return ExperimentKind::kScaling;
  if (name == "lazy-profile") return ExperimentKind::kLazyProfile;
  if (name == "epsilon-sweep") return ExperimentKind::kEpsilonSweep;
  if (name == "monte-carlo") return ExperimentKind::kMonteCarlo;
  if (name == "sbm-distributed" || name == "sbm") {
    return ExperimentKind::kSbmDistributed;
  }
  throw InvalidArgument("unknown experiment kind: " + std::string(name));
}

double TopologySpec::EffectiveRadius() const {
  return radius ? *radius : std::sqrt(p / std::numbers::pi);
}

std::string TopologySpec::Label() const {
  if (model == "ba") return "ba(m=" + std::to_string(m_attach) + ")";
  if (model == "rg") return "rg(r=" + FormatReal(EffectiveRadius()) + ")";
  return "er(p=" + FormatReal(p) + ")";
}

std::string AlgorithmSpec::Label() const {
  return std::string(ToString(algorithm)) + "/" + std::string(ToString(oracle));
}

std::size_t KRule::Resolve(std::size_t n) const {
  if (n < 2) throw InvalidArgument("k rule needs n >= 2");
  if (fixed) return *fixed;
  std::size_t k = static_cast<std::size_t>(std::llround(fraction * n));
  if (k < 1) k = 1;
  if (k > n - 1) k = n - 1;
  return k;
}

ExperimentConfig DefaultConfig(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.seeds = SeedRange(10);
  switch (kind) {
    case ExperimentKind::kScaling:
      cfg.k.fixed.reset();
      cfg.k.fraction = 0.05;
      break;
    case ExperimentKind::kLazyProfile:
      cfg.topologies.assign(3, TopologySpec{});
      cfg.topologies[1].model = "ba";
      cfg.topologies[2].model = "rg";
      cfg.n_values = {300};
      cfg.k_values = {5, 10, 20, 30};
      cfg.algorithms = {{Algorithm::kLazy, OracleKind::kAccelerated}};
      break;
    case ExperimentKind::kEpsilonSweep:
      cfg.n_values = {300};
      cfg.k.fixed = 12;
      cfg.epsilons = {0.01, 0.1, 0.3, 0.5, 0.9};
      cfg.algorithms = {{Algorithm::kStochastic, OracleKind::kAccelerated}};
      cfg.warmup = false;
      break;
    case ExperimentKind::kMonteCarlo:
      cfg.n_values = {300};
      cfg.k.fixed = 12;
      cfg.epsilons = {0.5};
      cfg.seeds = SeedRange(100);
      cfg.algorithms = {{Algorithm::kStochastic, OracleKind::kAccelerated}};
      cfg.warmup = false;
      break;
    case ExperimentKind::kSbmDistributed:
      cfg.k.fixed = 10;
      cfg.sbm.p_out_ratios = {0.4, 1.0};
      cfg.seeds = SeedRange(3);
      cfg.algorithms = {{Algorithm::kDistributed, OracleKind::kAccelerated}};
      cfg.warmup = false;
      break;
  }
  return cfg;
}

ExperimentConfig ConfigFromJson(const json& j) {
  try {
    RejectUnknownKeys(j,
                      {"kind", "topology", "topologies", "n", "k",
                       "k_fraction", "k_values", "epsilons", "seeds",
                       "graph_seed", "algorithms", "sbm", "at_k",
                       "histogram_bins", "warmup", "output_dir"},
                      "config");
    ExperimentConfig cfg =
        DefaultConfig(ParseExperimentKind(j.at("kind").get<std::string>()));
    if (j.contains("topology") && j.contains("topologies")) {
      throw InvalidArgument("give either topology or topologies");
    }
    if (j.contains("topology")) cfg.topologies = {TopologyFromJson(j["topology"])};
    if (j.contains("topologies")) {
      cfg.topologies.clear();
      for (const json& t : j["topologies"]) {
        cfg.topologies.push_back(TopologyFromJson(t));
      }
    }
    if (j.contains("n")) cfg.n_values = ScalarOrList<std::size_t>(j["n"]);
    if (j.contains("k") && j.contains("k_fraction")) {
      throw InvalidArgument("give either k or k_fraction");
    }
    if (j.contains("k")) {
      cfg.k.fixed = j["k"].get<std::size_t>();
      cfg.k.fraction = 0.0;
    }
    if (j.contains("k_fraction")) {
      cfg.k.fixed.reset();
      cfg.k.fraction = j["k_fraction"].get<double>();
    }
    if (j.contains("k_values")) {
      cfg.k_values = ScalarOrList<std::size_t>(j["k_values"]);
    }
    if (j.contains("epsilons")) cfg.epsilons = ScalarOrList<double>(j["epsilons"]);
    if (j.contains("seeds")) {
      // A bare integer N means seeds 1..N.
      cfg.seeds = j["seeds"].is_array()
                      ? j["seeds"].get<std::vector<std::uint64_t>>()
                      : SeedRange(j["seeds"].get<std::uint64_t>());
    }
    cfg.graph_seed = j.value("graph_seed", cfg.graph_seed);
    if (j.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const json& a : j["algorithms"]) {
        cfg.algorithms.push_back(AlgorithmFromJson(a));
      }
    }
    if (j.contains("sbm")) SbmFromJson(j["sbm"], cfg.sbm);
    if (j.contains("at_k") && !j["at_k"].is_null()) {
      cfg.at_k = j["at_k"].get<std::size_t>();
    }
    cfg.histogram_bins = j.value("histogram_bins", cfg.histogram_bins);
    cfg.warmup = j.value("warmup", cfg.warmup);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    ValidateConfig(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
}

json ConfigToJson(const ExperimentConfig& cfg) {
  json j;
  j["kind"] = std::string(ToString(cfg.kind));
  j["topologies"] = json::array();
  for (const TopologySpec& t : cfg.topologies) {
    j["topologies"].push_back(TopologyToJson(t));
  }
  j["n"] = cfg.n_values;
  if (cfg.k.fixed) {
    j["k"] = *cfg.k.fixed;
  } else {
    j["k_fraction"] = RoundReal(cfg.k.fraction);
  }
  j["k_values"] = cfg.k_values;
  j["epsilons"] = json::array();
  for (double e : cfg.epsilons) j["epsilons"].push_back(RoundReal(e));
  j["seeds"] = cfg.seeds;
  j["graph_seed"] = cfg.graph_seed;
  j["algorithms"] = json::array();
  for (const AlgorithmSpec& a : cfg.algorithms) j["algorithms"].push_back(a.Label());
  json sbm;
  sbm["clusters"] = cfg.sbm.clusters;
  sbm["nodes_per_cluster"] = cfg.sbm.nodes_per_cluster;
  sbm["p_in"] = RoundReal(cfg.sbm.p_in);
  sbm["p_out_ratios"] = json::array();
  for (double r : cfg.sbm.p_out_ratios) sbm["p_out_ratios"].push_back(RoundReal(r));
  sbm["partition"] = cfg.sbm.equal_partition ? "equal" : "ground-truth";
  sbm["inner"] = std::string(ToString(cfg.sbm.inner.algorithm));
  sbm["inner_oracle"] = std::string(ToString(cfg.sbm.inner.oracle));
  sbm["inner_epsilon"] = RoundReal(cfg.sbm.inner.epsilon);
  j["sbm"] = std::move(sbm);
  j["at_k"] = cfg.at_k ? json(*cfg.at_k) : json(nullptr);
  j["histogram_bins"] = cfg.histogram_bins;
  j["warmup"] = cfg.warmup;
  j["output_dir"] = cfg.output_dir;
  return j;
}

void ValidateConfig(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw InvalidArgument(msg); };
  if (cfg.seeds.empty()) fail("at least one seed is required");
  if (cfg.algorithms.empty()) fail("at least one algorithm is required");
  if (cfg.topologies.empty()) fail("at least one topology is required");
  for (const TopologySpec& t : cfg.topologies) {
    if (t.model != "er" && t.model != "ba" && t.model != "rg") {
      fail("unknown topology model: " + t.model);
    }
    if (!(t.p > 0.0 && t.p <= 1.0)) fail("topology p must be in (0, 1]");
    if (t.model == "ba" && t.m_attach < 1) fail("ba m must be >= 1");
    if (t.radius && !(*t.radius > 0.0)) fail("rg radius must be positive");
  }
  if (cfg.kind != ExperimentKind::kSbmDistributed) {
    if (cfg.n_values.empty()) fail("at least one n is required");
    for (std::size_t n : cfg.n_values) {
      if (n < 2) fail("every n must be >= 2");
      for (const TopologySpec& t : cfg.topologies) {
        if (t.model == "ba" && t.m_attach + 1 >= n) {
          fail("ba m must be < n - 1");
        }
      }
    }
  }
  if (cfg.k.fixed) {
    if (*cfg.k.fixed < 1) fail("k must be >= 1");
  } else if (!(cfg.k.fraction > 0.0 && cfg.k.fraction < 1.0)) {
    fail("k_fraction must be in (0, 1)");
  }
  for (double e : cfg.epsilons) {
    if (!(e > 0.0 && e < 1.0)) fail("every epsilon must be in (0, 1)");
  }
  const bool needs_epsilon =
      cfg.kind == ExperimentKind::kEpsilonSweep ||
      cfg.kind == ExperimentKind::kMonteCarlo ||
      std::any_of(cfg.algorithms.begin(), cfg.algorithms.end(),
                  [](const AlgorithmSpec& a) {
                    return a.algorithm == Algorithm::kStochastic;
                  });
  if (needs_epsilon && cfg.epsilons.empty()) fail("epsilons must not be empty");
  if (cfg.at_k && *cfg.at_k < 1) fail("at_k must be >= 1");
  if (cfg.histogram_bins < 1) fail("histogram_bins must be >= 1");
  switch (cfg.kind) {
    case ExperimentKind::kLazyProfile:
      if (cfg.k_values.empty()) fail("k_values must not be empty");
      for (std::size_t k : cfg.k_values) {
        if (k < 1) fail("every k value must be >= 1");
      }
      break;
    case ExperimentKind::kSbmDistributed: {
      const SbmSweep& s = cfg.sbm;
      if (s.clusters.empty() || s.nodes_per_cluster.empty() ||
          s.p_out_ratios.empty()) {
        fail("sbm sweep lists must not be empty");
      }
      for (std::size_t c : s.clusters) {
        if (c < 1) fail("sbm clusters must be >= 1");
      }
      for (std::size_t m : s.nodes_per_cluster) {
        if (m < 1) fail("sbm nodes_per_cluster must be >= 1");
      }
      if (!(s.p_in > 0.0 && s.p_in <= 1.0)) fail("sbm p_in must be in (0, 1]");
      for (double r : s.p_out_ratios) {
        if (!(r >= 0.0 && r * s.p_in <= 1.0)) {
          fail("sbm p_out ratio must keep p_out in [0, 1]");
        }
      }
      if (s.inner.algorithm == Algorithm::kDistributed) {
        fail("sbm inner algorithm cannot be distributed");
      }
      if (!(s.inner.epsilon > 0.0 && s.inner.epsilon < 1.0)) {
        fail("sbm inner_epsilon must be in (0, 1)");
      }
      break;
    }
    default:
      for (const AlgorithmSpec& a : cfg.algorithms) {
        if (a.algorithm == Algorithm::kDistributed) {
          fail("distributed runs belong to the sbm-distributed experiment");
        }
      }
      break;
  }
}

}  // namespace leadsel::bench
