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
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "leadsel/bench.h"
#include "leadsel/errors.h"

namespace leadsel::bench {
namespace {

// Linear interpolation between closest ranks; `sorted` is non-empty.
double Percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

ScalingFit FitScalingExponent(
    std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw InvalidArgument("scaling fit needs at least 3 points");
  }
  const double m = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0) || !(y > 0.0) || !std::isfinite(n) || !std::isfinite(y)) {
      throw InvalidArgument("scaling fit needs positive finite points");
    }
    sx += std::log(n);
    sy += std::log(y);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [n, y] : points) {
    const double dx = std::log(n) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw InvalidArgument("scaling fit needs two distinct n");

  ScalingFit fit;
  fit.points = points.size();
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  double sse = 0.0;
  for (const auto& [n, y] : points) {
    const double r = std::log(y) - (my + fit.exponent * (std::log(n) - mx));
    sse += r * r;
  }
  // A constant series has syy == 0 and is fitted exactly.
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - sse / syy) : 1.0;

  const double dof = m - 2.0;
  const double se = std::sqrt(sse / dof / sxx);
  const boost::math::students_t dist(dof);
  const double half = boost::math::quantile(dist, 0.975) * se;
  fit.exponent_low = fit.exponent - half;
  fit.exponent_high = fit.exponent + half;
  return fit;
}

double DeviationPercent(const SelectionTrace& baseline,
                        const SelectionTrace& candidate, std::size_t at_k) {
  if (at_k < 1) throw InvalidArgument("at_k must be >= 1");
  if (baseline.records.size() < at_k || candidate.records.size() < at_k) {
    throw InvalidArgument("trace shorter than at_k");
  }
  const double base = baseline.records[at_k - 1].objective;
  const double cand = candidate.records[at_k - 1].objective;
  if (!(base > 0.0)) throw InvalidArgument("baseline objective must be positive");
  return 100.0 * (cand - base) / base;
}

DeviationSummary DeviationStats(const SelectionTrace& baseline,
                                std::span<const SelectionTrace> candidates,
                                std::size_t at_k) {
  if (candidates.empty()) throw InvalidArgument("no candidate traces");
  std::vector<double> dev;
  dev.reserve(candidates.size());
  for (const SelectionTrace& c : candidates) {
    if (c.k != baseline.k) {
      throw InvalidArgument("candidate and baseline traces differ in k");
    }
    dev.push_back(DeviationPercent(baseline, c, at_k));
  }
  std::sort(dev.begin(), dev.end());
  DeviationSummary s;
  s.count = dev.size();
  double sum = 0.0;
  for (double d : dev) sum += d;
  s.mean = sum / static_cast<double>(dev.size());
  s.min = dev.front();
  s.max = dev.back();
  s.p50 = Percentile(dev, 0.50);
  s.p90 = Percentile(dev, 0.90);
  s.p95 = Percentile(dev, 0.95);
  return s;
}

}  // namespace leadsel::bench
