# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent derivations of the expected values frozen into the C++ tests.

Everything here uses numpy/scipy primitives (SVD pseudo-inverse, direct
inversion, exhaustive enumeration, Monte Carlo) and shares no code with the
library. Run with `python3 tests/oracles/derive_values.py`.
"""
import itertools

import numpy as np
from scipy.sparse.csgraph import connected_components


def laplacian(n, edges):
    lap = np.zeros((n, n))
    for u, v in edges:
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    return lap


def objective(lap, leaders):
    keep = [i for i in range(lap.shape[0]) if i not in leaders]
    return 0.5 * np.trace(np.linalg.inv(lap[np.ix_(keep, keep)]))


def er_edge_band(samples=10000, n=100, p=0.05, seed=0):
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    counts = []
    while len(counts) < samples:
        mask = rng.random(len(iu[0])) < p
        adj = np.zeros((n, n), dtype=bool)
        adj[iu[0][mask], iu[1][mask]] = True
        adj |= adj.T
        if connected_components(adj, directed=False)[0] == 1:
            counts.append(mask.sum())
    counts = np.array(counts)
    return counts.min(), counts.max(), counts.mean()


def rg_degree_band(samples=2000, n=100, r=0.2, seed=0):
    rng = np.random.default_rng(seed)
    degs = []
    while len(degs) < samples:
        pts = rng.random((n, 2))
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        adj = (d <= r) & ~np.eye(n, dtype=bool)
        if connected_components(adj, directed=False)[0] == 1:
            degs.append(adj.sum() / n)
    degs = np.array(degs)
    return degs.min(), degs.max(), degs.mean()


def main():
    print("ER(100, 0.05) connected edge count min/max/mean:", er_edge_band())
    print("RG(100, 0.2) connected mean degree min/max/mean:", rg_degree_band())

    k3 = laplacian(3, [(0, 1), (1, 2), (0, 2)])
    print("K3 pinv (SVD):\n", np.linalg.pinv(k3) * 9)

    k2 = laplacian(2, [(0, 1)])
    print("K2 pinv (SVD):\n", np.linalg.pinv(k2))

    p3 = laplacian(3, [(0, 1), (1, 2)])
    print("P3 f({m}):", [objective(p3, [m]) for m in range(3)])
    print("P3 f({0,1}), f({0,2}):", objective(p3, [0, 1]), objective(p3, [0, 2]))
    print("P3 k=2 subsets:",
          {s: objective(p3, list(s)) for s in itertools.combinations(range(3), 2)})
    print("P3 grounded-at-0 inverse:\n", np.linalg.inv(p3[1:, 1:]))

    s4 = laplacian(4, [(0, 1), (0, 2), (0, 3)])
    print("S4 f({m}):", [objective(s4, [m]) for m in range(4)])

    print("[[2,-1],[-1,1]]^-1:\n", np.linalg.inv(np.array([[2., -1], [-1, 1]])))

    # BA with a clique seed of m nodes: C(m,2) + (n-m)*m edges.
    n, m = 50, 2
    print("BA(50, 2) edges under clique seed:", m * (m - 1) // 2 + (n - m) * m)

    # Stochastic sample sizes.
    import math
    for rem, k, eps in [(1000, 10, 0.01), (100, 1, 0.5), (5, 100, 0.5)]:
        beta = k / math.log(1 / eps)
        size = rem if beta <= 1 else min(max(math.ceil(rem / beta), 1), rem)
        print(f"sample_size({rem},{k},{eps}) beta={beta:.6f} size={size}")
    beta = 10 / math.log(100)
    stoch = sum(math.ceil((1000 - i) / beta) for i in range(10))
    ordinary = sum(1000 - i for i in range(10))
    print("n=1000 k=10 eps=0.01: stochastic calls", stoch, "ordinary", ordinary,
          "ratio", ordinary / stoch)

    # Ordinary call count exponent for k = 0.05 n.
    ns = np.array([100, 200, 400, 800])
    calls = np.array([sum(n - i for i in range(n // 20)) for n in ns])
    d, loga = np.polyfit(np.log(ns), np.log(calls), 1)
    print("ordinary calls", calls, "fitted exponent", d)

    # Stochastic call count exponent for k = 0.05 n, eps = 0.01.
    def stoch_calls(n, k, eps):
        beta = k / math.log(1 / eps)
        total = 0
        for i in range(k):
            rem = n - i
            total += rem if beta <= 1 else min(max(math.ceil(rem / beta), 1), rem)
        return total
    scalls = np.array([stoch_calls(n, n // 20, 0.01) for n in ns])
    d, _ = np.polyfit(np.log(ns), np.log(scalls), 1)
    print("stochastic calls", scalls, "fitted exponent", d)

    # Log-log fit with a 95% Student-t interval on noisy synthetic data.
    from scipy import stats
    xs = np.array([100.0, 200.0, 400.0, 800.0])
    ys = np.array([1.1e4, 3.9e4, 1.7e5, 6.3e5])
    res = stats.linregress(np.log(xs), np.log(ys))
    half = stats.t.ppf(0.975, len(xs) - 2) * res.stderr
    print(f"noisy fit a={math.exp(res.intercept):.12g} d={res.slope:.12g} "
          f"r2={res.rvalue**2:.12g} ci=[{res.slope - half:.12g}, "
          f"{res.slope + half:.12g}]")

    # Linear-interpolation percentiles.
    devs = np.array([0.0, 0.5, 1.0, 3.0, 7.0])
    print("percentiles p50/p90/p95:",
          [float(np.percentile(devs, q)) for q in (50, 90, 95)])


if __name__ == "__main__":
    main()
