#!/usr/bin/env python3
# Copyright 2026 The sjlt Authors.
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
"""Monte Carlo oracle for the lower-bound experiments.

Uses fully random rows and signs (numpy PCG64), which matches the library's
hash families exactly on these vectors: every event involves at most 2 * ell
hashed points. Writes lower_bound_thresholds.json next to this script.
"""

import json
import math
import pathlib

import numpy as np

TRIALS = 1_000_000


def next_pow2(x):
    return 1 << (x - 1).bit_length()


def moment_order(delta):
    ell = math.ceil(math.log2(1 / delta) - 1e-12)
    return ell + (ell % 2)


def sized_k(eps, delta, s, c_k=8.0):
    ell = moment_order(delta)
    k_min = math.ceil(c_k * ell / eps**2 * (1 - 1e-12))
    return s * next_pow2(-(-max(k_min, s) // s))


def block_spread(rng, eps, delta, s):
    k = sized_k(eps, delta, s)
    width = k // s
    t = math.floor(1 / (s * eps) * (1 + 1e-12))
    x = 1 / math.sqrt(t)
    rows = rng.integers(0, width, size=(TRIALS, t, s))
    signs = rng.choice([-1.0, 1.0], size=(TRIALS, t, s)) * x / math.sqrt(s)
    # Rows in different blocks never meet, so only same-block pairs interact.
    total = (signs**2).sum(axis=(1, 2))
    for r in range(s):
        for a in range(t):
            for b in range(a + 1, t):
                total += 2 * signs[:, a, r] * signs[:, b, r] * (rows[:, a, r] == rows[:, b, r])
    return k, t, np.abs(total - 1.0)


def dks_spread(rng, eps, delta, s):
    k = next_pow2(sized_k(eps, delta, s))
    t = math.floor(1 / (s * eps) * (1 + 1e-12))
    x = 1 / math.sqrt(t)
    copies = t * s
    rows = rng.integers(0, k, size=(TRIALS, copies))
    signs = rng.choice([-1.0, 1.0], size=(TRIALS, copies)) * x / math.sqrt(s)
    # ||Sx||^2 = sum_j v_j^2 + sum_{a != b, same row} v_a v_b.
    total = (signs**2).sum(axis=1)
    for a in range(copies):
        for b in range(a + 1, copies):
            total += 2 * signs[:, a] * signs[:, b] * (rows[:, a] == rows[:, b])
    return k, t, np.abs(total - 1.0)


def summarize(dist, threshold, delta, **extra):
    failures = int((dist >= threshold * (1 - 1e-9)).sum())
    rate = failures / TRIALS
    return dict(extra, trials=TRIALS, failures=failures, rate=rate,
                std_error=math.sqrt(rate * (1 - rate) / TRIALS), delta=delta,
                threshold=threshold)


def main():
    rng = np.random.default_rng(20261016)
    out = {}
    k, t, dist = block_spread(rng, 0.25, 0.05, 2)
    out["block_eps0.25_delta0.05_s2"] = summarize(dist, 0.5, 0.05, k=k, s=2, t=t)
    k, t, dist = dks_spread(rng, 0.1, 0.01, 5)
    out["dks_eps0.1_delta0.01_s5"] = summarize(dist, 0.2, 0.01, k=k, s=5, t=t)
    # Degraded Reed-Solomon demo: three coordinates whose codewords agree
    # only in the degraded first symbol; failure iff their signs there agree.
    signs = rng.choice([-1, 1], size=(TRIALS, 3))
    agree = (signs == signs[:, :1]).all(axis=1)
    rate = float(agree.mean())
    out["degraded_rs_q8_s8_m2_t3"] = dict(trials=TRIALS, failures=int(agree.sum()), rate=rate,
                                          exact_rate=0.25, threshold=0.25, delta=0.05,
                                          std_error=math.sqrt(rate * (1 - rate) / TRIALS))
    path = pathlib.Path(__file__).with_name("lower_bound_thresholds.json")
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
