"""Seeded Monte Carlo estimators for area-process persistence probabilities.

Randomness comes from numpy's Philox counter-based generator.  Work is split
into fixed-size chunks of trials; chunk ``i`` of a run seeded with ``s`` uses
``Philox(key=[s mod 2^64, i])``, so results are bit-identical for a fixed
(seed, trials, CHUNK_TRIALS) regardless of how chunks are scheduled, and
chunks can run on a thread pool.  Reduction is an ordered fold over chunk
summaries (integer counts), which is order-insensitive anyway.

Estimators:

* ``estimate_sinai_persistence`` -- fraction of length-n walks whose areas
  stay nonnegative, advancing survivors block by block (the population dies
  off quickly, so early exits dominate the cost);
* ``estimate_bridge_persistence`` -- rejection-samples uniform zero-area
  bridges of length 4n through their down-time sets (accept when the subset
  sum hits the exact zero-area value), then checks area nonnegativity;
* ``estimate_atau_zero`` -- runs walks to the first time the height is 0
  with cumulative area <= 0 and records whether the area is exactly 0 there;
  walks that outlive the step horizon are censored and reported, never
  silently dropped (the stopping time has a heavy t^(-1/4) tail).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ResourceGuardError

CHUNK_TRIALS = 1 << 14
DEFAULT_TRIALS = 100_000
DEFAULT_HORIZON = 10_000
_STEP_BLOCK = 256
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo point estimate with its sampling error.

    ``stderr`` is the sample standard deviation over uncensored trials
    divided by sqrt(#uncensored); ``censored`` counts trials cut off by the
    horizon (zero for estimators without one).
    """

    value: float
    stderr: float
    trials: int
    censored: int
    seed: int


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    key = np.array([seed & _MASK64, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _chunk_sizes(trials: int) -> list[int]:
    sizes = [CHUNK_TRIALS] * (trials // CHUNK_TRIALS)
    if trials % CHUNK_TRIALS:
        sizes.append(trials % CHUNK_TRIALS)
    return sizes


def _run_chunks(worker, trials: int, threads: int = 1) -> list:
    sizes = _chunk_sizes(trials)
    if threads <= 1:
        return [worker(i, b) for i, b in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, i, b) for i, b in enumerate(sizes)]
        return [f.result() for f in futures]


def _binomial_estimate(successes: int, count: int, trials: int, censored: int, seed: int) -> Estimate:
    if count == 0:
        return Estimate(float("nan"), float("nan"), trials, censored, seed)
    p = successes / count
    if count > 1:
        sample_var = (successes * (1 - p) ** 2 + (count - successes) * p**2) / (count - 1)
    else:
        sample_var = 0.0
    return Estimate(p, sqrt(sample_var / count), trials, censored, seed)


def estimate_sinai_persistence(n: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
                               threads: int = 1) -> Estimate:
    """Estimate P(A_1, ..., A_n >= 0) for a length-n walk."""
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be >= 1")

    def worker(chunk_index: int, batch: int) -> int:
        rng = _chunk_rng(seed, chunk_index)
        heights = np.zeros(batch, dtype=np.int64)
        areas = np.zeros(batch, dtype=np.int64)
        t = 0
        while heights.size and t < n:
            blk = min(_STEP_BLOCK, n - t)
            steps = rng.integers(0, 2, size=(heights.size, blk), dtype=np.int64) * 2 - 1
            s_path = heights[:, None] + np.cumsum(steps, axis=1)
            a_path = areas[:, None] + np.cumsum(s_path, axis=1)
            alive = (a_path >= 0).all(axis=1)
            heights = s_path[alive, blk - 1]
            areas = a_path[alive, blk - 1]
            t += blk
        return heights.size

    survivors = sum(_run_chunks(worker, trials, threads))
    return _binomial_estimate(survivors, trials, trials, 0, seed)


def estimate_bridge_persistence(n: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
                                threads: int = 1) -> Estimate:
    """Estimate P(areas all >= 0) over uniform zero-area bridges of length 4n.

    A uniform bridge is a uniform 2n-element subset of {0, ..., 4n-1} (its
    down times); the zero-area condition is the exact subset sum n(4n-1).
    Candidates are drawn in batches until each chunk fills its quota of
    accepted bridges.  Aborts if the observed acceptance rate falls below
    1e-6.
    """
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be >= 1")
    length = 4 * n
    target = n * (4 * n - 1)
    # candidate batch sized to keep the key matrix around 4M entries
    batch_rows = max(256, min(1 << 15, (1 << 22) // length))

    def worker(chunk_index: int, quota: int) -> int:
        rng = _chunk_rng(seed, chunk_index)
        accepted = 0
        sinai = 0
        drawn = 0
        while accepted < quota:
            keys = rng.random((batch_rows, length), dtype=np.float64)
            # positions of the 2n smallest keys per row = uniform random subset
            subset = np.argpartition(keys, 2 * n - 1, axis=1)[:, : 2 * n]
            sums = subset.sum(axis=1)
            hits = np.nonzero(sums == target)[0]
            drawn += batch_rows
            if drawn > 64 * batch_rows and accepted + hits.size == 0:
                rate_bound = 1.0 / drawn
                if rate_bound < 1e-6:
                    raise ResourceGuardError(
                        f"bridge acceptance rate below 1e-6 (0/{drawn} accepted)"
                    )
            if hits.size == 0:
                continue
            take = hits[: quota - accepted]
            down = np.zeros((take.size, length), dtype=np.int64)
            np.put_along_axis(down, subset[take], 1, axis=1)
            steps = 1 - 2 * down
            s_path = np.cumsum(steps, axis=1)
            a_path = np.cumsum(s_path, axis=1)
            sinai += int(((a_path >= 0).all(axis=1)).sum())
            accepted += take.size
        return sinai

    successes = sum(_run_chunks(worker, trials, threads))
    return _binomial_estimate(successes, trials, trials, 0, seed)


def estimate_atau_zero(trials: int = DEFAULT_TRIALS, horizon: int = DEFAULT_HORIZON,
                       seed: int = 0, threads: int = 1) -> Estimate:
    """Estimate P(area = 0 at the first time the walk sits at height 0 with
    area <= 0), censoring walks that survive past `horizon` steps.

    The point estimate uses uncensored trials only; the censored count is
    carried in the Estimate so callers can judge the truncation bias.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if horizon < 4:
        raise ValueError("horizon must be >= 4")

    def worker(chunk_index: int, batch: int) -> tuple[int, int, int]:
        rng = _chunk_rng(seed, chunk_index)
        heights = np.zeros(batch, dtype=np.int64)
        areas = np.zeros(batch, dtype=np.int64)
        hit_zero = stopped = 0
        t = 0
        while heights.size and t < horizon:
            blk = min(_STEP_BLOCK, horizon - t)
            steps = rng.integers(0, 2, size=(heights.size, blk), dtype=np.int64) * 2 - 1
            s_path = heights[:, None] + np.cumsum(steps, axis=1)
            a_path = areas[:, None] + np.cumsum(s_path, axis=1)
            at_risk = (s_path == 0) & (a_path <= 0)
            any_risk = at_risk.any(axis=1)
            first = at_risk.argmax(axis=1)
            idx = np.nonzero(any_risk)[0]
            if idx.size:
                stopped += idx.size
                hit_zero += int((a_path[idx, first[idx]] == 0).sum())
            cont = ~any_risk
            heights = s_path[cont, blk - 1]
            areas = a_path[cont, blk - 1]
            t += blk
        return hit_zero, stopped, heights.size

    sums = _run_chunks(worker, trials, threads)
    hit_zero = sum(s[0] for s in sums)
    stopped = sum(s[1] for s in sums)
    censored = sum(s[2] for s in sums)
    return _binomial_estimate(hit_zero, stopped, trials, censored, seed)
