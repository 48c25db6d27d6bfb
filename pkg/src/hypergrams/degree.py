"""Contextuality degree as minimum-weight coset decoding over GF(2).

For a sign vector ``s`` let ``e`` be its negativity vector (``e_h = 1`` iff
``s_h = -1``). A classical assignment ``a(v) = (-1)^x_v`` disagrees with ``s``
exactly on the support of ``C(H) x + e``, so the degree is the minimum weight
of the coset ``e + colspace(C(H))``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import gf2
from .assign import ClassicalAssignment, SignVector, classical_sign_function
from .gf2 import BitVector
from .hypergram import RawHypergram

EXHAUSTIVE_THRESHOLD = 24
BRUTEFORCE_LIMIT = 25
_LOW_BITS = 16
_CHUNK = 1 << 20


class ThresholdExceeded(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class DegreeResult:
    value: int
    exact: bool
    witness: ClassicalAssignment
    method: str

    def to_json(self) -> dict[str, Any]:
        return {"value": self.value, "exact": self.exact, "method": self.method, "witness": self.witness.to_json()}


@dataclass(frozen=True)
class HeuristicParams:
    restarts: int = 16
    max_flips: int = 2000
    seed: int = 0
    tabu_tenure: int = 10

    def __post_init__(self):
        if self.restarts < 1 or self.max_flips < 1:
            raise ValueError("restarts and max_flips must be positive")
        if self.tabu_tenure < 0:
            raise ValueError("tabu_tenure must be non-negative")


def negativity_vector(signs: Sequence[int]) -> BitVector:
    return BitVector.from_list(1 if s == -1 else 0 for s in signs) if signs else BitVector(0)


def distance(hg: RawHypergram, signs: Sequence[int], witness: ClassicalAssignment) -> int:
    """Hamming distance between ``signs`` and the sign function of ``witness``."""
    return sum(s != t for s, t in zip(signs, classical_sign_function(witness, hg)))


def _check_signs(hg: RawHypergram, signs: Sequence[int]) -> int:
    if len(signs) != hg.context_count:
        raise ValueError(f"{len(signs)} signs for {hg.context_count} hyperedges")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    return negativity_vector(signs).bits


def _vertex_columns(hg: RawHypergram) -> list[int]:
    cols = [0] * hg.vertex_count
    for k, h in enumerate(hg.hyperedges):
        for v in h:
            cols[v] |= 1 << k
    return cols


def _words(x: int, width: int) -> np.ndarray:
    return np.array([(x >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(width)], dtype=np.uint64)


def coset_rank(hg: RawHypergram) -> int:
    return gf2.rank(gf2.BitMatrix(hg.vertex_count, hg.context_count, tuple(_vertex_columns(hg))))


def degree_exact(hg: RawHypergram, signs: Sequence[int], *, threshold: int = EXHAUSTIVE_THRESHOLD) -> DegreeResult:
    """Enumerate the ``2^rk C(H)`` codewords and keep the one closest to the signs.

    The basis is split into a low part, whose codewords are tabulated once,
    and a high part walked in Gray-code order; each Gray step XORs one basis
    word into the offset and re-scores the whole table with a popcount.
    """
    e = _check_signs(hg, signs)
    cols = _vertex_columns(hg)
    chosen = gf2.independent_indices(cols)
    r = len(chosen)
    if r > threshold:
        raise ThresholdExceeded(f"rank {r} exceeds the exhaustive threshold {threshold}; use the heuristic")
    width = max(1, -(-hg.context_count // 64))
    low, high = chosen[:_LOW_BITS], chosen[_LOW_BITS:]

    table = np.zeros((1 << len(low), width), dtype=np.uint64)
    for k, v in enumerate(low):
        size = 1 << k
        table[size : 2 * size] = table[:size] ^ _words(cols[v], width)
    high_words = [_words(cols[v], width) for v in high]

    offset = _words(e, width)
    gray = 0
    best = (hg.context_count + 1, 0, 0)
    for step in range(1 << len(high)):
        if step:
            flip = (step & -step).bit_length() - 1
            offset = offset ^ high_words[flip]
            gray ^= 1 << flip
        weights = np.bitwise_count(table ^ offset).sum(axis=1, dtype=np.int64)
        idx = int(np.argmin(weights))
        if weights[idx] < best[0]:
            best = (int(weights[idx]), gray, idx)
            if best[0] == 0:
                break
    value, g, idx = best
    x = 0
    for k, v in enumerate(low):
        if (idx >> k) & 1:
            x |= 1 << v
    for k, v in enumerate(high):
        if (g >> k) & 1:
            x |= 1 << v
    witness = ClassicalAssignment.from_bits(x, hg.vertex_count)
    return DegreeResult(value, True, witness, "Exhaustive")


def degree_bruteforce(hg: RawHypergram, signs: Sequence[int], *, limit: int = BRUTEFORCE_LIMIT) -> DegreeResult:
    """Score all ``2^|V|`` classical assignments directly."""
    _check_signs(hg, signs)
    size = hg.vertex_count
    if size > limit:
        raise TooLarge(f"{size} vertices exceed the brute-force limit {limit}")
    masks = [sum(1 << v for v in h) for h in hg.hyperedges]
    negative = [s == -1 for s in signs]
    best_value, best_x = hg.context_count + 1, 0
    total = 1 << size
    for start in range(0, total, _CHUNK):
        xs = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        dist = np.zeros(xs.shape, dtype=np.int64)
        for m, neg in zip(masks, negative):
            parity = np.bitwise_count(xs & np.uint64(m)) & 1
            dist += parity ^ np.uint8(neg)
        idx = int(np.argmin(dist))
        if dist[idx] < best_value:
            best_value, best_x = int(dist[idx]), start + idx
    return DegreeResult(best_value, True, ClassicalAssignment.from_bits(best_x, size), "BruteForce")


class _Incidence:
    """Sparse vertex/hyperedge incidence prepared for single-bit flips."""

    def __init__(self, hg: RawHypergram):
        self.size = hg.vertex_count
        self.members = [np.array(h, dtype=np.int64) for h in hg.hyperedges]
        edges_of: list[list[int]] = [[] for _ in range(self.size)]
        for k, h in enumerate(hg.hyperedges):
            for v in h:
                edges_of[v].append(k)
        self.edges_of = [np.array(es, dtype=np.int64) for es in edges_of]
        self.degree = np.array([len(es) for es in edges_of], dtype=np.int64)
        # Flipping v changes the unsatisfied count of every vertex on an edge through v.
        self.touched = []
        self.touched_edge = []
        for es in edges_of:
            verts = [self.members[k] for k in es]
            self.touched.append(np.concatenate(verts) if verts else np.zeros(0, dtype=np.int64))
            self.touched_edge.append(np.repeat(np.arange(len(es)), [len(m) for m in verts]))

    def state(self, x: np.ndarray, e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        unsat = e.copy()
        for k, m in enumerate(self.members):
            unsat[k] ^= np.bitwise_xor.reduce(x[m]) if len(m) else 0
        counts = np.zeros(self.size, dtype=np.int64)
        for v in range(self.size):
            counts[v] = unsat[self.edges_of[v]].sum()
        return unsat, counts

    def flip(self, v: int, x: np.ndarray, unsat: np.ndarray, counts: np.ndarray) -> int:
        """Flip ``x_v`` in place; returns the change of the objective."""
        es = self.edges_of[v]
        was = unsat[es]
        unsat[es] = was ^ 1
        step = np.where(was == 1, -1, 1)
        np.add.at(counts, self.touched[v], step[self.touched_edge[v]])
        x[v] ^= 1
        return int(step.sum())


def _tabu_run(inc: _Incidence, e: np.ndarray, params: HeuristicParams, rng: np.random.Generator, start: np.ndarray) -> tuple[int, np.ndarray]:
    x = start.copy()
    unsat, counts = inc.state(x, e)
    value = int(unsat.sum())
    best_value, best_x = value, x.copy()
    tabu_until = np.zeros(inc.size, dtype=np.int64)
    for it in range(params.max_flips):
        if best_value == 0:
            break
        gains = inc.degree - 2 * counts
        allowed = (tabu_until <= it) | (value + gains < best_value)
        if not allowed.any():
            allowed[:] = True
        masked = np.where(allowed, gains, np.iinfo(np.int64).max)
        candidates = np.flatnonzero(masked == masked.min())
        v = int(candidates[rng.integers(len(candidates))]) if len(candidates) > 1 else int(candidates[0])
        value += inc.flip(v, x, unsat, counts)
        tabu_until[v] = it + 1 + params.tabu_tenure
        if value < best_value:
            best_value, best_x = value, x.copy()
    return best_value, best_x


def _threads_default() -> int:
    env = os.environ.get("HYPERGRAM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def degree_heuristic(
    hg: RawHypergram,
    signs: Sequence[int],
    params: HeuristicParams | None = None,
    *,
    threads: int | None = None,
) -> DegreeResult:
    """Certified upper bound from random-restart tabu bit-flip search.

    Restart 0 starts from the all-+1 assignment, so the bound never exceeds
    the number of negative signs. Restarts are seeded from one
    ``SeedSequence`` and merged by (value, restart index), so the result does
    not depend on ``threads``.
    """
    params = params or HeuristicParams()
    e_bits = _check_signs(hg, signs)
    size = hg.vertex_count
    cols = _vertex_columns(hg)

    chosen = gf2.independent_indices(cols)
    coeffs = gf2.Span([cols[v] for v in chosen]).solve(e_bits)
    if coeffs is not None:
        x = sum(1 << chosen[k] for k in range(len(chosen)) if (coeffs >> k) & 1)
        return DegreeResult(0, True, ClassicalAssignment.from_bits(x, size), "Heuristic")

    inc = _Incidence(hg)
    e = np.array([(e_bits >> k) & 1 for k in range(hg.context_count)], dtype=np.int64)
    seeds = np.random.SeedSequence(params.seed).spawn(params.restarts)

    def run(k: int) -> tuple[int, int, np.ndarray]:
        rng = np.random.default_rng(seeds[k])
        start = np.zeros(size, dtype=np.int64) if k == 0 else rng.integers(0, 2, size=size)
        value, x = _tabu_run(inc, e, params, rng, start)
        return value, k, x

    threads = threads or _threads_default()
    if threads > 1 and params.restarts > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(params.restarts)))
    else:
        results = [run(k) for k in range(params.restarts)]
    value, _, x = min(results, key=lambda t: (t[0], t[1]))
    witness = ClassicalAssignment(tuple(-1 if b else 1 for b in x))
    if distance(hg, signs, witness) != value:
        raise AssertionError("heuristic witness does not reproduce its value")
    return DegreeResult(value, value == 0, witness, "Heuristic")


def degree(
    hg: RawHypergram,
    signs: Sequence[int],
    *,
    method: str = "auto",
    threshold: int = EXHAUSTIVE_THRESHOLD,
    params: HeuristicParams | None = None,
    threads: int | None = None,
) -> DegreeResult:
    """Dispatch on ``method``: ``exact``, ``bruteforce``, ``heuristic`` or
    ``auto`` (exact when the coset rank is within ``threshold``)."""
    if method == "exact":
        return degree_exact(hg, signs, threshold=threshold)
    if method == "bruteforce":
        return degree_bruteforce(hg, signs)
    if method == "heuristic":
        return degree_heuristic(hg, signs, params, threads=threads)
    if method == "auto":
        if coset_rank(hg) <= threshold:
            return degree_exact(hg, signs, threshold=threshold)
        return degree_heuristic(hg, signs, params, threads=threads)
    raise ValueError(f"unknown method {method!r}")


def noncontextual_bound(context_count: int, d: int) -> int:
    if not 0 <= d <= context_count:
        raise ValueError(f"degree {d} outside 0..{context_count}")
    return context_count - 2 * d


def is_contextual(hg: RawHypergram, signs: SignVector, *, threshold: int = EXHAUSTIVE_THRESHOLD) -> bool:
    return degree_exact(hg, signs, threshold=threshold).value >= 1
