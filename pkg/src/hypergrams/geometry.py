"""Symplectic polar spaces W_n and the fixed example hypergrams.

Fixture data is 1-based, like the file formats, and is
converted to 0-based vertices on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import comb
from typing import Any

import numpy as np

from . import pauli
from .assign import ClassicalAssignment, PauliAssignment, SignVector
from .hypergram import Hypergram, RawHypergram
from .pauli import PauliObservable


# -- W_n ----------------------------------------------------------------------


def wn_points(n: int) -> list[PauliObservable]:
    """The ``4^n - 1`` non-identity words, in lexicographic order of their encodings."""
    if n < 1:
        raise ValueError("n must be at least 1")
    # Per-qubit encodings in increasing order: I=00, X=01, Z=10, Y=11.
    return [PauliObservable("".join(w)) for w in product("IXZY", repeat=n)][1:]


@dataclass(frozen=True)
class LineConfiguration:
    """All lines ``{p, q, pq}`` of W_n as index triples into ``points``."""

    n: int
    points: tuple[PauliObservable, ...]
    lines: tuple[tuple[int, int, int], ...]
    signs: SignVector

    @property
    def negative_count(self) -> int:
        return sum(s == -1 for s in self.signs)

    @cached_property
    def hypergram(self) -> Hypergram:
        """Two points of W_n are collinear iff they commute, so G is the complement graph."""
        words = [pauli.pack(p.letters) for p in self.points]
        pairs = [
            (i, j)
            for i in range(len(words))
            for j in range(i + 1, len(words))
            if pauli.packed_form(words[i], words[j], self.n)
        ]
        return Hypergram(len(self.points), self.lines, pairs)

    @property
    def assignment(self) -> PauliAssignment:
        return PauliAssignment(self.n, self.points)

    def to_json(self) -> dict[str, Any]:
        doc = self.hypergram.to_json()
        doc["points"] = [p.letters for p in self.points]
        doc["signs"] = list(self.signs)
        return doc


def wn_lines(n: int) -> LineConfiguration:
    if n < 2:
        raise ValueError("W_n has lines only for n >= 2")
    points = wn_points(n)
    enc = np.array([pauli.pack(p.letters) for p in points], dtype=np.int64)
    index_of = np.full(1 << (2 * n), -1, dtype=np.int64)
    index_of[enc] = np.arange(len(points))
    m = np.int64(pauli.even_mask(n))
    zs, xs = enc & m, (enc >> 1) & m
    y_count = np.bitwise_count(zs & xs).astype(np.int64)

    triples = []
    signs = []
    for a in range(len(points)):
        zb, xb = zs[a + 1 :], xs[a + 1 :]
        commuting = (np.bitwise_count((zs[a] & xb) ^ (xs[a] & zb)) & 1) == 0
        b = np.flatnonzero(commuting) + a + 1
        c = index_of[enc[a] ^ enc[b]]
        keep = c > b
        b, c = b[keep], c[keep]
        if not len(b):
            continue
        # Phase of p*q = i^e r; with p, q, r commuting p*q*r = i^e I.
        e = (
            y_count[a]
            + y_count[b]
            + 2 * np.bitwise_count(zs[a] & xs[b]).astype(np.int64)
            - y_count[c]
        ) % 4
        triples.append(np.stack([np.full(len(b), a), b, c], axis=1))
        signs.append(np.where(e == 2, -1, 1))
    lines = np.concatenate(triples)
    sign_arr = np.concatenate(signs)
    return LineConfiguration(
        n,
        tuple(points),
        tuple(tuple(int(v) for v in t) for t in lines),
        tuple(int(s) for s in sign_arr),
    )


def count_lines(n: int) -> int:
    """Number of lines of W_n (totally isotropic 2-subspaces, k = 1)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    k = 1
    num, den = 1, 1
    for i in range(1, k + 2):
        num *= (2 ** (n - k - 1 + i) - 1) * (2 ** (n - i + 1) + 1)
        den *= 2**i - 1
    assert num % den == 0
    return num // den


def count_negative_lines(n: int) -> int:
    """Number of negative lines of W_n.

    Per qubit, an ordered line ``(p, q, pq)`` shows either ``III`` (c qubits),
    a cyclic ``XYZ`` permutation (a qubits, phase i), an anticyclic one
    (b qubits, phase -i) or one identity and two equal letters (9 ways). The
    line is negative iff ``a - b = 2 mod 4``; dividing by 6 unorders it.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    total = 0
    for c in range(n - 1):
        for a in range(n - c + 1):
            for b in range(n - c - a + 1):
                if (a - b) % 4 == 2:
                    total += 3 ** (2 * n - a - b - 2 * c) * comb(n, c) * comb(n - c, a) * comb(n - c - a, b)
    assert total % 6 == 0
    return total // 6


# -- fixtures ---------------------------------------------------------------

DOILY_LINES = (
    (1, 2, 3), (1, 8, 9), (1, 10, 11), (2, 4, 6), (2, 5, 7),
    (3, 12, 15), (3, 13, 14), (4, 8, 12), (4, 10, 14), (5, 8, 13),
    (5, 10, 15), (6, 9, 15), (6, 11, 13), (7, 9, 14), (7, 11, 12),
)

TWO_SPREAD_LINES = (
    (1, 2, 3), (1, 10, 11), (2, 4, 6), (3, 13, 14), (4, 8, 12),
    (5, 8, 13), (5, 10, 15), (6, 9, 15), (7, 9, 14), (11, 12, 7),
)

TWO_SPREAD_ANTICOMMUTATIONS = (
    (1, 4), (1, 5), (1, 6), (1, 7), (1, 12), (1, 13), (1, 14), (1, 15),
    (2, 8), (2, 9), (2, 10), (2, 11), (2, 12), (2, 13), (2, 14), (2, 15),
    (3, 4), (3, 5), (3, 6), (3, 7), (3, 8), (3, 9), (3, 10), (3, 11),
    (4, 5), (4, 7), (4, 9), (4, 11), (4, 13), (4, 15),
    (5, 6), (5, 9), (5, 11), (5, 12), (5, 14),
    (6, 7), (6, 8), (6, 10), (6, 12), (6, 14),
    (7, 8), (7, 10), (7, 13), (7, 15),
    (8, 10), (8, 11), (8, 14), (8, 15),
    (9, 10), (9, 11), (9, 12), (9, 13),
    (10, 12), (10, 13), (11, 14), (11, 15),
    (12, 13), (12, 14), (13, 15), (14, 15),
)

# Vertex i carries TWO_SPREAD_LABELS[i - 1]; this also labels the full doily.
TWO_SPREAD_LABELS = (
    "IX", "XI", "XX", "IZ", "IY", "XZ", "XY", "ZI",
    "ZX", "YI", "YX", "ZZ", "ZY", "YZ", "YY",
)

VARIANT_ANTICOMMUTATIONS = (
    (1, 5), (1, 7), (1, 8), (1, 9), (1, 12), (1, 15),
    (2, 5), (2, 8), (2, 10), (2, 11), (2, 12),
    (3, 7), (3, 9), (3, 10), (3, 11), (3, 15),
    (4, 5), (4, 7), (4, 10), (4, 11), (4, 13), (4, 14),
    (5, 11), (5, 12),
    (6, 7), (6, 8), (6, 12), (6, 13), (6, 14),
    (7, 8), (7, 10), (7, 13), (7, 15),
    (8, 9), (8, 11), (9, 11), (9, 12), (9, 13),
    (10, 12), (10, 14), (11, 14), (11, 15),
    (12, 13), (12, 14), (14, 15),
)

VARIANT_LABELS = (
    "IIX", "IXX", "IXI", "XIX", "IIZ", "XXI", "IZZ", "ZXZ",
    "ZZZ", "YYI", "YYX", "YXY", "ZXI", "ZII", "YYZ",
)

# A 3- and a 4-qubit labeling of the doily with classical values for the
# transfer pipeline: a2 = a12 * a1, where a12 solves their tensor product.
TRANSFER_LABELS_3Q = (
    "XYI", "YZZ", "ZXZ", "YYY", "IXY", "IXX", "YYX", "ZXY",
    "YZY", "YZX", "ZXX", "XZI", "ZII", "IXZ", "YYZ",
)
TRANSFER_A1 = (1, -1, -1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1)
TRANSFER_LABELS_4Q = (
    "XXIX", "XIZI", "IXZX", "ZIXI", "XZII", "YIYI", "IZZI", "IIXI",
    "XXXX", "YYZX", "ZZZI", "ZIII", "XZXI", "XYYX", "ZXZX",
)
TRANSFER_A12 = (-1, 1, 1, -1, -1, 1, -1, 1, 1, -1, 1, -1, -1, -1, -1)
TRANSFER_A2 = (-1, -1, -1, 1, -1, -1, 1, 1, -1, -1, -1, 1, -1, 1, -1)


def _zero_based(edges):
    return [[v - 1 for v in e] for e in edges]


def doily() -> tuple[Hypergram, PauliAssignment]:
    hg = Hypergram.first_family(15, _zero_based(DOILY_LINES))
    return hg, PauliAssignment(2, TWO_SPREAD_LABELS)


def two_spread() -> tuple[Hypergram, PauliAssignment]:
    hg = Hypergram(15, _zero_based(TWO_SPREAD_LINES), _zero_based(TWO_SPREAD_ANTICOMMUTATIONS))
    return hg, PauliAssignment(2, TWO_SPREAD_LABELS)


def two_spread_variant() -> tuple[Hypergram, PauliAssignment]:
    hg = Hypergram(15, _zero_based(TWO_SPREAD_LINES), _zero_based(VARIANT_ANTICOMMUTATIONS))
    return hg, PauliAssignment(3, VARIANT_LABELS)


def nonassignable_example() -> RawHypergram:
    """Five vertices, contexts {1,2,3} and {1,4,5}, one anticommutation {3,5}.

    Returned unvalidated: vertices 1, 2 and 4 anticommute with nothing, so G is
    not reduced, but the assignability condition is still defined and fails.
    """
    return RawHypergram.from_one_based(5, [[1, 2, 3], [1, 4, 5]], [[3, 5]])


@dataclass(frozen=True)
class TransferFixture:
    alpha_3q: PauliAssignment
    alpha_4q: PauliAssignment
    a1: ClassicalAssignment
    a12: ClassicalAssignment
    a2: ClassicalAssignment


def transfer_fixtures() -> TransferFixture:
    """Labelings of the doily by 3- and 4-qubit observables with the printed
    classical values: ``a1`` on the first, ``a2 = a12 * a1`` on the second."""
    return TransferFixture(
        PauliAssignment(3, TRANSFER_LABELS_3Q),
        PauliAssignment(4, TRANSFER_LABELS_4Q),
        ClassicalAssignment(TRANSFER_A1),
        ClassicalAssignment(TRANSFER_A12),
        ClassicalAssignment(TRANSFER_A2),
    )


def random_configuration(rng: np.random.Generator, n: int, contexts: int, four_prob: float = 0.2):
    """Random contexts of ``n``-qubit observables, each a commuting set whose
    encodings sum to zero. Returns ``(observables, contexts)``; the read-back
    hypergram may still fail reducedness, so callers retry."""
    size = 1 << (2 * n)
    found: dict[frozenset[int], None] = {}
    attempts = 0
    while len(found) < contexts and attempts < 50 * contexts:
        attempts += 1
        members = [int(rng.integers(1, size))]
        want = 3 if rng.random() >= four_prob else 4
        while len(members) < want - 1:
            q = int(rng.integers(1, size))
            if q not in members and all(pauli.packed_form(q, m, n) == 0 for m in members):
                members.append(q)
        last = 0
        for m in members:
            last ^= m
        if last == 0 or last in members:
            continue
        found[frozenset(members + [last])] = None
    vertices = sorted(set().union(*found))
    index = {w: k for k, w in enumerate(vertices)}
    observables = [PauliObservable(pauli.unpack(w, n)) for w in vertices]
    return observables, [sorted(index[w] for w in c) for c in found]
