"""Hypergrams ``(V, H, G)``: a context hypergraph plus an anticommutation graph.

Vertices are ``0..|V|-1`` in Python and ``1..|V|`` in every file format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import gf2
from .gf2 import BitMatrix

FORMAT_VERSION = 1

VIOLATION_CODES = (
    "EmptyHyperedge",
    "IsolatedVertex",
    "LoopEdge",
    "OutOfRange",
    "EdgeInsideHyperedge",
    "NotReducedZeroRow",
    "NotReducedDuplicateRow",
    "DuplicateHyperedge",
)


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def add(self, code: str, detail: str) -> None:
        assert code in VIOLATION_CODES, code
        self.violations.append(Violation(code, detail))

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "violations": [{"code": v.code, "detail": v.detail} for v in self.violations]}


class HypergramFormatError(ValueError):
    """Input is not structurally a hypergram document."""


class InvalidHypergram(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(f"{v.code}: {v.detail}" for v in report.violations))


def validate(
    vertices: int,
    hyperedges: Sequence[Iterable[int]],
    anticommutations: Iterable[Sequence[int]],
    *,
    one_based: bool = True,
) -> ValidationReport:
    """Check every clause of the hypergram definition and report all failures."""
    report = ValidationReport()
    off = 1 if one_based else 0

    def name(v: int) -> int:
        return v + 1

    if vertices < 1:
        report.add("OutOfRange", f"vertex count must be positive, got {vertices}")
        return report

    edges: list[frozenset[int]] = []
    seen: dict[frozenset[int], int] = {}
    for k, h in enumerate(hyperedges):
        h = list(h)
        members = set()
        for v in h:
            if not off <= v < vertices + off:
                report.add("OutOfRange", f"hyperedge {k + 1} contains vertex {v}")
            else:
                members.add(v - off)
        h0 = frozenset(members)
        if not h:
            report.add("EmptyHyperedge", f"hyperedge {k + 1} is empty")
        if h0 in seen and h0:
            report.add("DuplicateHyperedge", f"hyperedges {seen[h0] + 1} and {k + 1} are equal")
        seen.setdefault(h0, k)
        edges.append(h0)

    covered = set().union(*edges) if edges else set()
    for v in range(vertices):
        if v not in covered:
            report.add("IsolatedVertex", f"vertex {name(v)} lies in no hyperedge")

    adjacent = _adjacent_pairs(edges)
    neighbours = [0] * vertices
    for pair in anticommutations:
        pair = list(pair)
        if len(pair) != 2:
            report.add("OutOfRange", f"anticommutation {pair} is not a pair")
            continue
        i, j = pair
        if not (off <= i < vertices + off and off <= j < vertices + off):
            report.add("OutOfRange", f"anticommutation {{{i},{j}}} leaves the vertex range")
            continue
        if i == j:
            report.add("LoopEdge", f"anticommutation {{{i},{j}}} is a loop")
            continue
        i0, j0 = sorted((i - off, j - off))
        if (i0, j0) in adjacent:
            report.add("EdgeInsideHyperedge", f"anticommutation {{{name(i0)},{name(j0)}}} lies inside a hyperedge")
        neighbours[i0] |= 1 << j0
        neighbours[j0] |= 1 << i0

    first_with: dict[int, int] = {}
    for v, row in enumerate(neighbours):
        if not row:
            report.add("NotReducedZeroRow", f"vertex {name(v)} has no anticommutation")
        elif row in first_with:
            report.add(
                "NotReducedDuplicateRow",
                f"vertices {name(first_with[row])} and {name(v)} have the same anticommutations",
            )
        else:
            first_with[row] = v
    return report


def _adjacent_pairs(edges: Iterable[Iterable[int]]) -> set[tuple[int, int]]:
    pairs = set()
    for h in edges:
        pairs.update(combinations(sorted(h), 2))
    return pairs


@dataclass(frozen=True, init=False)
class RawHypergram:
    """Unvalidated ``(V, H, G)`` with 0-based vertices in range.

    Matrices and the assignability condition are defined on this level, so
    data failing the hypergram definition (e.g. a non-reduced G) can still be
    inspected.
    """

    vertex_count: int
    hyperedges: tuple[tuple[int, ...], ...]
    anticommutations: frozenset[tuple[int, int]]

    def __init__(self, vertex_count: int, hyperedges: Iterable[Iterable[int]], anticommutations: Iterable[Sequence[int]]):
        hs = tuple(tuple(sorted(set(h))) for h in hyperedges)
        pairs = frozenset(tuple(sorted(p)) for p in anticommutations)
        for v in (v for h in hs for v in h):
            if not 0 <= v < vertex_count:
                raise ValueError(f"vertex {v} outside 0..{vertex_count - 1}")
        for p in pairs:
            if len(p) != 2 or not all(0 <= v < vertex_count for v in p):
                raise ValueError(f"anticommutation {p} is not a pair of vertices")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "hyperedges", hs)
        object.__setattr__(self, "anticommutations", pairs)

    @classmethod
    def from_one_based(cls, vertices: int, hyperedges: Iterable[Iterable[int]], anticommutations: Iterable[Sequence[int]]):
        return cls(vertices, ([v - 1 for v in h] for h in hyperedges), ([v - 1 for v in p] for p in anticommutations))

    def validate(self) -> ValidationReport:
        return validate(self.vertex_count, self.hyperedges, self.anticommutations, one_based=False)

    @property
    def context_count(self) -> int:
        return len(self.hyperedges)

    def neighbour_rows(self) -> list[int]:
        rows = [0] * self.vertex_count
        for i, j in self.anticommutations:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return rows

    def to_json(self) -> dict[str, Any]:
        return {
            "version": FORMAT_VERSION,
            "vertices": self.vertex_count,
            "hyperedges": [[v + 1 for v in h] for h in self.hyperedges],
            "anticommutations": [[i + 1, j + 1] for i, j in sorted(self.anticommutations)],
        }


@dataclass(frozen=True, init=False)
class Hypergram(RawHypergram):
    """A validated hypergram. Fields are 0-based; hyperedge order is preserved
    and indexes sign vectors."""

    def __init__(self, vertex_count: int, hyperedges: Iterable[Iterable[int]], anticommutations: Iterable[Sequence[int]]):
        hs = [list(h) for h in hyperedges]
        pairs = [list(p) for p in anticommutations]
        report = validate(vertex_count, hs, pairs, one_based=False)
        if not report.ok:
            raise InvalidHypergram(report)
        super().__init__(vertex_count, hs, pairs)

    @classmethod
    def from_one_based(cls, vertices: int, hyperedges: Iterable[Iterable[int]], anticommutations: Iterable[Sequence[int]]) -> Hypergram:
        hyperedges = [list(h) for h in hyperedges]
        anticommutations = [list(p) for p in anticommutations]
        report = validate(vertices, hyperedges, anticommutations, one_based=True)
        if not report.ok:
            raise InvalidHypergram(report)
        return cls(vertices, ([v - 1 for v in h] for h in hyperedges), ([v - 1 for v in p] for p in anticommutations))

    @classmethod
    def first_family(cls, vertices: int, hyperedges: Iterable[Iterable[int]]) -> Hypergram:
        """The hypergram whose anticommutations are exactly the complement graph (0-based input)."""
        hs = [tuple(h) for h in hyperedges]
        return cls(vertices, hs, complement_pairs(vertices, hs))


def complement_pairs(vertices: int, hyperedges: Iterable[Iterable[int]]) -> set[tuple[int, int]]:
    adjacent = _adjacent_pairs(hyperedges)
    return {(i, j) for i in range(vertices) for j in range(i + 1, vertices) if (i, j) not in adjacent}


def complement_graph(hg: RawHypergram) -> set[tuple[int, int]]:
    """Pairs ``(i, j)``, ``i < j``, of distinct vertices sharing no hyperedge."""
    return complement_pairs(hg.vertex_count, hg.hyperedges)


def context_matrix(hg: RawHypergram) -> BitMatrix:
    rows = []
    for h in hg.hyperedges:
        r = 0
        for v in h:
            r |= 1 << v
        rows.append(r)
    return BitMatrix(len(rows), hg.vertex_count, tuple(rows))


def anticommutation_matrix(hg: RawHypergram) -> BitMatrix:
    return BitMatrix(hg.vertex_count, hg.vertex_count, tuple(hg.neighbour_rows()))


def assignability_defects(hg: RawHypergram) -> list[tuple[int, int]]:
    """Nonzero entries ``(hyperedge, vertex)`` of ``C(H) x A(G)``."""
    return gf2.mat_mul(context_matrix(hg), anticommutation_matrix(hg)).nonzero()


def is_assignable(hg: RawHypergram) -> bool:
    return gf2.mat_mul(context_matrix(hg), anticommutation_matrix(hg)).is_zero()


def kernel_capacity_ok(hg: RawHypergram) -> bool:
    """Necessary condition ``|V| <= 2^dim ker C(H) - 1`` for assignability."""
    nullity = hg.vertex_count - gf2.rank(context_matrix(hg))
    return hg.vertex_count <= (1 << nullity) - 1


def is_first_family(hg: RawHypergram) -> bool:
    return set(hg.anticommutations) == complement_graph(hg)


def hypergram_from_configuration(observables, contexts):
    """Read ``(V, H, G)`` and the labeling back from a quantum configuration.

    ``observables`` are phase-free Pauli words, vertex ``i`` carrying
    ``observables[i]``; ``contexts`` are 0-based index collections. Each context
    must consist of pairwise commuting observables multiplying to +-I.
    """
    from . import pauli
    from .assign import PauliAssignment

    obs = [o if isinstance(o, pauli.PauliObservable) else pauli.PauliObservable(o) for o in observables]
    if not obs:
        raise ValueError("a configuration needs at least one observable")
    n = pauli._check_widths(obs)
    words = [pauli.pack(o.letters) for o in obs]
    seen: dict[int, int] = {}
    for k, (o, w) in enumerate(zip(obs, words)):
        if w == 0:
            raise IdentityObservable(f"observable {k} is the identity")
        if w in seen:
            raise DuplicateObservable(f"observables {seen[w]} and {k} are both {o}")
        seen[w] = k
    contexts = [sorted(set(c)) for c in contexts]
    for c in contexts:
        pauli.product_sign([obs[i] for i in c])
    pairs = [
        (i, j)
        for i in range(len(obs))
        for j in range(i + 1, len(obs))
        if pauli.packed_form(words[i], words[j], n)
    ]
    hg = Hypergram(len(obs), contexts, pairs)
    return hg, PauliAssignment(n, tuple(obs))


class DuplicateObservable(ValueError):
    pass


class IdentityObservable(ValueError):
    pass


# -- file format ------------------------------------------------------------


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise HypergramFormatError(msg)


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def raw_from_json(doc: Any) -> tuple[int, list[list[int]], list[list[int]]]:
    """Shape-check a hypergram document; returns the 1-based raw triple."""
    _expect(isinstance(doc, dict), "hypergram document must be a JSON object")
    _expect(doc.get("version", FORMAT_VERSION) == FORMAT_VERSION, f"unsupported version {doc.get('version')!r}")
    for key in ("vertices", "hyperedges", "anticommutations"):
        _expect(key in doc, f"missing key {key!r}")
    _expect(_is_int(doc["vertices"]), "'vertices' must be an integer")
    _expect(isinstance(doc["hyperedges"], list), "'hyperedges' must be a list")
    _expect(isinstance(doc["anticommutations"], list), "'anticommutations' must be a list")
    for h in doc["hyperedges"]:
        _expect(isinstance(h, list) and all(_is_int(v) for v in h), f"bad hyperedge {h!r}")
    for p in doc["anticommutations"]:
        _expect(isinstance(p, list) and all(_is_int(v) for v in p), f"bad anticommutation {p!r}")
    return doc["vertices"], doc["hyperedges"], doc["anticommutations"]


def hypergram_from_json(doc: Any) -> Hypergram:
    return Hypergram.from_one_based(*raw_from_json(doc))


def raw_hypergram_from_json(doc: Any) -> RawHypergram:
    """Parse without validating the definition; indices must still be in range."""
    vertices, hyperedges, pairs = raw_from_json(doc)
    try:
        return RawHypergram.from_one_based(vertices, hyperedges, pairs)
    except ValueError as exc:
        raise HypergramFormatError(str(exc)) from exc


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise HypergramFormatError(f"{path}: malformed JSON ({exc})") from exc


def load_hypergram(path: str | Path) -> Hypergram:
    return hypergram_from_json(read_json(path))
