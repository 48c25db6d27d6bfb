"""Pauli and classical assignments of hypergrams.

Holds the polynomial Pauli labeling built from the anticommutation matrix,
the classical assignment of a commutative configuration, sign functions and
the transfer of classical assignments between two Pauli assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from . import gf2, pauli
from .hypergram import Hypergram, is_assignable
from .pauli import PauliObservable

SignVector = tuple[int, ...]

_PSI_INV = {(0, 0): "I", (0, 1): "X", (1, 1): "Y", (1, 0): "Z"}


class NotAssignable(ValueError):
    pass


class OddRank(RuntimeError):
    pass


class InvalidContext(ValueError):
    pass


NonCommutingInput = pauli.NonCommutingError


class VertexSetMismatch(ValueError):
    pass


def _parse_values(mapping: Mapping[str, Any], what: str) -> dict[int, Any]:
    if not isinstance(mapping, Mapping):
        raise ValueError(f"{what} must be an object keyed by 1-based vertex")
    out = {}
    for k, v in mapping.items():
        try:
            out[int(k) - 1] = v
        except ValueError as exc:
            raise ValueError(f"bad vertex key {k!r} in {what}") from exc
    if sorted(out) != list(range(len(out))):
        raise ValueError(f"{what} must cover vertices 1..{len(out)} exactly")
    return out


@dataclass(frozen=True)
class PauliAssignment:
    """Labels of vertices ``0..|V|-1`` by ``n``-qubit phase-free observables."""

    n: int
    labels: tuple[PauliObservable, ...]

    def __post_init__(self):
        labels = tuple(o if isinstance(o, PauliObservable) else PauliObservable(o) for o in self.labels)
        object.__setattr__(self, "labels", labels)
        for o in labels:
            if o.n != self.n:
                raise pauli.QubitCountMismatch(f"label {o} does not act on {self.n} qubits")

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, v: int) -> PauliObservable:
        return self.labels[v]

    def words(self) -> list[int]:
        return [pauli.pack(o.letters) for o in self.labels]

    def to_json(self) -> dict[str, Any]:
        return {"version": 1, "n": self.n, "labels": {str(v + 1): o.letters for v, o in enumerate(self.labels)}}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> PauliAssignment:
        if not isinstance(doc, Mapping) or "labels" not in doc:
            raise ValueError("assignment document needs a 'labels' object")
        labels = _parse_values(doc["labels"], "labels")
        obs = [PauliObservable(labels[v]) for v in range(len(labels))]
        n = doc.get("n", obs[0].n if obs else 0)
        return cls(n, tuple(obs))


@dataclass(frozen=True)
class ClassicalAssignment:
    """Values +-1 for vertices ``0..|V|-1``."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(x) for x in self.values)
        if any(x not in (1, -1) for x in values):
            raise ValueError("classical values must be +1 or -1")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, size: int, value: int = 1) -> ClassicalAssignment:
        return cls((value,) * size)

    @classmethod
    def from_bits(cls, bits: int, size: int) -> ClassicalAssignment:
        """``a(v) = (-1)^x_v`` for the packed vector ``x``."""
        return cls(tuple(-1 if (bits >> v) & 1 else 1 for v in range(size)))

    def to_bits(self) -> int:
        return sum(1 << v for v, x in enumerate(self.values) if x == -1)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __mul__(self, other: ClassicalAssignment) -> ClassicalAssignment:
        if len(self) != len(other):
            raise VertexSetMismatch("assignments cover different vertex sets")
        return ClassicalAssignment(tuple(a * b for a, b in zip(self.values, other.values)))

    def to_json(self) -> dict[str, Any]:
        return {"values": {str(v + 1): x for v, x in enumerate(self.values)}}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> ClassicalAssignment:
        if not isinstance(doc, Mapping) or "values" not in doc:
            raise ValueError("classical assignment document needs a 'values' object")
        values = _parse_values(doc["values"], "values")
        return cls(tuple(values[v] for v in range(len(values))))


@dataclass(frozen=True)
class CommutativeConfiguration:
    """Pairwise commuting labeling, e.g. the tensor product of two Pauli
    assignments of one hypergram. Not a Pauli assignment of that hypergram."""

    n: int
    labels: tuple[PauliObservable, ...]


# -- labeling from the anticommutation matrix -------------------------------


def _overdiagonal_one(rows: Sequence[int]) -> tuple[int, int] | None:
    for i, r in enumerate(rows):
        above = r >> (i + 1)
        if above:
            return i, i + (above & -above).bit_length()
    return None


def find_overdiagonal_one(b: gf2.BitMatrix) -> tuple[int, int] | None:
    """Lexicographically smallest ``(i, j)`` with ``i < j`` and ``b[i, j] = 1``."""
    return _overdiagonal_one(b.data)


def _check_loop_state(B: list[int], G: list[int], labels: list[list[str]], n: int, expected_rank: int) -> None:
    size = len(B)
    words = [pauli.pack("".join(lab)) for lab in labels]
    for l in range(size):
        if (B[l] >> l) & 1:
            raise AssertionError(f"diagonal entry {l} became nonzero")
        for m in range(size):
            b = (B[l] >> m) & 1
            if b != (B[m] >> l) & 1:
                raise AssertionError(f"B lost symmetry at ({l}, {m})")
            if b != ((G[l] >> m) & 1) ^ pauli.packed_form(words[l], words[m], n):
                raise AssertionError(f"loop invariant broken at ({l}, {m}) after {n} iterations")
    if gf2.rank_of_rows(B) != expected_rank:
        raise AssertionError(f"rank of B is not {expected_rank} after {n} iterations")


def pauli_assignment_from_anticommutations(hg: Hypergram, *, checked: bool = False) -> tuple[PauliAssignment, int]:
    """Label every vertex with an ``rk(G)/2``-qubit observable.

    Repeatedly picks the first over-diagonal 1 of a working copy ``B`` of the
    anticommutation matrix, appends one qubit read from columns ``i`` and ``j``
    of ``B``, and clears those columns with a rank-2 symmetric update. With
    ``checked=True`` the loop invariants are asserted after every iteration,
    which costs O(|V|^2) per iteration.
    """
    if not is_assignable(hg):
        raise NotAssignable("context matrix times anticommutation matrix is nonzero")
    G = hg.neighbour_rows()
    r = gf2.rank_of_rows(G)
    if r % 2:
        raise OddRank(f"anticommutation matrix has odd rank {r}")
    B = list(G)
    labels: list[list[str]] = [[] for _ in range(hg.vertex_count)]
    n = 0
    while (pivot := _overdiagonal_one(B)) is not None:
        i, j = pivot
        n += 1
        y, z = B[i], B[j]  # columns i and j, by symmetry
        for k in range(len(B)):
            labels[k].append(_PSI_INV[((B[k] >> i) & 1, (B[k] >> j) & 1)])
        for l in range(len(B)):
            if (y >> l) & 1:
                B[l] ^= z
            if (z >> l) & 1:
                B[l] ^= y
        if checked:
            _check_loop_state(B, G, labels, n, r - 2 * n)
    if 2 * n != r:
        raise OddRank(f"{n} iterations for an anticommutation matrix of rank {r}")
    return PauliAssignment(n, tuple(PauliObservable("".join(lab)) for lab in labels)), n


# -- signs ------------------------------------------------------------------


def sign_function(alpha: PauliAssignment, hg: Hypergram) -> SignVector:
    """Per-hyperedge sign s with ``prod(alpha(h)) = s * I``."""
    words = alpha.words()
    return tuple(pauli.packed_product_sign([words[v] for v in h], alpha.n) for h in hg.hyperedges)


def classical_sign_function(a: ClassicalAssignment, hg: Hypergram) -> SignVector:
    if len(a) != hg.vertex_count:
        raise VertexSetMismatch(f"classical assignment has {len(a)} values for {hg.vertex_count} vertices")
    out = []
    for h in hg.hyperedges:
        s = 1
        for v in h:
            s *= a[v]
        out.append(s)
    return tuple(out)


def assignment_defects(alpha: PauliAssignment, hg: Hypergram) -> list[str]:
    """Every reason ``alpha`` fails to be a Pauli assignment of ``hg``."""
    problems = []
    if len(alpha) != hg.vertex_count:
        return [f"{len(alpha)} labels for {hg.vertex_count} vertices"]
    words = alpha.words()
    seen: dict[int, int] = {}
    for v, w in enumerate(words):
        if w == 0:
            problems.append(f"vertex {v + 1} is labeled by the identity")
        elif w in seen:
            problems.append(f"vertices {seen[w] + 1} and {v + 1} share label {alpha[v]}")
        seen.setdefault(w, v)
    G = hg.anticommutations
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if pauli.packed_form(words[i], words[j], alpha.n) != ((i, j) in G):
                problems.append(f"commutation of vertices {i + 1} and {j + 1} disagrees with G")
    for k, h in enumerate(hg.hyperedges):
        acc = 0
        for v in h:
            acc ^= words[v]
        if acc:
            problems.append(f"hyperedge {k + 1} does not multiply to +-I")
    return problems


def verify_assignment(alpha: PauliAssignment, hg: Hypergram) -> bool:
    return not assignment_defects(alpha, hg)


def unsatisfied_set(alpha: PauliAssignment, a: ClassicalAssignment, hg: Hypergram) -> set[int]:
    """Indices of hyperedges where the quantum and classical signs differ."""
    q = sign_function(alpha, hg)
    c = classical_sign_function(a, hg)
    return {k for k, (s, t) in enumerate(zip(q, c)) if s != t}


# -- commutative configurations ---------------------------------------------


def _commuting_words(observables: Sequence[PauliObservable | str]) -> tuple[list[int], int]:
    obs = [o if isinstance(o, PauliObservable) else PauliObservable(o) for o in observables]
    if not obs:
        return [], 0
    n = pauli._check_widths(obs)
    words = [pauli.pack(o.letters) for o in obs]
    zs, xs = zip(*(pauli.split(w, n) for w in words))
    for i in range(len(words)):
        zi, xi = zs[i], xs[i]
        for j in range(i + 1, len(words)):
            if ((zi & xs[j]) ^ (xi & zs[j])).bit_count() & 1:
                raise NonCommutingInput(f"{obs[i]} and {obs[j]} anticommute")
    return words, n


def basis(observables: Sequence[PauliObservable | str]) -> list[int]:
    """Indices of a maximal independent subset of commuting observables."""
    words, _ = _commuting_words(observables)
    if any(w == 0 for w in words):
        raise ValueError("the identity cannot belong to a basis")
    return gf2.independent_indices(words)


def classical_assignment_commutative(
    observables: Sequence[PauliObservable | str],
    contexts: Iterable[Iterable[int]] = (),
) -> ClassicalAssignment:
    """Classical values satisfying every sign constraint of a commutative configuration.

    Each observable ``t`` is decomposed over a basis ``B`` as ``t = a(t) * prod(A_t)``
    and gets the sign ``a(t)``; basis members get +1. ``contexts`` (0-based
    index collections) are only checked for being genuine contexts.
    """
    words, n = _commuting_words(observables)
    for c in contexts:
        c = list(c)
        try:
            pauli.packed_product_sign([words[i] for i in c], n)
        except (pauli.NonIdentityProduct, pauli.ImaginaryPhase) as exc:
            raise InvalidContext(f"context {c}: {exc}") from exc
    chosen = gf2.independent_indices(words)
    basis_words = [words[i] for i in chosen]
    span = gf2.Span(basis_words)
    values = []
    for t in words:
        coeffs = span.solve(t)
        assert coeffs is not None
        acc, phase = 0, 0
        while coeffs:
            low = coeffs & -coeffs
            acc, e = pauli.packed_product(acc, basis_words[low.bit_length() - 1], n)
            phase += e
            coeffs ^= low
        assert acc == t and phase % 2 == 0
        values.append(1 if phase % 4 == 0 else -1)
    return ClassicalAssignment(tuple(values))


def tensor_assignment(alpha1: PauliAssignment, alpha2: PauliAssignment) -> CommutativeConfiguration:
    if len(alpha1) != len(alpha2):
        raise VertexSetMismatch(f"assignments label {len(alpha1)} and {len(alpha2)} vertices")
    labels = tuple(pauli.tensor(p, q) for p, q in zip(alpha1.labels, alpha2.labels))
    return CommutativeConfiguration(alpha1.n + alpha2.n, labels)


def transfer_classical(
    alpha1: PauliAssignment,
    alpha2: PauliAssignment,
    a1: ClassicalAssignment,
    hg: Hypergram,
) -> ClassicalAssignment:
    """Classical assignment leaving the same hyperedges unsatisfied for ``alpha2``
    as ``a1`` leaves for ``alpha1``."""
    if len(a1) != hg.vertex_count:
        raise VertexSetMismatch("classical assignment does not cover the hypergram")
    product = tensor_assignment(alpha1, alpha2)
    a12 = classical_assignment_commutative(product.labels, hg.hyperedges)
    return a12 * a1
