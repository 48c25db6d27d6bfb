"""Shared generators for the test suite."""

from __future__ import annotations

import numpy as np

from hypergrams import geometry, pauli
from hypergrams.assign import PauliAssignment
from hypergrams.hypergram import InvalidHypergram, hypergram_from_configuration


def random_assignable(rng: np.random.Generator, n_range=(2, 4), contexts=(3, 9), max_vertices=None):
    """A random valid hypergram read back from a random configuration, with its labeling."""
    while True:
        n = int(rng.integers(*n_range))
        obs, ctx = geometry.random_configuration(rng, n, int(rng.integers(*contexts)))
        if max_vertices is not None and len(obs) > max_vertices:
            continue
        try:
            return hypergram_from_configuration(obs, ctx)
        except InvalidHypergram:
            continue


def transvect(alpha: PauliAssignment, rng: np.random.Generator, extra: int = 1, steps: int = 12) -> PauliAssignment:
    """Pad with identity qubits, then apply random symplectic transvections.

    ``v -> v + <v,u> u`` preserves the symplectic form and is linear and
    invertible, so the result is another Pauli assignment of the same
    hypergram, usually with different signs.
    """
    n = alpha.n + extra
    words = [pauli.pack(o.letters + "I" * extra) for o in alpha.labels]
    for _ in range(steps):
        u = int(rng.integers(1, 1 << (2 * n)))
        words = [w ^ u if pauli.packed_form(w, u, n) else w for w in words]
    return PauliAssignment(n, tuple(pauli.unpack(w, n) for w in words))


def tensor_word(labels_per_factor, v: int, pad: int = 0) -> str:
    return "".join(factor[v] for factor in labels_per_factor) + "I" * pad


def doily_tensor_power(total_qubits: int) -> list[str]:
    """Labels of a commutative doily configuration on ``total_qubits`` qubits.

    An even number of doily labelings (2- and 3-qubit) are tensored, so every
    pair of labels picks up an even number of anticommuting factors.
    """
    two = [o.letters for o in geometry.doily()[1].labels]
    three = list(geometry.TRANSFER_LABELS_3Q)
    best = None
    for k in range(2, total_qubits // 2 + 1, 2):
        for threes in range(k + 1):
            width = 2 * (k - threes) + 3 * threes
            if width <= total_qubits and (best is None or width > best[0]):
                best = (width, k - threes, threes)
    if best is None:
        raise ValueError("need at least 4 qubits")
    width, twos, threes = best
    factors = [two] * twos + [three] * threes
    return [tensor_word(factors, v, total_qubits - width) for v in range(15)]


_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(word: str) -> np.ndarray:
    m = np.ones((1, 1), dtype=complex)
    for ch in word:
        m = np.kron(m, _MATS[ch])
    return m


def phase_of(m: np.ndarray, word: str) -> int | None:
    """Exponent k with ``m = i^k * word``, or None if ``m`` is no such multiple."""
    p = pauli_matrix(word)
    for k in range(4):
        if np.allclose(m, (1j**k) * p):
            return k
    return None
