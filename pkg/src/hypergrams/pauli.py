"""Phase-free n-qubit Pauli observables and their symplectic encoding.

A word such as ``"XYZ"`` is encoded qubit by qubit as
``I -> (0,0)``, ``X -> (0,1)``, ``Y -> (1,1)``, ``Z -> (1,0)``. In the packed
integer form used internally, qubit ``j`` occupies bits ``2j`` (the first
coordinate, the Z component) and ``2j+1`` (the second, the X component).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .gf2 import BitVector

LETTERS = "IXYZ"

_ENCODING = {"I": (0, 0), "X": (0, 1), "Y": (1, 1), "Z": (1, 0)}
_DECODING = {v: k for k, v in _ENCODING.items()}

# Single-qubit products a*b = i^phase * c, read off the Pauli matrices.
_TABLE: dict[tuple[str, str], tuple[str, int]] = {}
for _a in LETTERS:
    _TABLE[("I", _a)] = (_a, 0)
    _TABLE[(_a, "I")] = (_a, 0)
    _TABLE[(_a, _a)] = ("I", 0)
for _a, _b, _c in ("XYZ", "YZX", "ZXY"):
    _TABLE[(_a, _b)] = (_c, 1)
    _TABLE[(_b, _a)] = (_c, 3)


class PauliError(ValueError):
    pass


class QubitCountMismatch(PauliError):
    pass


class NonCommutingError(PauliError):
    pass


class NonIdentityProduct(PauliError):
    pass


class ImaginaryPhase(PauliError):
    pass


@dataclass(frozen=True, order=True)
class PauliObservable:
    """Tensor word over ``I, X, Y, Z``; the text form is the word itself."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise PauliError("an observable acts on at least one qubit")
        bad = set(self.letters) - set(LETTERS)
        if bad:
            raise PauliError(f"invalid Pauli letters {sorted(bad)} in {self.letters!r}")

    @property
    def n(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    @classmethod
    def identity(cls, n: int) -> PauliObservable:
        return cls("I" * n)

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class PhasedPauli:
    obs: PauliObservable
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def phase(self) -> complex:
        return 1j**self.phase_exp


def _as_observable(o: PauliObservable | str) -> PauliObservable:
    return o if isinstance(o, PauliObservable) else PauliObservable(o)


# -- packed helpers ---------------------------------------------------------


def pack(letters: str) -> int:
    v = 0
    for j, ch in enumerate(letters):
        z, x = _ENCODING[ch]
        v |= (z << (2 * j)) | (x << (2 * j + 1))
    return v


def unpack(v: int, n: int) -> str:
    return "".join(_DECODING[((v >> (2 * j)) & 1, (v >> (2 * j + 1)) & 1)] for j in range(n))


def even_mask(n: int) -> int:
    return int("01" * n, 2) if n else 0


def split(v: int, n: int) -> tuple[int, int]:
    """Return the (Z bits, X bits) of a packed word, both aligned to even positions."""
    m = even_mask(n)
    return v & m, (v >> 1) & m


def packed_form(u: int, v: int, n: int) -> int:
    uz, ux = split(u, n)
    vz, vx = split(v, n)
    return ((uz & vx) ^ (ux & vz)).bit_count() & 1


def packed_product(u: int, v: int, n: int) -> tuple[int, int]:
    """Product of two phase-free words: returns ``(word, phase_exp)``.

    Writing a Hermitian Pauli as ``i^(x.z) X^x Z^z`` gives the exponent
    ``|x1&z1| + |x2&z2| + 2|z1&x2| - |x3&z3|``.
    """
    uz, ux = split(u, n)
    vz, vx = split(v, n)
    wz, wx = uz ^ vz, ux ^ vx
    e = (ux & uz).bit_count() + (vx & vz).bit_count() + 2 * (uz & vx).bit_count() - (wx & wz).bit_count()
    return u ^ v, e % 4


def packed_product_sign(words: Sequence[int], n: int) -> int:
    """Sign of a product of pairwise commuting words that multiplies to +-I."""
    acc, phase = 0, 0
    for w in words:
        acc, e = packed_product(acc, w, n)
        phase += e
    phase %= 4
    if acc:
        raise NonIdentityProduct(f"product is {unpack(acc, n)}, not the identity")
    if phase & 1:
        raise ImaginaryPhase("product carries an imaginary phase")
    return -1 if phase == 2 else 1


# -- public operations ------------------------------------------------------


def encode(o: PauliObservable | str) -> BitVector:
    o = _as_observable(o)
    return BitVector(2 * o.n, pack(o.letters))


def decode(v: BitVector) -> PauliObservable:
    if v.length < 2 or v.length % 2:
        raise PauliError(f"encoding must have even positive length, got {v.length}")
    return PauliObservable(unpack(v.bits, v.length // 2))


def symplectic_form(u: BitVector, v: BitVector) -> int:
    if u.length != v.length:
        raise PauliError(f"length mismatch: {u.length} != {v.length}")
    if u.length % 2:
        raise PauliError("symplectic form needs even-length vectors")
    return packed_form(u.bits, v.bits, u.length // 2)


def _check_widths(obs: Sequence[PauliObservable]) -> int:
    widths = {o.n for o in obs}
    if len(widths) > 1:
        raise QubitCountMismatch(f"observables act on different qubit counts {sorted(widths)}")
    return widths.pop()


def commutes(p: PauliObservable | str, q: PauliObservable | str) -> bool:
    p, q = _as_observable(p), _as_observable(q)
    n = _check_widths([p, q])
    return packed_form(pack(p.letters), pack(q.letters), n) == 0


def multiply(p: PhasedPauli, q: PhasedPauli) -> PhasedPauli:
    n = _check_widths([p.obs, q.obs])
    letters = []
    phase = p.phase_exp + q.phase_exp
    for a, b in zip(p.obs.letters, q.obs.letters):
        c, e = _TABLE[(a, b)]
        letters.append(c)
        phase += e
    assert len(letters) == n
    return PhasedPauli(PauliObservable("".join(letters)), phase)


def product(os: Sequence[PauliObservable | str]) -> PhasedPauli:
    """Left-to-right phase-tracked product of observables."""
    obs = [_as_observable(o) for o in os]
    if not obs:
        raise PauliError("empty product has no qubit count")
    _check_widths(obs)
    return reduce(multiply, (PhasedPauli(o) for o in obs))


def product_sign(os: Sequence[PauliObservable | str]) -> int:
    """The sign s with ``prod(os) = s * I``, for pairwise commuting inputs."""
    obs = [_as_observable(o) for o in os]
    if not obs:
        raise PauliError("empty context")
    n = _check_widths(obs)
    words = [pack(o.letters) for o in obs]
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if packed_form(words[i], words[j], n):
                raise NonCommutingError(f"{obs[i]} and {obs[j]} anticommute")
    return packed_product_sign(words, n)


def tensor(p: PauliObservable | str, q: PauliObservable | str) -> PauliObservable:
    return PauliObservable(_as_observable(p).letters + _as_observable(q).letters)
