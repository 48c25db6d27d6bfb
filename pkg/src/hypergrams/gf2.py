"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit ``k`` of a packed row is entry ``k`` of the vector, so XOR of two ints is
vector addition and ``int.bit_count`` is Hamming weight. Python ints have no
width limit, which makes them the word array for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


def _mask(length: int) -> int:
    return (1 << length) - 1


@dataclass(frozen=True)
class BitVector:
    """Element of GF(2)^length. Bits at positions >= length are always zero."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_list(cls, entries: Iterable[int]) -> BitVector:
        bits = 0
        length = 0
        for k, e in enumerate(entries):
            if e & 1:
                bits |= 1 << k
            length = k + 1
        return cls(length, bits)

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, k: int) -> BitVector:
        return cls(length, 1 << k)

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.length:
            raise IndexError(k)
        return (self.bits >> k) & 1

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: BitVector) -> BitVector:
        _same_length(self, other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def __and__(self, other: BitVector) -> BitVector:
        _same_length(self, other)
        return BitVector(self.length, self.bits & other.bits)

    def dot(self, other: BitVector) -> int:
        _same_length(self, other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def concat(self, other: BitVector) -> BitVector:
        return BitVector(self.length + other.length, self.bits | (other.bits << self.length))

    def to_list(self) -> list[int]:
        return [(self.bits >> k) & 1 for k in range(self.length)]

    def support(self) -> list[int]:
        return [k for k in range(self.length) if (self.bits >> k) & 1]

    def __repr__(self) -> str:
        return f"BitVector({''.join(map(str, self.to_list()))})"


def _same_length(u: BitVector, v: BitVector) -> None:
    if u.length != v.length:
        raise DimensionError(f"length mismatch: {u.length} != {v.length}")


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; ``data[i]`` is row ``i`` packed as an int."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} rows, got {len(self.data)}")
        m = _mask(self.cols)
        for r in self.data:
            if r < 0 or r & ~m:
                raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> BitMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged rows")
            packed.append(BitVector.from_list(row).bits)
        return cls(len(rows), cols, tuple(packed))

    @classmethod
    def from_bitvectors(cls, vectors: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        """Stack vectors as rows."""
        if cols is None:
            if not vectors:
                raise DimensionError("cannot infer column count from no rows")
            cols = vectors[0].length
        for v in vectors:
            if v.length != cols:
                raise DimensionError("rows of different lengths")
        return cls(len(vectors), cols, tuple(v.bits for v in vectors))

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], rows: int | None = None) -> BitMatrix:
        if rows is None:
            if not columns:
                raise DimensionError("cannot infer row count from no columns")
            rows = columns[0].length
        return cls.from_bitvectors(columns, rows).transpose()

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, r in enumerate(self.data):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def columns(self) -> list[BitVector]:
        t = self.transpose()
        return [t.row(j) for j in range(t.rows)]

    def transpose(self) -> BitMatrix:
        cols = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.cols, self.rows, tuple(cols))

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self.transpose().data == self.data

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.data) for j in range(self.cols) if (r >> j) & 1]

    def apply(self, v: BitVector) -> BitVector:
        """Matrix-vector product ``self @ v``."""
        if v.length != self.cols:
            raise DimensionError(f"matrix has {self.cols} columns, vector length {v.length}")
        bits = 0
        for i, r in enumerate(self.data):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return mat_mul(self, other)

    def to_list(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.rows)]

    def __repr__(self) -> str:
        body = "; ".join("".join(map(str, self.row(i).to_list())) for i in range(self.rows))
        return f"BitMatrix({self.rows}x{self.cols}: {body})"


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Product over GF(2): each row of the result XORs the rows of ``b``
    selected by the set bits of the corresponding row of ``a``."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for r in a.data:
        acc = 0
        while r:
            low = r & -r
            acc ^= b.data[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def _echelon(rows: Iterable[int]) -> list[tuple[int, int]]:
    """Reduce rows to echelon form; returns ``(pivot_bit, row)`` pairs.

    Pivots are the lowest set bit of each reduced row, and every stored row is
    cleared at the pivots of the rows stored before it.
    """
    basis: list[tuple[int, int]] = []
    for r in rows:
        for pivot, b in basis:
            if r & pivot:
                r ^= b
        if r:
            basis.append((r & -r, r))
    return basis


def rank_of_rows(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def rank(a: BitMatrix) -> int:
    return rank_of_rows(a.data)


def independent_indices(vectors: Sequence[int]) -> list[int]:
    """Greedy smallest-index maximal independent subset of packed vectors."""
    chosen = []
    basis: list[tuple[int, int]] = []
    for idx, v in enumerate(vectors):
        r = v
        for pivot, b in basis:
            if r & pivot:
                r ^= b
        if r:
            basis.append((r & -r, r))
            chosen.append(idx)
    return chosen


def column_basis(a: BitMatrix) -> list[int]:
    """Indices of a basis of the column space, chosen greedily by lowest index."""
    return independent_indices(a.transpose().data)


def kernel_basis(a: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : a @ v = 0}`` read off the reduced row echelon form."""
    n = a.cols
    # Full reduction so that each pivot column appears in exactly one row.
    pivots: list[int] = []
    reduced: list[int] = []
    for r in a.data:
        for p, b in zip(pivots, reduced):
            if (r >> p) & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for k, b in enumerate(reduced):
            if (b >> p) & 1:
                reduced[k] = b ^ r
        pivots.append(p)
        reduced.append(r)
    pivot_set = set(pivots)
    out = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = 1 << free
        for p, b in zip(pivots, reduced):
            if (b >> free) & 1:
                v |= 1 << p
        out.append(BitVector(n, v))
    return out


class Span:
    """Echelon form of an independent family, reusable across many solves."""

    def __init__(self, basis: Sequence[int]):
        # Each echelon row carries the set of original vectors it is made of.
        self._rows: list[tuple[int, int, int]] = []
        for idx, v in enumerate(basis):
            combo = 1 << idx
            for pivot, b, c in self._rows:
                if v & pivot:
                    v ^= b
                    combo ^= c
            if not v:
                raise ValueError("basis vectors are linearly dependent")
            self._rows.append((v & -v, v, combo))

    def __len__(self) -> int:
        return len(self._rows)

    def solve(self, target: int) -> int | None:
        """Packed coefficients whose combination is ``target``, or None."""
        coeffs = 0
        for pivot, b, c in self._rows:
            if target & pivot:
                target ^= b
                coeffs ^= c
        return None if target else coeffs


def solve_packed(basis: Sequence[int], target: int) -> int | None:
    return Span(basis).solve(target)


def solve_in_span(basis_cols: Sequence[BitVector], t: BitVector) -> BitVector | None:
    """Unique coefficients expressing ``t`` over independent ``basis_cols``."""
    for b in basis_cols:
        if b.length != t.length:
            raise DimensionError("basis vectors and target differ in length")
    coeffs = solve_packed([b.bits for b in basis_cols], t.bits)
    if coeffs is None:
        return None
    return BitVector(len(basis_cols), coeffs)


def combine(basis_cols: Sequence[BitVector], coeffs: BitVector, length: int | None = None) -> BitVector:
    """XOR of the basis vectors selected by ``coeffs``; ``length`` is needed
    only when the basis is empty."""
    if coeffs.length != len(basis_cols):
        raise DimensionError("coefficient count differs from basis size")
    if length is None:
        length = basis_cols[0].length if basis_cols else 0
    acc = 0
    for k in coeffs.support():
        acc ^= basis_cols[k].bits
    return BitVector(length, acc)
