"""Exact dense matrix algebra over arbitrary-precision rationals.

Square matrices of `fractions.Fraction` entries are the concrete
noncommutative ring used everywhere else in the package: ring elements,
their conjugates, and block Vandermonde matrices all live here. There is
no floating point anywhere; equality is entry-wise and exact.

Scalars are plain ``Fraction`` values (canonical lowest terms, positive
denominator, zero is 0/1 — exactly the normalization this package needs,
so no wrapper type is introduced). Any other exact division ring could be
substituted by implementing the small ``RingElement`` protocol below;
this package ships the rational-matrix ring only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Protocol, Sequence, runtime_checkable

from .backend import kernels

Rational = Fraction


class DimensionError(ValueError):
    """Operands do not share the matrix dimension required by the operation."""


class SingularMatrixError(ArithmeticError):
    """Exact elimination found no pivot: the matrix has no inverse."""


@runtime_checkable
class RingElement(Protocol):
    """What the polynomial and pseudo-root layers need from a ring element."""

    def __add__(self, other): ...
    def __sub__(self, other): ...
    def __mul__(self, other): ...
    def __neg__(self): ...
    def inverse(self): ...
    def one(self): ...
    def zero(self): ...
    def is_zero(self) -> bool: ...
    def is_one(self) -> bool: ...


def parse_rational(text) -> Fraction:
    """Parse "p" or "p/q" (not necessarily in lowest terms) or an int."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"not a rational literal: {text!r}")


def format_rational(q: Fraction) -> str:
    """Render in lowest terms: "p" for integers, "p/q" otherwise."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RatMatrix:
    """Immutable square matrix of Fractions; the ring element of the package.

    All arithmetic is closed over one dimension; mixing dimensions raises
    ``DimensionError``. Instances hash and compare by exact entries, so
    they can key dictionaries and deduplicate polynomial coefficients.
    """

    __slots__ = ("dim", "_flat")

    def __init__(self, rows: Iterable[Iterable]):
        rows = [[parse_rational(x) for x in row] for row in rows]
        d = len(rows)
        if d == 0 or any(len(row) != d for row in rows):
            raise DimensionError("matrix must be square and non-empty")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "_flat", tuple(x for row in rows for x in row))

    @classmethod
    def _from_flat(cls, dim: int, flat) -> "RatMatrix":
        self = object.__new__(cls)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_flat", tuple(flat))
        return self

    @classmethod
    def identity(cls, dim: int) -> "RatMatrix":
        return cls._from_flat(dim, (Fraction(i == j) for i in range(dim) for j in range(dim)))

    @classmethod
    def zeros(cls, dim: int) -> "RatMatrix":
        return cls._from_flat(dim, (Fraction(0),) * (dim * dim))

    @classmethod
    def scalar(cls, dim: int, value) -> "RatMatrix":
        v = parse_rational(value)
        return cls._from_flat(dim, (v if i == j else Fraction(0) for i in range(dim) for j in range(dim)))

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    def rows(self) -> tuple:
        d = self.dim
        return tuple(self._flat[i * d:(i + 1) * d] for i in range(d))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._flat[i * self.dim + j]

    def _check_dim(self, other: "RatMatrix"):
        if not isinstance(other, RatMatrix):
            raise TypeError(f"expected RatMatrix, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check_dim(other)
        return RatMatrix._from_flat(self.dim, (x + y for x, y in zip(self._flat, other._flat)))

    def __sub__(self, other):
        self._check_dim(other)
        return RatMatrix._from_flat(self.dim, (x - y for x, y in zip(self._flat, other._flat)))

    def __neg__(self):
        return RatMatrix._from_flat(self.dim, (-x for x in self._flat))

    def __mul__(self, other):
        self._check_dim(other)
        d = self.dim
        return RatMatrix._from_flat(d, kernels.mul(list(self._flat), list(other._flat), d, d, d))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = RatMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def inverse(self) -> "RatMatrix":
        flat = kernels.inv(list(self._flat), self.dim)
        if flat is None:
            raise SingularMatrixError(f"{self.dim}x{self.dim} matrix is singular")
        return RatMatrix._from_flat(self.dim, flat)

    def one(self) -> "RatMatrix":
        return RatMatrix.identity(self.dim)

    def zero(self) -> "RatMatrix":
        return RatMatrix.zeros(self.dim)

    def is_zero(self) -> bool:
        return not any(self._flat)

    def is_one(self) -> bool:
        return self == RatMatrix.identity(self.dim)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.dim == other.dim and self._flat == other._flat

    def __hash__(self):
        return hash((self.dim, self._flat))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows())
        return f"RatMatrix[{body}]"

    def to_json(self) -> dict:
        return {"d": self.dim, "entries": [[format_rational(x) for x in row] for row in self.rows()]}

    @classmethod
    def from_json(cls, obj: dict) -> "RatMatrix":
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ValueError("matrix JSON must be an object with an 'entries' array")
        m = cls(obj["entries"])
        if "d" in obj and obj["d"] != m.dim:
            raise ValueError(f"declared dimension {obj['d']} does not match {m.dim} rows")
        return m


def block_assemble(blocks: Sequence[Sequence[RatMatrix]]) -> RatMatrix:
    """Assemble a square grid of equal-dimension blocks into one matrix.

    Block (r, c) lands at rows r*d..r*d+d-1, columns c*d..c*d+d-1.
    """
    grid = [list(row) for row in blocks]
    k = len(grid)
    if k == 0 or any(len(row) != k for row in grid):
        raise DimensionError("block grid must be square and non-empty")
    d = grid[0][0].dim
    for row in grid:
        for b in row:
            if b.dim != d:
                raise DimensionError(f"inhomogeneous block dimensions: {b.dim} vs {d}")
    flat = []
    for r in range(k):
        for i in range(d):
            for c in range(k):
                flat.extend(grid[r][c]._flat[i * d:(i + 1) * d])
    return RatMatrix._from_flat(k * d, flat)


def rect_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list:
    """Exact product of rectangular Fraction grids (kernel-backed)."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != n:
        raise DimensionError(f"inner dimensions differ: {n} vs {len(b)}")
    p = len(b[0]) if n else 0
    flat = kernels.mul(
        [x for row in a for x in row],
        [x for row in b for x in row],
        m, n, p,
    )
    return [flat[i * p:(i + 1) * p] for i in range(m)]
