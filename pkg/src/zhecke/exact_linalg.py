"""Exact rational matrices and subspaces.

Matrices are stored sparsely by column since every action matrix in this
package has at most a handful of nonzeros per column.  Subspaces keep an
echelon basis of primitive integer rows internally (fraction-free
elimination with content removal) and expose the reduced row echelon basis
over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .comb_core import DomainError

Number = int | Fraction


def _norm(x) -> Number:
    """Canonical exact value: int when integral, else a reduced Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def fmt_rational(x: Number) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable sparse exact matrix (column-major dictionaries)."""

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict[int, Number]]):
        if len(cols) != ncols:
            raise DomainError("column count mismatch")
        self.nrows = nrows
        self.ncols = ncols
        clean = []
        for col in cols:
            d = {}
            for i, v in col.items():
                if not 0 <= i < nrows:
                    raise DomainError(f"row index {i} out of range")
                v = _norm(v)
                if v:
                    d[i] = v
            clean.append(d)
        self._cols = tuple(clean)

    # construction
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols, [{} for _ in range(ncols)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [{j: 1} for j in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], ncols: Optional[int] = None) -> "RatMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[dict[int, Number]] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DomainError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = v
        return cls(nrows, ncols, cols)

    # access
    def column(self, j: int) -> dict[int, Number]:
        return self._cols[j]

    def columns(self) -> tuple[dict[int, Number], ...]:
        return self._cols

    def entry(self, i: int, j: int) -> Number:
        return self._cols[j].get(i, 0)

    def to_rows(self) -> list[list[Number]]:
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def triplets(self) -> list[tuple[int, int, Number]]:
        return sorted((i, j, v) for j, col in enumerate(self._cols) for i, v in col.items())

    def to_json(self) -> list[list[object]]:
        return [[i, j, fmt_rational(v)] for i, j, v in self.triplets()]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for col in self._cols for v in col.values())

    # arithmetic
    def apply(self, v: Sequence[Number]) -> list[Number]:
        if len(v) != self.ncols:
            raise DomainError("vector length mismatch")
        out: list[Number] = [0] * self.nrows
        for j, x in enumerate(v):
            if x:
                for i, a in self._cols[j].items():
                    out[i] += a * x
        return out

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        cols = []
        for col in other._cols:
            acc: dict[int, Number] = {}
            for k, b in col.items():
                for i, a in self._cols[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            cols.append(acc)
        return RatMatrix(self.nrows, other.ncols, cols)

    def _combine(self, other: "RatMatrix", sign: int) -> "RatMatrix":
        if self.shape != other.shape:
            raise DomainError("shape mismatch")
        cols = []
        for a, b in zip(self._cols, other._cols):
            d = dict(a)
            for i, v in b.items():
                d[i] = d.get(i, 0) + sign * v
            cols.append(d)
        return RatMatrix(self.nrows, self.ncols, cols)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c: Number) -> "RatMatrix":
        return RatMatrix(self.nrows, self.ncols,
                         [{i: c * v for i, v in col.items()} for col in self._cols])

    def transpose(self) -> "RatMatrix":
        cols: list[dict[int, Number]] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                cols[i][j] = v
        return RatMatrix(self.ncols, self.nrows, cols)

    def restrict_columns(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(self.nrows, len(idx), [self._cols[j] for j in idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: "RatMatrix") -> Optional[int]:
        """Index of the first column where two equal-shape matrices differ."""
        for j, (a, b) in enumerate(zip(self._cols, other._cols)):
            if a != b:
                return j
        return None

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self._cols))})"


# -- integer echelon machinery ----------------------------------------------


def _primitive(v: list[int]) -> list[int]:
    g = gcd(*v)
    if g == 0:
        return v
    first = next(x for x in v if x)
    if first < 0:
        g = -g
    if g != 1:
        v = [x // g for x in v]
    return v


def _integral(v: Iterable[Number]) -> list[int]:
    v = list(v)
    dens = [x.denominator for x in v if type(x) is not int]
    if not dens:
        return v
    den = lcm(*dens)
    return [int(x * den) for x in v]


class _Echelon:
    """Mutable fully reduced echelon form over primitive integer rows."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[int]] = {}

    def reduce(self, v: list[int]) -> list[int]:
        for p, b in self.rows.items():
            x = v[p]
            if x:
                bp = b[p]
                g = gcd(x, bp)
                m1, m2 = bp // g, x // g
                v = [m1 * a - m2 * c for a, c in zip(v, b)]
        return v

    def add(self, v: Sequence[Number]) -> bool:
        """Insert ``v``; returns True iff the span grew."""
        if len(v) != self.dim:
            raise DomainError("vector length mismatch")
        w = self.reduce(_integral(v))
        if not any(w):
            return False
        w = _primitive(w)
        p = next(k for k, x in enumerate(w) if x)
        wp = w[p]
        for q, b in list(self.rows.items()):
            x = b[p]
            if x:
                g = gcd(x, wp)
                m1, m2 = wp // g, x // g
                self.rows[q] = _primitive([m1 * a - m2 * c for a, c in zip(b, w)])
        self.rows[p] = w
        return True


class Subspace:
    """An immutable subspace of ``Q^ambient_dim``."""

    __slots__ = ("ambient_dim", "_rows", "_basis")

    def __init__(self, ambient_dim: int, ech: Optional[_Echelon] = None):
        self.ambient_dim = ambient_dim
        rows = {} if ech is None else ech.rows
        self._rows = {p: tuple(rows[p]) for p in sorted(rows)}
        self._basis = None

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[Number]]) -> "Subspace":
        ech = _Echelon(ambient_dim)
        for v in vectors:
            ech.add(v)
        return cls(ambient_dim, ech)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.coordinate(ambient_dim, range(ambient_dim))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given indices."""
        ech = _Echelon(ambient_dim)
        for k in sorted(set(indices)):
            row = [0] * ambient_dim
            row[k] = 1
            ech.rows[k] = row
        return cls(ambient_dim, ech)

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.ambient_dim)
        ech.rows = {p: list(r) for p, r in self._rows.items()}
        return ech

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._rows)

    @property
    def basis(self) -> tuple[tuple[Number, ...], ...]:
        """Reduced row echelon basis (pivot entries equal to 1)."""
        if self._basis is None:
            self._basis = tuple(
                tuple(_norm(Fraction(x, r[p])) if x else 0 for x in r) for p, r in self._rows.items()
            )
        return self._basis

    def integer_basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self._rows.values())

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DomainError("ambient dimension mismatch")

    def member(self, v: Sequence[Number]) -> bool:
        if len(v) != self.ambient_dim:
            raise DomainError("vector length mismatch")
        return not any(self._echelon().reduce(_integral(v)))

    def coordinates(self, v: Sequence[Number]) -> list[Number]:
        """Coordinates of a member with respect to :attr:`basis`."""
        if not self.member(v):
            raise DomainError("vector is not in the subspace")
        return [_norm(v[p]) for p in self._rows]

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        ech = self._echelon()
        return all(not any(ech.reduce(list(r))) for r in other._rows.values())

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        ech = self._echelon()
        for r in other._rows.values():
            ech.add(r)
        return Subspace(self.ambient_dim, ech)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize ``[s | s]`` and ``[t | 0]``."""
        self._check(other)
        d = self.ambient_dim
        ech = _Echelon(2 * d)
        for r in self._rows.values():
            ech.add(list(r) + list(r))
        for r in other._rows.values():
            ech.add(list(r) + [0] * d)
        return Subspace.span(d, (r[d:] for p, r in ech.rows.items() if p >= d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


# -- matrix-level operations ------------------------------------------------


def rref(m: RatMatrix) -> tuple[RatMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form, rank and (0-based) pivot columns."""
    row_space = Subspace.span(m.ncols, m.to_rows())
    basis = list(row_space.basis)
    rows = basis + [[0] * m.ncols for _ in range(m.nrows - len(basis))]
    return RatMatrix.from_rows(rows, m.ncols), row_space.dim, row_space.pivots


def rank(m: RatMatrix) -> int:
    return image(m).dim


def nullspace(m: RatMatrix) -> Subspace:
    row_space = Subspace.span(m.ncols, m.to_rows())
    piv = row_space.pivots
    basis = row_space.basis
    free = [j for j in range(m.ncols) if j not in set(piv)]
    vecs = []
    for f in free:
        v: list[Number] = [0] * m.ncols
        v[f] = 1
        for p, row in zip(piv, basis):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(m.ncols, vecs)


def image(m: RatMatrix) -> Subspace:
    ech = _Echelon(m.nrows)
    for col in m.columns():
        v = [0] * m.nrows
        for i, x in col.items():
            v[i] = x
        ech.add(v)
    return Subspace(m.nrows, ech)


def operator_closure(seed: Subspace, ops: Sequence[RatMatrix]) -> Subspace:
    """Smallest subspace containing ``seed`` and stable under every op."""
    d = seed.ambient_dim
    for op in ops:
        if op.shape != (d, d):
            raise DomainError("operator shape does not match the ambient space")
    ech = seed._echelon()
    queue = [list(r) for r in seed._rows.values()]
    while queue:
        v = queue.pop()
        for op in ops:
            w = op.apply(v)
            if not any(w):
                continue
            before = len(ech.rows)
            ech.add(w)
            if len(ech.rows) > before:
                queue.append(_integral(w))
    return Subspace(d, ech)


def matrix_of_vectors(vectors: Sequence[Sequence[Number]], nrows: int) -> RatMatrix:
    """Matrix whose columns are the given vectors."""
    return RatMatrix(nrows, len(vectors), [{i: x for i, x in enumerate(v) if x} for v in vectors])
