"""Diagrams, the five standard tableau families, statistics and classes.

Cells are ``(row, col)`` with row 1 on top and column 1 on the left, for
every diagram kind.  A tableau stores its entries in row-major order of the
cells of its diagram, which also gives the canonical ordering of tableaux.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Callable, Iterator, Optional, Sequence

from .comb_core import (
    Composition,
    DomainError,
    Permutation,
    as_composition,
    as_generalized,
    compatible,
    fmt_composition,
    fmt_generalized,
    fmt_permutation,
    inverse,
    standardize,
)

Cell = tuple[int, int]

FAMILIES = ("SRT", "SIT", "SET", "SPCT", "SPYCT")
DIAGRAM_OF = {"SRT": "rd", "SIT": "cd", "SET": "rcd", "SPCT": "cd", "SPYCT": "rcd"}


class UnsupportedFamily(DomainError):
    pass


# -- diagrams ---------------------------------------------------------------


@lru_cache(maxsize=None)
def diagram_cells(kind: str, shape) -> tuple[Cell, ...]:
    """Cells of ``cd``, ``rcd`` or ``rd`` in row-major order."""
    if kind == "cd":
        cells = [(r, c) for r, a in enumerate(shape, 1) for c in range(1, a + 1)]
    elif kind == "rcd":
        k = len(shape)
        cells = [
            (r, c) for r in range(1, k + 1) for c in range(1, shape[k - r] + 1)
        ]
    elif kind == "rd":
        cells = _ribbon_cells(as_generalized(shape))
    else:
        raise DomainError(f"unknown diagram kind {kind!r}")
    return tuple(sorted(cells))


def _ribbon_cells(gen) -> list[Cell]:
    # Build bottom-up with rows counted from the bottom, then flip.
    raw: list[Cell] = []
    row, col = 0, 0
    for block in gen:
        row += 1
        col += 1
        for k, part in enumerate(block):
            if k > 0:
                row += 1
            raw.extend((row, col + j) for j in range(part))
            col += part - 1
    top = row
    return [(top + 1 - r, c) for r, c in raw]


@lru_cache(maxsize=None)
def _cell_index(kind: str, shape) -> dict[Cell, int]:
    return {cell: k for k, cell in enumerate(diagram_cells(kind, shape))}


def normalize_shape(family: str, shape):
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}")
    if family == "SRT":
        return as_generalized(shape)
    return as_composition(shape)


def fmt_shape(shape) -> str:
    if shape and isinstance(shape[0], tuple):
        return fmt_generalized(shape)
    return fmt_composition(shape)


# -- tableaux ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Tableau:
    family: str
    shape: tuple
    entries: tuple[int, ...]
    sigma: Optional[Permutation] = field(default=None)

    @property
    def kind(self) -> str:
        return DIAGRAM_OF[self.family]

    @property
    def cells(self) -> tuple[Cell, ...]:
        return diagram_cells(self.kind, self.shape)

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def pos(self) -> dict[int, Cell]:
        return dict(zip(self.entries, self.cells))

    @cached_property
    def grid(self) -> dict[Cell, int]:
        return dict(zip(self.cells, self.entries))

    def at(self, r: int, c: int) -> Optional[int]:
        return self.grid.get((r, c))

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(v for (r, _), v in zip(self.cells, self.entries) if r == i)

    def column(self, j: int) -> tuple[int, ...]:
        """Entries of column ``j`` read top to bottom."""
        return tuple(v for (_, c), v in zip(self.cells, self.entries) if c == j)

    @cached_property
    def descents(self) -> frozenset[int]:
        return frozenset(descent_set(self))

    @property
    def nrows(self) -> int:
        return max((r for r, _ in self.cells), default=0)

    @property
    def ncols(self) -> int:
        return max((c for _, c in self.cells), default=0)

    def rows(self) -> list[list[int]]:
        """Rows top to bottom, present cells only."""
        return [list(self.row(i)) for i in range(1, self.nrows + 1)]

    def padded_rows(self) -> list[list[Optional[int]]]:
        return [
            [self.at(r, c) for c in range(1, self.ncols + 1)]
            for r in range(1, self.nrows + 1)
        ]

    def swap(self, i: int) -> "Tableau":
        """Exchange the entries ``i`` and ``i+1``."""
        ent = tuple(i + 1 if v == i else i if v == i + 1 else v for v in self.entries)
        return Tableau(self.family, self.shape, ent, self.sigma)

    def with_family(self, family: str, shape=None, sigma=None) -> "Tableau":
        return Tableau(family, self.shape if shape is None else shape, self.entries, sigma)

    def to_json(self) -> dict:
        out = {"shape": fmt_shape(self.shape), "family": self.family}
        if self.sigma is not None:
            out["sigma"] = fmt_permutation(self.sigma)
        out["rows"] = self.padded_rows()
        return out

    def __str__(self) -> str:
        return " / ".join(" ".join(str(v) for v in row) for row in self.rows())


def from_rows(family: str, shape, rows: Sequence[Sequence[Optional[int]]], sigma=None) -> Tableau:
    """Build a tableau from rows (top to bottom).

    Rows may either list only present entries in order, or be padded with
    ``None`` for absent cells.
    """
    shape = normalize_shape(family, shape)
    cells = diagram_cells(DIAGRAM_OF[family], shape)
    by_row: dict[int, list[int]] = {}
    for r, row in enumerate(rows, 1):
        by_row[r] = [v for v in row if v is not None]
    entries = []
    counters: dict[int, int] = {}
    for r, _ in cells:
        k = counters.get(r, 0)
        entries.append(by_row[r][k])
        counters[r] = k + 1
    if any(len(by_row.get(r, [])) != k for r, k in counters.items()):
        raise DomainError("rows do not match the diagram")
    return Tableau(family, shape, tuple(entries), None if sigma is None else tuple(sigma))


def from_columns(shape, columns: Sequence[Sequence[int]]) -> Tableau:
    """An SRT given by its columns (left to right, each top to bottom)."""
    shape = normalize_shape("SRT", shape)
    cells = diagram_cells("rd", shape)
    grid = {}
    for c, col in enumerate(columns, 1):
        rows = sorted(r for r, cc in cells if cc == c)
        if len(rows) != len(col):
            raise DomainError(f"column {c} has {len(rows)} cells")
        grid.update({(r, c): v for r, v in zip(rows, col)})
    return Tableau("SRT", shape, tuple(grid[cell] for cell in cells))


# -- validity predicates (direct transcriptions, used as oracles) -----------


def is_valid(t: Tableau) -> bool:
    if sorted(t.entries) != list(range(1, t.n + 1)):
        return False
    g = t.grid
    fam = t.family

    def row_ok(increasing: bool) -> bool:
        for (r, c), v in g.items():
            w = g.get((r, c + 1))
            if w is not None and (w < v if increasing else w > v):
                return False
        return True

    if fam == "SRT":
        return row_ok(True) and all(
            g[(r + 1, c)] > v for (r, c), v in g.items() if (r + 1, c) in g
        )
    if fam == "SIT":
        return row_ok(True) and all(
            g[(r + 1, 1)] > v for (r, c), v in g.items() if c == 1 and (r + 1, 1) in g
        )
    if fam == "SET":
        # Whole columns decrease, also across gaps in the reverse diagram.
        return row_ok(True) and all(
            w < v
            for (r, c), v in g.items()
            for (r2, c2), w in g.items()
            if c2 == c and r2 > r
        )
    if fam == "SPCT":
        if t.sigma is None or len(t.sigma) != len(t.shape):
            return False
        first = [g[(r, 1)] for r in range(1, len(t.shape) + 1)]
        if standardize(first) != tuple(t.sigma):
            return False
        return row_ok(False) and _triple_ok(g, len(t.shape), larger=True)
    if fam == "SPYCT":
        if t.sigma is None or len(t.sigma) != len(t.shape):
            return False
        first = [g[(r, 1)] for r in range(len(t.shape), 0, -1)]
        if standardize(first) != tuple(t.sigma):
            return False
        return row_ok(True) and _triple_ok(g, len(t.shape), larger=False)
    raise UnsupportedFamily(fam)


def _triple_ok(g: dict[Cell, int], nrows: int, larger: bool) -> bool:
    """Triple condition (``larger``) or its Young mirror (``not larger``).

    For rows ``i < j``: if ``T(i,k) > T(j,k+1)`` then ``(i,k+1)`` exists and
    ``T(i,k+1) > T(j,k+1)``; the mirror flips both inequalities.
    """
    for (j, k1), b in g.items():
        if k1 < 2:
            continue
        for i in range(1, j):
            a = g.get((i, k1 - 1))
            if a is None:
                continue
            if (a > b) if larger else (a < b):
                c = g.get((i, k1))
                if c is None or ((c < b) if larger else (c > b)):
                    return False
    return True


# -- enumeration ------------------------------------------------------------


def enumerate_family(family: str, shape, sigma: Optional[Sequence[int]] = None) -> list[Tableau]:
    """All tableaux of a family and shape, in canonical order."""
    return list(_enumerate(family, normalize_shape(family, shape),
                           None if sigma is None else tuple(sigma)))


@lru_cache(maxsize=None)
def _enumerate(family: str, shape, sigma) -> tuple[Tableau, ...]:
    if family in ("SPCT", "SPYCT"):
        if sigma is None or len(sigma) != len(shape):
            raise DomainError(f"{family} needs a type permutation of length {len(shape)}")
        if family == "SPCT" and not compatible(shape, sigma):
            return ()
        fills = _spct_fillings(shape, sigma) if family == "SPCT" else _spyct_fillings(shape, sigma)
    else:
        sigma = None
        fills = _linear_extensions(family, shape)
    kind = DIAGRAM_OF[family]
    out = sorted(Tableau(family, shape, ent, sigma) for ent in
                 (_grid_to_entries(kind, shape, g) for g in fills))
    return tuple(out)


def _grid_to_entries(kind, shape, grid: dict[Cell, int]) -> tuple[int, ...]:
    return tuple(grid[c] for c in diagram_cells(kind, shape))


def _predecessors(family: str, shape) -> dict[Cell, list[Cell]]:
    kind = DIAGRAM_OF[family]
    cells = set(diagram_cells(kind, shape))
    preds: dict[Cell, list[Cell]] = {}
    for r, c in cells:
        p = []
        if (r, c - 1) in cells:
            p.append((r, c - 1))
        if family == "SRT" and (r - 1, c) in cells:
            p.append((r - 1, c))
        if family == "SIT" and c == 1 and (r - 1, 1) in cells:
            p.append((r - 1, 1))
        if family == "SET":
            below = [rr for rr, cc in cells if cc == c and rr > r]
            if below:
                p.append((min(below), c))
        preds[(r, c)] = p
    return preds


def _linear_extensions(family: str, shape) -> Iterator[dict[Cell, int]]:
    preds = _predecessors(family, shape)
    order = sorted(preds)
    n = len(order)
    grid: dict[Cell, int] = {}

    def rec(v: int):
        if v > n:
            yield dict(grid)
            return
        for cell in order:
            if cell not in grid and all(p in grid for p in preds[cell]):
                grid[cell] = v
                yield from rec(v + 1)
                del grid[cell]

    yield from rec(1)


def _composition_fillings(lengths: Sequence[int], first_col_ok: Callable[[int, int], bool],
                          descending: bool) -> Iterator[dict[Cell, int]]:
    """Shared backtracking for SPCT (descending) and SPYCT (ascending).

    Each row is filled from the left.  Putting the next value in column
    ``c+1`` of row ``r`` violates the triple condition exactly when some row
    above has exactly ``c`` cells filled.  ``first_col_ok(r, f)`` checks the
    type constraint when the ``f``-th first-column cell is placed in row r.
    """
    k = len(lengths)
    n = sum(lengths)
    filled = [0] * k
    grid: dict[Cell, int] = {}
    state = {"f": 0}

    def rec(step: int):
        if step == n:
            yield dict(grid)
            return
        v = n - step if descending else step + 1
        for r in range(k):
            c = filled[r]
            if c == lengths[r]:
                continue
            if c == 0:
                if not first_col_ok(r, state["f"]):
                    continue
            elif any(filled[i] == c for i in range(r)):
                continue
            grid[(r + 1, c + 1)] = v
            filled[r] += 1
            if c == 0:
                state["f"] += 1
            yield from rec(step + 1)
            if c == 0:
                state["f"] -= 1
            filled[r] -= 1
            del grid[(r + 1, c + 1)]

    yield from rec(0)


def _spct_fillings(alpha, sigma):
    k = len(alpha)
    # Values arrive largest first, so the f-th first-column value has rank k - f.
    return _composition_fillings(alpha, lambda r, f: sigma[r] == k - f, descending=True)


def _spyct_fillings(alpha, sigma):
    k = len(alpha)
    lengths = [alpha[k - 1 - r] for r in range(k)]
    # Row r (0-based from top) is position k - r from the bottom.
    return _composition_fillings(lengths, lambda r, f: sigma[k - 1 - r] == f + 1, descending=False)


def naive_enumerate(family: str, shape, sigma=None) -> list[Tableau]:
    """Filter all ``n!`` fillings through :func:`is_valid` (small n only)."""
    shape = normalize_shape(family, shape)
    sigma = None if sigma is None else tuple(sigma)
    n = len(diagram_cells(DIAGRAM_OF[family], shape))
    out = []
    for ent in permutations(range(1, n + 1)):
        t = Tableau(family, shape, ent, sigma)
        if is_valid(t):
            out.append(t)
    return sorted(out)


# -- statistics -------------------------------------------------------------


def descent_set(t: Tableau) -> tuple[int, ...]:
    """Family-specific descents.

    For SIT and SET the descents are the ``i`` not fixed by ``pi_i``.
    """
    p = t.pos
    out = []
    for i in range(1, t.n):
        (ri, ci), (rj, cj) = p[i], p[i + 1]
        if t.family == "SPCT":
            d = cj >= ci
        elif t.family == "SPYCT":
            d = cj <= ci
        elif t.family == "SRT":
            d = cj > ci
        elif t.family == "SIT":
            d = ri < rj
        else:
            d = ci >= cj
        if d:
            out.append(i)
    return tuple(out)


def comp_of_descents(t: Tableau) -> Composition:
    from .comb_core import comp_of

    return comp_of(descent_set(t), t.n)


def attacking(t: Tableau, i: int) -> bool:
    """Whether ``i`` and ``i+1`` attack each other."""
    if t.family not in ("SPCT", "SPYCT"):
        raise UnsupportedFamily(f"attacking is not defined for {t.family}")
    if not 1 <= i <= t.n - 1:
        raise DomainError(f"entry {i} out of range")
    (ri, ci), (rj, cj) = t.pos[i], t.pos[i + 1]
    if ci == cj:
        return True
    if t.family == "SPCT":
        return cj == ci + 1 and rj > ri
    return cj == ci - 1 and rj < ri


# -- SPCT classes -----------------------------------------------------------


def std_column_word(t: Tableau) -> tuple[tuple[int, ...], ...]:
    return tuple(standardize(t.column(j)) for j in range(1, t.ncols + 1))


def fmt_st_word(word) -> str:
    return ".".join("".join(str(x) for x in col) for col in word)


def is_source(t: Tableau) -> bool:
    """Every non-descent ``i < n`` has ``i+1`` immediately to its left."""
    des = set(descent_set(t))
    for i in range(1, t.n):
        if i in des:
            continue
        (ri, ci), (rj, cj) = t.pos[i], t.pos[i + 1]
        if not (ri == rj and cj == ci - 1):
            return False
    return True


@dataclass(frozen=True)
class SPCTClass:
    alpha: Composition
    sigma: Permutation
    st_word: tuple
    members: tuple[Tableau, ...]
    source: Tableau
    canonical: bool

    @property
    def class_id(self) -> str:
        return fmt_st_word(self.st_word)


def class_partition(alpha, sigma) -> list[SPCTClass]:
    return list(_class_partition(as_composition(alpha), tuple(sigma)))


@lru_cache(maxsize=None)
def _class_partition(alpha, sigma) -> tuple[SPCTClass, ...]:
    fibers: dict[tuple, list[Tableau]] = {}
    for t in _enumerate("SPCT", alpha, sigma):
        fibers.setdefault(std_column_word(t), []).append(t)
    canon = canonical_source(alpha, sigma) if compatible(alpha, sigma) else None
    out = []
    for word in sorted(fibers):
        members = tuple(fibers[word])
        sources = [t for t in members if is_source(t)]
        if len(sources) != 1:
            raise AssertionError(f"class {word} has {len(sources)} sources")
        out.append(SPCTClass(alpha, sigma, word, members, sources[0], canon in members))
    return tuple(out)


def canonical_class(alpha, sigma) -> SPCTClass:
    for cls in class_partition(alpha, sigma):
        if cls.canonical:
            return cls
    raise DomainError(f"no canonical class for {alpha}, {sigma}")


def canonical_source(alpha, sigma) -> Tableau:
    """Fill row ``sigma^{-1}(i)`` with the next consecutive block of
    values, in decreasing order, for ``i = 1, 2, ...``."""
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    if len(alpha) != len(sigma) or not compatible(alpha, sigma):
        raise DomainError(f"incompatible pair {alpha}, {sigma}")
    inv = inverse(sigma)
    rows: dict[int, list[int]] = {}
    start = 1
    for i in range(1, len(alpha) + 1):
        r = inv[i - 1]
        size = alpha[r - 1]
        rows[r] = list(range(start + size - 1, start - 1, -1))
        start += size
    return from_rows("SPCT", alpha, [rows[r] for r in range(1, len(alpha) + 1)], sigma)


def superstandard(family: str, shape) -> Tableau:
    """The distinguished generator of the SRT, SIT and SET modules."""
    if family in ("SPCT", "SPYCT"):
        raise UnsupportedFamily("use canonical_source for SPCT")
    shape = normalize_shape(family, shape)
    cells = diagram_cells(DIAGRAM_OF[family], shape)
    if family == "SRT":
        order = sorted(cells, key=lambda rc: (rc[1], rc[0]))
    elif family == "SIT":
        order = sorted(cells)
    else:
        order = sorted(cells, key=lambda rc: (-rc[0], rc[1]))
    grid = {cell: v for v, cell in enumerate(order, 1)}
    return Tableau(family, shape, tuple(grid[c] for c in cells))


def upphi_tableau(t: Tableau) -> Tableau:
    """Complement entries; SPYCT of shape alpha <-> SPCT of shape alpha^r."""
    from .comb_core import conjugate_by_w0, reverse

    n = t.n
    ent = tuple(n + 1 - v for v in t.entries)
    if t.family == "SPYCT":
        return Tableau("SPCT", reverse(t.shape), ent, conjugate_by_w0(t.sigma))
    if t.family == "SPCT":
        return Tableau("SPYCT", reverse(t.shape), ent, conjugate_by_w0(t.sigma))
    raise UnsupportedFamily(t.family)
