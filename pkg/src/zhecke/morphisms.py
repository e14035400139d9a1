"""Explicit module maps between the tableau modules, with certification.

Every map here sends basis tableaux to basis tableaux or to zero, so it is
materialized as a 0/1 matrix over the canonical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .comb_core import (
    DomainError,
    GeneralizedComposition,
    as_composition,
    as_generalized,
    bracket,
    complement,
    conjugate_by_w0,
    inverse,
    length,
    place_perm_act,
    reduced_word,
    reverse,
    sort_to_partition,
    sorting_interval,
    times_simple,
)
from .exact_linalg import RatMatrix, Subspace, image, nullspace
from .hecke_modules import (
    ModuleRep,
    build_module,
    canonical_hat_summand,
    canonical_summand,
    class_module,
    phi_twist,
)
from .tableaux import (
    SPCTClass,
    Tableau,
    diagram_cells,
    enumerate_family,
    from_rows,
    is_source,
    is_valid,
    upphi_tableau,
)


@dataclass(frozen=True, eq=False)
class LinearHom:
    domain: ModuleRep
    codomain: ModuleRep
    matrix: RatMatrix
    name: str = ""

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise DomainError("matrix shape does not match domain and codomain")

    def image_of(self, b) -> Optional[object]:
        """Image of a domain basis element, assuming a basis-to-basis map."""
        col = self.matrix.column(self.domain.index[b])
        if not col:
            return None
        (k, _), = col.items()
        return self.codomain.basis[k]


@dataclass
class CheckReport:
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""


def basis_map(domain: ModuleRep, codomain: ModuleRep, f: Callable[[object], Optional[object]],
              name: str = "") -> LinearHom:
    """Linear extension of a partial map between bases."""
    cols = []
    for b in domain.basis:
        img = f(b)
        if img is None:
            cols.append({})
        else:
            if img not in codomain.index:
                raise DomainError(f"{name}: image {img} is not a codomain basis element")
            cols.append({codomain.index[img]: 1})
    return LinearHom(domain, codomain, RatMatrix(codomain.dim, domain.dim, cols), name)


def hom_check(f: LinearHom) -> CheckReport:
    """Exact check of ``F pi_i = pi_i F``; witness is ``(i, basis index)``."""
    if f.domain.n != f.codomain.n:
        return CheckReport(False, None, "rank mismatch")
    from .hecke_modules import to_pi_style

    dom, cod = to_pi_style(f.domain), to_pi_style(f.codomain)
    for i, (a, b) in enumerate(zip(dom.gens, cod.gens), 1):
        left, right = f.matrix @ a, b @ f.matrix
        if left != right:
            return CheckReport(False, (i, left.first_difference(right)))
    return CheckReport(True)


def surjectivity_check(f: LinearHom) -> CheckReport:
    r = image(f.matrix).dim
    return CheckReport(r == f.codomain.dim, None, f"rank {r} of {f.codomain.dim}")


def kernel(f: LinearHom) -> Subspace:
    return nullspace(f.matrix)


def chain_compose(maps: Sequence[LinearHom]) -> LinearHom:
    """Composite of ``maps[0]`` then ``maps[1]`` and so on."""
    if not maps:
        raise DomainError("empty chain")
    acc = maps[0]
    for g in maps[1:]:
        if g.domain.basis != acc.codomain.basis or g.domain.n != acc.codomain.n:
            raise DomainError(f"cannot compose {acc.name} with {g.name}")
        acc = LinearHom(acc.domain, g.codomain, g.matrix @ acc.matrix, f"{g.name}.{acc.name}")
    return acc


def identity_hom(m: ModuleRep) -> LinearHom:
    return LinearHom(m, m, RatMatrix.identity(m.dim), "id")


def coordinate_span(m: ModuleRep, tabs) -> Subspace:
    return Subspace.coordinate(m.dim, (m.index[t] for t in tabs))


# -- P_bar -> V -> X ----------------------------------------------------------


def _columns_top_down(t: Tableau) -> list[tuple[int, ...]]:
    return [t.column(j) for j in range(1, t.ncols + 1)]


def phi_image(alpha, t: Tableau) -> Optional[Tableau]:
    """Row ``i`` of the filling is column ``i`` of the ribbon tableau."""
    cols = _columns_top_down(t)
    cand = from_rows("SIT", alpha, cols)
    return cand if is_valid(cand) else None


def phi_map(alpha) -> LinearHom:
    alpha = as_composition(alpha)
    dom = build_module("P_bar", complement(alpha))
    cod = build_module("V", alpha)
    return basis_map(dom, cod, lambda t: phi_image(alpha, t), "Phi")


def phi_section(sit: Tableau) -> Tableau:
    """The ribbon tableau whose i-th column is the i-th row of ``sit``."""
    from .tableaux import from_columns

    return from_columns(complement(sit.shape), sit.rows())


def phi_kernel_tableaux(alpha) -> list[Tableau]:
    """Ribbon tableaux with ``T^1_p > T^1_{p+1}`` for some p."""
    out = []
    for t in enumerate_family("SRT", complement(as_composition(alpha))):
        cols = _columns_top_down(t)
        if any(cols[p][0] > cols[p + 1][0] for p in range(len(cols) - 1)):
            out.append(t)
    return out


def gamma_image(t: Tableau) -> Optional[Tableau]:
    cand = from_rows("SET", t.shape, list(reversed(t.rows())))
    return cand if is_valid(cand) else None


def gamma_map(alpha) -> LinearHom:
    alpha = as_composition(alpha)
    return basis_map(build_module("V", alpha), build_module("X", alpha), gamma_image, "Gamma")


def gamma_phi_kernel_tableaux(alpha, adjacent_only: bool = False) -> list[Tableau]:
    """Ribbon tableaux killed by Gamma o Phi.

    T is killed when some q-th entry of column p exceeds the q-th entry of
    the next column that is tall enough to have one.  With
    ``adjacent_only`` only columns p and p+1 are compared; that set is
    strictly smaller whenever a short column sits between two taller ones.
    """
    out = []
    for t in enumerate_family("SRT", complement(as_composition(alpha))):
        cols = _columns_top_down(t)
        if adjacent_only:
            bad = any(
                a > b
                for p in range(len(cols) - 1)
                for a, b in zip(cols[p], cols[p + 1])
            )
        else:
            bad = any(
                a > nxt[q]
                for p, col in enumerate(cols)
                for q, a in enumerate(col)
                for nxt in [next((c for c in cols[p + 1:] if len(c) > q), None)]
                if nxt is not None
            )
        if bad:
            out.append(t)
    return out


# -- X -> phi[S] ---------------------------------------------------------------


def _check_interval(alpha, sigma):
    if tuple(sigma) not in sorting_interval(alpha).members:
        raise DomainError(f"{tuple(sigma)} does not sort {alpha}")


def upsilon_image(sigma, t: Tableau) -> Optional[Tableau]:
    """``tau_{i,j} = n + 1 - T_{sigma(i), j}``."""
    n = t.n
    rows = t.rows()
    lam = sort_to_partition(t.shape)
    new_rows = [[n + 1 - v for v in rows[s - 1]] for s in sigma]
    cand = from_rows("SPCT", lam, new_rows, sigma)
    return cand if is_valid(cand) else None


def upsilon_map(alpha, sigma) -> LinearHom:
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    _check_interval(alpha, sigma)
    lam = sort_to_partition(alpha)
    dom = build_module("X", alpha)
    cod = phi_twist(canonical_summand(lam, sigma))

    def f(t):
        img = upsilon_image(sigma, t)
        if img is not None and img not in cod.index:
            raise AssertionError(f"image {img} is an SPCT outside the canonical class")
        return img

    return basis_map(dom, cod, f, "Upsilon")


def xi_kernel(alpha, sigma) -> list[Tableau]:
    """SETs carrying a triple ``(i, j, k)`` with ``i < j``,
    ``sigma^{-1}(i) < sigma^{-1}(j)``, ``T_{i,k} < T_{j,k+1}`` and
    ``T_{i,k+1} > T_{j,k+1}``."""
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    _check_interval(alpha, sigma)
    inv = inverse(sigma)
    out = []
    for t in enumerate_family("SET", alpha):
        rows = t.rows()
        hit = False
        for i in range(1, len(rows) + 1):
            for j in range(i + 1, len(rows) + 1):
                if inv[i - 1] >= inv[j - 1]:
                    continue
                ri, rj = rows[i - 1], rows[j - 1]
                for k in range(1, len(rj)):
                    if k + 1 > len(ri):
                        break
                    if ri[k - 1] < rj[k] and ri[k] > rj[k]:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                break
        if hit:
            out.append(t)
    return out


# -- psi steps --------------------------------------------------------------


def psi_bijection(t: Tableau, i: int) -> Tableau:
    """The bijection attached to a right descent ``i`` of the type."""
    sigma = t.sigma
    if not 1 <= i < len(sigma) or sigma[i - 1] < sigma[i]:
        raise DomainError(f"need sigma(i) > sigma(i+1) at i = {i}")
    rows = [list(r) for r in t.rows()]
    top, bot = rows[i - 1], rows[i]
    new_sigma = times_simple(sigma, i)
    j0 = None
    for j in range(1, len(bot) + 1):
        if j + 1 > len(top):
            break
        if bot[j - 1] > top[j]:
            j0 = j
            break
    if j0 is None:
        rows[i - 1], rows[i] = bot, top
        shape = tuple(len(r) for r in rows)
    else:
        for j in range(j0):
            top[j], bot[j] = bot[j], top[j]
        shape = t.shape
    return from_rows("SPCT", shape, rows, new_sigma)


def psi_step_C(alpha, sigma, i: int) -> LinearHom:
    """Map between canonical summands for one step down in length."""
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    if not 1 <= i < len(sigma) or length(times_simple(sigma, i)) >= length(sigma):
        raise DomainError(f"need l(sigma s_i) < l(sigma) at i = {i}")
    new_alpha = place_perm_act(alpha, _simple(len(alpha), i))
    new_sigma = times_simple(sigma, i)
    dom = canonical_summand(alpha, sigma)
    cod = canonical_summand(new_alpha, new_sigma)

    def f(t):
        img = psi_bijection(t, i)
        if img.shape != new_alpha:
            return None
        return img if img in cod.index else None

    return basis_map(dom, cod, f, f"Psi{i}")


def _simple(k, i):
    from .comb_core import simple_transposition

    return simple_transposition(k, i)


def psi_chain(alpha, sigma, word: Optional[Sequence[int]] = None) -> list[LinearHom]:
    """Steps along a reduced word ``(i1..ip)`` of sigma, starting from ``ip``."""
    sigma = tuple(sigma)
    word = reduced_word(sigma) if word is None else tuple(word)
    maps = []
    a, s = as_composition(alpha), sigma
    for i in reversed(word):
        f = psi_step_C(a, s, i)
        maps.append(f)
        a, s = f.codomain.shape, f.codomain.sigma
    return maps


# -- SPYCT side -------------------------------------------------------------


def upphi_map(alpha, sigma) -> LinearHom:
    """Complementation ``S_hat(alpha, sigma) -> phi[S(alpha^r, sigma^w0)]``."""
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    dom = build_module("S_hat", alpha, sigma)
    cod = phi_twist(build_module("S", reverse(alpha), conjugate_by_w0(sigma)))
    return basis_map(dom, cod, upphi_tableau, "upphi")


def hat_step(alpha, sigma, i: int) -> LinearHom:
    """Step between canonical SPYCT summands, transported from the SPCT side
    at position ``l(alpha) - i``."""
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    k = len(alpha)
    inner = psi_step_C(reverse(alpha), conjugate_by_w0(sigma), k - i)
    dom = canonical_hat_summand(alpha, sigma)
    new_alpha = reverse(inner.codomain.shape)
    cod = canonical_hat_summand(new_alpha, times_simple(sigma, i))

    def f(t):
        img = inner.image_of(upphi_tableau(t))
        return None if img is None else upphi_tableau(img)

    return basis_map(dom, cod, f, f"PsiHat{i}")


def full_chain(alpha, word: Optional[Sequence[int]] = None) -> list[LinearHom]:
    """``P_bar -> V -> X -> S_hat -> ... -> S_hat^{id}`` for a composition.

    The first SPYCT stage has shape ``lambda(alpha)^r`` and type
    ``sigma`` with ``lambda(alpha)^r = alpha . sigma``; the type of the
    Upsilon map is its conjugate by the longest element.
    """
    alpha = as_composition(alpha)
    lam = sort_to_partition(alpha)
    sig_ups = sorting_interval(alpha).sigma_min
    sigma = conjugate_by_w0(sig_ups)
    phi, gamma = phi_map(alpha), gamma_map(alpha)
    ups = upsilon_map(alpha, sig_ups)
    start = canonical_hat_summand(reverse(lam), sigma)
    back = basis_map(ups.codomain, start, upphi_tableau, "upphi^-1")
    maps = [phi, gamma, ups, back]
    word = reduced_word(sigma) if word is None else tuple(word)
    a, s = reverse(lam), sigma
    for i in reversed(word):
        step = hat_step(a, s, i)
        maps.append(step)
        a, s = step.codomain.shape, step.codomain.sigma
    return maps


# -- strips and the generalized composition of a class ---------------------


@dataclass(frozen=True)
class StripDecomposition:
    source: Tableau
    descents: tuple[int, ...]
    strips: tuple[tuple[tuple[int, int], ...], ...]
    connections: tuple[bool, ...]

    @property
    def bounds(self) -> tuple[int, ...]:
        return (0,) + self.descents + (self.source.n,)

    @property
    def heights(self) -> tuple[int, ...]:
        b = self.bounds
        return tuple(y - x for x, y in zip(b, b[1:]))

    def strip_row(self, p: int) -> int:
        return self.strips[p - 1][0][0]


def strip_decompose(source: Tableau) -> StripDecomposition:
    if source.family != "SPCT" or not is_source(source):
        raise DomainError("strip decomposition needs a source SPCT")
    des = tuple(sorted(source.descents))
    n = source.n
    b = (0,) + des + (n,)
    pos = source.pos
    strips = []
    for lo, hi in zip(b, b[1:]):
        cells = tuple(sorted(pos[v] for v in range(lo + 1, hi + 1)))
        rows = {r for r, _ in cells}
        cols = [c for _, c in cells]
        if len(rows) != 1 or cols != list(range(cols[0], cols[0] + len(cols))):
            raise AssertionError("strip is not a horizontal run")
        strips.append(cells)
    conn = []
    for j in range(1, len(des) + 1):
        first = pos[b[j - 1] + 1]   # rightmost cell of strip j
        last = pos[b[j + 1]]        # leftmost cell of strip j+1
        share = first[1] >= last[1]
        attack = last[1] == first[1] + 1 and last[0] > first[0]
        conn.append(share or attack)
    return StripDecomposition(source, des, tuple(strips), tuple(conn))


def strips_share_column(dec: StripDecomposition, j: int) -> bool:
    a = {c for _, c in dec.strips[j - 1]}
    b = {c for _, c in dec.strips[j]}
    return bool(a & b)


def alpha_E(dec: StripDecomposition) -> GeneralizedComposition:
    """Columns of heights ``d_j - d_{j-1}``, glued along connections."""
    blocks = []
    cur: list[int] = []
    for j, h in enumerate(dec.heights, 1):
        col = [1] * h
        if not cur:
            cur = col
        elif dec.connections[j - 2]:
            cur = cur[:-1] + [cur[-1] + 1] + col[1:]
        else:
            blocks.append(tuple(cur))
            cur = col
    blocks.append(tuple(cur))
    return tuple(blocks)


# -- eta --------------------------------------------------------------------


def eta_filling(dec: StripDecomposition, t: Tableau, sigma) -> Tableau:
    """Fill strip ``H_j`` with column j of ``t`` in decreasing order."""
    grid = {}
    for j, cells in enumerate(dec.strips, 1):
        vals = sorted(t.column(j), reverse=True)
        grid.update(zip(cells, vals))
    src = dec.source
    return Tableau("SPCT", src.shape, tuple(grid[c] for c in src.cells), tuple(sigma))


def eta_map(alpha, sigma, cls: SPCTClass) -> LinearHom:
    return _eta_map(as_composition(alpha), tuple(sigma), cls)


@lru_cache(maxsize=None)
def _eta_map(alpha, sigma, cls) -> LinearHom:
    dec = strip_decompose(cls.source)
    dom = build_module("P_bar", alpha_E(dec))
    cod = class_module(cls)

    def f(t):
        img = eta_filling(dec, t, sigma)
        return img if img in cod.index else None

    return basis_map(dom, cod, f, "eta")


def eta_section(dec: StripDecomposition, tau: Tableau) -> Tableau:
    """The ribbon tableau whose column j holds the entries of ``tau`` on H_j."""
    from .tableaux import from_columns

    cols = [sorted(tau.grid[c] for c in cells) for cells in dec.strips]
    return from_columns(alpha_E(dec), cols)


@dataclass(frozen=True)
class KernelWitness:
    tableau: Tableau
    condition: str
    quadruple: tuple[int, int, int, int]


def strip_coordinates(dec: StripDecomposition) -> tuple[list[int], dict[tuple[int, int], int]]:
    """``x_p`` (row of strip p) and ``y_{p,q}`` (column of its q-th cell from
    the left), both 1-based."""
    x = [0] + [cells[0][0] for cells in dec.strips]
    y = {}
    for p, cells in enumerate(dec.strips, 1):
        for q, (_, c) in enumerate(cells, 1):
            y[(p, q)] = c
    return x, y


def theta_witness(dec: StripDecomposition, t: Tableau) -> Optional[KernelWitness]:
    """First L-condition witness in the order L1 < L2 < L3 < L4, then
    lexicographic ``(i, j, s, t)``."""
    x, y = strip_coordinates(dec)
    m1 = len(dec.strips)
    alpha = dec.source.shape
    # from_bottom[p][q-1] = q-th entry of column p from the bottom
    from_bottom = [None] + [tuple(reversed(t.column(p))) for p in range(1, m1 + 1)]
    c = [0] + [len(from_bottom[p]) for p in range(1, m1 + 1)]

    def left_neighbour(i, s):
        # strip i^- to the right of H_i in the same row
        for p in range(1, i):
            if x[p] == x[i] and y[(p, 1)] == y[(i, s)] + 1:
                return p
        return None

    def quads():
        for i in range(1, m1 + 1):
            for j in range(1, m1 + 1):
                for s in range(1, c[i] + 1):
                    for u in range(1, c[j] + 1):
                        yield i, j, s, u

    def l1(i, j, s, u):
        return i < j and from_bottom[i][s - 1] > from_bottom[j][u - 1] and y[(i, s)] == y[(j, u)]

    def l2(i, j, s, u):
        return (s == c[i] and from_bottom[i][s - 1] > from_bottom[j][u - 1]
                and x[i] < x[j] and alpha[x[i] - 1] == y[(i, s)] == y[(j, u)] - 1)

    def l3(i, j, s, u):
        if not (s == c[i] and x[i] < x[j] and alpha[x[i] - 1] > y[(i, s)] == y[(j, u)] - 1):
            return False
        im = left_neighbour(i, s)
        if im is None:
            return False
        return from_bottom[i][s - 1] > from_bottom[j][u - 1] > from_bottom[im][0]

    def l4(i, j, s, u):
        return (s < c[i] and x[i] < x[j] and y[(i, s)] == y[(j, u)] - 1
                and from_bottom[i][s - 1] > from_bottom[j][u - 1] > from_bottom[i][s])

    for name, pred in (("L1", l1), ("L2", l2), ("L3", l3), ("L4", l4)):
        for q in quads():
            if pred(*q):
                return KernelWitness(t, name, q)
    return None


def theta_kernel(alpha, sigma, cls: SPCTClass) -> list[KernelWitness]:
    dec = strip_decompose(cls.source)
    out = []
    for t in enumerate_family("SRT", alpha_E(dec)):
        w = theta_witness(dec, t)
        if w is not None:
            out.append(w)
    return out


# -- kappa ------------------------------------------------------------------


def reading_word(t: Tableau) -> tuple[int, ...]:
    """Rows from the bottom up, each read left to right."""
    return tuple(v for r in range(t.nrows, 0, -1) for v in t.row(r))


def kappa_map(t: Tableau, gen) -> Tableau:
    gen = as_generalized(gen)
    beta = t.shape[0] if len(t.shape) == 1 else None
    if beta is None or beta not in bracket(gen):
        raise DomainError(f"{t.shape} is not in the bracket of {gen}")
    cells = diagram_cells("rd", gen)
    order = sorted(cells, key=lambda rc: (-rc[0], rc[1]))
    grid = dict(zip(order, reading_word(t)))
    return Tableau("SRT", gen, tuple(grid[c] for c in cells))
