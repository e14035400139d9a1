"""Radicals, tops, radical filtrations and projective cover certificates.

The radical of a module is computed as ``H . span{[pi_a, pi_{a+1}] v}``.
The Jacobson radical of the 0-Hecke algebra is the two-sided ideal
generated by the commutators of generators: the quotient by that ideal is
generated by commuting idempotents, hence semisimple, and every
commutator must vanish on the commutative semisimple top.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .comb_core import (
    Composition,
    comp_of,
    fmt_generalized,
    fmt_permutation,
    reduced_word,
)
from .exact_linalg import RatMatrix, Subspace, nullspace, operator_closure
from .hecke_modules import ModuleRep, sub_quotient, to_pi_style
from .qsym import QSymElt


class InternalConsistencyError(RuntimeError):
    pass


def radical(m: ModuleRep) -> Subspace:
    m = to_pi_style(m)
    if m.dim == 0:
        return Subspace.zero(0)
    comms = [a @ b - b @ a for a, b in zip(m.gens, m.gens[1:])]
    # Column j of a commutator is its value on the j-th basis vector.
    seeds = []
    for c in comms:
        for col in c.columns():
            if col:
                v = [0] * m.dim
                for i, x in col.items():
                    v[i] = x
                seeds.append(v)
    return operator_closure(Subspace.span(m.dim, seeds), m.gens)


def top_decompose(m: ModuleRep) -> list[Composition]:
    """Simple constituents of ``M / rad M`` as a sorted multiset."""
    m = to_pi_style(m)
    _, quo = sub_quotient(m, radical(m))
    return semisimple_constituents(quo)


def semisimple_constituents(q: ModuleRep) -> list[Composition]:
    """Split a module whose generators commute and are idempotent into
    joint 0/1-eigenspaces of the generators."""
    g = q.gens
    for i, a in enumerate(g):
        if a @ a != a:
            raise InternalConsistencyError(f"generator {i + 1} is not idempotent on the quotient")
        for b in g[i + 1:]:
            if a @ b != b @ a:
                raise InternalConsistencyError("generators do not commute on the quotient")
    d = q.dim
    if d == 0:
        return []
    one = RatMatrix.identity(d)
    pieces: list[tuple[tuple[int, ...], Subspace]] = [((), Subspace.full(d))]
    for i, a in enumerate(g, 1):
        ker0 = nullspace(a)
        ker1 = nullspace(a - one)
        nxt = []
        for des, w in pieces:
            w0 = w.intersect(ker0)
            w1 = w.intersect(ker1)
            if w0.dim + w1.dim != w.dim:
                raise InternalConsistencyError("eigenspaces do not split the quotient")
            if w0.dim:
                nxt.append((des + (i,), w0))
            if w1.dim:
                nxt.append((des, w1))
        pieces = nxt
    out = []
    for des, w in pieces:
        out.extend([comp_of(des, q.n)] * w.dim)
    return sorted(out)


@dataclass
class FiltrationReport:
    layers: list[list[Composition]]
    total: QSymElt

    @property
    def loewy_length(self) -> int:
        return len(self.layers)


def radical_filtration(m: ModuleRep) -> FiltrationReport:
    m = to_pi_style(m)
    layers = []
    cur = m
    while cur.dim:
        rad = radical(cur)
        if rad.dim == cur.dim:
            raise InternalConsistencyError("radical did not shrink the module")
        sub, quo = sub_quotient(cur, rad)
        layers.append(semisimple_constituents(quo))
        cur = sub
    total = QSymElt.from_terms(m.n, (c for layer in layers for c in layer))
    return FiltrationReport(layers, total)


def grothendieck_class(m: ModuleRep) -> QSymElt:
    return radical_filtration(m).total


def quotient_commutes(m: ModuleRep, s: Subspace) -> bool:
    """Whether every generator is idempotent and they pairwise commute on M/s."""
    _, quo = sub_quotient(to_pi_style(m), s)
    g = quo.gens
    return all(a @ a == a for a in g) and all(
        a @ b == b @ a for i, a in enumerate(g) for b in g[i + 1:]
    )


# -- essential epimorphisms and covers --------------------------------------


def essential_epi_check(f) -> bool:
    from .morphisms import kernel, surjectivity_check

    if not surjectivity_check(f).ok:
        return False
    return radical(f.domain).contains(kernel(f))


@dataclass
class CoverCertificate:
    alpha: Composition
    sigma: tuple
    class_id: str
    alpha_E: tuple
    dim_P: int
    dim_S: int
    kernel_dim: int
    hom_ok: bool
    surjective: bool
    kernel_in_radical: bool
    theta_ok: bool
    indecomposable: bool
    elapsed_ms: int = 0

    @property
    def passes(self) -> bool:
        return self.hom_ok and self.surjective and self.kernel_in_radical

    def to_json(self, timing: bool = False) -> dict:
        from .comb_core import fmt_composition

        out = {
            "alpha": fmt_composition(self.alpha),
            "sigma": fmt_permutation(self.sigma),
            "class_id": self.class_id,
            "alpha_E": fmt_generalized(self.alpha_E),
            "dim_P": self.dim_P,
            "dim_S": self.dim_S,
            "kernel_dim": self.kernel_dim,
            "kernel_in_radical": self.kernel_in_radical,
            "indecomposable": self.indecomposable,
            "elapsed_ms": self.elapsed_ms if timing else 0,
        }
        return out


@lru_cache(maxsize=None)
def _ribbon_radical(gen) -> Subspace:
    from .hecke_modules import build_module

    return radical(build_module("P_bar", gen))


def projective_cover_certificate(alpha, sigma, cls) -> CoverCertificate:
    from .morphisms import (
        alpha_E,
        eta_map,
        hom_check,
        kernel,
        strip_decompose,
        surjectivity_check,
        theta_kernel,
    )

    t0 = time.perf_counter()
    dec = strip_decompose(cls.source)
    gen = alpha_E(dec)
    eta = eta_map(alpha, sigma, cls)
    ker = kernel(eta)
    theta = Subspace.coordinate(eta.domain.dim,
                                (eta.domain.index[w.tableau] for w in theta_kernel(alpha, sigma, cls)))
    cert = CoverCertificate(
        alpha=tuple(alpha),
        sigma=tuple(sigma),
        class_id=cls.class_id,
        alpha_E=gen,
        dim_P=eta.domain.dim,
        dim_S=eta.codomain.dim,
        kernel_dim=ker.dim,
        hom_ok=hom_check(eta).ok,
        surjective=surjectivity_check(eta).ok,
        kernel_in_radical=_ribbon_radical(gen).contains(ker),
        theta_ok=(theta == ker),
        indecomposable=len(gen) == 1,
    )
    cert.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return cert


def cover_indecomposable_criterion(dec) -> bool:
    """Each pair of consecutive strips shares a column or attacks."""
    return all(dec.connections)


# -- sigma-simple -----------------------------------------------------------


def pacd_pairs(alpha: Sequence[int], sigma: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs ``i < j`` with ``sigma(i) < sigma(j)`` and ``alpha_i >= alpha_j >= 2``."""
    k = len(alpha)
    return [
        (i, j)
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
        if sigma[i - 1] < sigma[j - 1] and alpha[i - 1] >= alpha[j - 1] >= 2
    ]


def sigma_simple(alpha: Sequence[int], sigma: Sequence[int]) -> bool:
    k = len(alpha)
    for i, j in pacd_pairs(alpha, sigma):
        lo, hi = sigma[i - 1], sigma[j - 1]
        aj = alpha[j - 1]
        rescued = any(
            i < q < j and lo < sigma[q - 1] < hi and alpha[q - 1] == aj - 1
            for q in range(1, k + 1)
        ) or any(
            q > j and lo < sigma[q - 1] < hi and alpha[q - 1] == aj
            for q in range(1, k + 1)
        )
        if not rescued:
            return False
    return True


# -- trace form cross-check -------------------------------------------------


def trace_form_radical(n: int) -> Subspace:
    """Radical of the regular representation via the trace form
    ``(a, b) -> tr(L_{ab})``, valid in characteristic zero."""
    from .hecke_modules import regular_module

    reg = regular_module(n)
    basis = reg.basis
    idx = reg.index
    # Left multiplication by pi_u, as a map on basis elements.
    left = {}
    for u in basis:
        images = list(basis)
        for i in reversed(reduced_word(u)):
            g = reg.gen(i)
            images = [basis[next(iter(g.column(idx[w])))] for w in images]
        left[u] = dict(zip(basis, images))
    trace = {u: sum(1 for w in basis if left[u][w] == w) for u in basis}
    gram = RatMatrix.from_rows([[trace[left[u][w]] for w in basis] for u in basis])
    return nullspace(gram)
