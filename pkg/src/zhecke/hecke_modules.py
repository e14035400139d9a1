"""0-Hecke modules with explicit tableau bases.

A :class:`ModuleRep` holds an ordered basis and one matrix per generator
``pi_1 .. pi_{n-1}`` (or ``pibar_i = pi_i - 1`` when ``gen_style`` is
``"pibar"``).  Matrices act on column vectors, and ``f o g`` means apply g
first.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .comb_core import (
    DomainError,
    Permutation,
    as_composition,
    as_generalized,
    compatible,
    conjugate_by_w0,
    reverse,
    set_of,
    simple_transposition,
    compose,
    all_permutations,
    length,
)
from .exact_linalg import Number, RatMatrix, Subspace, _norm
from .tableaux import (
    SPCTClass,
    Tableau,
    attacking,
    canonical_class,
    class_partition,
    enumerate_family,
    upphi_tableau,
)

KINDS = ("P_bar", "P", "V", "X", "S", "S_hat", "F")


class RelationError(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class ModuleRep:
    n: int
    basis: tuple
    gens: tuple[RatMatrix, ...]
    gen_style: str = "pi"
    kind: str = ""
    shape: tuple = ()
    sigma: Optional[Permutation] = None
    warning: Optional[str] = None
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.gen_style not in ("pi", "pibar"):
            raise DomainError(f"unknown generator style {self.gen_style!r}")
        d = len(self.basis)
        if len(self.gens) != max(self.n - 1, 0):
            raise DomainError(f"expected {self.n - 1} generators, got {len(self.gens)}")
        for g in self.gens:
            if g.shape != (d, d):
                raise DomainError("generator shape does not match the basis")
        if not self.index:
            object.__setattr__(self, "index", {b: k for k, b in enumerate(self.basis)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def gen(self, i: int) -> RatMatrix:
        """Matrix of the i-th generator (1-based)."""
        return self.gens[i - 1]

    def to_json(self) -> dict:
        def label(b):
            return b.to_json() if isinstance(b, Tableau) else str(b)

        return {
            "kind": self.kind,
            "n": self.n,
            "gen_style": self.gen_style,
            "dim": self.dim,
            "basis": [label(b) for b in self.basis],
            "gens": [g.to_json() for g in self.gens],
        }


def module_from_action(
    n: int,
    basis: Sequence,
    act: Callable[[int, object], Optional[tuple[Number, object]]],
    *,
    gen_style: str = "pi",
    **meta,
) -> ModuleRep:
    """Build generator matrices from a basis-level action.

    ``act(i, b)`` returns ``(coeff, b')`` meaning ``pi_i b = coeff * b'``, or
    None for zero.
    """
    basis = tuple(basis)
    index = {b: k for k, b in enumerate(basis)}
    d = len(basis)
    gens = []
    for i in range(1, n):
        cols = []
        for b in basis:
            res = act(i, b)
            if res is None:
                cols.append({})
                continue
            coeff, image = res
            if image not in index:
                raise RelationError(f"pi_{i} maps {b} outside the basis: {image}")
            cols.append({index[image]: coeff})
        gens.append(RatMatrix(d, d, cols))
    return ModuleRep(n, basis, tuple(gens), gen_style, index=index, **meta)


# -- basis-level actions ----------------------------------------------------


def _act_srt_star(i: int, t: Tableau):
    (ri, _), (rj, _) = t.pos[i], t.pos[i + 1]
    if ri < rj:
        return 1, t
    if ri == rj:
        return None
    return 1, t.swap(i)


def _act_srt_bar(i: int, t: Tableau):
    (ri, _), (rj, _) = t.pos[i], t.pos[i + 1]
    if ri < rj:
        return -1, t
    if ri == rj:
        return None
    return 1, t.swap(i)


def _act_sit(i: int, t: Tableau):
    (ri, ci), (rj, cj) = t.pos[i], t.pos[i + 1]
    if ri >= rj:
        return 1, t
    if ci == 1 and cj == 1:
        return None
    return 1, t.swap(i)


def _act_set(i: int, t: Tableau):
    (_, ci), (_, cj) = t.pos[i], t.pos[i + 1]
    if ci < cj:
        return 1, t
    if ci == cj:
        return None
    return 1, t.swap(i)


def _act_composition_tableau(i: int, t: Tableau):
    if i not in t.descents:
        return 1, t
    if attacking(t, i):
        return None
    return 1, t.swap(i)


# -- builders ---------------------------------------------------------------


def build_module(kind: str, shape, sigma: Optional[Sequence[int]] = None) -> ModuleRep:
    """Construct one of the family modules.

    kinds: ``P_bar`` and ``P`` (generalized compositions allowed), ``V``,
    ``X``, ``S``, ``S_hat``, ``F``.
    """
    if kind in ("P_bar", "P"):
        return _build_ribbon(kind, as_generalized(shape))
    alpha = as_composition(shape)
    sig = None if sigma is None else tuple(sigma)
    return _build(kind, alpha, sig)


def _verified(builder):
    """Run the relation check once per built module (results are cached)."""

    def wrapped(*args):
        m = builder(*args)
        rep = verify_relations(m)
        if not rep.ok:
            raise RelationError(f"{m.kind} {args[1:]}: " + "; ".join(rep.failures))
        return m

    wrapped.__name__ = builder.__name__
    wrapped.__doc__ = builder.__doc__
    return wrapped


@lru_cache(maxsize=None)
@_verified
def _build_ribbon(kind, gen) -> ModuleRep:
    basis = enumerate_family("SRT", gen)
    n = sum(map(sum, gen))
    if kind == "P_bar":
        return module_from_action(n, basis, _act_srt_star, kind=kind, shape=gen)
    return module_from_action(n, basis, _act_srt_bar, gen_style="pibar", kind=kind, shape=gen)


@lru_cache(maxsize=None)
@_verified
def _build(kind, alpha, sigma) -> ModuleRep:
    n = sum(alpha)
    if kind == "F":
        des = set(set_of(alpha))
        return module_from_action(
            n, [alpha], lambda i, b: None if i in des else (1, b), kind=kind, shape=alpha
        )
    if kind == "V":
        return module_from_action(n, enumerate_family("SIT", alpha), _act_sit, kind=kind, shape=alpha)
    if kind == "X":
        return module_from_action(n, enumerate_family("SET", alpha), _act_set, kind=kind, shape=alpha)
    if kind in ("S", "S_hat"):
        if sigma is None or len(sigma) != len(alpha):
            raise DomainError(f"{kind} needs a permutation of length {len(alpha)}")
        fam = "SPCT" if kind == "S" else "SPYCT"
        ok = compatible(alpha, sigma) if kind == "S" else compatible(reverse(alpha), conjugate_by_w0(sigma))
        basis = enumerate_family(fam, alpha, sigma) if ok else []
        warn = None
        if not ok:
            warn = f"incompatible pair {alpha}, {sigma}: zero module"
            warnings.warn(warn, stacklevel=3)
        return module_from_action(n, basis, _act_composition_tableau,
                                  kind=kind, shape=alpha, sigma=sigma, warning=warn)
    raise DomainError(f"unknown module kind {kind!r}")


def class_module(cls: SPCTClass) -> ModuleRep:
    """The summand spanned by one SPCT class."""
    return _class_module(cls)


@lru_cache(maxsize=None)
def _class_module(cls: SPCTClass) -> ModuleRep:
    n = sum(cls.alpha)
    return module_from_action(n, cls.members, _act_composition_tableau,
                              kind="S", shape=cls.alpha, sigma=cls.sigma)


def canonical_summand(alpha, sigma) -> ModuleRep:
    return class_module(canonical_class(as_composition(alpha), tuple(sigma)))


def hat_class_members(alpha, sigma, cls: SPCTClass) -> tuple[Tableau, ...]:
    """SPYCT basis corresponding to an SPCT class of ``(alpha^r, sigma^w0)``."""
    return tuple(sorted(upphi_tableau(t) for t in cls.members))


def canonical_hat_summand(alpha, sigma) -> ModuleRep:
    """The SPYCT summand matched with the canonical SPCT class of
    ``(alpha^r, sigma^w0)``."""
    alpha = as_composition(alpha)
    sigma = tuple(sigma)
    return _canonical_hat_summand(alpha, sigma)


@lru_cache(maxsize=None)
def _canonical_hat_summand(alpha, sigma) -> ModuleRep:
    cls = canonical_class(reverse(alpha), conjugate_by_w0(sigma))
    basis = hat_class_members(alpha, sigma, cls)
    return module_from_action(sum(alpha), basis, _act_composition_tableau,
                              kind="S_hat", shape=alpha, sigma=sigma)


def decompose_spct(alpha, sigma) -> list[tuple[SPCTClass, ModuleRep]]:
    return [(cls, class_module(cls)) for cls in class_partition(alpha, sigma)]


# -- relations --------------------------------------------------------------


@dataclass
class RelationReport:
    ok: bool
    failures: list[str]


def verify_relations(m: ModuleRep) -> RelationReport:
    g = m.gens
    fails = []
    for i, a in enumerate(g, 1):
        sq = a @ a
        target = a if m.gen_style == "pi" else -a
        if sq != target:
            fails.append(f"quadratic relation fails for generator {i}")
    for i in range(len(g) - 1):
        a, b = g[i], g[i + 1]
        if a @ b @ a != b @ a @ b:
            fails.append(f"braid relation fails for generators {i + 1},{i + 2}")
    for i in range(len(g)):
        for j in range(i + 2, len(g)):
            if g[i] @ g[j] != g[j] @ g[i]:
                fails.append(f"commutation fails for generators {i + 1},{j + 1}")
    return RelationReport(not fails, fails)


def to_pi_style(m: ModuleRep) -> ModuleRep:
    if m.gen_style == "pi":
        return m
    one = RatMatrix.identity(m.dim)
    return ModuleRep(m.n, m.basis, tuple(a + one for a in m.gens), "pi",
                     m.kind, m.shape, m.sigma, m.warning, m.index)


def phi_twist(m: ModuleRep) -> ModuleRep:
    """Twist by the automorphism ``pi_i -> pi_{n-i}``."""
    if m.gen_style != "pi":
        raise DomainError("phi twist expects pi-style generators; convert first")
    return ModuleRep(m.n, m.basis, tuple(reversed(m.gens)), "pi",
                     f"phi[{m.kind}]", m.shape, m.sigma, m.warning, m.index)


def act_word(m: ModuleRep, word: Sequence[int], v: Sequence[Number]) -> list[Number]:
    """``pi_{i1} ... pi_{ip} v``; the last letter acts first."""
    out = list(v)
    for i in reversed(word):
        if not 1 <= i <= m.n - 1:
            raise DomainError(f"generator index {i} out of range")
        out = m.gen(i).apply(out)
    return out


def basis_vector(m: ModuleRep, b) -> list[Number]:
    v: list[Number] = [0] * m.dim
    v[m.index[b]] = 1
    return v


def is_invariant(m: ModuleRep, s: Subspace) -> bool:
    return all(s.member(g.apply(list(r))) for g in m.gens for r in s.integer_basis())


def _sparse_apply(g: RatMatrix, v: dict) -> dict:
    out: dict = {}
    for j, x in v.items():
        for i, a in g.column(j).items():
            out[i] = out.get(i, 0) + a * x
    return {i: _norm(x) for i, x in out.items() if x}


def _reduce_against(w: dict, rows: list[tuple[int, dict]]) -> dict:
    """Subtract multiples of RREF rows so every pivot coordinate of w is 0."""
    w = dict(w)
    for p, b in rows:
        x = w.get(p)
        if x:
            for k, c in b.items():
                y = w.get(k, 0) - x * c
                if y:
                    w[k] = y
                else:
                    w.pop(k, None)
    return w


def sub_quotient(m: ModuleRep, s: Subspace) -> tuple[ModuleRep, ModuleRep]:
    """Induced actions on ``s`` (RREF basis) and on ``M/s`` (non-pivot
    coordinate vectors as representatives)."""
    if s.ambient_dim != m.dim:
        raise DomainError("subspace lives in a different space")
    piv = s.pivots
    rows = [(p, {k: x for k, x in enumerate(b) if x}) for p, b in zip(piv, s.basis)]
    comp = [j for j in range(m.dim) if j not in set(piv)]
    qpos = {q: k for k, q in enumerate(comp)}
    sub_gens, quo_gens = [], []
    for g in m.gens:
        cols = []
        for p, b in rows:
            w = _sparse_apply(g, b)
            if _reduce_against(w, rows):
                raise DomainError("subspace is not invariant")
            cols.append({k: w[q] for k, q in enumerate(piv) if q in w})
        sub_gens.append(RatMatrix(len(rows), len(rows), cols))
        qcols = []
        for j in comp:
            w = _reduce_against(_sparse_apply(g, {j: 1}), rows)
            qcols.append({qpos[q]: x for q, x in w.items()})
        quo_gens.append(RatMatrix(len(comp), len(comp), qcols))
    sub = ModuleRep(m.n, tuple(f"s{k}" for k in range(len(rows))), tuple(sub_gens),
                    m.gen_style, f"sub[{m.kind}]")
    quo = ModuleRep(m.n, tuple(m.basis[j] for j in comp), tuple(quo_gens),
                    m.gen_style, f"quot[{m.kind}]")
    return sub, quo


def direct_sum(a: ModuleRep, b: ModuleRep) -> ModuleRep:
    if a.n != b.n or a.gen_style != b.gen_style:
        raise DomainError("direct sum needs matching rank and style")
    da = a.dim
    gens = []
    for ga, gb in zip(a.gens, b.gens):
        cols = list(ga.columns()) + [{i + da: v for i, v in c.items()} for c in gb.columns()]
        gens.append(RatMatrix(da + b.dim, da + b.dim, cols))
    basis = tuple(("L", x) for x in a.basis) + tuple(("R", x) for x in b.basis)
    return ModuleRep(a.n, basis, tuple(gens), a.gen_style, f"{a.kind}+{b.kind}")


def regular_module(n: int) -> ModuleRep:
    """Left regular representation on the basis ``pi_w``, w in S_n."""
    basis = sorted(all_permutations(n))

    def act(i, w):
        sw = compose(simple_transposition(n, i), w)
        return 1, (sw if length(sw) > length(w) else w)

    return module_from_action(n, basis, act, kind="regular")
