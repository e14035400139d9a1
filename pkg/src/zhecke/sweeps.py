"""Exhaustive verification suites.

Each suite yields :class:`Check` records for every instance up to a size
cap.  The CLI and the acceptance tests both consume these generators.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .comb_core import (
    all_permutations,
    bracket,
    compatible,
    complement,
    compositions,
    conjugate_by_w0,
    fmt_composition,
    fmt_generalized,
    fmt_permutation,
    generalized_compositions,
    identity_perm,
    interval_size_formula,
    inverse,
    is_hook,
    is_partition,
    place_perm_act,
    reduced_words,
    reverse,
    sort_to_partition,
    sorting_interval,
    times_simple,
    w0,
)
from .hecke_modules import (
    build_module,
    canonical_summand,
    class_module,
    phi_twist,
    verify_relations,
)
from .morphisms import (
    alpha_E,
    chain_compose,
    coordinate_span,
    eta_map,
    eta_section,
    full_chain,
    gamma_map,
    gamma_phi_kernel_tableaux,
    hom_check,
    kernel,
    phi_kernel_tableaux,
    phi_map,
    phi_section,
    psi_bijection,
    psi_chain,
    psi_step_C,
    strip_decompose,
    strips_share_column,
    surjectivity_check,
    theta_kernel,
    upphi_map,
    upsilon_map,
    xi_kernel,
)
from .qsym import (
    QSymElt,
    ch_of_module,
    descent_sum_oracle,
    qschur_expansion,
    qsum,
    recursion_check,
    rho_involution,
    schur_fundamental,
)
from .structure_theory import (
    cover_indecomposable_criterion,
    projective_cover_certificate,
    quotient_commutes,
    radical,
    sigma_simple,
    top_decompose,
    trace_form_radical,
)
from .tableaux import class_partition, enumerate_family, superstandard

SUITES = ("relations", "phi", "gamma", "upsilon", "psi-chain", "eta", "covers",
          "radical", "qsym")


@dataclass
class Check:
    suite: str
    name: str
    instance: dict
    status: str
    witness: Optional[str] = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def sort_key(self):
        inst = self.instance
        shape = inst.get("shape", "")
        key_shape = tuple(tuple(int(p) for p in b.split(",") if p) for b in shape.split("|"))
        return (inst.get("n", 0), key_shape, inst.get("sigma", ""), inst.get("class_id", ""),
                self.suite, self.name)

    def to_json(self) -> dict:
        out = {"suite": self.suite, "check": self.name, **self.instance, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.extra)
        return out


def _check(suite, name, instance, ok: bool, witness: Optional[str] = None, **extra) -> Check:
    return Check(suite, name, instance, "pass" if ok else "fail",
                 None if ok else (witness or "condition violated"), extra)


def _inst(alpha=None, sigma=None, gen=None, **more) -> dict:
    out = {}
    if gen is not None:
        out["n"] = sum(map(sum, gen))
        out["shape"] = fmt_generalized(gen)
    elif alpha is not None:
        out["n"] = sum(alpha)
        out["shape"] = fmt_composition(alpha)
    if sigma is not None:
        out["sigma"] = fmt_permutation(sigma)
    out.update(more)
    return out


def _quiet(fn, *args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fn(*args)


def compositions_upto(max_n: int, min_n: int = 1):
    for n in range(min_n, max_n + 1):
        yield from compositions(n)


def compatible_pairs(max_n: int, min_n: int = 1):
    for alpha in compositions_upto(max_n, min_n):
        for sigma in all_permutations(len(alpha)):
            if compatible(alpha, sigma):
                yield alpha, sigma


# -- suites -----------------------------------------------------------------


def suite_relations(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "relations"
    for gen in (g for n in range(min_n, max_n + 1) for g in generalized_compositions(n)):
        for kind in ("P_bar", "P"):
            rep = verify_relations(build_module(kind, gen))
            yield _check(s, kind, _inst(gen=gen), rep.ok, "; ".join(rep.failures))
    for alpha in compositions_upto(max_n, min_n):
        for kind in ("V", "X", "F"):
            rep = verify_relations(build_module(kind, alpha))
            yield _check(s, kind, _inst(alpha), rep.ok, "; ".join(rep.failures))
        for sigma in all_permutations(len(alpha)):
            for kind in ("S", "S_hat"):
                m = _quiet(build_module, kind, alpha, sigma)
                if m.dim == 0:
                    continue
                rep = verify_relations(m)
                yield _check(s, kind, _inst(alpha, sigma), rep.ok, "; ".join(rep.failures))


def suite_phi(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "phi"
    for alpha in compositions_upto(max_n, min_n):
        inst = _inst(alpha)
        f = phi_map(alpha)
        hc = hom_check(f)
        yield _check(s, "hom", inst, hc.ok, str(hc.witness))
        yield _check(s, "surjective", inst, surjectivity_check(f).ok)
        ker = kernel(f)
        comb = coordinate_span(f.domain, phi_kernel_tableaux(alpha))
        yield _check(s, "kernel", inst, ker == comb, f"dim {ker.dim} vs {comb.dim}")
        section_ok = all(f.image_of(phi_section(t)) == t for t in f.codomain.basis)
        yield _check(s, "section", inst, section_ok)
        yield _check(s, "hook", inst, (ker.dim == 0) == is_hook(alpha),
                     f"kernel dim {ker.dim}, hook {is_hook(alpha)}")


def suite_hooks(max_n: int, min_n: int = 1) -> Iterator[Check]:
    for alpha in compositions_upto(max_n, min_n):
        f = phi_map(alpha)
        ker = kernel(f)
        yield _check("phi", "hook", _inst(alpha), (ker.dim == 0) == is_hook(alpha),
                     f"kernel dim {ker.dim}, hook {is_hook(alpha)}")


def suite_gamma(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "gamma"
    for alpha in compositions_upto(max_n, min_n):
        inst = _inst(alpha)
        g = gamma_map(alpha)
        hc = hom_check(g)
        yield _check(s, "hom", inst, hc.ok, str(hc.witness))
        yield _check(s, "surjective", inst, surjectivity_check(g).ok)
        yield _check(s, "generator", inst,
                     g.image_of(superstandard("SIT", alpha)) == superstandard("SET", alpha))
        comp = chain_compose([phi_map(alpha), g])
        ker = kernel(comp)
        comb = coordinate_span(comp.domain, gamma_phi_kernel_tableaux(alpha))
        yield _check(s, "kernel", inst, ker == comb, f"dim {ker.dim} vs {comb.dim}")
        adj = coordinate_span(comp.domain, gamma_phi_kernel_tableaux(alpha, adjacent_only=True))
        yield _check(s, "kernel_adjacent", inst, ker == adj, f"dim {ker.dim} vs {adj.dim}")


def suite_upsilon(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "upsilon"
    for alpha in compositions_upto(max_n, min_n):
        interval = sorting_interval(alpha)
        yield _check(s, "interval_size", _inst(alpha),
                     len(interval.members) == interval_size_formula(alpha),
                     f"{len(interval.members)} vs {interval_size_formula(alpha)}")
        lam = sort_to_partition(alpha)
        for sigma in interval.members:
            inst = _inst(alpha, sigma)
            u = upsilon_map(alpha, sigma)
            hc = hom_check(u)
            yield _check(s, "hom", inst, hc.ok, str(hc.witness))
            yield _check(s, "surjective", inst, surjectivity_check(u).ok)
            ker = kernel(u)
            comb = coordinate_span(u.domain, xi_kernel(alpha, sigma))
            yield _check(s, "kernel", inst, ker == comb, f"dim {ker.dim} vs {comb.dim}")
            simple = sigma_simple(lam, sigma)
            yield _check(s, "sigma_simple", inst, (ker.dim == 0) == simple,
                         f"kernel dim {ker.dim}, sigma-simple {simple}")


def suite_interval(max_n: int, min_n: int = 1) -> Iterator[Check]:
    for alpha in compositions_upto(max_n, min_n):
        interval = sorting_interval(alpha)
        yield _check("upsilon", "interval_size", _inst(alpha),
                     len(interval.members) == interval_size_formula(alpha))


def suite_psi_chain(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "psi-chain"
    for alpha, sigma in compatible_pairs(max_n, min_n):
        inst = _inst(alpha, sigma)
        k = len(alpha)
        for i in range(1, k):
            if sigma[i - 1] < sigma[i]:
                continue
            step = psi_step_C(alpha, sigma, i)
            hc = hom_check(step)
            yield _check(s, f"hom_step_{i}", inst, hc.ok, str(hc.witness))
            yield _check(s, f"surjective_step_{i}", inst, surjectivity_check(step).ok)
            yield _check(s, f"bijection_{i}", inst, _psi_is_bijection(alpha, sigma, i))
        words = reduced_words(sigma)[:2]
        target_shape = place_perm_act(alpha, inverse(sigma))
        target = canonical_summand(target_shape, identity_perm(k))
        for w in words:
            maps = psi_chain(alpha, sigma, w)
            if not maps:
                continue
            comp = chain_compose(maps)
            ok = (comp.codomain.basis == target.basis
                  and surjectivity_check(comp).ok
                  and all(surjectivity_check(f).ok for f in maps))
            yield _check(s, "chain_" + "".join(map(str, w)), inst, ok)
    for alpha in compositions_upto(max_n, min_n):
        maps = full_chain(alpha)
        ok = all(hom_check(f).ok and surjectivity_check(f).ok for f in maps)
        comp = chain_compose(maps)
        ok = ok and surjectivity_check(comp).ok
        end = comp.codomain
        ok = ok and end.shape == alpha and end.sigma == identity_perm(len(alpha))
        dims = [maps[0].domain.dim] + [f.codomain.dim for f in maps]
        ok = ok and all(a >= b for a, b in zip(dims, dims[1:]))
        yield _check(s, "full_chain", _inst(alpha), ok, f"dims {dims}")


def _psi_is_bijection(alpha, sigma, i) -> bool:
    from .comb_core import bubble_act

    dom = enumerate_family("SPCT", alpha, sigma)
    s2 = times_simple(sigma, i)
    targets = set()
    for beta in compositions(sum(alpha)):
        if len(beta) == len(alpha) and bubble_act(beta, i) == alpha:
            targets.update(enumerate_family("SPCT", beta, s2))
    images = [psi_bijection(t, i) for t in dom]
    return len(set(images)) == len(images) and set(images) == targets


def suite_eta(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "eta"
    for alpha, sigma in compatible_pairs(max_n, min_n):
        for cls in class_partition(alpha, sigma):
            inst = _inst(alpha, sigma, class_id=cls.class_id)
            e = eta_map(alpha, sigma, cls)
            hc = hom_check(e)
            yield _check(s, "hom", inst, hc.ok, str(hc.witness))
            yield _check(s, "surjective", inst, surjectivity_check(e).ok)
            theta = theta_kernel(alpha, sigma, cls)
            ker = kernel(e)
            comb = coordinate_span(e.domain, (w.tableau for w in theta))
            yield _check(s, "kernel_theta", inst, ker == comb, f"dim {ker.dim} vs {comb.dim}")
            yield _check(s, "dimension", inst, e.domain.dim == len(cls.members) + len(theta))
            dec = strip_decompose(cls.source)
            yield _check(s, "section", inst,
                         all(e.image_of(eta_section(dec, tau)) == tau for tau in cls.members))
            yield _check(s, "descent_strips", inst, _des_to_des(dec, cls))


def _des_to_des(dec, cls) -> bool:
    """For i in strip j and i+1 in strip k: i is a descent iff j < k."""
    strip_of = {}
    for j, cells in enumerate(dec.strips, 1):
        for c in cells:
            strip_of[c] = j
    for tau in cls.members:
        for i in range(1, tau.n):
            j, k = strip_of[tau.pos[i]], strip_of[tau.pos[i + 1]]
            if (i in tau.descents) != (j < k):
                return False
    return True


def suite_covers(max_n: int, min_n: int = 1) -> Iterator[Check]:
    s = "covers"
    for alpha, sigma in compatible_pairs(max_n, min_n):
        for cls in class_partition(alpha, sigma):
            inst = _inst(alpha, sigma, class_id=cls.class_id)
            cert = projective_cover_certificate(alpha, sigma, cls)
            yield _check(s, "certificate", inst, cert.passes and cert.theta_ok,
                         extra_certificate(cert), certificate=cert.to_json())
            dec = strip_decompose(cls.source)
            crit = cover_indecomposable_criterion(dec)
            one_block = len(alpha_E(dec)) == 1
            top = top_decompose(build_module("P_bar", alpha_E(dec)))
            share_rule = all(
                dec.connections[j - 1] == (strips_share_column(dec, j) or _attacking_strips(dec, j))
                for j in range(1, len(dec.connections) + 1)
            )
            yield _check(s, "indecomposable", inst, crit == one_block == (len(top) == 1),
                         f"criterion {crit}, blocks {len(alpha_E(dec))}, top {len(top)}")
            yield _check(s, "connection_rule", inst, share_rule)
            if cls.canonical:
                yield _check(s, "canonical_single_block", inst, one_block)


def _attacking_strips(dec, j) -> bool:
    right = dec.source.pos[dec.bounds[j - 1] + 1]
    left = dec.source.pos[dec.bounds[j + 1]]
    return left[1] == right[1] + 1 and left[0] > right[0]


def extra_certificate(cert) -> str:
    return (f"hom {cert.hom_ok}, surjective {cert.surjective}, "
            f"kernel_in_radical {cert.kernel_in_radical}, theta {cert.theta_ok}")


def suite_radical(max_n: int, min_n: int = 1, trace_n: int = 4) -> Iterator[Check]:
    s = "radical"
    for beta in compositions_upto(max_n, min_n):
        m = build_module("P_bar", beta)
        rad = radical(m)
        t0 = superstandard("SRT", beta)
        comb = coordinate_span(m, (t for t in m.basis if t != t0))
        inst = _inst(beta)
        yield _check(s, "srt_radical", inst, rad == comb, f"dim {rad.dim} vs {comb.dim}")
        yield _check(s, "top", inst, top_decompose(m) == [complement(beta)])
        yield _check(s, "quotient_commutes", inst, quotient_commutes(m, rad))
    for n in range(min_n, min(trace_n, max_n) + 1):
        from .hecke_modules import regular_module

        reg = regular_module(n)
        rad = radical(reg)
        tf = trace_form_radical(n)
        yield _check(s, "trace_form", {"n": n, "shape": ""}, rad == tf, f"dim {rad.dim} vs {tf.dim}")


def suite_qsym(max_n: int, min_n: int = 1, recursion_n: Optional[int] = None) -> Iterator[Check]:
    s = "qsym"
    rec_n = max_n if recursion_n is None else recursion_n
    for gen in (g for n in range(min_n, max_n + 1) for g in generalized_compositions(n)):
        n = sum(map(sum, gen))
        m = build_module("P_bar", gen)
        ch = ch_of_module(m)
        inst = _inst(gen=gen)
        yield _check(s, "oracle_P_bar", inst, ch == descent_sum_oracle("SRT", gen))
        summed = qsum(n, (ch_of_module(build_module("P_bar", b)) for b in bracket(gen)))
        yield _check(s, "bracket_sum", inst, ch == summed)
        if len(gen) == 1:
            p = build_module("P", complement(gen[0]))
            from .structure_theory import radical_filtration

            lp, lq = radical_filtration(p), radical_filtration(m)
            yield _check(s, "P_vs_P_bar", inst,
                         lp.total == lq.total and lp.layers == lq.layers)
    for alpha in compositions_upto(max_n, min_n):
        inst = _inst(alpha)
        for kind, fam in (("V", "SIT"), ("X", "SET")):
            m = build_module(kind, alpha)
            ch = ch_of_module(m)
            yield _check(s, f"oracle_{kind}", inst, ch == descent_sum_oracle(fam, alpha))
            yield _check(s, f"twist_{kind}", inst, ch_of_module(phi_twist(m)) == rho_involution(ch))
        f = build_module("F", alpha)
        yield _check(s, "oracle_F", inst, ch_of_module(f) == QSymElt.fundamental(alpha))
        if is_partition(reverse(alpha)):
            sh = ch_of_module(_quiet(build_module, "S_hat", alpha, w0(len(alpha))))
            yield _check(s, "schur", inst, sh == schur_fundamental(reverse(alpha)))
        for sigma in all_permutations(len(alpha)):
            inst = _inst(alpha, sigma)
            if compatible(alpha, sigma):
                m = build_module("S", alpha, sigma)
                ch = ch_of_module(m)
                yield _check(s, "oracle_S", inst, ch == descent_sum_oracle("SPCT", alpha, sigma))
                parts = qsum(sum(alpha), (ch_of_module(class_module(c))
                                          for c in class_partition(alpha, sigma)))
                yield _check(s, "class_sum", inst, ch == parts)
                yield _check(s, "twist_S", inst, ch_of_module(phi_twist(m)) == rho_involution(ch))
            mh = _quiet(build_module, "S_hat", alpha, sigma)
            if mh.dim:
                chh = ch_of_module(mh)
                yield _check(s, "oracle_S_hat", inst,
                             chh == descent_sum_oracle("SPYCT", alpha, sigma))
                other = _quiet(build_module, "S", reverse(alpha), conjugate_by_w0(sigma))
                yield _check(s, "rho_S_hat", inst, chh == rho_involution(ch_of_module(other)))
                up = upphi_map(alpha, sigma)
                yield _check(s, "upphi_iso", inst,
                             hom_check(up).ok and up.domain.dim == up.codomain.dim
                             and kernel(up).dim == 0)
            if sum(alpha) <= rec_n:
                expected = ch_of_module(mh) if mh.dim else QSymElt(sum(alpha))
                yield _check(s, "qschur_expansion", inst,
                             qschur_expansion(alpha, sigma) == expected)
                for i in range(1, len(alpha)):
                    if sigma[i - 1] > sigma[i]:
                        rep = recursion_check(alpha, sigma, i)
                        yield _check(s, f"recursion_spct_{i}", inst, rep["spct"])
                        yield _check(s, f"recursion_spyct_{i}", inst, bool(rep["spyct_length"]),
                                     extra_n_reading=rep["spyct_n"])


def suite_recursion_readings(max_n: int, min_n: int = 1) -> dict:
    """Tally how the two index readings of the SPYCT recursion fare."""
    tally = {"length": [0, 0], "n": [0, 0, 0]}
    for alpha in compositions_upto(max_n, min_n):
        for sigma in all_permutations(len(alpha)):
            for i in range(1, len(alpha)):
                if sigma[i - 1] > sigma[i]:
                    rep = recursion_check(alpha, sigma, i)
                    tally["length"][0 if rep["spyct_length"] else 1] += 1
                    v = rep["spyct_n"]
                    tally["n"][0 if v else (2 if v is None else 1)] += 1
    return {"length_pass": tally["length"][0], "length_fail": tally["length"][1],
            "n_pass": tally["n"][0], "n_fail": tally["n"][1], "n_out_of_range": tally["n"][2]}


SUITE_FUNCS: dict[str, Callable[[int], Iterator[Check]]] = {
    "relations": suite_relations,
    "phi": suite_phi,
    "gamma": suite_gamma,
    "upsilon": suite_upsilon,
    "psi-chain": suite_psi_chain,
    "eta": suite_eta,
    "covers": suite_covers,
    "radical": suite_radical,
    "qsym": suite_qsym,
}
