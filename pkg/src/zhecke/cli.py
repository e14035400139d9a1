"""Command line driver: enumeration, modules, sweeps, covers and characters.

Every command writes a stream of reports.  A report covers one instance and
carries its check records plus pass/fail/skip counts; a final summary report
closes the stream.  With ``--format json`` each report is one line of JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .comb_core import (
    DomainError,
    compatible,
    conjugate_by_w0,
    fmt_composition,
    fmt_generalized,
    fmt_permutation,
    parse_composition,
    parse_generalized,
    parse_permutation,
    reverse,
)
from .hecke_modules import KINDS, build_module, verify_relations
from .qsym import QSymElt, ch_of_module, descent_sum_oracle
from .structure_theory import projective_cover_certificate
from .sweeps import SUITE_FUNCS, SUITES, Check
from .tableaux import FAMILIES, class_partition, enumerate_family, is_valid

DEFAULT_MAX_N = 6
EXTENDED_MAX_N = 7

# Which tableau family gives the descent-sum oracle for each module kind.
ORACLE_FAMILY = {"P_bar": "SRT", "P": "SRT", "V": "SIT", "X": "SET", "S": "SPCT",
                 "S_hat": "SPYCT"}


class UsageError(Exception):
    pass


# -- reports ----------------------------------------------------------------


@dataclass
class Report:
    command: str
    instance: dict
    checks: list[dict] = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def add(self, name: str, ok: Optional[bool], witness: Optional[str] = None, **extra) -> None:
        """``ok=None`` records a skip."""
        rec = {"name": name, "status": "skip" if ok is None else ("pass" if ok else "fail")}
        if rec["status"] != "pass":
            rec["witness"] = witness or ("skipped" if ok is None else "condition violated")
        rec.update(extra)
        self.checks.append(rec)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    def to_json(self) -> dict:
        return {
            "type": "instance",
            "command": self.command,
            "instance": self.instance,
            **self.payload,
            "checks": self.checks,
            "summary": self.summary,
            "elapsed_ms": self.elapsed_ms,
        }


def summary_report(command: str, reports: Iterable[Report], elapsed_ms: int = 0) -> dict:
    totals = {"pass": 0, "fail": 0, "skip": 0}
    count = 0
    for r in reports:
        count += 1
        for k, v in r.summary.items():
            totals[k] += v
    return {"type": "summary", "command": command, "instances": count, "summary": totals,
            "elapsed_ms": elapsed_ms}


def _instance_label(inst: dict) -> str:
    parts = [f"{k}={inst[k]}" for k in ("suite", "n", "shape", "sigma", "class_id", "kind",
                                          "family") if k in inst and inst[k] != ""]
    return " ".join(parts)


def emit(reports: Iterable[Report], fmt: str, out, command: str, timing: bool = False) -> dict:
    """Write reports followed by a summary; returns the summary document."""
    t0 = time.perf_counter()
    seen: list[Report] = []
    rows = []
    for r in reports:
        seen.append(r)
        if not timing:
            r.elapsed_ms = 0
        if fmt == "json":
            out.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
            out.flush()
        else:
            s = r.summary
            fails = [c for c in r.checks if c["status"] == "fail"]
            rows.append((_instance_label(r.instance), str(s["pass"]), str(s["fail"]),
                         str(s["skip"]), "; ".join(f"{c['name']}: {c['witness']}" for c in fails)))
    elapsed = int((time.perf_counter() - t0) * 1000) if timing else 0
    summ = summary_report(command, seen, elapsed)
    if fmt == "json":
        out.write(json.dumps(summ, sort_keys=True) + "\n")
    else:
        header = ("instance", "pass", "fail", "skip", "failures")
        widths = [max([len(header[i])] + [len(row[i]) for row in rows]) for i in range(4)]
        line = lambda row: "  ".join(  # noqa: E731
            [row[0].ljust(widths[0])] + [row[i].rjust(widths[i]) for i in (1, 2, 3)]
            + ([row[4]] if row[4] else [])
        ).rstrip()
        out.write(line(header) + "\n")
        for row in rows:
            out.write(line(row) + "\n")
        t = summ["summary"]
        out.write(f"total: {summ['instances']} instances, {t['pass']} pass, "
                  f"{t['fail']} fail, {t['skip']} skip\n")
    return summ


# -- argument helpers -------------------------------------------------------


def _family(name: str) -> str:
    up = name.upper()
    if up not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return up


def _kind(name: str) -> str:
    for k in KINDS:
        if k.lower() == name.lower():
            return k
    raise UsageError(f"unknown module kind {name!r}; choose from {', '.join(KINDS)}")


def _shape(text: str, generalized: bool):
    shape = parse_generalized(text) if generalized else parse_composition(text)
    if not shape:
        raise UsageError("shape must be non-empty")
    return shape


def _sigma(text: Optional[str], shape, needed: bool):
    if text is None:
        if needed:
            raise UsageError("this shape family needs --sigma")
        return None
    if not needed:
        raise UsageError("--sigma only applies to SPCT/SPYCT families and S/S_hat modules")
    sigma = parse_permutation(text)
    if len(sigma) != len(shape):
        raise UsageError(f"sigma {text} has length {len(sigma)}, shape has {len(shape)} parts")
    return sigma


def _fmt_shape(shape) -> str:
    if shape and isinstance(shape[0], tuple):
        return fmt_generalized(shape)
    return fmt_composition(shape)


def _module_instance(kind, shape, sigma) -> dict:
    n = sum(map(sum, shape)) if shape and isinstance(shape[0], tuple) else sum(shape)
    inst = {"kind": kind, "n": n, "shape": _fmt_shape(shape)}
    if sigma is not None:
        inst["sigma"] = fmt_permutation(sigma)
    return inst


def _build(kind, shape, sigma):
    """Build a module; the message is non-empty when the type does not fit
    the shape and the module is zero."""
    msg = ""
    if kind == "S" and not compatible(shape, sigma):
        msg = f"{fmt_permutation(sigma)} is not compatible with {fmt_composition(shape)}"
    elif kind == "S_hat" and not compatible(reverse(shape), conjugate_by_w0(sigma)):
        msg = (f"{fmt_permutation(sigma)} conjugated by w0 is not compatible with "
               f"{fmt_composition(reverse(shape))}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_module(kind, shape, sigma), msg


# -- commands ---------------------------------------------------------------


def cmd_enumerate(args) -> Iterator[Report]:
    fam = _family(args.family)
    shape = _shape(args.shape, generalized=(fam == "SRT"))
    sigma = _sigma(args.sigma, shape, needed=fam in ("SPCT", "SPYCT"))
    t0 = time.perf_counter()
    tabs = enumerate_family(fam, shape, sigma)
    inst = {"family": fam, "n": sum(map(sum, shape)) if fam == "SRT" else sum(shape),
            "shape": _fmt_shape(shape)}
    if sigma is not None:
        inst["sigma"] = fmt_permutation(sigma)
    r = Report("enumerate", inst, payload={
        "count": len(tabs),
        "tableaux": [t.to_json() for t in tabs],
    })
    bad = [t for t in tabs if not is_valid(t)]
    r.add("valid", not bad, f"invalid tableau {bad[0]}" if bad else None)
    if fam == "SPCT" and not compatible(shape, sigma):
        r.add("compatible", None, f"{fmt_permutation(sigma)} is not compatible with {args.shape}")
    r.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    yield r


def cmd_module(args) -> Iterator[Report]:
    kind = _kind(args.kind)
    shape = _shape(args.shape, generalized=kind in ("P", "P_bar"))
    sigma = _sigma(args.sigma, shape, needed=kind in ("S", "S_hat"))
    t0 = time.perf_counter()
    m, warning = _build(kind, shape, sigma)
    payload = {"dim": m.dim}
    if args.dump:
        payload["module"] = m.to_json()
    r = Report("module", _module_instance(kind, shape, sigma), payload=payload)
    if m.dim == 0 and warning:
        r.add("relations", None, warning)
    else:
        rep = verify_relations(m)
        r.add("relations", rep.ok, "; ".join(rep.failures))
    r.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    yield r


def cmd_ch(args) -> Iterator[Report]:
    kind = _kind(args.kind)
    shape = _shape(args.shape, generalized=kind in ("P", "P_bar"))
    sigma = _sigma(args.sigma, shape, needed=kind in ("S", "S_hat"))
    t0 = time.perf_counter()
    m, warning = _build(kind, shape, sigma)
    inst = _module_instance(kind, shape, sigma)
    ch = ch_of_module(m) if m.dim else QSymElt(inst["n"])
    r = Report("ch", inst, payload={"ch": ch.to_json()})
    if kind == "F":
        expected = QSymElt.fundamental(shape)
    elif m.dim == 0 and warning:
        expected = None
        r.add("oracle", None, warning)
    else:
        expected = descent_sum_oracle(ORACLE_FAMILY[kind], shape, sigma)
    if expected is not None:
        r.add("oracle", ch == expected, f"descent sum gives {expected!r}")
    r.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    yield r


def cmd_cover(args) -> Iterator[Report]:
    shape = _shape(args.shape, generalized=False)
    sigma = _sigma(args.sigma, shape, needed=True)
    if not compatible(shape, sigma):
        raise DomainError(f"{args.sigma} is not compatible with {args.shape}")
    classes = class_partition(shape, sigma)
    if args.all_classes:
        chosen = list(enumerate(classes, 1))
    elif args.class_index is not None:
        if not 1 <= args.class_index <= len(classes):
            raise UsageError(f"class index must be between 1 and {len(classes)}")
        chosen = [(args.class_index, classes[args.class_index - 1])]
    else:
        chosen = [(k, c) for k, c in enumerate(classes, 1) if c.canonical]
    for k, cls in chosen:
        cert = projective_cover_certificate(shape, sigma, cls)
        inst = {"n": sum(shape), "shape": fmt_composition(shape),
                "sigma": fmt_permutation(sigma), "class_id": cls.class_id,
                "class_index": k}
        r = Report("cover", inst, payload={"certificate": cert.to_json(timing=args.timing),
                                           "canonical": cls.canonical,
                                           "class_size": len(cls.members)})
        r.add("hom", cert.hom_ok)
        r.add("surjective", cert.surjective)
        r.add("kernel_theta", cert.theta_ok, f"kernel dim {cert.kernel_dim}")
        r.add("kernel_in_radical", cert.kernel_in_radical)
        r.elapsed_ms = cert.elapsed_ms
        yield r


def _run_task(task: tuple[str, int]) -> list[Check]:
    suite, n = task
    return list(SUITE_FUNCS[suite](n, n))


def _checks_to_reports(checks: list[Check]) -> list[Report]:
    groups: dict[tuple, Report] = {}
    for c in sorted(checks, key=Check.sort_key):
        key = (c.suite,) + tuple(sorted(c.instance.items()))
        rep = groups.get(key)
        if rep is None:
            rep = groups[key] = Report("verify", {"suite": c.suite, **c.instance})
        extra = dict(c.extra)
        rep.add(c.name, None if c.status == "skip" else c.status == "pass", c.witness, **extra)
    return sorted(groups.values(), key=lambda r: _report_key(r.instance))


def _report_key(inst: dict):
    shape = inst.get("shape", "")
    key_shape = tuple(tuple(int(p) for p in b.split(",") if p) for b in shape.split("|"))
    return (inst.get("n", 0), key_shape, inst.get("sigma", ""), inst.get("class_id", ""),
            SUITES.index(inst["suite"]))


def cmd_verify(args) -> Iterator[Report]:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    max_n = args.max_n
    min_n = 1
    shape_filter = sigma_filter = None
    if args.shape is not None:
        shape = _shape(args.shape, generalized=True)
        shape_filter = _fmt_shape(shape if len(shape) > 1 else shape[0])
        n = sum(map(sum, shape))
        if n > max_n:
            raise UsageError(f"shape has size {n}, above --max-n {max_n}")
        min_n = max_n = n
    if args.sigma is not None:
        if args.shape is None:
            raise UsageError("--sigma needs --shape")
        sigma_filter = fmt_permutation(parse_permutation(args.sigma))
    tasks = [(s, n) for n in range(min_n, max_n + 1) for s in suites]
    jobs = args.jobs

    def keep(c: Check) -> bool:
        if shape_filter is not None and c.instance.get("shape") != shape_filter:
            return False
        if sigma_filter is not None and c.instance.get("sigma") != sigma_filter:
            return False
        return True

    def by_size(results) -> Iterator[Report]:
        # Tasks are ordered by n, so a size class is complete once the next begins.
        pending: list[Check] = []
        current = None
        for (suite, n), checks in zip(tasks, results):
            if current is not None and n != current:
                yield from _checks_to_reports(pending)
                pending = []
            current = n
            pending.extend(c for c in checks if keep(c))
        yield from _checks_to_reports(pending)

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from by_size(pool.map(_run_task, tasks))
    else:
        yield from by_size(map(_run_task, tasks))


COMMANDS = {
    "enumerate": cmd_enumerate,
    "module": cmd_module,
    "verify": cmd_verify,
    "cover": cmd_cover,
    "ch": cmd_ch,
}


# -- parser -----------------------------------------------------------------


def _default_jobs() -> int:
    raw = os.environ.get("ZH_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json",
                        help="newline-delimited JSON (default) or an aligned table")
    common.add_argument("--timing", action="store_true",
                        help="report wall-clock times (output is then no longer reproducible)")

    p = argparse.ArgumentParser(prog="zhecke",
                                description="Exact 0-Hecke module computations and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list the tableaux of one family")
    e.add_argument("--family", required=True, help="srt, sit, set, spct or spyct")
    e.add_argument("--shape", required=True, help="composition such as 2,2,1 (srt: 1|2,1)")
    e.add_argument("--sigma", help="type permutation in one-line notation, e.g. 132")

    m = sub.add_parser("module", parents=[common], help="build a module and check relations")
    m.add_argument("--kind", required=True, help=", ".join(KINDS))
    m.add_argument("--shape", required=True)
    m.add_argument("--sigma")
    m.add_argument("--dump", action="store_true", help="include basis and generator matrices")

    v = sub.add_parser("verify", parents=[common], help="run exhaustive verification suites")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    v.add_argument("--extended", action="store_true",
                   help=f"allow --max-n {EXTENDED_MAX_N} (several hours for qsym and covers)")
    v.add_argument("--shape", help="restrict to one shape")
    v.add_argument("--sigma", help="restrict to one type (needs --shape)")
    v.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="worker processes (default: $ZH_JOBS or 1)")

    c = sub.add_parser("cover", parents=[common], help="certify projective covers of classes")
    c.add_argument("--shape", required=True)
    c.add_argument("--sigma", required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--class-index", type=int, help="1-based index in class order")
    g.add_argument("--all-classes", action="store_true")

    h = sub.add_parser("ch", parents=[common], help="quasisymmetric characteristic of a module")
    h.add_argument("--kind", required=True, help=", ".join(KINDS))
    h.add_argument("--shape", required=True)
    h.add_argument("--sigma")
    return p


def run(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        if args.command == "verify":
            if args.max_n < 1:
                raise UsageError("--max-n must be positive")
            if args.max_n > DEFAULT_MAX_N and not args.extended:
                raise UsageError(f"--max-n above {DEFAULT_MAX_N} needs --extended")
            if args.max_n > EXTENDED_MAX_N:
                raise UsageError(f"--max-n is capped at {EXTENDED_MAX_N}")
            if args.max_n == EXTENDED_MAX_N:
                err.write("warning: n = 7 sweeps can take hours; consider --jobs\n")
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
        # Materialize before writing so input errors never leave partial output,
        # except for verify, which streams by size class.
        reports = COMMANDS[args.command](args)
        if args.command != "verify":
            reports = list(reports)
        summ = emit(reports, args.format, out, args.command, timing=args.timing)
    except (UsageError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    return 1 if summ["summary"]["fail"] else 0


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # Output was cut short by the reader (e.g. ``| head``).
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        code = 1
    sys.exit(code)


if __name__ == "__main__":
    main()
