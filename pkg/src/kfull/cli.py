"""Command-line surface.

Subcommands: table, constants, verify, enumerate, empirical.  Exit codes:
0 success, 1 verification failure, 2 usage/config error.  Machine formats
(csv, json) are byte-deterministic for a fixed configuration: rows are
sorted, enclosures print as 30-digit decimal strings (a float64 round trip
would exceed the smaller radii), and no timings or timestamps are embedded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal

from mpmath import mp

from . import density, empirical
from .density import SubsetSpec
from .shapes import (
    DEFAULT_PRIME_CUTOFF,
    enumerate_lambda,
    lambda_value,
    power_sum_direct,
    power_sum_euler,
)
from .arith import enumerate_kfull
from .zetas import zeta

DEFAULT_ENUM_CAP = 1_000_000

_EMPIRICAL_DEFAULTS = {2: (1_000_000, 0.005), 3: (100_000, 0.02)}


@dataclass
class RunConfig:
    k: int = 2
    max_index: int = 5
    digits: int = 30
    trunc_B: int = 10_000
    guard: int = 40
    prime_cutoff: int = DEFAULT_PRIME_CUTOFF
    N: int | None = None
    fmt: str = "text"
    out: str | None = None
    threads: int = 1
    quick: bool = False
    tolerance_scale: float = 1.0
    method: str = "direct"
    cap: int = DEFAULT_ENUM_CAP

    def validate(self):
        if self.k < 2:
            raise ValueError("--k must be >= 2")
        if self.digits < 6:
            raise ValueError("--digits must be >= 6")
        if self.max_index < 0:
            raise ValueError("--max-index must be >= 0")
        for name in ("trunc_B", "guard", "prime_cutoff", "threads", "cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.N is not None and self.N < 1:
            raise ValueError("--N must be positive")


def _fmt6(x) -> str:
    return str(Decimal(repr(float(x))).quantize(Decimal("0.000001"), ROUND_HALF_EVEN))


def _num(x, digits: int = 30) -> str:
    # machine formats carry the working precision; float64 repr would quietly
    # add conversion error beyond the tracked radii
    return mp.nstr(x, digits)


def _rad(x) -> str:
    return mp.nstr(x, 8)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- table ------------------------------------------------------------------


def _render_table_text(table) -> str:
    L = table.L
    lines = [f"d(A[l,m]) for k={table.k}, 0 <= l <= m <= {L}  (method: {table.method})"]
    header = " l\\m " + "".join(f"{m:>10}" for m in range(L + 1))
    lines.append(header)
    for l in range(L + 1):
        cells = []
        for m in range(L + 1):
            cells.append(f"{_fmt6(table.entry(l, m).value):>10}" if m >= l else " " * 10)
        lines.append(f"{l:>4} " + "".join(cells))
    return "\n".join(lines) + "\n"


def cmd_table(cfg: RunConfig) -> int:
    table = density.build_table(cfg.k, cfg.max_index, cfg.method, cfg.digits,
                                cfg.prime_cutoff, cfg.guard)
    if cfg.fmt == "text":
        _emit(cfg, _render_table_text(table))
    elif cfg.fmt == "csv":
        rows = [
            (table.k, l, m, _num(e.value), _rad(e.radius), table.method)
            for (l, m), e in table.cells()
        ]
        _emit(cfg, _csv_text(("k", "l", "m", "value", "radius", "method"), rows))
    else:
        cells = [
            {"l": l, "m": m, "value": _num(e.value), "radius": _rad(e.radius)}
            for (l, m), e in table.cells()
        ]
        _emit(cfg, _json_text(
            {"k": table.k, "L": table.L, "method": table.method, "cells": cells}))
    return 0


# -- constants ---------------------------------------------------------------


def _constants(cfg: RunConfig) -> list:
    out = []
    C = density.constant_C(cfg.k, cfg.digits)
    out.append((f"C_{cfg.k}", C))
    if cfg.k == 2:
        with mp.workdps(cfg.digits + 10):
            c2 = zeta(1.5, cfg.digits) / zeta(3, cfg.digits)
        out.append(("c_2", c2))
    for l in range(cfg.max_index + 1):
        out.append((f"d_{cfg.k},{l}", density.density_shiu(cfg.k, l, "xi_alternating",
                                                           cfg.digits, cfg.prime_cutoff,
                                                           cfg.guard)))
    for m in range(1, 9):
        out.append((f"P_{cfg.k}({m})", power_sum_euler(cfg.k, m, cfg.digits,
                                                       cfg.prime_cutoff)))
    return out


def cmd_constants(cfg: RunConfig) -> int:
    rows = _constants(cfg)
    if cfg.fmt == "text":
        width = max(len(name) for name, _ in rows)
        body = "".join(
            f"{name:<{width}}  {repr(float(e.value))}  (radius {float(e.radius):.2e})\n"
            for name, e in rows
        )
        _emit(cfg, body)
    elif cfg.fmt == "csv":
        _emit(cfg, _csv_text(("name", "value", "radius"),
                             [(n, _num(e.value), _rad(e.radius)) for n, e in rows]))
    else:
        _emit(cfg, _json_text({n: {"value": _num(e.value), "radius": _rad(e.radius)}
                               for n, e in rows}))
    return 0


# -- verify -------------------------------------------------------------------


def run_verify(cfg: RunConfig) -> dict:
    """All cross-checks for one k; tolerances scale with cfg.tolerance_scale."""
    k = cfg.k
    scale = cfg.tolerance_scale
    checks = []

    def add(name, observed, tolerance, note=""):
        checks.append({
            "name": name,
            "observed": float(observed),
            "tolerance": float(tolerance),
            "passed": bool(float(observed) <= float(tolerance)),
            "note": note,
        })

    # three independent summation routes for every cell up to (5,5)
    worst = 0.0
    for l in range(6):
        for m in range(l, 6):
            vals = [
                float(density_val(k, l, m, meth, cfg))
                for meth in ("direct", "inversion", "xi")
            ]
            worst = max(worst, max(vals) - min(vals))
    add("three_route_agreement", worst, 1e-9 * scale,
        "max pairwise spread of d(A[l,m]) over methods, 0<=l<=m<=5")

    norm = density.normalization_check(k, cfg.digits, cfg.prime_cutoff)
    add("normalization_total_mass", abs(float(norm.value) - 1.0),
        max(1e-9, float(norm.radius)) * scale,
        "sum of all cell densities vs 1, radius includes truncation tail")

    worst = 0.0
    for l in range(4):
        a = density.density_shiu(k, l, "xi_alternating", cfg.digits,
                                 cfg.prime_cutoff, cfg.guard)
        b = density.density_shiu(k, l, "row_sum", cfg.digits,
                                 cfg.prime_cutoff, cfg.guard)
        worst = max(worst, abs(float(a.value - b.value)) - float(a.radius + b.radius))
    add("row_sum_consistency", max(worst, 0.0), 1e-12 * scale,
        "one-sided densities: alternating route vs row sums, beyond combined radii")

    samples = 2_000 if cfg.quick else 10_000
    rng = random.Random(987654321 + k)
    elements = enumerate_lambda_first(k, 50)
    bad = 0
    for _ in range(samples):
        n = rng.randrange(1, 100_001)
        e = rng.choice(elements)
        j = rng.choice((1, 2))
        crit, direct = empirical.lemma_check(n, e, j)
        if crit != direct:
            bad += 1
        elif direct and empirical.hit_count(n, e, j) != 1:
            bad += 1
    add("fractional_part_criterion", bad, 0,
        f"disagreements or non-unique witnesses over {samples} random (n, shape, j)")

    if cfg.N is not None:
        n_emp = cfg.N
        tol_emp = _EMPIRICAL_DEFAULTS.get(k, (10_000, 0.05))[1]
        if cfg.quick:
            tol_emp *= 3.2
    else:
        n_emp, tol_emp = _EMPIRICAL_DEFAULTS.get(k, (10_000, 0.05))
        if cfg.quick:
            n_emp //= 10
            tol_emp *= 3.2  # deviations shrink like 1/sqrt(N); pre-validated
    emp = empirical.empirical_table(k, n_emp, cfg.threads)
    max_idx = max(max(l, m) for l, m in emp.counts)
    ana = density.build_table(k, max(cfg.max_index, max_idx), "direct",
                              cfg.digits, cfg.prime_cutoff, cfg.guard)
    comp = empirical.compare_tables(emp, ana)
    add("empirical_vs_analytic", comp.max_abs_deviation, tol_emp * scale,
        f"max cell deviation at N={n_emp}")

    worst = 0.0
    for m in range(1, 9):
        d = power_sum_direct(k, m, cfg.trunc_B)
        e = power_sum_euler(k, m, cfg.digits, cfg.prime_cutoff)
        over = abs(float(d.value - e.value)) - float(d.radius + e.radius)
        worst = max(worst, over)
    add("power_sum_routes", max(worst, 0.0), 0.0,
        f"direct (box {cfg.trunc_B}) vs Euler route beyond combined radii, m=1..8")

    if k == 2:
        worst = 0.0
        for m in range(1, 9):
            e = power_sum_euler(2, m, cfg.digits, cfg.prime_cutoff)
            cf = zeta(1.5 * m, cfg.digits) / zeta(3 * m, cfg.digits) - 1
            over = abs(float(e.value - cf.value)) - float(e.radius + cf.radius)
            worst = max(worst, over)
        add("closed_form_power_sums", max(worst, 0.0), 0.0,
            "zeta(3m/2)/zeta(3m) - 1 vs Euler route beyond combined radii")

    return {"k": k, "passed": all(c["passed"] for c in checks), "checks": checks}


def density_val(k, l, m, method, cfg):
    return density.density_A(k, l, m, method, cfg.digits, cfg.prime_cutoff,
                             cfg.guard).value


def enumerate_lambda_first(k: int, count: int) -> list:
    bound = 4.0
    while True:
        elems = enumerate_lambda(k, bound)
        if len(elems) >= count:
            return elems[:count]
        bound *= 2


def cmd_verify(cfg: RunConfig) -> int:
    report = run_verify(cfg)
    if cfg.fmt == "json":
        _emit(cfg, _json_text(report))
    elif cfg.fmt == "csv":
        rows = [(c["name"], repr(c["observed"]), repr(c["tolerance"]),
                 int(c["passed"]), c["note"]) for c in report["checks"]]
        _emit(cfg, _csv_text(("name", "observed", "tolerance", "passed", "note"), rows))
    else:
        lines = []
        for c in report["checks"]:
            status = "PASS" if c["passed"] else "FAIL"
            lines.append(
                f"[{status}] {c['name']}: observed {c['observed']:.3e}"
                f" <= tolerance {c['tolerance']:.3e}  ({c['note']})"
            )
        lines.append("all checks passed" if report["passed"] else "FAILURES present")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if report["passed"] else 1


# -- enumerate ----------------------------------------------------------------


def _parse_subset(k: int, specs) -> SubsetSpec:
    elems = []
    for spec in specs or ():
        parts = tuple(int(p) for p in spec.split(","))
        if len(parts) != k - 1:
            raise ValueError(f"subset tuple {spec!r} needs {k - 1} entries for k={k}")
        elems.append(parts)
    return SubsetSpec(k, tuple(elems))


def cmd_enumerate(cfg: RunConfig, what: str, bound: float, limit: int,
                  proper: bool, I_specs, J_specs) -> int:
    if what == "lambda":
        elems = enumerate_lambda(cfg.k, bound, cfg.cap)
        rows = []
        for i, e in enumerate(elems, start=1):
            lam = lambda_value(e, 20)
            rows.append((i, " ".join(map(str, e.b)), e.radicand(),
                         repr(float(lam.value))))
        if cfg.fmt == "csv":
            _emit(cfg, _csv_text(("index", "b", "radicand", "lambda"), rows))
        elif cfg.fmt == "json":
            _emit(cfg, _json_text([
                {"index": i, "b": list(map(int, b.split())), "radicand": M,
                 "lambda": float(lam)}
                for i, b, M, lam in rows
            ]))
        else:
            _emit(cfg, "".join(f"{i:>6}  b=({b})  lambda={lam}\n"
                               for i, b, M, lam in rows))
        return 0
    if what == "kfull":
        rows = []
        for count, (v, rep) in enumerate(enumerate_kfull(cfg.k, limit, proper)):
            if count >= cfg.cap:
                raise ValueError(f"enumeration exceeds cap {cfg.cap}")
            rows.append((v, rep.a, " ".join(map(str, rep.b))))
        if cfg.fmt == "csv":
            _emit(cfg, _csv_text(("value", "a", "b"), rows))
        elif cfg.fmt == "json":
            _emit(cfg, _json_text([
                {"value": v, "a": a, "b": list(map(int, b.split()))}
                for v, a, b in rows
            ]))
        else:
            _emit(cfg, "".join(f"{v}\n" for v, _, _ in rows))
        return 0
    # members_B
    N = cfg.N if cfg.N is not None else 40
    I = _parse_subset(cfg.k, I_specs)
    J = _parse_subset(cfg.k, J_specs)
    members = empirical.members_B(cfg.k, I, J, N)
    if cfg.fmt == "csv":
        _emit(cfg, _csv_text(("n",), [(n,) for n in members]))
    elif cfg.fmt == "json":
        _emit(cfg, _json_text({"k": cfg.k, "N": N, "members": members}))
    else:
        _emit(cfg, "".join(f"{n}\n" for n in members))
    return 0


# -- empirical ----------------------------------------------------------------


def cmd_empirical(cfg: RunConfig, compare: bool) -> int:
    N = cfg.N if cfg.N is not None else _EMPIRICAL_DEFAULTS.get(cfg.k, (10_000, 0.05))[0]
    if cfg.quick:
        N //= 10
    emp = empirical.empirical_table(cfg.k, max(N, 1), cfg.threads)
    comp = None
    if compare:
        max_idx = max(max(l, m) for l, m in emp.counts)
        ana = density.build_table(cfg.k, max_idx, "direct", cfg.digits,
                                  cfg.prime_cutoff, cfg.guard)
        comp = empirical.compare_tables(emp, ana)
    rows = []
    for (l, m) in sorted(emp.counts):
        c = emp.counts[(l, m)]
        row = [cfg.k, l, m, c, repr(c / emp.N)]
        if comp is not None:
            freq, val, dev = comp.cells[(l, m)]
            row += ["" if val is None else repr(val), repr(dev)]
        rows.append(tuple(row))
    header = ("k", "l", "m", "count", "frequency")
    if comp is not None:
        header += ("analytic", "deviation")
    if cfg.fmt == "csv":
        _emit(cfg, _csv_text(header, rows))
    elif cfg.fmt == "json":
        cells = [dict(zip(header, r)) for r in rows]
        obj = {"k": cfg.k, "N": emp.N, "bound": emp.bound, "cells": cells}
        if comp is not None:
            obj["max_abs_deviation"] = comp.max_abs_deviation
        _emit(cfg, _json_text(obj))
    else:
        body = [" ".join(str(x) for x in r) for r in rows]
        if comp is not None:
            body.append(f"max_abs_deviation {comp.max_abs_deviation:.6f}")
        _emit(cfg, "\n".join(body) + "\n")
    return 0


# -- parser -------------------------------------------------------------------


# option precedence is flags > config file > built-in defaults; the parser
# suppresses unset attributes so merging can tell "given" from "defaulted"
_DEFAULTS = {
    "k": 2, "digits": 30, "max_index": 5, "trunc_B": 10_000, "guard": 40,
    "prime_cutoff": DEFAULT_PRIME_CUTOFF, "N": None, "fmt": "text",
    "out": None, "threads": 1, "quick": False, "cap": DEFAULT_ENUM_CAP,
    "tolerance_scale": 1.0, "method": "direct",
    "bound": 30.0, "limit": 100, "all": False, "I": None, "J": None,
    "compare": False,
}


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    p = argparse.ArgumentParser(
        prog="kfull",
        description="densities of integers classified by k-full numbers "
                    "between successive kth powers, with error bounds",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--k", type=int, default=S)
        sp.add_argument("--digits", type=int, default=S)
        sp.add_argument("--max-index", type=int, default=S, dest="max_index")
        sp.add_argument("--trunc-B", type=int, default=S, dest="trunc_B")
        sp.add_argument("--r-max", type=int, default=S, dest="guard",
                        help="series guard depth beyond each truncation point")
        sp.add_argument("--prime-cutoff", type=int, default=S, dest="prime_cutoff")
        sp.add_argument("--N", type=int, default=S)
        sp.add_argument("--format", choices=("csv", "json", "text"),
                        default=S, dest="fmt")
        sp.add_argument("--out", default=S)
        sp.add_argument("--threads", type=int, default=S)
        sp.add_argument("--quick", action="store_true", default=S)
        sp.add_argument("--cap", type=int, default=S)
        sp.add_argument("--config", default=S,
                        help="JSON file with option defaults (flags win)")

    t = sub.add_parser("table", help="cell-density table d(A[l,m])")
    common(t)
    t.add_argument("--method", choices=("direct", "inversion", "xi"), default=S)

    c = sub.add_parser("constants", help="named constants with radii")
    common(c)

    v = sub.add_parser("verify", help="run the full cross-check suite")
    common(v)
    v.add_argument("--tolerance-scale", type=float, default=S,
                   dest="tolerance_scale")

    e = sub.add_parser("enumerate", help="stream shapes, k-full integers, or members")
    common(e)
    e.add_argument("what", choices=("lambda", "kfull", "members_B"))
    e.add_argument("--bound", type=float, default=S, help="lambda upper bound")
    e.add_argument("--limit", type=int, default=S, help="k-full value bound")
    e.add_argument("--all", action="store_true", default=S,
                   help="include perfect kth powers in kfull output")
    e.add_argument("--I", action="append", default=S,
                   help="left subset element as comma-separated b tuple (repeatable)")
    e.add_argument("--J", action="append", default=S,
                   help="right subset element as comma-separated b tuple (repeatable)")

    m = sub.add_parser("empirical", help="exact cell counts up to N")
    common(m)
    m.add_argument("--compare", action="store_true", default=S,
                   help="add analytic values and deviations")

    return p


def _merge_options(args) -> dict:
    given = vars(args).copy()
    command = given.pop("command")
    what = given.pop("what", None)
    merged = dict(_DEFAULTS)
    cfg_path = given.pop("config", None)
    if cfg_path:
        with open(cfg_path) as fh:
            from_file = json.load(fh)
        if not isinstance(from_file, dict):
            raise ValueError("config file must hold a JSON object")
        for key, val in from_file.items():
            key = {"format": "fmt", "r_max": "guard"}.get(key, key)
            if key not in merged:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = val
    merged.update(given)
    merged["command"] = command
    merged["what"] = what
    return merged


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opt = _merge_options(args)
        cfg = RunConfig(
            k=opt["k"], max_index=opt["max_index"], digits=opt["digits"],
            trunc_B=opt["trunc_B"], guard=opt["guard"],
            prime_cutoff=opt["prime_cutoff"], N=opt["N"], fmt=opt["fmt"],
            out=opt["out"], threads=opt["threads"], quick=opt["quick"],
            cap=opt["cap"], tolerance_scale=opt["tolerance_scale"],
            method=opt["method"],
        )
        cfg.validate()
        if opt["command"] == "table":
            return cmd_table(cfg)
        if opt["command"] == "constants":
            return cmd_constants(cfg)
        if opt["command"] == "verify":
            return cmd_verify(cfg)
        if opt["command"] == "enumerate":
            return cmd_enumerate(cfg, opt["what"], opt["bound"], opt["limit"],
                                 not opt["all"], opt["I"], opt["J"])
        if opt["command"] == "empirical":
            return cmd_empirical(cfg, opt["compare"])
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
