"""Command-line front end: rules, coefficients, quadrature, studies, verify.

Artifacts are CSV or JSON on stdout (or --out FILE) and are byte-identical
across repeated invocations with the same flags.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Callable, Iterable, Sequence

import numpy as np

from .analysis import (
    ShrinkSchedule,
    coefficient_decay_study,
    composite_convergence_study,
    merge_reports,
    quadrature_convergence_study,
    function_by_id,
    trig_moment,
)
from .coefficients import kind_relations_check
from .polynomials import ChebKind, Interval
from .quadrature import Partition, integrate, integrate_composite
from .rules import (
    QuadKind,
    closed_form_orthogonality,
    family_for_rule,
    make_rule,
    rule_thetas,
)

__all__ = ["main"]

_RULE_CHOICES = [k.value for k in QuadKind]


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_range(text: str, what: str) -> list[int]:
    """Parse 'LO..HI' (inclusive) into a list of ints."""
    parts = text.split("..")
    if len(parts) != 2:
        raise ValueError(f"{what} must look like LO..HI, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"{what} bounds must be integers, got {text!r}") from exc
    if hi < lo:
        raise ValueError(f"{what} upper bound below lower bound in {text!r}")
    return list(range(lo, hi + 1))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_nodes(args) -> int:
    rule = make_rule(QuadKind(args.rule), args.n)
    if args.json:
        _emit(_json_dumps(rule.to_json_dict()), args.out)
    else:
        lines = ["j,theta,node,weight"]
        for j in range(rule.n):
            lines.append(
                f"{j},{format(rule.thetas[j], '.17g')},"
                f"{format(rule.nodes[j], '.17g')},{format(rule.weights[j], '.17g')}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_coeffs(args) -> int:
    from .coefficients import discrete_coeffs

    fn = function_by_id(args.fn, args.m)
    iv = Interval(args.a, args.b)
    cs = discrete_coeffs(QuadKind(args.rule), fn.sampled(), iv, args.n)
    if args.json:
        _emit(_json_dumps(cs.to_json_dict()), args.out)
    else:
        _emit(cs.to_csv(), args.out)
    return 0


def _cmd_quad(args) -> int:
    fn = function_by_id(args.fn, args.m)
    iv = Interval(args.a, args.b)
    kind = QuadKind(args.rule)
    if args.patches == 1:
        res = integrate(kind, fn.sampled(), iv, args.n)
    else:
        part = Partition.equispaced(iv, args.patches)
        res = integrate_composite(kind, fn.sampled(), part, args.n)
    abs_error = None
    if fn.exact_integral is not None:
        abs_error = abs(fn.exact_integral(iv) - res.value)
    payload = {
        "rule": kind.value,
        "n": args.n,
        "patches": args.patches,
        "value": res.value,
        "abs_error": abs_error,
        "evaluations": res.evaluations,
    }
    _emit(_json_dumps(payload), args.out)
    return 0


def _cmd_study_decay(args) -> int:
    fn = function_by_id(args.fn, args.m)
    ks = _parse_range(args.k_range, "--k-range") if args.k_range else range(1, args.n)
    schedule = ShrinkSchedule.doubling(args.p_max)
    report = coefficient_decay_study(QuadKind(args.rule), fn, args.n, ks, schedule)
    _emit(report.to_csv(), args.out)
    return 0


def _cmd_study_quad(args) -> int:
    if (args.n is None) == (args.n_range is None):
        raise ValueError("give exactly one of --n or --n-range")
    ns = [args.n] if args.n is not None else _parse_range(args.n_range, "--n-range")
    if args.fn == "xm_abs_exp":
        if (args.m is None) == (args.m_range is None):
            raise ValueError("give exactly one of --m or --m-range")
        ms: list[int | None] = (
            [args.m] if args.m is not None else _parse_range(args.m_range, "--m-range")
        )
    else:
        ms = [args.m]
    kind = QuadKind(args.rule)
    schedule = ShrinkSchedule.doubling(args.p_max)
    reports = [
        quadrature_convergence_study(kind, function_by_id(args.fn, m), ns, schedule)
        for m in ms
    ]
    _emit(merge_reports(*reports).to_csv(), args.out)
    return 0


def _cmd_study_composite(args) -> int:
    fn = function_by_id(args.fn, args.m)
    iv = Interval(args.a, args.b)
    ps = []
    p = 1
    while p <= args.p_max:
        ps.append(p)
        p *= 2
    report = composite_convergence_study(QuadKind(args.rule), fn, args.n, iv, ps)
    _emit(report.to_csv(), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _family_matrix(family: ChebKind, thetas: np.ndarray, i_max: int) -> np.ndarray:
    """Rows 0..i_max of the family evaluated at the given angles.

    Quotient forms are safe here: callers only pass angles that are interior
    for the quotient families (first-kind angles need no quotient at all).
    """
    i = np.arange(i_max + 1).reshape(-1, 1)
    th = thetas.reshape(1, -1)
    if family is ChebKind.FIRST:
        return np.cos(i * th)
    if family is ChebKind.SECOND:
        return np.sin((i + 1) * th) / np.sin(th)
    if family is ChebKind.THIRD:
        return np.cos((i + 0.5) * th) / np.cos(0.5 * th)
    return np.sin((i + 0.5) * th) / np.sin(0.5 * th)


def _node_factors(kind: QuadKind, thetas: np.ndarray, n: int) -> np.ndarray:
    if kind is QuadKind.FEJER_I:
        return np.ones_like(thetas)
    if kind is QuadKind.CLENSHAW_CURTIS:
        g = np.ones(n)
        g[0] = 2.0
        g[-1] = 2.0
        return 1.0 / g
    if kind is QuadKind.FEJER_II:
        return np.sin(thetas) ** 2
    if kind is QuadKind.FEJER_III:
        return 1.0 + np.cos(thetas)
    return 1.0 - np.cos(thetas)


def _suite_orthogonality() -> tuple[bool, str]:
    """Node sums of P_i P_k against their closed forms, all kinds, n <= 16."""
    worst = 0.0
    worst_tol = math.inf
    ok = True
    for kind in QuadKind:
        family = family_for_rule(kind)
        for n in range(kind.min_nodes, 17):
            thetas = rule_thetas(kind, n)
            factors = _node_factors(kind, thetas, n)
            vals = _family_matrix(family, thetas, 4 * n + 3)
            tol = 1e-11 * n
            for i in range(4 * n + 4):
                vi = vals[i] * factors
                for k in range(n):
                    direct = math.fsum((vi * vals[k]).tolist())
                    closed = closed_form_orthogonality(kind, n, i, k)
                    diff = abs(direct - closed)
                    if diff > worst:
                        worst = diff
                        worst_tol = tol
                    if diff > tol:
                        ok = False
    return ok, f"max|direct-closed|={worst:.3e} (tol at worst case {worst_tol:.1e})"


def _suite_exactness() -> tuple[bool, str]:
    """Each n-point rule integrates degrees <= n-1 exactly on random intervals."""
    rng = np.random.default_rng(271828)
    intervals = []
    while len(intervals) < 20:
        lo, hi = np.sort(rng.uniform(-2.0, 2.0, size=2))
        if hi - lo >= 0.25:
            intervals.append(Interval(float(lo), float(hi)))
    worst = 0.0
    ok = True
    for kind in QuadKind:
        for n in range(kind.min_nodes, 13):
            rule = make_rule(kind, n)
            for iv in intervals:
                half_h = 0.5 * iv.h
                xs = np.array([half_h * t + iv.midpoint for t in rule.nodes])
                for d in range(n):
                    q = half_h * math.fsum((rule.weights * xs**d).tolist())
                    exact = (iv.b ** (d + 1) - iv.a ** (d + 1)) / (d + 1)
                    scale = (abs(iv.a) ** (d + 1) + abs(iv.b) ** (d + 1)) / (d + 1)
                    rel = abs(q - exact) / scale
                    worst = max(worst, rel)
                    if rel > 1e-12:
                        ok = False
    return ok, f"max scaled error={worst:.3e} (tol 1e-12)"


def _suite_kind_relations() -> tuple[bool, str]:
    """Cross-family coefficient identities for e^x on [-0.5, 1]."""
    fn = function_by_id("exp")
    report = kind_relations_check(fn.sampled(), Interval(-0.5, 1.0), k_max=6, n_ref=8192)
    ok = report.max_residual < 1e-10
    return ok, f"max residual={report.max_residual:.3e} (tol 1e-10)"


def _suite_trig_moments() -> tuple[bool, str]:
    """sin^l cos^q x {cos,sin}(k t) moments vanish on [-pi,pi] for l+q < k."""
    worst = 0.0
    ok = True
    for ell in range(5):
        for q in range(5):
            for k in range(ell + q + 1, 13):
                for parity in (0, 1):
                    v = abs(trig_moment(ell, q, k, parity))
                    worst = max(worst, v)
                    if v > 1e-10:
                        ok = False
    return ok, f"max |moment|={worst:.3e} (tol 1e-10)"


_SUITES: dict[str, Callable[[], tuple[bool, str]]] = {
    "orthogonality": _suite_orthogonality,
    "exactness": _suite_exactness,
    "kind-relations": _suite_kind_relations,
    "trig-moments": _suite_trig_moments,
}


def _cmd_verify(args) -> int:
    names = [args.suite] if args.suite else list(_SUITES)
    all_ok = True
    for name in names:
        ok, detail = _SUITES[name]()
        all_ok = all_ok and ok
        print(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})")
    print(f"verify: {'PASS' if all_ok else 'FAIL'}")
    return 0 if all_ok else 2


# ---------------------------------------------------------------------------
# parser assembly


def _add_fn_args(sp, fn_required: bool, fn_default: str | None = None) -> None:
    sp.add_argument("--fn", required=fn_required, default=fn_default,
                    help="test function id: xm_abs_exp (with --m), exp, poly:<c0,c1,...>")
    sp.add_argument("--m", type=int, default=None, help="regularity parameter for xm_abs_exp")


def _build_parser() -> _Parser:
    p = _Parser(prog="localcheb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="command", required=True)

    sp = sub.add_parser("nodes", help="print one rule's angles, nodes, and weights")
    sp.add_argument("--rule", required=True, choices=_RULE_CHOICES)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_nodes)

    sp = sub.add_parser("coeffs", help="discrete coefficients of a function on [a,b]")
    sp.add_argument("--rule", required=True, choices=_RULE_CHOICES)
    sp.add_argument("--n", type=int, required=True)
    _add_fn_args(sp, fn_required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_coeffs)

    sp = sub.add_parser("quad", help="integrate a function over [a,b]")
    sp.add_argument("--rule", required=True, choices=_RULE_CHOICES)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--patches", type=int, default=1)
    _add_fn_args(sp, fn_required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_quad)

    sp = sub.add_parser("study-decay", help="coefficient decay over the shrink schedule")
    sp.add_argument("--rule", required=True, choices=_RULE_CHOICES)
    sp.add_argument("--n", type=int, required=True)
    _add_fn_args(sp, fn_required=False, fn_default="xm_abs_exp")
    sp.add_argument("--k-range", default=None, help="coefficient indices LO..HI (default 1..n-1)")
    sp.add_argument("--p-max", type=int, default=1024)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_study_decay)

    sp = sub.add_parser("study-quad", help="quadrature error over the shrink schedule")
    sp.add_argument("--rule", required=True, choices=_RULE_CHOICES)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--n-range", default=None, help="node counts LO..HI")
    _add_fn_args(sp, fn_required=False, fn_default="xm_abs_exp")
    sp.add_argument("--m-range", default=None, help="regularities LO..HI")
    sp.add_argument("--p-max", type=int, default=1024)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_study_quad)

    sp = sub.add_parser("study-composite", help="composite-rule error on a fixed interval")
    sp.add_argument("--rule", required=True, choices=_RULE_CHOICES)
    sp.add_argument("--n", type=int, required=True)
    _add_fn_args(sp, fn_required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--p-max", type=int, default=256)
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=_cmd_study_composite)

    sp = sub.add_parser("verify", help="run the property suites and report pass/fail")
    sp.add_argument("--suite", choices=sorted(_SUITES), default=None)
    sp.set_defaults(handler=_cmd_verify)

    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"localcheb: error: {exc}", file=sys.stderr)
        return 1
