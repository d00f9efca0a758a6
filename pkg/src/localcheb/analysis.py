"""Convergence studies: coefficient decay and quadrature error on shrinking intervals.

The harness measures two empirical rates across a halving schedule:

* ndr, the numerical decay rate of a discrete coefficient, log2 of the ratio
  of successive magnitudes;
* noc, the numerical order of convergence of a quadrature error, log2 of the
  ratio of successive errors.

Each is paired with its theoretical prediction (tdr, toc) so a single CSV
artifact carries both.  Rows whose measured value sits below the precision
floor are flagged and excluded from rate estimation; a rate cell is also left
empty when its predecessor row was floored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .coefficients import SampledFunction, discrete_coeffs
from .polynomials import ChebKind, Interval
from .quadrature import Partition, integrate, integrate_composite
from .rules import QuadKind, family_for_rule

__all__ = [
    "DecayRow",
    "QuadRow",
    "ShrinkSchedule",
    "StudyReport",
    "TestFunction",
    "coefficient_decay_study",
    "composite_convergence_study",
    "exp_fn",
    "merge_reports",
    "poly_fn",
    "power_abs_exp",
    "quadrature_convergence_study",
    "rate",
    "function_by_id",
    "theoretical_decay_rate",
    "theoretical_order",
    "trig_moment",
]

# quadrature errors below FLOOR_SCALE * (1 + |integral|) are not rated
FLOOR_SCALE = 5e-15
# coefficient magnitudes below COEFF_FLOOR_SCALE * (1 + |c~_0|) are not rated;
# the roundoff of an n-term normalized cosine sum is about n*eps*max|f|, so
# this sits at the noise scale for small n rather than at the quadrature scale
COEFF_FLOOR_SCALE = 1e-15


@dataclass(frozen=True)
class TestFunction:
    """A study function with optional exact references.

    ``m`` is the regularity index (None for smooth functions).
    ``exact_integral`` returns the exact value of the integral over an
    interval; it comes from a closed-form antiderivative, never from a finer
    quadrature, so error measurements near 1e-16 stay meaningful.
    """

    # not a pytest test class despite the Test* name
    __test__ = False

    fn_id: str
    m: int | None
    evaluator: Callable[[float], float]
    antiderivative: Callable[[float], float] | None = None
    exact_integral: Callable[[Interval], float] | None = None

    def sampled(self) -> SampledFunction:
        return SampledFunction(self.evaluator, regularity_m=self.m)


def power_abs_exp(m: int) -> TestFunction:
    """f(x) = x^m |x| + e^x, which has exactly m continuous derivatives at 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")

    def f(x: float) -> float:
        return x**m * abs(x) + math.exp(x)

    def prim(x: float) -> float:
        # antiderivative of x^m |x| is |x| x^(m+1) / (m+2) on both half-lines
        return abs(x) * x ** (m + 1)

    def antider(x: float) -> float:
        return prim(x) / (m + 2) + math.exp(x)

    def exact(iv: Interval) -> float:
        # e^b - e^a written via expm1 so nearby endpoints do not cancel
        poly = (prim(iv.b) - prim(iv.a)) / (m + 2)
        return poly + math.exp(iv.a) * math.expm1(iv.b - iv.a)

    return TestFunction(f"xm_abs_exp(m={m})", m, f, antider, exact)


def exp_fn() -> TestFunction:
    def exact(iv: Interval) -> float:
        return math.exp(iv.a) * math.expm1(iv.b - iv.a)

    return TestFunction("exp", None, math.exp, math.exp, exact)


def poly_fn(coeffs: Sequence[float]) -> TestFunction:
    """f(x) = sum_i coeffs[i] x^i."""
    cs = tuple(float(c) for c in coeffs)
    if not cs:
        raise ValueError("poly needs at least one coefficient")

    def f(x: float) -> float:
        acc = 0.0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    def antider(x: float) -> float:
        return math.fsum(c * x ** (i + 1) / (i + 1) for i, c in enumerate(cs))

    def exact(iv: Interval) -> float:
        return math.fsum(
            c * (iv.b ** (i + 1) - iv.a ** (i + 1)) / (i + 1) for i, c in enumerate(cs)
        )

    label = "poly:" + ",".join(format(c, ".17g") for c in cs)
    return TestFunction(label, None, f, antider, exact)


def function_by_id(fn_id: str, m: int | None = None) -> TestFunction:
    """Resolve a study function from its command-line id.

    Supported: ``xm_abs_exp`` (requires m), ``exp``, ``poly:<c0,c1,...>``.
    """
    if fn_id == "xm_abs_exp":
        if m is None:
            raise ValueError("xm_abs_exp requires the regularity parameter m")
        return power_abs_exp(m)
    if fn_id == "exp":
        return exp_fn()
    if fn_id.startswith("poly:"):
        body = fn_id[len("poly:") :]
        try:
            coeffs = [float(tok) for tok in body.split(",") if tok.strip() != ""]
        except ValueError as exc:
            raise ValueError(f"bad polynomial coefficient list {body!r}") from exc
        return poly_fn(coeffs)
    raise ValueError(f"unknown test function id {fn_id!r}")


@dataclass(frozen=True)
class ShrinkSchedule:
    """Doubling values of p, each mapped to the interval [-1/(2p), 1/p].

    Halving the interval this way keeps 0 strictly interior, so functions
    with a kink at 0 keep their finite regularity on every step.
    """

    p_values: tuple[int, ...]

    def __post_init__(self):
        if not self.p_values:
            raise ValueError("schedule must contain at least one p")
        for prev, cur in zip(self.p_values, self.p_values[1:]):
            if cur <= prev:
                raise ValueError("p values must be strictly increasing")
        if self.p_values[0] < 1:
            raise ValueError("p values must be >= 1")

    @classmethod
    def doubling(cls, p_max: int) -> "ShrinkSchedule":
        if p_max < 1:
            raise ValueError("p_max must be >= 1")
        ps = []
        p = 1
        while p <= p_max:
            ps.append(p)
            p *= 2
        return cls(tuple(ps))

    @staticmethod
    def interval(p: int) -> Interval:
        return Interval(-0.5 / p, 1.0 / p)

    @staticmethod
    def h(p: int) -> float:
        return 1.5 / p


def rate(value_coarse: float, value_fine: float) -> float:
    """log2 of the ratio of a halving pair; NaN when either side is not positive."""
    if value_coarse <= 0.0 or value_fine <= 0.0:
        return math.nan
    return math.log2(value_coarse / value_fine)


def _eoc(e_prev: float, e_cur: float, h_prev: float, h_cur: float) -> float:
    """Order estimate across one refinement step of any ratio.

    Reduces to rate() for a halving step; the general form divides by the
    log of the width ratio so non-dyadic schedules report the same order.
    """
    if e_prev <= 0.0 or e_cur <= 0.0:
        return math.nan
    ratio = h_prev / h_cur
    if ratio == 2.0:
        return rate(e_prev, e_cur)
    return math.log(e_prev / e_cur) / math.log(ratio)


def theoretical_decay_rate(k: int, m: int | None) -> float:
    """Predicted ndr of coefficient k for a function of regularity m."""
    if m is None:
        return float(k)
    return float(min(k, m + 1))


def theoretical_order(
    kind: QuadKind, n: int, m: int | None, composite: bool = False
) -> float:
    """Predicted noc of the n-point rule; composite rules lose one order.

    The extra degree of exactness at odd n comes from odd-monomial
    cancellation, so only the rules with symmetric nodes and weights get it;
    the third and fourth kind node sets are asymmetric and do not.
    """
    symmetric = kind in (QuadKind.FEJER_I, QuadKind.CLENSHAW_CURTIS, QuadKind.FEJER_II)
    n0 = 1 if (symmetric and n % 2 == 1) else 0
    base = n + n0 if composite else n + 1 + n0
    if m is None:
        return float(base)
    return float(min(base, m + 2))


@dataclass(frozen=True)
class DecayRow:
    family: ChebKind
    rule: QuadKind
    m: int | None
    k: int
    p: int
    h: float
    coeff_abs: float
    ndr: float | None
    tdr: float
    floored: bool


@dataclass(frozen=True)
class QuadRow:
    rule: QuadKind
    m: int | None
    n: int
    p: int
    h: float
    error: float
    noc: float | None
    toc: float
    floored: bool


def _fmt(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return ""
    return format(x, ".17g")


@dataclass(frozen=True)
class StudyReport:
    """Rows of one study kind; serializes to a fixed-column CSV."""

    study: str  # "decay" or "quad"
    rows: tuple[DecayRow, ...] | tuple[QuadRow, ...]

    def to_csv(self) -> str:
        if self.study == "decay":
            lines = ["family,rule,m,k,p,h,coeff_abs,ndr,tdr"]
            for r in self.rows:
                ndr = None if r.floored else r.ndr
                lines.append(
                    ",".join(
                        [
                            r.family.value,
                            r.rule.value,
                            _fmt(r.m),
                            str(r.k),
                            str(r.p),
                            _fmt(r.h),
                            _fmt(r.coeff_abs),
                            _fmt(ndr),
                            _fmt(r.tdr),
                        ]
                    )
                )
        elif self.study == "quad":
            lines = ["rule,m,n,p,h,error,noc,toc,floor_flag"]
            for r in self.rows:
                noc = None if r.floored else r.noc
                lines.append(
                    ",".join(
                        [
                            r.rule.value,
                            _fmt(r.m),
                            str(r.n),
                            str(r.p),
                            _fmt(r.h),
                            _fmt(r.error),
                            _fmt(noc),
                            _fmt(r.toc),
                            "1" if r.floored else "0",
                        ]
                    )
                )
        else:
            raise ValueError(f"unknown study kind {self.study!r}")
        return "\n".join(lines) + "\n"


def _decay_sort_key(r: DecayRow):
    return (r.p, r.k)


def _quad_sort_key(r: QuadRow):
    return (r.p, r.n, -1 if r.m is None else r.m)


def coefficient_decay_study(
    kind: QuadKind,
    f: TestFunction,
    n: int,
    ks: Iterable[int],
    schedule: ShrinkSchedule,
) -> StudyReport:
    """Track |c~_k| over the shrink schedule for each requested k.

    The floor on each step is COEFF_FLOOR_SCALE * (1 + |c~_0|) of that step,
    since c~_0 tracks the local function magnitude.  A rate is recorded only
    when the current and previous magnitudes are both above their floors.
    """
    k_list = sorted(set(int(k) for k in ks))
    if not k_list:
        raise ValueError("need at least one coefficient index")
    if k_list[0] < 1 or k_list[-1] > n - 1:
        raise ValueError("coefficient indices must lie in 1..n-1")
    family = family_for_rule(kind)
    sf = f.sampled()
    rows: list[DecayRow] = []
    prev: dict[int, tuple[float, float, bool]] = {}
    for p in schedule.p_values:
        iv = ShrinkSchedule.interval(p)
        h = ShrinkSchedule.h(p)
        cs = discrete_coeffs(kind, sf, iv, n)
        floor = COEFF_FLOOR_SCALE * (1.0 + abs(cs.values[0]))
        for k in k_list:
            mag = abs(cs.values[k])
            floored = mag < floor
            ndr: float | None = None
            if k in prev:
                pmag, ph, pfloored = prev[k]
                if not floored and not pfloored:
                    r = _eoc(pmag, mag, ph, h)
                    ndr = None if math.isnan(r) else r
            rows.append(
                DecayRow(
                    family=family,
                    rule=kind,
                    m=f.m,
                    k=k,
                    p=p,
                    h=ShrinkSchedule.h(p),
                    coeff_abs=mag,
                    ndr=ndr,
                    tdr=theoretical_decay_rate(k, f.m),
                    floored=floored,
                )
            )
            prev[k] = (mag, h, floored)
    rows.sort(key=_decay_sort_key)
    return StudyReport("decay", tuple(rows))


def quadrature_convergence_study(
    kind: QuadKind,
    f: TestFunction,
    ns: int | Iterable[int],
    schedule: ShrinkSchedule,
) -> StudyReport:
    """Quadrature error over the shrink schedule, per node count.

    Requires f.exact_integral; the error floor is FLOOR_SCALE * (1 + |exact|)
    per step.
    """
    if f.exact_integral is None:
        raise ValueError("quadrature study needs a test function with an exact integral")
    n_list = [ns] if isinstance(ns, int) else sorted(set(int(n) for n in ns))
    if not n_list:
        raise ValueError("need at least one node count")
    rows: list[QuadRow] = []
    for n in n_list:
        prev: tuple[float, float, bool] | None = None
        for p in schedule.p_values:
            iv = ShrinkSchedule.interval(p)
            h = ShrinkSchedule.h(p)
            exact = f.exact_integral(iv)
            q = integrate(kind, f.sampled(), iv, n)
            err = abs(exact - q.value)
            floored = err < FLOOR_SCALE * (1.0 + abs(exact))
            noc: float | None = None
            if prev is not None:
                perr, ph, pfloored = prev
                if not floored and not pfloored:
                    r = _eoc(perr, err, ph, h)
                    noc = None if math.isnan(r) else r
            rows.append(
                QuadRow(
                    rule=kind,
                    m=f.m,
                    n=n,
                    p=p,
                    h=h,
                    error=err,
                    noc=noc,
                    toc=theoretical_order(kind, n, f.m),
                    floored=floored,
                )
            )
            prev = (err, h, floored)
    rows.sort(key=_quad_sort_key)
    return StudyReport("quad", tuple(rows))


def composite_convergence_study(
    kind: QuadKind,
    f: TestFunction,
    n: int,
    interval: Interval,
    p_values: Iterable[int],
) -> StudyReport:
    """Composite-rule error on a fixed interval as the patch count doubles.

    Rows reuse the quadrature schema with p = patch count and h = patch width.
    """
    if f.exact_integral is None:
        raise ValueError("composite study needs a test function with an exact integral")
    ps = sorted(set(int(p) for p in p_values))
    if not ps or ps[0] < 1:
        raise ValueError("patch counts must be positive")
    exact = f.exact_integral(interval)
    floor = FLOOR_SCALE * (1.0 + abs(exact))
    rows: list[QuadRow] = []
    prev: tuple[float, float, bool] | None = None
    for p in ps:
        part = Partition.equispaced(interval, p)
        q = integrate_composite(kind, f.sampled(), part, n)
        err = abs(exact - q.value)
        h = interval.h / p
        floored = err < floor
        noc: float | None = None
        if prev is not None:
            perr, ph, pfloored = prev
            if not floored and not pfloored:
                r = _eoc(perr, err, ph, h)
                noc = None if math.isnan(r) else r
        rows.append(
            QuadRow(
                rule=kind,
                m=f.m,
                n=n,
                p=p,
                h=h,
                error=err,
                noc=noc,
                toc=theoretical_order(kind, n, f.m, composite=True),
                floored=floored,
            )
        )
        prev = (err, h, floored)
    rows.sort(key=_quad_sort_key)
    return StudyReport("quad", tuple(rows))


def merge_reports(*reports: StudyReport) -> StudyReport:
    """Concatenate reports of one study kind into a single sorted artifact."""
    if not reports:
        raise ValueError("nothing to merge")
    study = reports[0].study
    if any(r.study != study for r in reports):
        raise ValueError("cannot merge reports of different study kinds")
    rows = [row for rep in reports for row in rep.rows]
    rows.sort(key=_decay_sort_key if study == "decay" else _quad_sort_key)
    return StudyReport(study, tuple(rows))


def trig_moment(ell: int, q: int, k: int, parity: int, num_points: int = 10000) -> float:
    """Trapezoid estimate of the moment sin^ell(t) cos^q(t) x {cos,sin}(k t) on [-pi, pi].

    parity 0 pairs with cos(k t), parity 1 with sin(k t).  The moment vanishes
    whenever ell + q < k, which is what callers verify.
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if ell < 0 or q < 0 or k < 0:
        raise ValueError("ell, q, k must be nonnegative")
    ts = np.linspace(-math.pi, math.pi, num_points)
    osc = np.cos(k * ts) if parity == 0 else np.sin(k * ts)
    ys = np.sin(ts) ** ell * np.cos(ts) ** q * osc
    return float(np.trapezoid(ys, ts))
