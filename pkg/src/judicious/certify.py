"""Certified re-verification of the reduced inequality systems.

Each system fixes six nonnegative variables, a rational sum constraint, a
handful of linear domain inequalities, and per-part linear forms B_i, A_i.
Setting three of the six boundary conditions to equality yields a case; the
case is certified by tiling its two free dimensions with boxes of side
epsilon and lower-bounding, on every feasible box, the sum of the three caps

    q~_i = min(1, (16/27) / (B_i + sqrt(B_i^2 + (32/27) A_i)))

using exact rational corner maxima of the affine B_i/A_i and an upward
rounded rational square root.  A case is certified when the minimum over
all feasible boxes, minus a declared slack of 1e-9, exceeds 2.

Floating point appears only as a screening pass: boxes whose (float) cap sum
is within 1e-6 of the running minimum are re-evaluated exactly, so the
reported bound is backed end to end by rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, isqrt

import numpy as np

SLACK = Fraction(1, 10**9)
SCREEN_MARGIN = 1e-6
_SQRT_SCALE = 10**20


def sqrt_upper(x: Fraction) -> Fraction:
    """A rational u >= sqrt(x) with error below 1/(den(x) * 1e20)."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    return Fraction(isqrt(p * q * _SQRT_SCALE * _SQRT_SCALE) + 1, q * _SQRT_SCALE)


def cap_lower_bound(B: Fraction, A: Fraction) -> Fraction:
    """Lower bound on min(1, root of q*B + q^2*A = 8/27) given upper bounds
    B, A on the true coefficients (the cap is nonincreasing in both)."""
    B = max(B, Fraction(0))
    A = max(A, Fraction(0))
    if B == 0 and A == 0:
        return Fraction(1)
    denom = B + sqrt_upper(B * B + Fraction(32, 27) * A)
    return min(Fraction(1), Fraction(16, 27) / denom)


# ---------------------------------------------------------------------------
# Linear forms over named variables, exact rational coefficients.
# ---------------------------------------------------------------------------


class LinForm:
    """Affine form const + sum(coeffs[v] * v)."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const=0, coeffs=None):
        self.const = Fraction(const)
        self.coeffs: dict[str, Fraction] = {}
        if coeffs:
            for v, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    self.coeffs[v] = c

    def __repr__(self):
        terms = [f"{c}*{v}" for v, c in sorted(self.coeffs.items())]
        if self.const or not terms:
            terms.insert(0, str(self.const))
        return " + ".join(terms)

    def __eq__(self, other):
        return (
            isinstance(other, LinForm)
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.const, tuple(sorted(self.coeffs.items()))))

    def coeff(self, var: str) -> Fraction:
        return self.coeffs.get(var, Fraction(0))

    def subst(self, var: str, value: "LinForm") -> "LinForm":
        c = self.coeffs.get(var)
        if c is None:
            return self
        coeffs = dict(self.coeffs)
        del coeffs[var]
        const = self.const + c * value.const
        for v, cv in value.coeffs.items():
            coeffs[v] = coeffs.get(v, Fraction(0)) + c * cv
        return LinForm(const, coeffs)

    def eval_at(self, point: dict) -> Fraction:
        return self.const + sum(c * point[v] for v, c in self.coeffs.items())

    def trivially_nonneg(self) -> bool:
        return self.const >= 0 and all(c >= 0 for c in self.coeffs.values())

    def is_zero(self) -> bool:
        return self.const == 0 and not self.coeffs


def lf(const=0, **coeffs) -> LinForm:
    return LinForm(const, {v: Fraction(c) for v, c in coeffs.items()})


def _f(s) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# System specifications.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryCondition:
    label: str
    var: str        # variable eliminated when the condition is active
    value: LinForm  # its substituted expression


@dataclass(frozen=True)
class SystemSpec:
    id: str
    vars: tuple[str, ...]
    sum_coeffs: dict[str, Fraction]  # sum(coeff * var) = 1
    domain: tuple[tuple[str, LinForm], ...]  # (label, form) meaning form >= 0
    B: tuple[LinForm, ...]
    A: tuple[LinForm, ...]
    boundary: tuple[BoundaryCondition, ...]


def _bc(label: str, var: str, value: LinForm) -> BoundaryCondition:
    return BoundaryCondition(label, var, value)


def _avars_tail():
    return (
        _bc("a1=0", "a1", lf()),
        _bc("a2=0", "a2", lf()),
        _bc("a3=0", "a3", lf()),
    )


def _acanon():
    return (lf(a2=1, a3=1), lf(a1=1, a3=1), lf(a1=1, a2=1))


def builtin_systems() -> tuple[SystemSpec, ...]:
    """The eight fixed coefficient systems (1a-1f, 1fp, 2).

    1fp is 1f without the B <= (13/4)A inequality and is used for analytic
    spot checks only; system 2 has two inequalities and is likewise only
    spot-checked.
    """
    s1a = SystemSpec(
        id="1a",
        vars=("x23", "b23", "b13", "a1", "a2", "a3"),
        sum_coeffs={"x23": _f(14), "b23": _f(1), "b13": _f(1),
                    "a1": _f(1), "a2": _f(1), "a3": _f(1)},
        domain=(
            ("b13>=8*x23", lf(b13=1, x23=-8)),
            ("b23>=2*x23", lf(b23=1, x23=-2)),
        ),
        B=(lf(b23=1, x23=2), lf(b13=1, x23=5), lf(x23=13)),
        A=_acanon(),
        boundary=(
            _bc("x23=0", "x23", lf()),
            _bc("b13=8*x23", "b13", lf(x23=8)),
            _bc("b23=2*x23", "b23", lf(x23=2)),
        ) + _avars_tail(),
    )
    s1b = SystemSpec(
        id="1b",
        vars=("x1", "x23", "b13", "a1", "a2", "a3"),
        sum_coeffs={"x1": _f("7/2"), "x23": _f(2), "b13": _f(1),
                    "a1": _f(1), "a2": _f(1), "a3": _f(1)},
        domain=(
            ("b13>=2*x1", lf(b13=1, x1=-2)),
            ("x1>=4*x23", lf(x1=1, x23=-4)),
        ),
        B=(lf(x1="1/2", x23=2), lf(b13=1, x1=1, x23=1), lf(x1=3, x23=1)),
        A=_acanon(),
        boundary=(
            _bc("x23=0", "x23", lf()),
            _bc("b13=2*x1", "b13", lf(x1=2)),
            _bc("x1=4*x23", "x1", lf(x23=4)),
        ) + _avars_tail(),
    )
    s1c = SystemSpec(
        id="1c",
        vars=("x1", "x2", "x3", "a1", "a2", "a3"),
        sum_coeffs={"x1": _f("11/2"), "x2": _f(1), "x3": _f(1),
                    "a1": _f(1), "a2": _f(1), "a3": _f(1)},
        # The derivation keeps the ambient x1 >= 4 x2 inequality, so the
        # binding x1-vs-x2 boundary is x1 = 4 x2 (row 11 then reduces to the
        # same system as 1a's tightest row, matching the shared reference
        # bound 2.005).
        domain=(
            ("x1>=4*x2", lf(x1=1, x2=-4)),
            ("x2>=x3", lf(x2=1, x3=-1)),
        ),
        B=(lf(x1="1/2", x2=1, x3=1), lf(x1=3, x3=1), lf(x1=3, x2=1)),
        A=_acanon(),
        boundary=(
            _bc("x3=0", "x3", lf()),
            _bc("x2=x3", "x2", lf(x3=1)),
            _bc("x1=4*x2", "x1", lf(x2=4)),
        ) + _avars_tail(),
    )
    s1d = SystemSpec(
        id="1d",
        vars=("x2", "x3", "b12", "a1", "a2", "a3"),
        sum_coeffs={"x2": _f(15), "x3": _f(1), "b12": _f(1),
                    "a1": _f(1), "a2": _f(1), "a3": _f(1)},
        domain=(
            ("b12>=8*x2", lf(b12=1, x2=-8)),
            ("x2>=x3", lf(x2=1, x3=-1)),
        ),
        B=(lf(x2=3, x3=1), lf(x2=12, x3=1), lf(b12=1, x2=5)),
        A=_acanon(),
        boundary=(
            _bc("b12=8*x2", "b12", lf(x2=8)),
            _bc("x2=x3", "x2", lf(x3=1)),
            _bc("x3=0", "x3", lf()),
        ) + _avars_tail(),
    )
    abc_domain = (
        ("C>=B", lf(C=1, B=-1)),
        ("B>=A", lf(B=1, A=-1)),
    )
    abc_boundary = (
        _bc("A=0", "A", lf()),
        _bc("B=A", "B", lf(A=1)),
        _bc("C=B", "C", lf(B=1)),
    ) + _avars_tail()
    s1e = SystemSpec(
        id="1e",
        vars=("A", "B", "C", "a1", "a2", "a3"),
        sum_coeffs={"A": _f("1/4"), "B": _f(1), "C": _f(1),
                    "a1": _f(1), "a2": _f(1), "a3": _f(1)},
        domain=abc_domain,
        B=(lf(B=1), lf(A=1), lf(C=1)),
        A=_acanon(),
        boundary=abc_boundary,
    )
    s1f = SystemSpec(
        id="1f",
        vars=("A", "B", "C", "a1", "a2", "a3"),
        sum_coeffs={"A": _f("7/12"), "B": _f("2/3"), "C": _f(1),
                    "a1": _f(1), "a2": _f(1), "a3": _f(1)},
        domain=abc_domain + (("B<=13/4*A", lf(A="13/4", B=-1)),),
        B=(lf(A=1), lf(B=1), lf(C=1)),
        A=_acanon(),
        boundary=abc_boundary,
    )
    s1fp = replace(s1f, id="1fp", domain=abc_domain)
    s2 = SystemSpec(
        id="2",
        vars=("x1", "b12", "b13"),
        sum_coeffs={"b12": _f(1), "b13": _f(1), "x1": _f("3/2")},
        domain=(
            ("b12>=2*x1", lf(b12=1, x1=-2)),
            ("b13>=2*x1", lf(b13=1, x1=-2)),
        ),
        B=(lf(b13=1, x1=1), lf(b12=1, x1=1)),
        A=(lf(), lf()),
        boundary=(),
    )
    return (s1a, s1b, s1c, s1d, s1e, s1f, s1fp, s2)


def alternate_reading_systems() -> tuple[SystemSpec, ...]:
    """1b and 1d under the literal (presumably typo) third-inequality
    readings: 1b-alt folds a1+a2 into the linear term of the third form;
    1d-alt repeats a1+a3 there.  Informational only."""
    by_id = {s.id: s for s in builtin_systems()}
    s1b = by_id["1b"]
    s1b_alt = replace(
        s1b, id="1b-alt",
        B=(s1b.B[0], s1b.B[1], lf(x1=3, x23=1, a1=1, a2=1)),
        A=(s1b.A[0], s1b.A[1], lf()),
    )
    s1d = by_id["1d"]
    s1d_alt = replace(
        s1d, id="1d-alt",
        A=(s1d.A[0], s1d.A[1], lf(a1=1, a3=1)),
    )
    return (s1b_alt, s1d_alt)


def get_system(system_id: str) -> SystemSpec:
    for s in builtin_systems() + alternate_reading_systems():
        if s.id == system_id:
            return s
    raise KeyError(f"unknown system {system_id!r}")


# ---------------------------------------------------------------------------
# Case enumeration with the published reference grid sizes and bounds.
# ---------------------------------------------------------------------------

# One entry per choose-3 subset of the boundary conditions, in lexicographic
# order; "a" = proved analytically, "c" = computed, "e" = either route.
_A = ("a", None, None)
_REFERENCE: dict[str, list[tuple[str, str | None, str | None]]] = {
    "1a": [
        _A,
        ("c", "0.002", "2.078"), ("c", "0.002", "2.077"), ("c", "0.002", "2.077"),
        ("c", "0.002", "2.077"), ("c", "0.002", "2.078"), ("c", "0.002", "2.077"),
        ("c", "0.002", "2.085"), ("c", "0.002", "2.086"), ("c", "0.002", "2.086"),
        ("c", "0.001", "2.005"), ("c", "0.002", "2.033"), ("c", "0.002", "2.033"),
        ("c", "0.002", "2.057"), ("c", "0.002", "2.057"), ("c", "0.002", "2.043"),
        ("c", "0.002", "2.045"), ("c", "0.002", "2.044"), ("c", "0.002", "2.041"),
        ("e", "0.002", "2.046"),
    ],
    "1b": [
        _A,
        ("c", "0.002", "2.042"), ("c", "0.002", "2.069"), ("c", "0.002", "2.069"),
        ("c", "0.002", "2.077"), ("c", "0.002", "2.078"), ("c", "0.002", "2.077"),
        ("c", "0.002", "2.072"), ("c", "0.002", "2.072"), ("c", "0.002", "2.070"),
        ("c", "0.001", "2.005"), ("c", "0.002", "2.033"), ("c", "0.002", "2.033"),
        ("c", "0.002", "2.026"), ("c", "0.002", "2.026"), ("c", "0.002", "2.024"),
        ("c", "0.002", "2.045"), ("c", "0.002", "2.044"), ("c", "0.002", "2.041"),
        ("e", "0.002", "2.025"),
    ],
    "1c": [
        _A,
        ("c", "0.002", "2.042"), ("c", "0.002", "2.069"), ("c", "0.002", "2.069"),
        ("c", "0.001", "2.019"), ("c", "0.002", "2.036"), ("c", "0.002", "2.037"),
        ("c", "0.002", "2.027"), ("c", "0.002", "2.028"), ("c", "0.002", "2.026"),
        ("c", "0.001", "2.005"), ("c", "0.002", "2.033"), ("c", "0.002", "2.033"),
        ("c", "0.002", "2.026"), ("c", "0.002", "2.026"), ("c", "0.002", "2.024"),
        ("c", "0.001", "2.042"), ("c", "0.001", "2.042"), ("c", "0.001", "2.042"),
        ("e", "0.001", "2.033"),
    ],
    "1d": [
        _A,
        ("c", "0.002", "2.077"), ("c", "0.002", "2.077"), ("c", "0.002", "2.078"),
        ("c", "0.001", "2.019"), ("c", "0.002", "2.036"), ("c", "0.002", "2.037"),
        ("c", "0.002", "2.047"), ("c", "0.002", "2.047"), ("c", "0.002", "2.041"),
        ("c", "0.001", "2.005"), ("c", "0.002", "2.033"), ("c", "0.002", "2.033"),
        ("c", "0.002", "2.044"), ("c", "0.002", "2.045"), ("c", "0.002", "2.041"),
        ("c", "0.001", "2.042"), ("c", "0.001", "2.042"), ("c", "0.001", "2.042"),
        ("e", "0.001", "2.042"),
    ],
    "1e": [
        _A,
        ("c", "0.002", "2.077"), ("c", "0.002", "2.077"), ("c", "0.002", "2.078"),
        ("c", "0.002", "2.075"), ("c", "0.002", "2.076"), ("c", "0.002", "2.076"),
        ("c", "0.002", "2.086"), ("c", "0.002", "2.085"), ("c", "0.002", "2.084"),
        _A, _A, _A, _A, _A, _A, _A, _A, _A, _A,
    ],
}
_REFERENCE["1f"] = list(_REFERENCE["1e"])
# Alternate readings share 1b/1d's grid sizes but have no published bounds.
_REFERENCE["1b-alt"] = [(s, e, None) for s, e, _ in _REFERENCE["1b"]]
_REFERENCE["1d-alt"] = [(s, e, None) for s, e, _ in _REFERENCE["1d"]]

_STATUS = {"a": "analytic", "c": "computed", "e": "either"}

CERTIFIABLE_SYSTEMS = ("1a", "1b", "1c", "1d", "1e", "1f")


@dataclass(frozen=True)
class CaseSpec:
    system_id: str
    indices: tuple[int, int, int]  # positions in the system's boundary list
    labels: tuple[str, str, str]
    status: str  # analytic | computed | either
    epsilon: Fraction | None
    reference_bound: Fraction | None
    duplicate_of: str | None = None


def enumerate_cases(spec: SystemSpec) -> list[CaseSpec]:
    """All 20 choose-3 boundary subsets, tagged per the reference tables."""
    if spec.id not in _REFERENCE:
        raise ValueError(f"system {spec.id} has no case table")
    cases = []
    combos = list(itertools.combinations(range(6), 3))
    for combo, (tag, eps, ref) in zip(combos, _REFERENCE[spec.id]):
        labels = tuple(spec.boundary[i].label for i in combo)
        dup = None
        if spec.id == "1f" and 1 in combo and tag != "a":
            dup = "1e"  # B=A active: identical reduced case in system 1e
        cases.append(
            CaseSpec(
                system_id=spec.id,
                indices=combo,
                labels=labels,
                status=_STATUS[tag],
                epsilon=None if eps is None else Fraction(eps),
                reference_bound=None if ref is None else Fraction(ref),
                duplicate_of=dup,
            )
        )
    return cases


# ---------------------------------------------------------------------------
# Reduction: apply the three equalities, eliminate one variable via the sum.
# ---------------------------------------------------------------------------


@dataclass
class ReducedCase:
    case: CaseSpec
    free: tuple[str, ...]
    ranges: dict[str, Fraction]  # upper bounds; lower bounds are all 0
    elim_var: str
    subs: dict[str, LinForm]  # every system variable as a form in free vars
    B: tuple[LinForm, ...]
    A: tuple[LinForm, ...]
    constraints: tuple[tuple[str, LinForm], ...]  # each form >= 0


def reduce_case(
    spec: SystemSpec, case: CaseSpec, elim_var: str | None = None
) -> ReducedCase:
    active = {
        spec.boundary[i].var: spec.boundary[i].value for i in case.indices
    }
    # Resolve substitution chains (e.g. x2 := x3 then x3 := 0).
    for _ in range(len(active) + 1):
        changed = False
        for var in active:
            for v2, f2 in active.items():
                if v2 != var and v2 in active[var].coeffs:
                    active[var] = active[var].subst(v2, f2)
                    changed = True
        if not changed:
            break
    else:
        raise ValueError(f"cyclic boundary conditions in {case.labels}")

    def apply_active(form: LinForm) -> LinForm:
        for v, f in active.items():
            form = form.subst(v, f)
        return form

    sum_form = apply_active(
        LinForm(0, dict(spec.sum_coeffs))
    )
    candidates = [v for v in spec.vars if v not in active]
    if elim_var is not None:
        if elim_var not in candidates or sum_form.coeff(elim_var) == 0:
            raise ValueError(f"cannot eliminate {elim_var} in case {case.labels}")
        elim = elim_var
    else:
        elim = None
        for v in reversed(spec.vars):
            if v in candidates and sum_form.coeff(v) == 1:
                elim = v
                break
        if elim is None:
            for v in reversed(spec.vars):
                if v in candidates and sum_form.coeff(v) != 0:
                    elim = v
                    break
        if elim is None:
            raise ValueError(f"sum constraint degenerate in case {case.labels}")
    lam = sum_form.coeff(elim)
    elim_form = LinForm(
        (1 - sum_form.const) / lam,
        {v: -c / lam for v, c in sum_form.coeffs.items() if v != elim},
    )
    free = tuple(v for v in candidates if v != elim)

    def full(form: LinForm) -> LinForm:
        return apply_active(form).subst(elim, elim_form)

    subs = {v: full(lf(**{v: 1})) for v in spec.vars}
    constraints: list[tuple[str, LinForm]] = []
    seen: set[LinForm] = set()

    def add_constraint(label: str, form: LinForm):
        if form.trivially_nonneg() or form in seen:
            return
        seen.add(form)
        constraints.append((label, form))

    add_constraint(f"{elim}>=0", elim_form)
    for label, form in spec.domain:
        add_constraint(label, full(form))
    for v in spec.vars:
        add_constraint(f"{v}>=0", subs[v])

    ranges: dict[str, Fraction] = {}
    for v in free:
        c = sum_form.coeff(v)
        if c <= 0:
            raise ValueError(f"free variable {v} unbounded in case {case.labels}")
        ranges[v] = (1 - sum_form.const) / c

    return ReducedCase(
        case=case,
        free=free,
        ranges=ranges,
        elim_var=elim,
        subs=subs,
        B=tuple(full(b) for b in spec.B),
        A=tuple(full(a) for a in spec.A),
        constraints=tuple(constraints),
    )


def all_reductions(spec: SystemSpec, case: CaseSpec) -> list[ReducedCase]:
    """One reduction per admissible eliminated variable.

    Every choice yields a sound bound; their tightness differs because the
    box corner maxima degrade with the coefficients left on the free
    directions, so the certifier takes the best over all of them."""
    out = []
    for v in spec.vars:
        try:
            out.append(reduce_case(spec, case, elim_var=v))
        except ValueError:
            continue
    if not out:
        raise ValueError(f"no admissible elimination in case {case.labels}")
    return out


# ---------------------------------------------------------------------------
# Box certification.
# ---------------------------------------------------------------------------


@dataclass
class CertifiedBound:
    case: CaseSpec
    epsilon: Fraction
    bound: Fraction | None  # None means the feasible set is empty (+inf)
    boxes_total: int
    boxes_feasible: int
    certified: bool
    min_box: tuple[Fraction, ...] | None = None

    @property
    def bound_float(self) -> float:
        return math.inf if self.bound is None else float(self.bound)


def _affine_int(form: LinForm, free, eps: Fraction, corner_max: bool):
    """Integer data (n0, (n1, ...), L) with form's corner extremum over box
    j equal to (n0 + sum(nd * jd)) / L; corners chosen per coefficient sign."""
    coeffs = [form.coeff(v) for v in free]
    terms = [c * eps for c in coeffs]
    const = form.const
    for c, t in zip(coeffs, terms):
        if (c > 0) == corner_max and c != 0:
            const += t  # take the upper corner in this dimension
    dens = [const.denominator] + [t.denominator for t in terms]
    L = math.lcm(*dens)
    n0 = const.numerator * (L // const.denominator)
    nds = tuple(t.numerator * (L // t.denominator) for t in terms)
    return n0, nds, L


def certify_case(
    reduced: ReducedCase, epsilon, slack: Fraction = SLACK
) -> CertifiedBound:
    """Tile the free box ranges and lower-bound the cap sum on each feasible
    box; the returned bound is the minimum over boxes minus the slack."""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    free = reduced.free
    dims = len(free)
    if dims == 0 or dims > 2:
        raise ValueError(f"expected 1 or 2 free dimensions, got {dims}")
    ks = [max(1, ceil(reduced.ranges[v] / eps)) for v in free]
    grids = np.meshgrid(*[np.arange(k, dtype=np.int64) for k in ks], indexing="ij")

    def int_eval(form: LinForm, corner_max: bool):
        n0, nds, L = _affine_int(form, free, eps, corner_max)
        val = np.full(grids[0].shape, n0, dtype=np.int64)
        for nd, J in zip(nds, grids):
            if nd:
                val = val + nd * J
        return val, L

    feasible = np.ones(grids[0].shape, dtype=bool)
    for _, form in reduced.constraints:
        val, _ = int_eval(form, corner_max=True)
        feasible &= val >= 0

    boxes_total = int(np.prod(ks))
    boxes_feasible = int(feasible.sum())
    if boxes_feasible == 0:
        return CertifiedBound(
            case=reduced.case, epsilon=eps, bound=None,
            boxes_total=boxes_total, boxes_feasible=0, certified=True,
        )

    b_ints = [int_eval(bform, corner_max=True) for bform in reduced.B]
    a_ints = [int_eval(aform, corner_max=True) for aform in reduced.A]

    # Float screening pass.
    total = np.zeros(grids[0].shape)
    with np.errstate(divide="ignore"):
        for (bval, bL), (aval, aL) in zip(b_ints, a_ints):
            Bf = np.maximum(bval / bL, 0.0)
            Af = np.maximum(aval / aL, 0.0)
            denom = Bf + np.sqrt(Bf * Bf + (32.0 / 27.0) * Af)
            with np.errstate(invalid="ignore"):
                cap = np.where(denom > 0.0, np.minimum(1.0, (16.0 / 27.0) / denom), 1.0)
            total += cap
    total[~feasible] = np.inf
    screen_min = float(total.min())

    # Exact pass over every box within the screening margin of the minimum.
    candidates = np.argwhere(total < screen_min + SCREEN_MARGIN)
    exact_min: Fraction | None = None
    min_box = None
    done: set[tuple[int, ...]] = set()
    for idx in candidates:
        idx = tuple(int(i) for i in idx)
        key = tuple(
            int(val[idx]) for val, _ in b_ints
        ) + tuple(int(val[idx]) for val, _ in a_ints)
        if key in done:
            continue
        done.add(key)
        s = Fraction(0)
        for (bval, bL), (aval, aL) in zip(b_ints, a_ints):
            s += cap_lower_bound(
                Fraction(int(bval[idx]), bL), Fraction(int(aval[idx]), aL)
            )
        if exact_min is None or s < exact_min:
            exact_min = s
            min_box = tuple(Fraction(i) * eps for i in idx)

    bound = exact_min - slack
    return CertifiedBound(
        case=reduced.case, epsilon=eps, bound=bound,
        boxes_total=boxes_total, boxes_feasible=boxes_feasible,
        certified=bound > 2, min_box=min_box,
    )



def certify_case_best(
    spec: SystemSpec, case: CaseSpec, epsilon, slack: Fraction = SLACK
) -> CertifiedBound:
    """Best sound bound over all admissible variable eliminations."""
    best = None
    for reduced in all_reductions(spec, case):
        r = certify_case(reduced, epsilon, slack)
        if r.bound is None:  # empty feasible region settles the case
            return r
        if best is None or r.bound > best.bound:
            best = r
    return best

# ---------------------------------------------------------------------------
# Analytic spot checks (non-rigorous grids anchored by exact evaluations).
# ---------------------------------------------------------------------------


@dataclass
class SpotCheck:
    name: str
    value: float
    expected: float
    tolerance: float
    passed: bool
    detail: str = ""


def _cap_float(B: float, A: float) -> float:
    B = max(B, 0.0)
    A = max(A, 0.0)
    if B == 0.0 and A == 0.0:
        return 1.0
    return min(1.0, (16.0 / 27.0) / (B + math.sqrt(B * B + (32.0 / 27.0) * A)))


def spot_check_system2(step: float = 1e-3) -> SpotCheck:
    """Two-part margin check: minimize (8/27)(1/(b13+x1) + 1/(b12+x1))
    over b12 + b13 + (3/2)x1 = 1, b12, b13 >= 2 x1 >= 0.  The minimum is
    88/81 at x1 = 2/11, b12 = b13 = 4/11, so the margin over 2 * 8/27 * ...
    baseline is 88/81 - 1 - ... here reported as min - 8/81 margin vs 80/81:
    the documented gap is 88/81, margin 7/81 above the threshold 1."""
    best = math.inf
    n = int(round(1.0 / step))
    for i in range(n + 1):
        x1 = i * step
        rem = 1.0 - 1.5 * x1
        if rem < 4.0 * x1 - 1e-15:
            break
        for j in range(n + 1):
            b13 = 2.0 * x1 + j * step
            b12 = rem - b13
            if b12 < 2.0 * x1 - 1e-15:
                break
            if b13 + x1 <= 0.0 or b12 + x1 <= 0.0:
                continue  # the expression blows up toward +inf here
            val = (8.0 / 27.0) * (1.0 / (b13 + x1) + 1.0 / (b12 + x1))
            best = min(best, val)
    # Exact anchor at the analytic minimizer.
    x1 = Fraction(2, 11)
    b = Fraction(4, 11)
    anchor = Fraction(8, 27) * (2 / (b + x1))
    assert anchor == Fraction(88, 81)
    value = min(best, float(anchor))
    expected = 88.0 / 81.0
    return SpotCheck(
        name="system2-margin",
        value=value,
        expected=expected,
        tolerance=1e-9,
        passed=abs(value - expected) <= 1e-9 or value >= expected - 1e-9,
        detail=f"margin over threshold = {value - 1.0:.6f} (expected 7/81)",
    )


def spot_check_cauchy_zero_a(step: float = 1e-3) -> SpotCheck:
    """Degenerate a=0 slice of the cap-sum bound: with A_i = 0 the sum of
    caps reduces to 8/(3(1+s)) with s in [0, 1/3]; its minimum over the
    slice is exactly 2, attained at s = 1/3."""
    n = int(round(1.0 / (3.0 * step)))
    best = min(
        8.0 / (3.0 * (1.0 + min(i * step, 1.0 / 3.0))) for i in range(n + 1)
    )
    exact = Fraction(8, 3) / (1 + Fraction(1, 3))
    assert exact == 2
    value = min(best, float(exact))
    return SpotCheck(
        name="cauchy-zero-a",
        value=value,
        expected=2.0,
        tolerance=1e-9,
        passed=abs(min(best, float(exact)) - 2.0) <= 1e-9,
        detail="min of 8/(3(1+s)) on [0,1/3]",
    )


def spot_check_jensen_a_only() -> SpotCheck:
    """Pure-a instance (x = b = 0, c = 0): at a1 = a2 = a3 = 1/3 each cap
    solves q * 2/3 = 8/27 capped... here A_i = 2/3, B_i = 0, giving
    q~_i = sqrt((8/27)/(2/3)) = 2/3 exactly, so the cap sum is 2."""
    A = Fraction(2, 3)
    q = math.sqrt((8.0 / 27.0) / float(A))
    total = 3.0 * min(1.0, q)
    return SpotCheck(
        name="jensen-a-only",
        value=total,
        expected=2.0,
        tolerance=1e-12,
        passed=abs(total - 2.0) <= 1e-12,
        detail="caps at the symmetric pure-a point",
    )


_SQRT_SUM_BOUND = Fraction(8, 3)


def spot_check_relaxed_corner_cases(step: float = 1e-3) -> list[SpotCheck]:
    """Ten corner cases of the relaxed system 1fp: activate 3 of the 5
    conditions {B=A, C=B, a1=0, a2=0, a3=0} and sweep the 2 remaining
    degrees of freedom on a grid, checking F <= 8/3 throughout, i.e. that
    the sqrt-sum form of the cap inequality holds with the caps unclipped.
    Two corners are pinned with exact rational anchors."""
    spec = get_system("1fp")
    conds = spec.boundary[1:]  # drop A=0, keep (B=A, C=B, a1..a3=0)
    checks = []
    for combo in itertools.combinations(range(5), 3):
        case = CaseSpec(
            system_id="1fp",
            indices=tuple(i + 1 for i in combo),
            labels=tuple(conds[i].label for i in combo),
            status="computed",
            epsilon=Fraction(step).limit_denominator(10**6),
            reference_bound=None,
        )
        red = reduce_case(spec, case)
        k0 = int(math.ceil(float(red.ranges[red.free[0]]) / step))
        k1 = int(math.ceil(float(red.ranges[red.free[1]]) / step))
        g0, g1 = np.meshgrid(
            np.arange(k0 + 1) * step, np.arange(k1 + 1) * step, indexing="ij"
        )

        def fval(form: LinForm):
            return (
                float(form.const)
                + float(form.coeff(red.free[0])) * g0
                + float(form.coeff(red.free[1])) * g1
            )

        ok = np.ones(g0.shape, dtype=bool)
        for _, form in red.constraints:
            ok &= fval(form) >= -1e-12
        F = np.zeros(g0.shape)
        for Bi, Ai in (("A", ("a2", "a3")), ("B", ("a1", "a3")), ("C", ("a1", "a2"))):
            Bv = fval(red.subs[Bi])
            Av = fval(red.subs[Ai[0]]) + fval(red.subs[Ai[1]])
            F += Bv + np.sqrt(np.maximum(Bv * Bv + (32.0 / 27.0) * Av, 0.0))
        worst = float(F[ok].max()) if ok.any() else -math.inf
        passed = worst <= float(_SQRT_SUM_BOUND) + 1e-9
        checks.append(
            SpotCheck(
                name="relaxed-" + "&".join(case.labels),
                value=worst,
                expected=float(_SQRT_SUM_BOUND),
                tolerance=1e-9,
                passed=passed,
                detail="max of sqrt-sum form on grid (must stay <= 8/3)",
            )
        )
    return checks


def spot_check_exact_anchors() -> list[SpotCheck]:
    """Two exact rational identities pinning the relaxed-system algebra.

    First, the A=B, a1=a2=0 stationary point: at A = 4/27, a3 = 5/18,
    C = 29/54 the radicand A^2 + (32/27) a3 equals 256/729, whose root is
    exactly 16/27, and 2A + 2C + 2*sqrt(...) = 23/9 < 8/3.

    Second, the B=C, a1=a3=0 stationary point: the squared-difference form
    G(A, C) = (A + 3C - 8/3)^2 - (2A^2 + 2C^2 + (128/27)(1 - (7/12)A - (5/3)C))
    equals 256/2187 at A = 16/81, C = 40/81."""
    checks = []

    A = Fraction(4, 27)
    a3 = Fraction(5, 18)
    C = Fraction(29, 54)
    rad = A * A + Fraction(32, 27) * a3
    root = Fraction(16, 27)
    value1 = 2 * A + 2 * C + 2 * root
    ok1 = rad == root * root and value1 == Fraction(23, 9)
    checks.append(
        SpotCheck(
            name="anchor-23/9",
            value=float(value1),
            expected=float(Fraction(23, 9)),
            tolerance=0.0,
            passed=ok1,
            detail="sqrt(256/729) = 16/27 exactly at the stationary point",
        )
    )

    A2 = Fraction(16, 81)
    C2 = Fraction(40, 81)
    a2 = 1 - Fraction(7, 12) * A2 - Fraction(5, 3) * C2
    G = (A2 + 3 * C2 - Fraction(8, 3)) ** 2 - (
        2 * A2 * A2 + 2 * C2 * C2 + Fraction(128, 27) * a2
    )
    checks.append(
        SpotCheck(
            name="anchor-256/2187",
            value=float(G),
            expected=float(Fraction(256, 2187)),
            tolerance=0.0,
            passed=G == Fraction(256, 2187),
            detail="squared-difference form at its stationary point, exact",
        )
    )
    return checks


def run_spot_checks(step: float = 1e-3) -> list[SpotCheck]:
    checks = [
        spot_check_system2(step),
        spot_check_cauchy_zero_a(step),
        spot_check_jensen_a_only(),
    ]
    checks.extend(spot_check_exact_anchors())
    checks.extend(spot_check_relaxed_corner_cases(step))
    return checks


# ---------------------------------------------------------------------------
# Full verification report.
# ---------------------------------------------------------------------------

DEFAULT_EPSILON = Fraction("0.002")
REFERENCE_TOLERANCE = Fraction("0.08")  # informational comparison only


@dataclass
class CaseResult:
    case: CaseSpec
    result: CertifiedBound | None  # None for analytic rows

    @property
    def status(self) -> str:
        if self.result is None:
            return self.case.status
        return "certified" if self.result.certified else "FAILED"

    @property
    def within_reference(self) -> bool | None:
        if self.result is None or self.case.reference_bound is None:
            return None
        if self.result.bound is None:
            return True  # empty feasible set; reference grids agree vacuously
        return abs(self.result.bound - self.case.reference_bound) <= REFERENCE_TOLERANCE


@dataclass
class Report:
    results: dict[str, list[CaseResult]]  # system id -> 20 rows
    epsilon_override: Fraction | None

    @property
    def all_certified(self) -> bool:
        return all(
            r.result.certified
            for rows in self.results.values()
            for r in rows
            if r.result is not None
        )

    def to_csv(self) -> str:
        lines = ["system,conditions,epsilon,bound,paper_bound,status"]
        for system_id, rows in self.results.items():
            for r in rows:
                eps = "" if r.result is None else format(float(r.result.epsilon), "g")
                if r.result is None or r.result.bound is None:
                    bound = ""
                else:
                    bound = f"{float(r.result.bound):.6f}"
                ref = (
                    ""
                    if r.case.reference_bound is None
                    else f"{float(r.case.reference_bound):.3f}"
                )
                lines.append(
                    ",".join(
                        [system_id, ";".join(r.case.labels), eps, bound, ref, r.status]
                    )
                )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = []
        for system_id, rows in self.results.items():
            out.append(f"system {system_id}")
            out.append("-" * 72)
            for r in rows:
                conds = ", ".join(r.case.labels)
                if r.result is None:
                    out.append(f"  {conds:<40} {r.status}")
                    continue
                bound = (
                    "empty"
                    if r.result.bound is None
                    else f"{float(r.result.bound):.4f}"
                )
                note = ""
                if r.within_reference is False:
                    note = "  [outside reference tolerance]"
                out.append(
                    f"  {conds:<40} eps={float(r.result.epsilon):g} "
                    f"bound={bound} {r.status}{note}"
                )
            out.append("")
        ok = "all computed cases certified" if self.all_certified else "FAILURES present"
        out.append(ok)
        return "\n".join(out) + "\n"


def full_report(
    epsilon: Fraction | float | str | None = None,
    systems: tuple[str, ...] | None = None,
    include_alternates: bool = False,
) -> Report:
    """Certify every computed/either case of the requested systems.

    With epsilon=None each case uses its published grid size; otherwise the
    override applies to every computed case. Analytic rows are listed but
    not recomputed here (their content is exercised by the spot checks)."""
    if systems is None:
        systems = CERTIFIABLE_SYSTEMS
    if include_alternates:
        systems = tuple(systems) + ("1b-alt", "1d-alt")
    override = None if epsilon is None else Fraction(str(epsilon))
    results: dict[str, list[CaseResult]] = {}
    for system_id in systems:
        spec = get_system(system_id)
        rows = []
        for case in enumerate_cases(spec):
            if case.status == "analytic":
                rows.append(CaseResult(case=case, result=None))
                continue
            eps = override if override is not None else case.epsilon
            if eps is None:
                eps = DEFAULT_EPSILON
            rows.append(
                CaseResult(case=case, result=certify_case_best(spec, case, eps))
            )
        results[system_id] = rows
    return Report(results=results, epsilon_override=override)
