"""Lie(H) acting on V = M(2)^2 and its dual, and the microlocal
codimension-one check for the cone Z at the origin.

H = SL(2) x GL(2) x C^x acts by (h1, h2, z).(A1, A2) = (z h2* A1 h1^-1, h2 A2 h1^-1)
with h* = T (h^-1)^t T.  Points of V are 8-tuples (A1 row-major, then A2).
V* is identified with V through the entrywise dot product.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .groebner import Ideal, ideal_dimension, ideal_member, saturate
from .linalg import ExactMatrix, rank
from .polycore import Polynomial, Ring
from .slices import ideal_Z

__all__ = [
    "LieElement",
    "lie_basis",
    "group_action",
    "action_matrix",
    "infinitesimal_action",
    "tangent_matrix",
    "orbit_tangent_dim",
    "stabilizer_dim",
    "v_eps",
    "XI",
    "TANGENT_SPACE_V1",
    "CheckResult",
    "BradenReport",
    "check_annihilates_tangent",
    "check_dual_orbit",
    "check_conormal_fiber",
    "check_invariance",
    "verify_braden_hypothesis",
]

Mat2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

_T = ((0, 1), (1, 0))


def _m(rows) -> Mat2:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def _mul(a, b) -> Mat2:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _add(a, b) -> Mat2:
    return tuple(tuple(a[i][j] + b[i][j] for j in range(2)) for i in range(2))


def _neg(a) -> Mat2:
    return tuple(tuple(-x for x in r) for r in a)


def _tr(a) -> Mat2:
    return tuple(tuple(a[j][i] for j in range(2)) for i in range(2))


def _det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _inv(a) -> Mat2:
    d = _det(a)
    return _m([[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]])


def _star(a) -> Mat2:
    d = _det(a)
    return _m([[a[0][0] / d, -a[0][1] / d], [-a[1][0] / d, a[1][1] / d]])


def _split(v: Sequence) -> tuple[Mat2, Mat2]:
    v = list(v)
    return (((v[0], v[1]), (v[2], v[3])), ((v[4], v[5]), (v[6], v[7])))


def _join(a1, a2) -> list:
    return [a1[0][0], a1[0][1], a1[1][0], a1[1][1], a2[0][0], a2[0][1], a2[1][0], a2[1][1]]


@dataclass(frozen=True)
class LieElement:
    """One basis element of Lie(H): ``part`` is 'sl2', 'gl2' or 'scalar'."""

    name: str
    part: str
    matrix: Mat2


def lie_basis() -> list[LieElement]:
    """e, f, h of sl2; the four matrix units of gl2; the scalar generator."""
    units = {"E11": [[1, 0], [0, 0]], "E12": [[0, 1], [0, 0]],
             "E21": [[0, 0], [1, 0]], "E22": [[0, 0], [0, 1]]}
    out = [LieElement("e", "sl2", _m([[0, 1], [0, 0]])),
           LieElement("f", "sl2", _m([[0, 0], [1, 0]])),
           LieElement("h", "sl2", _m([[1, 0], [0, -1]]))]
    out += [LieElement(k, "gl2", _m(v)) for k, v in units.items()]
    out.append(LieElement("z", "scalar", _m([[1, 0], [0, 1]])))
    return out


def group_action(h1, h2, z, v: Sequence) -> list:
    """(h1, h2, z) . v on V; h1 must have determinant 1."""
    h1, h2 = _m(h1), _m(h2)
    if _det(h1) != 1:
        raise ValueError("h1 must lie in SL(2)")
    a1, a2 = _split(v)
    h1i = _inv(h1)
    b1 = _mul(_mul(_star(h2), a1), h1i)
    b1 = tuple(tuple(Fraction(z) * x for x in r) for r in b1)
    b2 = _mul(_mul(h2, a2), h1i)
    return _join(b1, b2)


def _derived(x: LieElement, v: Sequence) -> list:
    a1, a2 = _split(v)
    zero = ((0, 0), (0, 0))
    if x.part == "sl2":
        return _join(_neg(_mul(a1, x.matrix)), _neg(_mul(a2, x.matrix)))
    if x.part == "gl2":
        d_star = _neg(_mul(_mul(_T, _tr(x.matrix)), _T))
        return _join(_mul(d_star, a1), _mul(x.matrix, a2))
    return _join(a1, zero)


def action_matrix(x: LieElement, dual: bool = False) -> ExactMatrix:
    """8x8 matrix of X on V, or of the contragredient action -R^t on V*."""
    cols = [_derived(x, [int(i == k) for i in range(8)]) for k in range(8)]
    r = ExactMatrix.from_columns(cols)
    return -r.transpose() if dual else r


def infinitesimal_action(x: LieElement, v: Sequence, dual: bool = False) -> list[Fraction]:
    return action_matrix(x, dual).apply(v)


def tangent_matrix(v: Sequence, dual: bool = False) -> list[list[Fraction]]:
    """Rows are X.v for the eight basis elements (transpose of the column form)."""
    return [infinitesimal_action(x, v, dual) for x in lie_basis()]


def orbit_tangent_dim(v: Sequence, dual: bool = False) -> int:
    return rank(tangent_matrix(v, dual))


def stabilizer_dim(v: Sequence, dual: bool = False) -> int:
    return len(lie_basis()) - orbit_tangent_dim(v, dual)


def v_eps(eps) -> list:
    return [0, eps, 0, 0, 0, eps, 0, 0]


XI = [Fraction(x) for x in (1, 0, 1, 1, -1, 0, 0, 1)]

# {((a, b; 0, c), (a, d; 0, -c))} spanned by a, b, c, d
TANGENT_SPACE_V1 = [
    [1, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 1, 0, 0],
]


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool | None
    detail: str
    elapsed_ms: int = 0

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class BradenReport:
    checks: list[CheckResult] = field(default_factory=list)
    note: str = ("Only the microlocal codimension-one hypothesis is checked; the reducibility "
                 "of the characteristic cycle follows from a cited theorem that is not reproduced.")

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def as_dict(self) -> dict:
        return {"checks": [c.as_dict() for c in self.checks], "pass": self.passed, "note": self.note}


def _timed(name: str, fn: Callable[[], tuple[bool | None, str]]) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # surfaced as a failed check, never swallowed silently
        ok, detail = False, f"error: {exc!r}"
    return CheckResult(name, ok, detail, int((time.perf_counter() - start) * 1000))


def check_annihilates_tangent(samples: Sequence[int] = (1, 2, 3)) -> tuple[bool, str]:
    """xi . (X . v_eps) = 0 for every basis X, at sampled eps and for symbolic eps."""
    bad = []
    for e in samples:
        for x, t in zip(lie_basis(), tangent_matrix(v_eps(e))):
            if sum(a * b for a, b in zip(XI, t)):
                bad.append(f"{x.name}@eps={e}")
    ring = Ring.make(["eps_1"])
    eps = ring.var("eps_1")
    v = [eps * c for c in v_eps(1)]
    for x in lie_basis():
        r = action_matrix(x)
        tv = [sum((v[k].scale(r[i, k]) for k in range(8) if r[i, k]), ring.zero()) for i in range(8)]
        dot = sum((tv[i].scale(XI[i]) for i in range(8) if XI[i]), ring.zero())
        if not dot.is_zero():
            bad.append(f"{x.name}: {dot.format()}")
    tangent_ok = rank(tangent_matrix(v_eps(1))) == 4 and rank(
        tangent_matrix(v_eps(1)) + TANGENT_SPACE_V1) == 4
    if not tangent_ok:
        bad.append("tangent space at v_1 differs from the expected 4-dimensional span")
    if bad:
        return False, "nonzero pairings: " + ", ".join(bad)
    return True, f"xi annihilates the tangent space at v_eps for eps in {list(samples)} and symbolically"


def check_dual_orbit() -> tuple[bool, str]:
    d = orbit_tangent_dim(XI, dual=True)
    s = stabilizer_dim(XI, dual=True)
    return d == 7 and s == 1, f"dim H.xi = {d}, dim Stab(xi) = {s}"


def _generic_form(ring: Ring, names: Sequence[str], coeffs: Sequence[int]) -> Polynomial:
    return sum((ring.var(v).scale(c) for v, c in zip(names, coeffs)), ring.zero())


def conormal_ideal(characteristic: int = 101) -> Ideal:
    """Conormal variety of the dense orbit of Z in V x V*.

    Z's equations in a_*, b_*, plus u . (X . x) = 0 for every basis X, saturated
    by a product of linear forms in the A1 and A2 entries to discard the
    components lying over the smaller strata.
    """
    xs = [f"a_{k}" for k in range(1, 5)] + [f"b_{k}" for k in range(1, 5)]
    us = [f"u_{k}" for k in range(1, 9)]
    ring = Ring.make(xs + us, characteristic)
    z = ideal_Z(characteristic)
    gens = [g.change_ring(ring) for g in z.generators]
    xv = [ring.var(v) for v in xs]
    uv = [ring.var(v) for v in us]
    for x in lie_basis():
        r = action_matrix(x)
        tx = [sum((xv[k].scale(r[i, k]) for k in range(8) if r[i, k]), ring.zero()) for i in range(8)]
        gens.append(sum((uv[i] * tx[i] for i in range(8)), ring.zero()))
    g1 = _generic_form(ring, xs[:4], (3, 5, 7, 11))
    g2 = _generic_form(ring, xs[4:], (13, 17, 19, 23))
    return saturate(Ideal(ring, gens), g1 * g2)


def check_conormal_fiber(characteristic: int = 101) -> tuple[bool, str]:
    con = conormal_ideal(characteristic)
    total = ideal_dimension(con)
    ring = con.ring
    fiber = Ideal(ring, con.generators + [ring.var(v) for v in ring.variables if v.startswith(("a_", "b_"))])
    d = ideal_dimension(fiber)
    return total == 8 and d == 7, (f"conormal variety dimension {total} in V x V*, "
                                   f"fiber over the origin dimension {d} in V* (char {characteristic})")


def check_invariance(characteristic: int = 0) -> tuple[bool, str]:
    """grad f . (X . x) lies in the ideal of Z for every generator f and basis X."""
    z = ideal_Z(characteristic)
    ring = z.ring
    xv = ring.gens()
    failures = []
    for x in lie_basis():
        r = action_matrix(x)
        tx = [sum((xv[k].scale(r[i, k]) for k in range(8) if r[i, k]), ring.zero()) for i in range(8)]
        for idx, f in enumerate(z.generators):
            df = sum((f.diff(i) * tx[i] for i in range(8)), ring.zero())
            if not ideal_member(df, z):
                failures.append(f"{x.name}/gen{idx + 1}")
    if failures:
        return False, "not invariant: " + ", ".join(failures)
    return True, f"all {len(lie_basis()) * len(z.generators)} derivatives lie in the ideal"


def verify_braden_hypothesis(skip_conormal: bool = False, characteristic: int = 101) -> BradenReport:
    report = BradenReport()
    report.checks.append(_timed("xi-annihilates-tangent", check_annihilates_tangent))
    report.checks.append(_timed("dual-orbit-dimension", check_dual_orbit))
    if skip_conormal:
        report.checks.append(CheckResult("conormal-fiber-dimension", None, "skipped on request"))
    else:
        report.checks.append(_timed("conormal-fiber-dimension", lambda: check_conormal_fiber(characteristic)))
    z = ideal_Z(characteristic)
    report.checks.append(_timed("cone-facts", lambda: (
        ideal_dimension(z) == 4 and all(g.is_homogeneous() for g in z.generators),
        f"dim Z = {ideal_dimension(z)} (even), generators homogeneous")))
    return report
