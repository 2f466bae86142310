"""Normal slices to K-orbits, rank conditions restricted to a slice, and the
varieties Y, Z and Z_KS together with the maps relating them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .clans import Clan, clan_representative, p_units, parse_clan
from .groebner import Ideal, RingMap, apply_map, ideal_contains
from .linalg import ExactMatrix, nullspace
from .polycore import MonomialOrder, PolyMatrix, Polynomial, Ring

__all__ = [
    "SliceChart",
    "RankCondition",
    "slice_chart",
    "slice_space_basis",
    "rank_condition_matrix",
    "wyser_yong_ideal",
    "main_conditions",
    "MAIN_PAIRS",
    "MAIN_CLAN",
    "ideal_Y",
    "ideal_Y_alternate",
    "ideal_J1",
    "ideal_Z",
    "ideal_ZKS",
    "ideal_ZKS_literal",
    "phi_map",
    "ks_embedding_map",
    "ks_embedding_check",
    "y_matrices",
    "J",
    "T",
]

MAIN_CLAN = "(12213443)"
MAIN_PAIRS = ((2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6))

# 1-based matrix positions of the slice coordinates for the main clan
_PINNED_NAMES = {
    (3, 6): "x_1", (3, 5): "x_2", (4, 6): "x_3", (4, 5): "x_4",
    (7, 1): "y_1", (7, 2): "y_2", (8, 1): "y_3", (8, 2): "y_4",
}
_PINNED_ORDER = ("x_1", "x_2", "x_3", "x_4", "y_1", "y_2", "y_3", "y_4")

J = ((0, -1), (1, 0))
T = ((0, 1), (1, 0))


@dataclass(frozen=True)
class SliceChart:
    clan: Clan
    representative: ExactMatrix
    ring: Ring
    directions: tuple[ExactMatrix, ...]  # direction matrix for each coordinate, in ring variable order
    matrix: PolyMatrix

    @property
    def coordinates(self) -> tuple[str, ...]:
        return self.ring.variables

    def at_origin(self) -> ExactMatrix:
        lift = self.ring.field.lift
        return ExactMatrix([[lift(e.evaluate([0] * self.ring.nvars)) for e in r] for r in self.matrix.rows])


@dataclass(frozen=True)
class RankCondition:
    """``corner-NW``, ``corner-SW`` or ``pair`` (with ``i < j``)."""

    family: str
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.family not in ("corner-NW", "corner-SW", "pair"):
            raise ValueError(f"unknown rank condition family {self.family!r}")
        if self.family == "pair" and not (1 <= self.i and 1 <= self.j):
            raise ValueError("pair indices must be positive")

    def minor_size(self, n: int) -> int:
        if self.family == "pair":
            return min(n, self.i + self.j)
        return 0

    def __str__(self):
        return f"pair({self.i},{self.j})" if self.family == "pair" else self.family


def main_conditions() -> list[RankCondition]:
    return [RankCondition("corner-NW"), RankCondition("corner-SW")] + [
        RankCondition("pair", i, j) for i, j in MAIN_PAIRS]


# --------------------------------------------------------------------------
# slice charts
# --------------------------------------------------------------------------

def slice_space_basis(c: Clan, g: ExactMatrix | None = None) -> list[ExactMatrix]:
    """Basis of Ad(g)(strictly lower triangular) cap p, in rref-canonical form."""
    g = g or clan_representative(c)
    ginv = g.inverse()
    n = c.n
    units = p_units(c.p, c.q)
    upper = [(r, s) for r in range(n) for s in range(r, n)]
    cols = []
    for i, j in units:
        gi = [ginv[r, i] for r in range(n)]
        gj = g.rows[j]
        cols.append([gi[r] * gj[s] for r, s in upper])
    system = [list(row) for row in zip(*cols)]
    out = []
    for vec in nullspace(system, len(units)):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(units, vec):
            m[i][j] = v
        out.append(ExactMatrix(m))
    return out


def _unit_position(m: ExactMatrix) -> tuple[int, int] | None:
    nz = [(i, j) for i, r in enumerate(m.rows) for j, a in enumerate(r) if a]
    if len(nz) == 1 and m[nz[0]] == 1:
        return nz[0][0] + 1, nz[0][1] + 1
    return None


def slice_chart(c: Clan | str, characteristic: int = 0,
                order: MonomialOrder | None = None) -> SliceChart:
    """The family (Id + sum t_i A_i) g over a basis A_i of the slice space.

    For the main (4,4) clan the coordinates are named x_1..x_4 (upper right
    block) and y_1..y_4 (lower left block) at fixed positions; otherwise they
    are t_1, t_2, ... in basis order.
    """
    if isinstance(c, str):
        c = parse_clan(c)
    g = clan_representative(c)
    basis = slice_space_basis(c, g)
    n = c.n
    positions = [_unit_position(a) for a in basis]
    if (c == parse_clan(MAIN_CLAN) and None not in positions
            and set(positions) == set(_PINNED_NAMES)):
        by_name = {_PINNED_NAMES[pos]: a for pos, a in zip(positions, basis)}
        names = list(_PINNED_ORDER)
        basis = [by_name[v] for v in names]
    else:
        names = [f"t_{k}" for k in range(1, len(basis) + 1)]
    if not names:
        names = ["t_0"]  # polynomial rings need a variable; it does not occur
    ring = Ring.make(names, characteristic, order or MonomialOrder("grevlex"))
    ids = [[ring.constant(int(i == j)) for j in range(n)] for i in range(n)]
    for name, a in zip(names, basis):
        t = ring.var(name)
        for i in range(n):
            for j in range(n):
                if a[i, j]:
                    ids[i][j] = ids[i][j] + t.scale(a[i, j])
    gmat = PolyMatrix(ring, [[ring.constant(x) for x in r] for r in g.rows])
    matrix = PolyMatrix(ring, ids) * gmat
    return SliceChart(c, g, ring, tuple(basis), matrix)


# --------------------------------------------------------------------------
# rank conditions
# --------------------------------------------------------------------------

def rank_condition_matrix(chart: SliceChart, cond: RankCondition) -> PolyMatrix:
    """The matrix whose minors express ``cond`` on the slice.

    For pair(i, j): n x (i+j); the first i columns are the first i slice
    columns with the last q rows set to zero, the last j columns are the
    first j slice columns.  Corners return the relevant square block.
    """
    m = chart.matrix
    n, p, q = chart.clan.n, chart.clan.p, chart.clan.q
    if cond.family == "corner-NW":
        return m.submatrix(range(p), range(p))
    if cond.family == "corner-SW":
        return m.submatrix(range(p, n), range(q))
    i, j = cond.i, cond.j
    if i > n or j > n:
        raise ValueError(f"{cond} refers to columns beyond {n}")
    zero = chart.ring.zero()
    rows = []
    for r in range(n):
        left = [m[r, k] if r < p else zero for k in range(i)]
        right = [m[r, k] for k in range(j)]
        rows.append(left + right)
    return PolyMatrix(chart.ring, rows)


def wyser_yong_ideal(chart: SliceChart, conditions: Sequence[RankCondition]) -> Ideal:
    gens: list[Polynomial] = []
    n = chart.clan.n
    for cond in conditions:
        m = rank_condition_matrix(chart, cond)
        if cond.family == "pair":
            gens.extend(m.minors(cond.minor_size(n)))
        else:
            gens.append(m.determinant())
    return Ideal(chart.ring, gens)


def ideal_J1(characteristic: int = 101) -> Ideal:
    """Corner determinants plus all pair conditions of the main preset."""
    chart = slice_chart(MAIN_CLAN, characteristic)
    return wyser_yong_ideal(chart, main_conditions())


# --------------------------------------------------------------------------
# Y, Z, Z_KS
# --------------------------------------------------------------------------

def _y_ring(characteristic: int) -> Ring:
    return Ring.make(_PINNED_ORDER, characteristic)


def y_matrices(ring: Ring) -> tuple[PolyMatrix, PolyMatrix]:
    a1 = PolyMatrix.parse(ring, [["x_1", "x_2"], ["x_3", "x_4"], ["y_2", "y_1"], ["y_4", "y_3"]])
    a2 = PolyMatrix.parse(ring, [["x_1", "x_3"], ["x_2", "x_4"], ["y_3", "y_1"], ["y_4", "y_2"]])
    return a1, a2


def ideal_Y(characteristic: int = 0) -> Ideal:
    """All 2x2 minors of the two 4x2 coordinate matrices (12 generators)."""
    ring = _y_ring(characteristic)
    a1, a2 = y_matrices(ring)
    return Ideal(ring, a1.minors(2) + a2.minors(2))


def ideal_Y_alternate(characteristic: int = 0) -> Ideal:
    """Minors of the first matrix plus three mixed 2x2 determinants."""
    ring = _y_ring(characteristic)
    a1, _ = y_matrices(ring)
    extra = [PolyMatrix.parse(ring, rows).determinant() for rows in (
        [["x_1", "x_3"], ["y_4", "y_2"]],
        [["x_1", "x_3"], ["y_3", "y_1"]],
        [["x_2", "x_4"], ["y_3", "y_1"]],
    )]
    return Ideal(ring, a1.minors(2) + extra)


def _pair_ring(characteristic: int) -> Ring:
    return Ring.make(["a_1", "a_2", "a_3", "a_4", "b_1", "b_2", "b_3", "b_4"], characteristic)


def _square(ring: Ring, stem: str) -> PolyMatrix:
    return PolyMatrix.parse(ring, [[f"{stem}_1", f"{stem}_2"], [f"{stem}_3", f"{stem}_4"]])


def ideal_Z(characteristic: int = 0) -> Ideal:
    """det A1, det A2, entries of A1 J A2^t and of A2^t T A1 (A1 = a, A2 = b, row-major)."""
    ring = _pair_ring(characteristic)
    a1, a2 = _square(ring, "a"), _square(ring, "b")
    jm, tm = PolyMatrix(ring, J), PolyMatrix(ring, T)
    gens = [a1.determinant(), a2.determinant()]
    gens += (a1 * jm * a2.transpose()).entries()
    gens += (a2.transpose() * tm * a1).entries()
    return Ideal(ring, gens)


def phi_map(characteristic: int = 0) -> RingMap:
    """Linear isomorphism carrying Z's coordinates onto the slice coordinates of Y."""
    src, dst = _pair_ring(characteristic), _y_ring(characteristic)
    images = ["y_3", "-y_4", "x_2", "-x_1", "y_1", "-y_2", "-x_4", "x_3"]
    return RingMap(src, dst, tuple(dst(s) for s in images))


_KS_STEMS = ("p", "q", "r", "s")


def _ks_ring(characteristic: int) -> Ring:
    return Ring.make([f"{s}_{k}" for s in _KS_STEMS for k in range(1, 5)], characteristic)


def ideal_ZKS(characteristic: int = 0) -> Ideal:
    """det A_i and the entries of A_i A_{i+1} (indices mod 4), 20 generators.

    The matrices are A_0..A_3 with entries p_*, q_*, r_*, s_* (row-major).
    """
    ring = _ks_ring(characteristic)
    mats = [_square(ring, s) for s in _KS_STEMS]
    gens = [m.determinant() for m in mats]
    for i in range(4):
        gens += (mats[i] * mats[(i + 1) % 4]).entries()
    return Ideal(ring, gens)


def ideal_ZKS_literal(characteristic: int = 0) -> Ideal:
    """det A_i and det(A_i A_{i+1}) (8 generators); the products are redundant."""
    ring = _ks_ring(characteristic)
    mats = [_square(ring, s) for s in _KS_STEMS]
    gens = [m.determinant() for m in mats]
    gens += [(mats[i] * mats[(i + 1) % 4]).determinant() for i in range(4)]
    return Ideal(ring, gens)


def ks_embedding_map(characteristic: int = 0) -> RingMap:
    """(B1, B2) -> (J B1^t J, B1, J B2^t J, B2) as a pullback from the KS ring to Z's ring."""
    src, dst = _ks_ring(characteristic), _pair_ring(characteristic)
    jm = PolyMatrix(dst, J)
    b1, b2 = _square(dst, "a"), _square(dst, "b")
    blocks = [jm * b1.transpose() * jm, b1, jm * b2.transpose() * jm, b2]
    images = tuple(e for m in blocks for e in m.entries())
    return RingMap(src, dst, images)


def ks_embedding_check(characteristic: int = 0, literal: bool = False) -> bool:
    """Every Z_KS generator pulled back along the embedding lies in the ideal of Z."""
    zks = ideal_ZKS_literal(characteristic) if literal else ideal_ZKS(characteristic)
    pulled = apply_map(ks_embedding_map(characteristic), zks)
    return ideal_contains(ideal_Z(characteristic), pulled)
