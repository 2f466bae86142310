"""Signed Young tableaux of nilpotent elements of p and generic points of
conormal fibers of K-orbits on the flag variety.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .clans import Clan, clan_representative, p_units
from .linalg import ExactMatrix, nullspace, rank

__all__ = [
    "SignedTableau",
    "GenericityError",
    "NotNilpotentError",
    "SIGN_CONVENTION",
    "conormal_fiber_basis",
    "graded_jordan_chains",
    "signed_tableau_of",
    "signed_tableau_from_ranks",
    "dominates",
    "sample_tableaux",
    "moment_map_image",
    "random_fiber_element",
]

# Which end of a Jordan chain gives a row its leading sign: the vector killed
# by e ("kernel") or the vector that generates the chain ("head").
SIGN_CONVENTION = "kernel"
COEFFICIENT_RANGE = 100


class NotNilpotentError(ValueError):
    pass


class GenericityError(RuntimeError):
    pass


def _flip(s: str) -> str:
    return "-" if s == "+" else "+"


@dataclass(frozen=True)
class SignedTableau:
    """Rows as (length, leading sign); signs alternate along a row."""

    rows: tuple[tuple[int, str], ...]

    def __post_init__(self):
        for length, sign in self.rows:
            if length < 1 or sign not in "+-":
                raise ValueError(f"bad row {(length, sign)}")
        canon = tuple(sorted(self.rows, key=lambda r: (-r[0], r[1] != "+")))
        object.__setattr__(self, "rows", canon)

    @classmethod
    def parse(cls, text: str) -> "SignedTableau":
        rows = []
        for tok in text.replace("−", "-").split():
            rows.append((int(tok[:-1]), tok[-1]))
        return cls(tuple(rows))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(length for length, _ in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def count(self, sign: str) -> int:
        return sum((length + 1) // 2 if s == sign else length // 2 for length, s in self.rows)

    @property
    def signature(self) -> tuple[int, int]:
        return self.count("+"), self.count("-")

    def row_strings(self) -> list[str]:
        return ["".join(s if k % 2 == 0 else _flip(s) for k in range(length)) for length, s in self.rows]

    def format(self) -> str:
        return " ".join(f"{length}{s}" for length, s in self.rows)

    def as_dict(self) -> dict:
        return {"rows": [{"len": length, "sign": s} for length, s in self.rows]}

    def __str__(self):
        return self.format()


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if partition ``a`` dominates ``b`` (both of the same size)."""
    sa = sb = 0
    for k in range(max(len(a), len(b))):
        sa += a[k] if k < len(a) else 0
        sb += b[k] if k < len(b) else 0
        if sa < sb:
            return False
    return True


# --------------------------------------------------------------------------
# conormal fibers
# --------------------------------------------------------------------------

def conormal_fiber_basis(c: Clan, g: ExactMatrix | None = None) -> list[ExactMatrix]:
    """Basis of Ad(g)(strictly upper triangular) cap p."""
    g = g or clan_representative(c)
    ginv = g.inverse()
    n = c.n
    units = p_units(c.p, c.q)
    lower = [(r, s) for r in range(n) for s in range(r + 1)]
    cols = []
    for i, j in units:
        gi = [ginv[r, i] for r in range(n)]
        gj = g.rows[j]
        cols.append([gi[r] * gj[s] for r, s in lower])
    system = [list(row) for row in zip(*cols)]
    out = []
    for vec in nullspace(system, len(units)):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(units, vec):
            m[i][j] = v
        out.append(ExactMatrix(m))
    return out


def random_fiber_element(basis: Sequence[ExactMatrix], rng: random.Random,
                         bound: int = COEFFICIENT_RANGE) -> ExactMatrix:
    n = basis[0].shape[0] if basis else 0
    acc = [[Fraction(0)] * n for _ in range(n)]
    for b in basis:
        c = rng.randint(-bound, bound)
        if c:
            for i in range(n):
                for j in range(n):
                    if b[i, j]:
                        acc[i][j] += c * b[i, j]
    return ExactMatrix(acc)


# --------------------------------------------------------------------------
# Jordan data
# --------------------------------------------------------------------------

def _check_odd(e: ExactMatrix, p: int):
    n = e.shape[0]
    for i in range(n):
        for j in range(n):
            if e[i, j] and (i < p) == (j < p):
                raise ValueError("element does not lie in p (nonzero diagonal block)")


def _powers(e: ExactMatrix) -> list[ExactMatrix]:
    n = e.shape[0]
    pw = [ExactMatrix.identity(n)]
    while not pw[-1].is_zero():
        if len(pw) > n:
            raise NotNilpotentError("matrix is not nilpotent")
        pw.append(pw[-1] @ e)
    return pw


def _indices(sign: str, p: int, n: int) -> list[int]:
    return list(range(p)) if sign == "+" else list(range(p, n))


def _kernel_in(m: ExactMatrix, idx: list[int], n: int) -> list[list[Fraction]]:
    """Vectors supported on ``idx`` killed by m."""
    if not idx:
        return []
    cols = [m.column(j) for j in idx]
    system = [list(r) for r in zip(*cols)]
    out = []
    for vec in nullspace(system, len(idx)):
        v = [Fraction(0)] * n
        for j, x in zip(idx, vec):
            v[j] = x
        out.append(v)
    return out


def graded_jordan_chains(e: ExactMatrix, p: int) -> list[tuple[str, list[list[Fraction]]]]:
    """Jordan chains of e made of vectors in V+ or V-, each listed head first.

    Returns (sign of the head, [v, e v, ..., e^(k-1) v]) per chain.
    """
    _check_odd(e, p)
    n = e.shape[0]
    pw = _powers(e)
    top = len(pw) - 1  # e^top = 0
    kern = {(k, s): _kernel_in(pw[k], _indices(s, p, n), n)
            for k in range(top + 1) for s in "+-"}
    chains = []
    for k in range(top, 0, -1):
        for s in "+-":
            # complement of ker e^(k-1) + e(ker e^(k+1)) inside ker e^k, in V_s
            span = list(kern[k - 1, s])
            if k + 1 <= top:
                span += [e.apply(v) for v in kern[k + 1, _flip(s)]]
            else:
                span += [e.apply(v) for v in kern[top, _flip(s)]]
            base = rank(span) if span else 0
            for v in kern[k, s]:
                if rank(span + [v]) > base:
                    span.append(v)
                    base += 1
                    chain = [v]
                    for _ in range(k - 1):
                        chain.append(e.apply(chain[-1]))
                    chains.append((s, chain))
    vectors = [w for _, ch in chains for w in ch]
    if len(vectors) != n or rank(vectors) != n:
        raise AssertionError("graded Jordan chains do not form a basis")
    for s, ch in chains:
        for depth, w in enumerate(ch):
            expect = s if depth % 2 == 0 else _flip(s)
            support = _indices(_flip(expect), p, n)
            if any(w[i] for i in support):
                raise AssertionError("chain vector is not homogeneous of the alternating sign")
    return chains


def signed_tableau_of(e: ExactMatrix, p: int, convention: str = SIGN_CONVENTION) -> SignedTableau:
    rows = []
    for head_sign, chain in graded_jordan_chains(e, p):
        k = len(chain)
        kernel_sign = head_sign if k % 2 else _flip(head_sign)
        rows.append((k, kernel_sign if convention == "kernel" else head_sign))
    return SignedTableau(tuple(rows))


def signed_tableau_from_ranks(e: ExactMatrix, p: int, convention: str = SIGN_CONVENTION) -> SignedTableau:
    """Same data from ranks of powers restricted to V+ and V- only.

    The number of chains of length >= k whose kernel end has sign s equals
    rank(e^(k-1) | V_t) - rank(e^k | V_t) with t = s flipped k-1 times.
    """
    _check_odd(e, p)
    n = e.shape[0]
    pw = _powers(e)

    def r(k: int, t: str) -> int:
        idx = _indices(t, p, n)
        if k >= len(pw) or not idx:
            return 0
        return rank([pw[k].column(j) for j in idx])

    at_least = {}
    for k in range(1, len(pw) + 1):
        for s in "+-":
            t = s if k % 2 else _flip(s)
            at_least[k, s] = r(k - 1, t) - r(k, t)
    rows = []
    for (k, s), cnt in at_least.items():
        exact = cnt - at_least.get((k + 1, s), 0)
        sign = s if convention == "kernel" or k % 2 else _flip(s)
        rows += [(k, sign)] * exact
    return SignedTableau(tuple(rows))


# --------------------------------------------------------------------------
# moment map images
# --------------------------------------------------------------------------

def sample_tableaux(c: Clan, trials: int, seed: int, convention: str = SIGN_CONVENTION,
                    bound: int = COEFFICIENT_RANGE) -> list[SignedTableau]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    basis = conormal_fiber_basis(c)
    n = c.n
    out = []
    for _ in range(trials):
        e = random_fiber_element(basis, rng, bound) if basis else ExactMatrix.zeros(n)
        out.append(signed_tableau_of(e, c.p, convention))
    return out


def moment_map_image(c: Clan, trials: int = 8, seed: int = 0,
                     convention: str = SIGN_CONVENTION) -> SignedTableau:
    """Tableau of a generic point of the conormal fiber, certified by agreement."""
    results = sample_tableaux(c, trials, seed, convention)
    maximal = [t for t in results
               if not any(dominates(o.shape, t.shape) and o.shape != t.shape for o in results)]
    if len(set(maximal)) != 1:
        raise GenericityError("genericity not reached; increase trials "
                              f"(maximal candidates: {sorted({t.format() for t in maximal})})")
    return maximal[0]
