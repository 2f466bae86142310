"""GL(p) x GL(q) orbits on the flag variety of GL(p+q), indexed by clans.

A clan is a string of ``+``, ``-`` and matched pair labels.  This module
parses and prints clans, converts them to twisted involutions, builds an
explicit matrix ``g`` with ``g . b`` in the orbit (``b`` = upper triangular
Borel), and computes orbit dimensions by exact linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .linalg import ExactMatrix, nullspace

__all__ = [
    "Clan",
    "ClanError",
    "TwistedInvolution",
    "parse_clan",
    "format_clan",
    "clan_to_involution",
    "clan_representative",
    "PINNED_PAIR_TARGETS",
    "orbit_dimension",
    "closed_orbit_dimension",
    "induce_clan",
    "enumerate_clans",
    "count_clans",
    "k_units",
    "p_units",
    "theta",
    "flag_dimension",
    "is_theta_stable_cartan",
]

PLUS, MINUS = "+", "-"


class ClanError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position + 1})")
        self.position = position


@dataclass(frozen=True)
class Clan:
    symbols: tuple  # '+', '-' or int pair label (labels numbered 1, 2, ... by first occurrence)
    p: int
    q: int

    def __post_init__(self):
        syms = tuple(self.symbols)
        relabel: dict[int, int] = {}
        out = []
        for s in syms:
            if s in (PLUS, MINUS):
                out.append(s)
            else:
                if s not in relabel:
                    relabel[s] = len(relabel) + 1
                out.append(relabel[s])
        object.__setattr__(self, "symbols", tuple(out))
        counts: dict[int, int] = {}
        for s in out:
            if s not in (PLUS, MINUS):
                counts[s] = counts.get(s, 0) + 1
        if any(c != 2 for c in counts.values()):
            bad = next(lab for lab, c in counts.items() if c != 2)
            original = next(s for s, t in relabel.items() if t == bad)
            raise ClanError(f"pair label {original} occurs {counts[bad]} time(s), expected 2",
                            out.index(bad))
        npairs = len(counts)
        plus, minus = out.count(PLUS), out.count(MINUS)
        if plus + npairs != self.p or minus + npairs != self.q:
            raise ClanError(
                f"clan has signature ({plus + npairs}, {minus + npairs}), expected ({self.p}, {self.q})")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Matched positions (1-based, i < j) in order of first occurrence."""
        first: dict[int, int] = {}
        out = []
        for pos, s in enumerate(self.symbols, 1):
            if s in (PLUS, MINUS):
                continue
            if s in first:
                out.append((first[s], pos))
            else:
                first[s] = pos
        return sorted(out)

    @property
    def signs(self) -> dict[int, str]:
        return {pos: s for pos, s in enumerate(self.symbols, 1) if s in (PLUS, MINUS)}

    def is_closed(self) -> bool:
        return not self.pairs

    def __str__(self):
        return format_clan(self)


@dataclass(frozen=True)
class TwistedInvolution:
    """Involution of {1..n} (as a tuple, 1-based images) with signed fixed points."""

    perm: tuple[int, ...]
    signs: tuple[tuple[int, str], ...]

    @property
    def transpositions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.perm, 1) if i < j]

    def is_involution(self) -> bool:
        return all(self.perm[self.perm[i] - 1] == i + 1 for i in range(len(self.perm)))

    def format(self, with_signs: bool = False) -> str:
        wide = len(self.perm) >= 10
        cycles = [(i, f"({i} {j})" if wide else f"({i}{j})") for i, j in self.transpositions]
        if with_signs:
            cycles += [(i, f"({i}^{s})") for i, s in self.signs]
        return "".join(text for _, text in sorted(cycles))

    def __str__(self):
        return self.format()


# --------------------------------------------------------------------------
# text formats
# --------------------------------------------------------------------------

def parse_clan(text: str, p: int | None = None, q: int | None = None) -> Clan:
    """Parse compact ``(12213443)`` / ``+-`` or signed ``1^+2^+(3443)5^-`` notation.

    Inside parentheses every digit is one pair label.  Outside, ``N^+`` and
    ``N^-`` are signed fixed points (the number is only a position label), a
    bare ``+``/``-`` is a sign and a bare digit is a pair label.
    """
    symbols: list = []
    sign_labels: set[int] = set()
    depth = 0
    i = 0
    s = text.replace("−", "-")
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch == "(":
            if depth:
                raise ClanError("nested parentheses", i)
            depth = 1
            i += 1
        elif ch == ")":
            if not depth:
                raise ClanError("unbalanced ')'", i)
            depth = 0
            i += 1
        elif ch in "+-":
            symbols.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            if not depth and j < len(s) and s[j] == "^":
                if j + 1 >= len(s) or s[j + 1] not in "+-":
                    raise ClanError("expected '+' or '-' after '^'", j)
                sign_labels.add(int(s[i:j]))
                symbols.append(s[j + 1])
                i = j + 2
            else:
                symbols.append(("label", int(ch)))
                i += 1
        else:
            raise ClanError(f"unexpected character {ch!r}", i)
    if depth:
        raise ClanError("unbalanced '('", len(s) - 1)
    if not symbols:
        raise ClanError("empty clan")
    labels = {sym[1] for sym in symbols if isinstance(sym, tuple)}
    clash = labels & sign_labels
    if clash:
        raise ClanError(f"label {min(clash)} used both as a sign and as a pair")
    syms = tuple(sym[1] if isinstance(sym, tuple) else sym for sym in symbols)
    npairs = len(labels)
    if p is None:
        p = syms.count(PLUS) + npairs
    if q is None:
        q = syms.count(MINUS) + npairs
    return Clan(syms, p, q)


def format_clan(c: Clan, style: str = "compact") -> str:
    """``compact``: ``(12213443)``, ``+-``, ``++12324341--``; ``signed``: ``1^+2^+(3443)5^-6^-``."""
    if style == "compact":
        if max((s for s in c.symbols if isinstance(s, int)), default=0) > 9:
            return format_clan(c, "signed")
        body = "".join(str(s) for s in c.symbols)
        return f"({body})" if not c.signs else body
    if style != "signed":
        raise ValueError(f"unknown clan style {style!r}")
    out = []
    label: dict[object, int] = {}
    run: list[str] = []
    counter = 0
    for s in c.symbols:
        if s in (PLUS, MINUS):
            if run:
                out.append("(" + "".join(run) + ")")
                run = []
            counter += 1
            out.append(f"{counter}^{s}")
        else:
            if s not in label:
                counter += 1
                label[s] = counter
            run.append(str(label[s]))
    if run:
        out.append("(" + "".join(run) + ")")
    return "".join(out)


# --------------------------------------------------------------------------
# combinatorics
# --------------------------------------------------------------------------

def clan_to_involution(c: Clan) -> TwistedInvolution:
    perm = list(range(1, c.n + 1))
    for i, j in c.pairs:
        perm[i - 1], perm[j - 1] = j, i
    return TwistedInvolution(tuple(perm), tuple(sorted(c.signs.items())))


def induce_clan(plus_prefix: int, inner: Clan, minus_suffix: int) -> Clan:
    """Pad with ``+`` symbols on the left and ``-`` symbols on the right."""
    if plus_prefix < 0 or minus_suffix < 0:
        raise ValueError("padding must be nonnegative")
    syms = (PLUS,) * plus_prefix + inner.symbols + (MINUS,) * minus_suffix
    return Clan(syms, inner.p + plus_prefix, inner.q + minus_suffix)


def enumerate_clans(p: int, q: int) -> Iterator[Clan]:
    """Every clan of signature (p, q), each exactly once."""
    n = p + q
    for k in range(min(p, q) + 1):
        for paired in itertools.combinations(range(n), 2 * k):
            for matching in _matchings(list(paired)):
                rest = [i for i in range(n) if i not in set(paired)]
                for plus_pos in itertools.combinations(rest, p - k):
                    syms: list = [MINUS] * n
                    for i in plus_pos:
                        syms[i] = PLUS
                    for lab, (i, j) in enumerate(matching, 1):
                        syms[i] = syms[j] = lab
                    yield Clan(tuple(syms), p, q)


def _matchings(items: list[int]):
    if not items:
        yield []
        return
    first = items[0]
    for idx in range(1, len(items)):
        rest = items[1:idx] + items[idx + 1:]
        for m in _matchings(rest):
            yield [(first, items[idx])] + m


def count_clans(p: int, q: int) -> int:
    """Number of clans of signature (p, q) by the closed formula."""
    from math import factorial
    n = p + q
    return sum(factorial(n) // (factorial(k) * 2 ** k * factorial(p - k) * factorial(q - k))
               for k in range(min(p, q) + 1))


# --------------------------------------------------------------------------
# linear algebra of the orbit
# --------------------------------------------------------------------------

def theta(p: int, q: int) -> ExactMatrix:
    n = p + q
    return ExactMatrix([[(1 if i < p else -1) if i == j else 0 for j in range(n)] for i in range(n)])


def k_units(p: int, q: int) -> list[tuple[int, int]]:
    """Positions (0-based) of matrix units spanning k = gl(p) + gl(q)."""
    n = p + q
    return [(i, j) for i in range(n) for j in range(n) if (i < p) == (j < p)]


def p_units(p: int, q: int) -> list[tuple[int, int]]:
    """Positions of matrix units spanning the off-diagonal blocks."""
    n = p + q
    return [(i, j) for i in range(n) for j in range(n) if (i < p) != (j < p)]


# Hand-chosen V_- indices for the pairs of specific clans (pair labels in order).
# They differ from the default allocation only by a permutation of the V_-
# basis, which lies in K, so the orbit is the same.
PINNED_PAIR_TARGETS: dict[tuple, tuple[int, ...]] = {
    (1, 2, 2, 1, 3, 4, 4, 3): (5, 6, 8, 7),
}


def clan_representative(c: Clan, pair_targets: Sequence[int] | None = None) -> ExactMatrix:
    """Invertible ``g`` whose flag ``g . b`` lies in the orbit of ``c``.

    Column j is e_a for a '+', e_b for a '-', e_a + e_b at the first entry of
    a pair and -e_a + e_b at the second.  Scanning left to right, each new '+'
    or pair takes the next unused a in 1..p and each new '-' or pair the next
    unused b in p+1..n.  ``pair_targets`` (1-based, one per pair label)
    overrides the b chosen for the pairs; a few clans carry pinned values.
    """
    n, p = c.n, c.p
    if pair_targets is None:
        pair_targets = PINNED_PAIR_TARGETS.get(c.symbols) if c.p == 4 and c.q == 4 else None
    npairs = len(c.pairs)
    if pair_targets is not None:
        targets = [b - 1 for b in pair_targets]
        if len(targets) != npairs or len(set(targets)) != npairs or any(not p <= b < n for b in targets):
            raise ValueError("pair_targets must be distinct indices in p+1..n, one per pair")
    else:
        targets = None
    a_of: dict[tuple, int] = {}  # keys: ("s", pos) for a sign, ("p", label) for a pair
    b_of: dict[tuple, int] = {}
    reserved = set(targets or ())
    free_b = (b for b in range(p, n) if b not in reserved)
    for pos, s in enumerate(c.symbols):
        key = ("p", s) if s not in (PLUS, MINUS) else ("s", pos)
        if s != MINUS and key not in a_of:
            a_of[key] = len(a_of)
        if s != PLUS and key not in b_of:
            if s != MINUS and targets is not None:
                b_of[key] = targets[s - 1]
            else:
                b_of[key] = next(free_b)
    cols = []
    seen: set = set()
    for pos, s in enumerate(c.symbols):
        v = [0] * n
        if s == PLUS:
            v[a_of["s", pos]] = 1
        elif s == MINUS:
            v[b_of["s", pos]] = 1
        else:
            v[a_of["p", s]] = -1 if s in seen else 1
            v[b_of["p", s]] = 1
            seen.add(s)
        cols.append(v)
    return ExactMatrix.from_columns(cols)


def closed_orbit_dimension(p: int, q: int) -> int:
    return p * (p - 1) // 2 + q * (q - 1) // 2


def orbit_dimension(c: Clan, g: ExactMatrix | None = None) -> int:
    """dim k - dim(k cap Ad(g) b), with b the upper triangular Borel."""
    g = g or clan_representative(c)
    ginv = g.inverse()
    n = c.n
    lower = [(r, s) for r in range(n) for s in range(r)]
    # column (i, j) of the system: strictly lower part of g^-1 E_ij g
    cols = []
    for i, j in k_units(c.p, c.q):
        gi = [ginv[r, i] for r in range(n)]
        gj = g.rows[j]
        cols.append([gi[r] * gj[s] for r, s in lower])
    system = [list(row) for row in zip(*cols)]
    dim_k = len(cols)
    stab = len(nullspace(system, dim_k))
    return dim_k - stab


def flag_dimension(n: int) -> int:
    return n * (n - 1) // 2


def is_theta_stable_cartan(c: Clan, g: ExactMatrix | None = None) -> bool:
    """True iff g^-1 theta g is a signed permutation matrix realizing the involution."""
    g = g or clan_representative(c)
    m = g.inverse() @ theta(c.p, c.q) @ g
    inv = clan_to_involution(c)
    for j in range(c.n):
        col = m.column(j)
        nz = [i for i, x in enumerate(col) if x]
        if len(nz) != 1 or abs(col[nz[0]]) != 1 or nz[0] + 1 != inv.perm[j]:
            return False
    return True

