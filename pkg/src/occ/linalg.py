"""Exact linear algebra over Q on dense ``Fraction`` matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["ExactMatrix", "rank", "nullspace", "rref", "span_basis", "intersect_dim"]


class ExactMatrix:
    """Immutable rational matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Iterable[Iterable[object]]):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if not rows:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.shape = (len(rows), width)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "ExactMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "ExactMatrix":
        return cls([[int(a == i and b == j) for b in range(n)] for a in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[object]]) -> "ExactMatrix":
        return cls(zip(*cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return ExactMatrix([[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0))
                             for c in cols] for r in self.rows])

    def apply(self, v: Sequence[object]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows))

    T = property(transpose)

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.rows]

    def flat(self) -> list[Fraction]:
        return [a for r in self.rows for a in r]

    def rank(self) -> int:
        return rank(self.rows)

    def det(self) -> Fraction:
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        sign = 1
        d = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                sign = -sign
            d *= a[c][c]
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] / a[c][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return sign * d

    def inverse(self) -> "ExactMatrix":
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = _rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix([r[n:] for r in red[:n]])

    def power(self, k: int) -> "ExactMatrix":
        out = ExactMatrix.identity(self.shape[0])
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __str__(self):
        cells = [[str(a) for a in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"ExactMatrix({[[str(a) for a in r] for r in self.rows]})"


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(r) for r in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(rows: Sequence[Sequence[object]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    return _rref([[Fraction(x) for x in r] for r in rows])


def rank(rows: Sequence[Sequence[object]]) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[object]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column, in rref-canonical form."""
    rows = [list(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty system")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    n = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def span_basis(vectors: Sequence[Sequence[object]]) -> list[list[Fraction]]:
    """Canonical (rref) basis of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    red, pivots = rref(vectors)
    return red[: len(pivots)]


def intersect_dim(a: Sequence[Sequence[object]], b: Sequence[Sequence[object]]) -> int:
    """dim(span a  cap  span b) = dim a + dim b - dim(a + b)."""
    return rank(a) + rank(b) - rank(list(a) + list(b)) if a and b else 0
