"""Exact multivariate polynomials over Q and GF(p), polynomial matrices, minors.

Polynomials are immutable maps from exponent tuples to nonzero coefficients.
Coefficients are ``Fraction`` over Q and canonical residues ``0..p-1`` over
GF(p).  Nothing in this module ever touches floating point.
"""

from __future__ import annotations

import ast
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Field",
    "QQ",
    "GF",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "Ring",
    "Polynomial",
    "PolyMatrix",
    "PolynomialSyntaxError",
    "parse_polynomial",
    "determinant",
    "minors",
]

VARIABLE_RE = re.compile(r"^[A-Za-z]+_[0-9]+$")

# bits per exponent field in packed monomial keys; the top bit is a guard bit
_BITS = 16
_W = 1 << _BITS
_MAX_EXP = (1 << (_BITS - 1)) - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


# --------------------------------------------------------------------------
# coefficient fields
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """Q when ``characteristic == 0``, otherwise GF(characteristic)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")
        if c >= 1 << 31:
            raise ValueError("prime fields are limited to p < 2^31")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __call__(self, value) -> int | Fraction:
        """Coerce an int or Fraction into this field's canonical form."""
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inverse(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def lift(self, c) -> Fraction:
        """Rational value of c; prime field elements map to the symmetric range."""
        p = self.characteristic
        if p and c > p // 2:
            c = c - p
        return Fraction(c)

    def format_coefficient(self, c) -> str:
        return str(self.lift(c))

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# --------------------------------------------------------------------------
# monomial orders
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or a two-block order (grevlex inside each block).

    ``block`` lists the variable indices of the first (larger) block; the
    resulting order is an elimination order for those variables.
    """

    kind: str = "grevlex"
    block: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block":
            object.__setattr__(self, "block", tuple(sorted(set(self.block))))

    @classmethod
    def elimination(cls, indices: Iterable[int]) -> "MonomialOrder":
        return cls("block", tuple(indices))

    @classmethod
    def split(cls, k: int) -> "MonomialOrder":
        """Block order eliminating the first ``k`` variables."""
        return cls("block", tuple(range(k)))

    def encoder(self, nvars: int) -> "MonomialEncoder":
        return MonomialEncoder(self, nvars)

    def __str__(self):
        if self.kind == "block":
            return f"block{list(self.block)}"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _grevlex_key(exps: Sequence[int]) -> int:
    # deg * W^m - sum e_i W^i : linear in exps and order preserving
    m = len(exps)
    packed = 0
    deg = 0
    for i in range(m - 1, -1, -1):
        e = exps[i]
        deg += e
        packed = (packed << _BITS) | e
    return (deg << (_BITS * m)) - packed


def _grevlex_exps(key: int, m: int) -> list[int]:
    scale = 1 << (_BITS * m)
    deg = -((-key) // scale)
    packed = (deg << (_BITS * m)) - key
    mask = _W - 1
    out = []
    for _ in range(m):
        out.append(packed & mask)
        packed >>= _BITS
    return out


class MonomialEncoder:
    """Integer keys for monomials under a fixed order and variable count.

    Keys are additive (key(a*b) == key(a) + key(b)) and compare like the
    monomial order, so a polynomial stored as ``{key: coeff}`` has its leading
    monomial at ``max(keys)``.  ``info(key)`` returns ``(exps, packed, deg)``
    where ``packed`` supports the guard-bit divisibility test of ``divides``.
    """

    def __init__(self, order: MonomialOrder, nvars: int):
        self.order = order
        self.nvars = nvars
        self._info: dict[int, tuple[tuple[int, ...], int, int]] = {}
        guard = 0
        for i in range(nvars):
            guard |= 1 << (_BITS * i + _BITS - 1)
        self.guard = guard
        if order.kind == "block":
            first = [i for i in order.block if i < nvars]
            rest = [i for i in range(nvars) if i not in set(first)]
            self._first = first
            self._rest = rest
            self._split = 1 << (_BITS * (len(rest) + 1))

    def encode(self, exps: Sequence[int]) -> int:
        if exps and max(exps) > _MAX_EXP:
            raise OverflowError(f"exponent above {_MAX_EXP} does not fit a packed monomial key")
        kind = self.order.kind
        if kind == "grevlex":
            return _grevlex_key(exps)
        if kind == "lex":
            key = 0
            for e in exps:
                key = (key << _BITS) | e
            return key
        first = [exps[i] for i in self._first]
        rest = [exps[i] for i in self._rest]
        return _grevlex_key(first) * self._split + _grevlex_key(rest)

    def decode(self, key: int) -> tuple[int, ...]:
        return self.info(key)[0]

    def info(self, key: int) -> tuple[tuple[int, ...], int, int]:
        hit = self._info.get(key)
        if hit is not None:
            return hit
        kind = self.order.kind
        n = self.nvars
        if kind == "grevlex":
            exps = _grevlex_exps(key, n)
        elif kind == "lex":
            exps = [0] * n
            k = key
            for i in range(n - 1, -1, -1):
                exps[i] = k & (_W - 1)
                k >>= _BITS
        else:
            hi, lo = divmod(key, self._split)
            exps = [0] * n
            for i, e in zip(self._first, _grevlex_exps(hi, len(self._first))):
                exps[i] = e
            for i, e in zip(self._rest, _grevlex_exps(lo, len(self._rest))):
                exps[i] = e
        packed = 0
        for i in range(n - 1, -1, -1):
            packed = (packed << _BITS) | exps[i]
        hit = (tuple(exps), packed, sum(exps))
        self._info[key] = hit
        return hit

    def divides(self, small_packed: int, big_packed: int) -> bool:
        g = self.guard
        return ((big_packed | g) - small_packed) & g == g


# --------------------------------------------------------------------------
# rings and polynomials
# --------------------------------------------------------------------------

class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text; ``offset`` is 0-based when known."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (at column {offset + 1})")
        self.message = message
        self.offset = offset


@dataclass(frozen=True, eq=True)
class Ring:
    """Polynomial ring ``field[variables]`` with a default monomial order."""

    field: Field
    variables: tuple[str, ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        for v in self.variables:
            if not VARIABLE_RE.match(v):
                raise ValueError(f"bad variable name {v!r}; expected letters_digits")

    @classmethod
    def make(cls, names: str | Iterable[str], characteristic: int = 0,
             order: MonomialOrder = GREVLEX) -> "Ring":
        if isinstance(names, str):
            names = [s for s in re.split(r"[\s,]+", names) if s]
        return cls(Field(characteristic), tuple(names), order)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def with_field(self, characteristic: int) -> "Ring":
        return Ring(Field(characteristic), self.variables, self.order)

    def with_variables(self, variables: Sequence[str]) -> "Ring":
        return Ring(self.field, tuple(variables), self.order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ValueError("polynomial belongs to a different ring")
            return value
        if isinstance(value, str):
            return parse_polynomial(value, self)
        return self.constant(value)

    def header(self) -> str:
        return f"ring: char={self.characteristic} vars={','.join(self.variables)}"

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # -- construction helpers ------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = field(out.get(m, 0) + c)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, {m: field(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        out: dict[tuple[int, ...], object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: field(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field(c)
        return Polynomial(self.ring, {m: field(v * c) for m, v in self.terms.items()})

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables_used(self) -> set[str]:
        names = self.ring.variables
        return {names[i] for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self, order: MonomialOrder | None = None):
        enc = (order or self.ring.order).encoder(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: enc.encode(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        """``(exponents, coefficient)`` of the largest term, or None for 0."""
        if not self.terms:
            return None
        enc = (order or self.ring.order).encoder(self.ring.nvars)
        m = max(self.terms, key=enc.encode)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inverse(c))

    # -- calculus and substitution -------------------------------------------
    def diff(self, var: str | int) -> "Polynomial":
        i = self.ring.index[var] if isinstance(var, str) else var
        field = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = field(c * m[i])
        return Polynomial(self.ring, out)

    def evaluate(self, point: Mapping[str, object] | Sequence[object]):
        """Value at a point (all variables assigned); returns a field element."""
        field = self.ring.field
        if isinstance(point, Mapping):
            values = [field(point[v]) for v in self.ring.variables]
        else:
            values = [field(v) for v in point]
        total = field(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * v ** e
            total = total + t
        return field(total)

    def substitute(self, images: Sequence["Polynomial"], target: Ring | None = None) -> "Polynomial":
        """Compose with ``x_i -> images[i]`` (a ring homomorphism)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or (images[0].ring if images else self.ring)
        result = target.zero()
        powers: dict[tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Reinterpret in another ring, matching variables by name."""
        if ring.variables == self.ring.variables:
            return Polynomial(ring, {m: ring.field(c) for m, c in self.terms.items()})
        idx = [ring.index.get(v) for v in self.ring.variables]
        out = {}
        for m, c in self.terms.items():
            mm = [0] * ring.nvars
            for i, e in zip(idx, m):
                if i is None:
                    if e:
                        raise ValueError(f"{self} uses variables missing from {ring}")
                    continue
                mm[i] = e
            out[tuple(mm)] = ring.field(c)
        return Polynomial(ring, out)

    # -- text ----------------------------------------------------------------
    def __str__(self):
        return self.format()

    def format(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.variables
        pieces = []
        for m, c in self.sorted_terms():
            cs = field.format_coefficient(c)
            neg = cs.startswith("-")
            cs = cs.lstrip("-")
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` (variables, integer or a/b coefficients, + - * ^, parens)."""
    if not text.strip():
        raise PolynomialSyntaxError("empty polynomial text", 0)
    bad = re.search(r"[^A-Za-z0-9_+\-*/^()\s]", text)
    if bad:
        raise PolynomialSyntaxError(f"unexpected character {bad.group()!r}", bad.start())
    # wrapping in parentheses tolerates leading blanks; offsets are mapped back below
    source = "(" + text.replace("^", "**").replace("\n", " ") + ")"
    try:
        tree = ast.parse(source, mode="eval")
        return _Builder(ring).visit(tree.body)
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"malformed polynomial: {exc.msg}",
                                    _original_offset(text, (exc.offset or 1) - 1)) from None
    except PolynomialSyntaxError as exc:
        if exc.offset is None:
            raise
        raise PolynomialSyntaxError(exc.message, _original_offset(text, exc.offset)) from None


def _original_offset(text: str, offset: int) -> int:
    """Map an offset in the rewritten source back into ``text``."""
    pos = offset - 1  # opening parenthesis
    shift = 0
    for i, ch in enumerate(text):
        if i + shift >= pos:
            return i
        if ch == "^":
            shift += 1
    return max(0, min(pos - shift, len(text) - 1)) if text else 0


class _Builder:
    def __init__(self, ring: Ring):
        self.ring = ring

    def visit(self, node) -> Polynomial:
        ring = self.ring
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise PolynomialSyntaxError(
                    f"coefficient must be an integer or rational literal, got {node.value!r}",
                    node.col_offset)
            return ring.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring.index:
                raise PolynomialSyntaxError(f"unknown variable {node.id!r}", node.col_offset)
            return ring.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = self.visit(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            op = node.op
            if isinstance(op, ast.Pow):
                exponent = node.right
                if not (isinstance(exponent, ast.Constant) and isinstance(exponent.value, int)
                        and not isinstance(exponent.value, bool) and exponent.value >= 0):
                    raise PolynomialSyntaxError("exponent must be a nonnegative integer literal",
                                                exponent.col_offset)
                return self.visit(node.left) ** exponent.value
            left = self.visit(node.left)
            right = self.visit(node.right)
            if isinstance(op, ast.Add):
                return left + right
            if isinstance(op, ast.Sub):
                return left - right
            if isinstance(op, ast.Mult):
                return left * right
            if isinstance(op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise PolynomialSyntaxError("can only divide by a nonzero constant",
                                                node.right.col_offset)
                c = right.terms[(0,) * ring.nvars]
                return left.scale(ring.field.inverse(c))
        raise PolynomialSyntaxError(f"unsupported syntax: {ast.dump(node)[:40]}",
                                    getattr(node, "col_offset", None))


# --------------------------------------------------------------------------
# polynomial matrices
# --------------------------------------------------------------------------

class PolyMatrix:
    """Rectangular matrix of polynomials from one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows: Sequence[Sequence[object]]):
        rows = [[ring(e) if not isinstance(e, Polynomial) else e for e in row] for row in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows have different lengths")
        for r in rows:
            for e in r:
                if e.ring != ring:
                    raise ValueError("all entries must share the ring")
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def parse(cls, ring: Ring, rows: Sequence[Sequence[str | int]]) -> "PolyMatrix":
        return cls(ring, [[ring(e) for e in row] for row in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "PolyMatrix":
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, list(zip(*self.rows)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def column(self, j: int) -> list[Polynomial]:
        return [r[j] for r in self.rows]

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch in matrix product")
        zero = self.ring.zero()
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    a = self.rows[i][t]
                    b = other.rows[t][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(e) for e in r] for r in self.rows])

    def entries(self) -> list[Polynomial]:
        return [e for r in self.rows for e in r]

    def determinant(self) -> Polynomial:
        return determinant(self)

    def minors(self, k: int) -> list[Polynomial]:
        return minors(k, self)

    def __str__(self):
        cells = [[e.format() for e in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("| " + " ".join(c.ljust(width) for c in r) + " |" for r in cells)


class _MinorCache:
    """Laplace expansion along the first remaining row, memoized on (rows, cols).

    Fraction-free: only ring additions and multiplications are used.
    """

    def __init__(self, m: PolyMatrix):
        self.m = m
        self.memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial] = {}

    def det(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if not rows:
            return self.m.ring.one()
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        entries = self.m.rows[rows[0]]
        acc = self.m.ring.zero()
        rest = rows[1:]
        for pos, j in enumerate(cols):
            a = entries[j]
            if not a:
                continue
            sub = self.det(rest, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = a * sub
            acc = acc - term if pos % 2 else acc + term
        self.memo[key] = acc
        return acc


def determinant(m: PolyMatrix) -> Polynomial:
    """Exact determinant of a square polynomial matrix."""
    n, k = m.shape
    if n != k:
        raise ValueError(f"determinant of a non-square {n}x{k} matrix")
    return _MinorCache(m).det(tuple(range(n)), tuple(range(n)))


def minors(k: int, m: PolyMatrix) -> list[Polynomial]:
    """All k x k minors, ordered lexicographically by (row set, column set)."""
    n, c = m.shape
    if k < 0:
        raise ValueError("minor size must be nonnegative")
    if k == 0:
        return [m.ring.one()]
    if k > n or k > c:
        return []
    cache = _MinorCache(m)
    return [cache.det(rows, cols)
            for rows in itertools.combinations(range(n), k)
            for cols in itertools.combinations(range(c), k)]
