"""Buchberger's algorithm and the ideal-theoretic predicates built on it.

The kernel works on dictionaries ``{monomial key: coefficient}`` where keys
come from :class:`~occ.polycore.MonomialEncoder` (additive, order-preserving
integers).  Over GF(p) basis elements are kept monic; over Q they are kept as
primitive integer polynomials and reduced fraction-free, then made monic on
the way out.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .polycore import (
    GREVLEX,
    MonomialOrder,
    PolyMatrix,
    Polynomial,
    Ring,
    parse_polynomial,
)

__all__ = [
    "Ideal",
    "RingMap",
    "groebner_basis",
    "normal_form",
    "ideal_equal",
    "ideal_member",
    "ideal_contains",
    "ideal_dimension",
    "eliminate",
    "saturate",
    "apply_map",
    "jacobian",
    "s_polynomial_certificate",
    "read_ideal",
    "format_ideal",
    "RingMismatchError",
]


class RingMismatchError(ValueError):
    pass


# --------------------------------------------------------------------------
# kernel
# --------------------------------------------------------------------------

class _Kernel:
    """Reduction and S-pair machinery for one (ring, order)."""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.enc = order.encoder(ring.nvars)
        self.p = ring.characteristic

    # conversions ------------------------------------------------------------
    def to_internal(self, f: Polynomial) -> dict[int, int]:
        enc = self.enc.encode
        if self.p:
            return {enc(m): c for m, c in f.terms.items()}
        den = 1
        for c in f.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return self.normalize({enc(m): int(c * den) for m, c in f.terms.items()})

    def to_polynomial(self, d: dict[int, int]) -> Polynomial:
        dec = self.enc.decode
        if self.p:
            lc_inv = pow(d[max(d)], -1, self.p) if d else 1
            return Polynomial(self.ring, {dec(k): c * lc_inv % self.p for k, c in d.items()})
        lc = d[max(d)] if d else 1
        return Polynomial(self.ring, {dec(k): Fraction(c, lc) for k, c in d.items()})

    def normalize(self, d: dict[int, int]) -> dict[int, int]:
        """Monic over GF(p); primitive with positive leading coefficient over Q."""
        if not d:
            return d
        lc = d[max(d)]
        if self.p:
            if lc == 1:
                return d
            inv = pow(lc, -1, self.p)
            p = self.p
            return {k: c * inv % p for k, c in d.items()}
        g = 0
        for c in d.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        if lc < 0:
            g = -g
        if g == 1:
            return d
        return {k: c // g for k, c in d.items()}

    # reduction --------------------------------------------------------------
    def reduce(self, h: dict[int, int], basis: Sequence[tuple[int, int, dict]],
               full: bool = True, keep_head: bool = False) -> dict[int, int]:
        """Normal form of ``h`` by ``basis`` entries ``(lm_key, lm_packed, poly)``.

        ``full=False`` stops at the first irreducible leading term (enough for
        a zero test); ``keep_head=True`` reduces only the tail.  Over Q the
        result is a scalar multiple of the true remainder.
        """
        info = self.enc.info
        divides = self.enc.divides
        p = self.p
        h = dict(h)
        rem: dict[int, int] = {}
        if keep_head and h:
            top = max(h)
            rem[top] = h.pop(top)
        steps = 0
        while h:
            m = max(h)
            c = h[m]
            packed = info(m)[1]
            for lm, lm_packed, g in basis:
                if divides(lm_packed, packed):
                    break
            else:
                if not full:
                    rem.update(h)
                    return rem
                rem[m] = c
                del h[m]
                continue
            shift = m - lm
            if p:
                get = h.get
                pop = h.pop
                for k, v in g.items():
                    kk = k + shift
                    nv = (get(kk, 0) - c * v) % p
                    if nv:
                        h[kk] = nv
                    else:
                        pop(kk, None)
            else:
                a = g[lm]
                gg = math.gcd(a, c)
                mult_h = a // gg
                mult_g = c // gg
                if mult_h != 1:
                    for k in h:
                        h[k] *= mult_h
                    for k in rem:
                        rem[k] *= mult_h
                get = h.get
                pop = h.pop
                for k, v in g.items():
                    kk = k + shift
                    nv = get(kk, 0) - mult_g * v
                    if nv:
                        h[kk] = nv
                    else:
                        pop(kk, None)
                steps += 1
                if steps % 16 == 0:
                    h, rem = self._shrink(h, rem)
        return rem

    @staticmethod
    def _shrink(h: dict[int, int], rem: dict[int, int]):
        g = 0
        for c in h.values():
            g = math.gcd(g, c)
            if g == 1:
                return h, rem
        for c in rem.values():
            g = math.gcd(g, c)
            if g == 1:
                return h, rem
        if g <= 1:
            return h, rem
        return ({k: c // g for k, c in h.items()}, {k: c // g for k, c in rem.items()})

    def s_polynomial(self, f: dict[int, int], g: dict[int, int]) -> dict[int, int]:
        lf, lg = max(f), max(g)
        L = self.lcm(lf, lg)
        sf, sg = L - lf, L - lg
        p = self.p
        if p:
            out = {k + sf: v for k, v in f.items()}
            for k, v in g.items():
                kk = k + sg
                nv = (out.get(kk, 0) - v) % p
                if nv:
                    out[kk] = nv
                else:
                    out.pop(kk, None)
            return out
        a, b = f[lf], g[lg]
        gg = math.gcd(a, b)
        a, b = a // gg, b // gg
        out = {k + sf: v * b for k, v in f.items()}
        for k, v in g.items():
            kk = k + sg
            nv = out.get(kk, 0) - v * a
            if nv:
                out[kk] = nv
            else:
                out.pop(kk, None)
        return out

    def lcm(self, a: int, b: int) -> int:
        ea = self.enc.info(a)[0]
        eb = self.enc.info(b)[0]
        return self.enc.encode([x if x > y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea = self.enc.info(a)[0]
        eb = self.enc.info(b)[0]
        return not any(x and y for x, y in zip(ea, eb))

    def key_divides(self, a: int, b: int) -> bool:
        return self.enc.divides(self.enc.info(a)[1], self.enc.info(b)[1])

    def deg(self, key: int) -> int:
        return self.enc.info(key)[2]

    # Buchberger ---------------------------------------------------------------
    def buchberger(self, gens: Iterable[dict[int, int]]) -> list[dict[int, int]]:
        polys: list[dict[int, int]] = []   # every element ever added
        lms: list[int] = []
        sugar: list[int] = []
        active: list[int] = []             # indices forming the current basis
        pairs: dict[tuple[int, int], tuple[int, int]] = {}  # (i, j) -> (sugar, lcm)

        def basis_view():
            info = self.enc.info
            return [(lms[i], info(lms[i])[1], polys[i]) for i in active]

        def add(h: dict[int, int], s: int):
            nonlocal active
            idx = len(polys)
            polys.append(h)
            lh = max(h)
            lms.append(lh)
            sugar.append(s)
            # Gebauer-Moeller update
            cands = [(g, self.lcm(lh, lms[g])) for g in active]
            accepted: list[tuple[int, int]] = []
            while cands:
                g, L = cands.pop()
                if self.coprime(lh, lms[g]) or not any(
                        self.key_divides(L2, L) for _, L2 in cands + accepted):
                    accepted.append((g, L))
            info = self.enc.info
            lh_packed = info(lh)[1]
            for (i, j), (_, L) in list(pairs.items()):
                if (self.enc.divides(lh_packed, info(L)[1])
                        and self.lcm(lms[i], lh) != L and self.lcm(lms[j], lh) != L):
                    del pairs[(i, j)]
            for g, L in accepted:
                if self.coprime(lh, lms[g]):
                    continue
                s_pair = max(sugar[g] - self.deg(lms[g]), s - self.deg(lh)) + self.deg(L)
                pairs[(g, idx)] = (s_pair, L)
            active = [g for g in active
                      if not self.enc.divides(lh_packed, info(lms[g])[1])] + [idx]

        start = [self.normalize(dict(g)) for g in gens if g]
        start.sort(key=lambda d: (self.deg(max(d)), max(d)))
        for g in start:
            h = self.normalize(self.reduce(g, basis_view()))
            if h:
                add(h, max(self.deg(k) for k in h))
        while pairs:
            (i, j), (s_ij, _) = min(pairs.items(), key=lambda kv: (kv[1][0], kv[1][1], kv[0]))
            del pairs[(i, j)]
            sp = self.s_polynomial(polys[i], polys[j])
            h = self.normalize(self.reduce(sp, basis_view()))
            if h:
                add(h, s_ij)
        return self.interreduce([polys[i] for i in active])

    def interreduce(self, basis: list[dict[int, int]]) -> list[dict[int, int]]:
        info = self.enc.info
        basis = sorted(basis, key=max)
        # minimal: drop elements whose leading monomial is divisible by another's
        minimal = []
        for f in basis:
            lf = max(f)
            if any(self.key_divides(max(g), lf) for g in minimal):
                continue
            minimal.append(f)
        out = []
        for i, f in enumerate(minimal):
            others = [(max(g), info(max(g))[1], g) for j, g in enumerate(minimal) if j != i]
            out.append(self.normalize(self.reduce(f, others, keep_head=True)))
        out.sort(key=max)
        return out


# --------------------------------------------------------------------------
# public types
# --------------------------------------------------------------------------

@dataclass
class Ideal:
    """Ideal of ``ring`` given by generators; reduced bases are cached per order."""

    ring: Ring
    generators: list[Polynomial]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if isinstance(g, str):
                g = parse_polynomial(g, self.ring)
            if g.ring != self.ring:
                raise RingMismatchError(f"generator {g} is not in {self.ring}")
            if g:
                gens.append(g)
        self.generators = gens

    @classmethod
    def of(cls, ring: Ring, gens: Iterable[Polynomial | str]) -> "Ideal":
        return cls(ring, list(gens))

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def basis(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        return groebner_basis(self, order)

    def contains(self, f: Polynomial | str, order: MonomialOrder | None = None) -> bool:
        return ideal_member(f, self, order)

    def dimension(self) -> int:
        return ideal_dimension(self)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def is_unit(self) -> bool:
        b = groebner_basis(self)
        return len(b) == 1 and b[0].is_constant()

    def __len__(self):
        return len(self.generators)

    def __str__(self):
        return "ideal(" + ", ".join(g.format() for g in self.generators) + ")"


def _same_ring(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def _kernel_basis(ideal: Ideal, order: MonomialOrder):
    """Reduced basis in kernel form, cached on the ideal."""
    key = ("kernel", order)
    with ideal._lock:
        hit = ideal._cache.get(key)
    if hit is not None:
        return hit
    kernel = _Kernel(ideal.ring, order)
    basis = kernel.buchberger(kernel.to_internal(g) for g in ideal.generators)
    result = (kernel, basis)
    with ideal._lock:
        ideal._cache[key] = result
    return result


def groebner_basis(ideal: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis, monic, sorted by increasing leading monomial."""
    order = order or ideal.ring.order
    kernel, basis = _kernel_basis(ideal, order)
    return [kernel.to_polynomial(b) for b in basis]


def normal_form(f: Polynomial, ideal: Ideal, order: MonomialOrder | None = None) -> Polynomial:
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    order = order or ideal.ring.order
    kernel, basis = _kernel_basis(ideal, order)
    info = kernel.enc.info
    view = [(max(b), info(max(b))[1], b) for b in basis]
    red = kernel.reduce(kernel.to_internal(f), view)
    if not red:
        return ideal.ring.zero()
    if kernel.p:
        dec = kernel.enc.decode
        return Polynomial(ideal.ring, {dec(k): c for k, c in red.items()})
    # over Q the remainder is only determined up to a scalar by the kernel
    return _rational_normal_form(f, ideal, order)


def _rational_normal_form(f, ideal, order):
    basis = groebner_basis(ideal, order)
    enc = order.encoder(ideal.ring.nvars)
    leads = [(b.leading_term(order)[0], b) for b in basis]
    h = dict(f.terms)
    rem = {}
    while h:
        m = max(h, key=enc.encode)
        c = h[m]
        for lm, b in leads:
            if all(x <= y for x, y in zip(lm, m)):
                shift = tuple(y - x for x, y in zip(lm, m))
                for bm, bc in b.terms.items():
                    mm = tuple(u + v for u, v in zip(bm, shift))
                    nv = h.get(mm, 0) - c * bc
                    if nv:
                        h[mm] = nv
                    else:
                        h.pop(mm, None)
                break
        else:
            rem[m] = c
            del h[m]
    return Polynomial(ideal.ring, rem)


def ideal_member(f: Polynomial | str, ideal: Ideal, order: MonomialOrder | None = None) -> bool:
    if isinstance(f, str):
        f = parse_polynomial(f, ideal.ring)
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    if not f:
        return True
    order = order or ideal.ring.order
    kernel, basis = _kernel_basis(ideal, order)
    info = kernel.enc.info
    view = [(max(b), info(max(b))[1], b) for b in basis]
    return not kernel.reduce(kernel.to_internal(f), view, full=False)


def ideal_contains(big: Ideal, small: Ideal, order: MonomialOrder | None = None) -> bool:
    """True iff every generator of ``small`` lies in ``big``."""
    _same_ring(big, small)
    return all(ideal_member(g, big, order) for g in small.generators)


def ideal_equal(a: Ideal, b: Ideal, order: MonomialOrder | None = None) -> bool:
    _same_ring(a, b)
    order = order or a.ring.order
    return groebner_basis(a, order) == groebner_basis(b, order)


def s_polynomial_certificate(ideal: Ideal, order: MonomialOrder | None = None) -> list[tuple[int, int]]:
    """Recheck Buchberger's criterion on the cached basis.

    Returns the list of index pairs whose S-polynomial does *not* reduce to
    zero; an empty list certifies the basis.
    """
    order = order or ideal.ring.order
    kernel, basis = _kernel_basis(ideal, order)
    info = kernel.enc.info
    view = [(max(b), info(max(b))[1], b) for b in basis]
    bad = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            sp = kernel.s_polynomial(basis[i], basis[j])
            if kernel.reduce(sp, view, full=False):
                bad.append((i, j))
    return bad


def ideal_dimension(ideal: Ideal) -> int:
    """Krull dimension of ring/ideal; -1 for the unit ideal."""
    basis = groebner_basis(ideal, GREVLEX)
    n = ideal.ring.nvars
    if any(b.is_constant() for b in basis):
        return -1
    supports = set()
    for b in basis:
        lm, _ = b.leading_term(GREVLEX)
        supports.add(sum(1 << i for i, e in enumerate(lm) if e))
    supports = sorted(supports, key=lambda s: bin(s).count("1"))
    best = 0

    def independent(mask: int) -> bool:
        return not any(s & mask == s for s in supports)

    def search(i: int, mask: int, size: int):
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = max(best, size)
            return
        with_i = mask | (1 << i)
        if independent(with_i):
            search(i + 1, with_i, size + 1)
        search(i + 1, mask, size)

    search(0, 0, 0)
    return best


def eliminate(ideal: Ideal, drop: Iterable[str]) -> Ideal:
    """``ideal`` intersected with the subring not containing ``drop``."""
    ring = ideal.ring
    drop = list(drop)
    idx = [ring.index[v] for v in drop]
    order = MonomialOrder.elimination(idx)
    basis = groebner_basis(ideal, order)
    keep_vars = [v for v in ring.variables if v not in set(drop)]
    sub = Ring(ring.field, tuple(keep_vars), ring.order)
    gens = [b.change_ring(sub) for b in basis
            if not any(m[i] for m in b.terms for i in idx)]
    return Ideal(sub, gens)


def _fresh_name(ring: Ring, stem: str = "t") -> str:
    i = 0
    while f"{stem}_{i}" in ring.index:
        i += 1
    return f"{stem}_{i}"


def saturate(ideal: Ideal, f: Polynomial | str) -> Ideal:
    """The saturation (ideal : f^oo) via t*f - 1 and elimination of t."""
    ring = ideal.ring
    if isinstance(f, str):
        f = parse_polynomial(f, ring)
    if not f:
        raise ValueError("cannot saturate by the zero polynomial")
    t = _fresh_name(ring)
    big = Ring(ring.field, (t,) + ring.variables, ring.order)
    gens = [g.change_ring(big) for g in ideal.generators]
    gens.append(big.var(t) * f.change_ring(big) - 1)
    elim = eliminate(Ideal(big, gens), [t])
    return Ideal(ring, [g.change_ring(ring) for g in elim.generators])


@dataclass(frozen=True)
class RingMap:
    """Ring homomorphism sending source variable i to ``images[i]``."""

    source: Ring
    target: Ring
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        images = tuple(self.target(g) if isinstance(g, str) else g for g in self.images)
        if len(images) != self.source.nvars:
            raise ValueError("need exactly one image per source variable")
        for g in images:
            if g.ring != self.target:
                raise RingMismatchError(f"image {g} is not in the target ring")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, ring: Ring) -> "RingMap":
        return cls(ring, ring, tuple(ring.gens()))

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise RingMismatchError("polynomial is not in the source ring")
        return f.substitute(self.images, self.target)


def apply_map(m: RingMap, ideal: Ideal) -> Ideal:
    """Ideal generated by the images of the generators of ``ideal``."""
    if ideal.ring != m.source:
        raise RingMismatchError("ideal is not in the source ring of the map")
    return Ideal(m.target, [m(g) for g in ideal.generators])


def jacobian(gens: Sequence[Polynomial], ring: Ring | None = None) -> PolyMatrix:
    ring = ring or gens[0].ring
    return PolyMatrix(ring, [[g.diff(i) for i in range(ring.nvars)] for g in gens])


# --------------------------------------------------------------------------
# ideal files
# --------------------------------------------------------------------------

def read_ideal(source: str | Path) -> Ideal:
    """Parse the ideal file format (``ring:`` header, one polynomial per line)."""
    text = Path(source).read_text() if isinstance(source, Path) or (
        isinstance(source, str) and "\n" not in source and Path(source).is_file()) else source
    ring = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            if not line.startswith("ring:"):
                raise ValueError(f"line {lineno}: expected 'ring: char=<c> vars=<...>' header")
            fields = dict(tok.split("=", 1) for tok in line[5:].split())
            try:
                ring = Ring.make(fields["vars"].split(","), int(fields["char"]))
            except KeyError as exc:
                raise ValueError(f"line {lineno}: header missing {exc}") from None
            continue
        try:
            gens.append(parse_polynomial(line, ring))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if ring is None:
        raise ValueError("missing ring header")
    return Ideal(ring, gens)


def format_ideal(ideal: Ideal, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(ideal.ring.header())
    lines.extend(g.format() for g in ideal.generators)
    return "\n".join(lines) + "\n"
