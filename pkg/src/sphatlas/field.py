"""Exact scalars in the tower Q < Q(zeta_m) < Q(zeta_m)(t).

A scalar is a quotient of polynomials in the formal parameter ``t`` whose
coefficients live in the cyclotomic field Q[x]/Phi_m(x).  Values that happen
to be plain rationals are stored as a single Fraction so that the common case
(rational matrices) runs at Fraction speed.

All values are immutable; randomness flows through an explicit SeedStream.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DivisionByZero

Cyc = Tuple[Fraction, ...]          # coefficients of 1, zeta, zeta^2, ...
Poly = Tuple[Cyc, ...]              # coefficients of 1, t, t^2, ...

_F0 = Fraction(0)
_F1 = Fraction(1)


def _int_poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        lead = den[-1]
        assert c % lead == 0
        q[k] = c // lead
        for j, d in enumerate(den):
            num[k + j] -= q[k] * d
    assert all(c == 0 for c in num)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_m, ascending."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]      # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _int_poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def get_tower(m: int) -> "Tower":
    return Tower(m)


class Tower:
    """The field Q(zeta_m)(t); holds reduction data for cyclotomic arithmetic.

    Use :func:`get_tower` so towers of equal order are shared.
    """

    def __init__(self, m: int):
        self.m = m
        mod = cyclotomic_polynomial(m)
        self.degree = len(mod) - 1
        self.modulus = tuple(Fraction(c) for c in mod)
        self._zero_cyc: Cyc = (_F0,) * self.degree
        one = [_F0] * self.degree
        one[0] = _F1
        self._one_cyc: Cyc = tuple(one)
        # rows[k] = x^(degree+k) reduced mod Phi_m, for products of degree < 2*deg-1
        rows = []
        cur = [-c / self.modulus[-1] for c in self.modulus[:-1]]
        rows.append(tuple(cur))
        for _ in range(self.degree - 2):
            nxt = [_F0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(self.degree):
                    nxt[i] += top * rows[0][i]
            cur = nxt
            rows.append(tuple(cur))
        self._red_rows = rows

    # -- cyclotomic coefficient arithmetic -------------------------------

    def cyc_from_fraction(self, q: Fraction) -> Cyc:
        out = [_F0] * self.degree
        out[0] = q
        return tuple(out)

    def cyc_is_rational(self, a: Cyc) -> bool:
        return all(c == 0 for c in a[1:])

    def cyc_add(self, a: Cyc, b: Cyc) -> Cyc:
        return tuple(x + y for x, y in zip(a, b))

    def cyc_sub(self, a: Cyc, b: Cyc) -> Cyc:
        return tuple(x - y for x, y in zip(a, b))

    def cyc_neg(self, a: Cyc) -> Cyc:
        return tuple(-x for x in a)

    def cyc_mul(self, a: Cyc, b: Cyc) -> Cyc:
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        prod = [_F0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self._red_rows[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def cyc_inv(self, a: Cyc) -> Cyc:
        if all(c == 0 for c in a):
            raise DivisionByZero("inverse of zero cyclotomic element")
        if self.degree == 1:
            return (1 / a[0],)
        if self.cyc_is_rational(a):
            return self.cyc_from_fraction(1 / a[0])
        # extended Euclid in Q[x] against the modulus
        r0 = list(self.modulus)
        r1 = list(a)
        s0: list[Fraction] = [_F0]
        s1: list[Fraction] = [_F1]

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        def padd_scaled(p, q, c, shift):
            out = list(p) + [_F0] * max(0, len(q) + shift - len(p))
            for i, y in enumerate(q):
                out[i + shift] += c * y
            return trim(out)

        r1 = trim(r1)
        while True:
            # divide r0 by r1
            q_s = s0
            rem = list(r0)
            quo_on_s = list(s0)
            while len(rem) >= len(r1) and rem:
                c = rem[-1] / r1[-1]
                shift = len(rem) - len(r1)
                rem = padd_scaled(rem, r1, -c, shift)
                quo_on_s = padd_scaled(quo_on_s, s1, -c, shift)
            if not rem:
                break
            r0, r1 = r1, rem
            s0, s1 = s1, quo_on_s
        # r1 is the gcd (a constant since Phi_m is irreducible over Q)
        if len(r1) != 1:
            raise ArithmeticError("cyclotomic modulus not coprime with element")
        c = r1[0]
        inv = [x / c for x in s1]
        inv += [_F0] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    # -- polynomial (t-layer) arithmetic ---------------------------------

    def poly_zero(self) -> Poly:
        return ()

    def poly_one(self) -> Poly:
        return (self._one_cyc,)

    def poly_from_cyc(self, a: Cyc) -> Poly:
        if all(c == 0 for c in a):
            return ()
        return (a,)

    def poly_trim(self, p: Sequence[Cyc]) -> Poly:
        n = len(p)
        while n and all(c == 0 for c in p[n - 1]):
            n -= 1
        return tuple(p[:n])

    def poly_add(self, p: Poly, q: Poly) -> Poly:
        if len(p) < len(q):
            p, q = q, p
        out = list(p)
        for i, c in enumerate(q):
            out[i] = self.cyc_add(out[i], c)
        return self.poly_trim(out)

    def poly_neg(self, p: Poly) -> Poly:
        return tuple(self.cyc_neg(c) for c in p)

    def poly_sub(self, p: Poly, q: Poly) -> Poly:
        return self.poly_add(p, self.poly_neg(q))

    def poly_mul(self, p: Poly, q: Poly) -> Poly:
        if not p or not q:
            return ()
        out = [self._zero_cyc] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if all(c == 0 for c in a):
                continue
            for j, b in enumerate(q):
                out[i + j] = self.cyc_add(out[i + j], self.cyc_mul(a, b))
        return self.poly_trim(out)

    def poly_divmod(self, p: Poly, q: Poly) -> Tuple[Poly, Poly]:
        if not q:
            raise DivisionByZero("polynomial division by zero")
        rem = list(p)
        quo = [self._zero_cyc] * max(0, len(p) - len(q) + 1)
        inv_lead = self.cyc_inv(q[-1])
        while len(rem) >= len(q):
            if all(c == 0 for c in rem[-1]):
                rem.pop()
                continue
            c = self.cyc_mul(rem[-1], inv_lead)
            shift = len(rem) - len(q)
            quo[shift] = c
            for i, b in enumerate(q):
                rem[i + shift] = self.cyc_sub(rem[i + shift], self.cyc_mul(c, b))
            rem.pop()
        return self.poly_trim(quo), self.poly_trim(rem)

    def poly_gcd(self, p: Poly, q: Poly) -> Poly:
        a, b = p, q
        while b:
            _, a, b = None, b, self.poly_divmod(a, b)[1]
        if not a:
            return ()
        return self.poly_monic(a)

    def poly_monic(self, p: Poly) -> Poly:
        if not p:
            return ()
        inv = self.cyc_inv(p[-1])
        return tuple(self.cyc_mul(c, inv) for c in p)


class Scalar:
    """Element of Q(zeta_m)(t), canonical and hashable.

    Plain rationals are stored in ``rat``; everything else as a reduced
    fraction of polynomials with monic denominator.
    """

    __slots__ = ("tower", "rat", "num", "den")

    def __init__(self, tower: Tower, rat: Optional[Fraction], num: Optional[Poly], den: Optional[Poly]):
        self.tower = tower
        self.rat = rat
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @staticmethod
    def rational(value, m: int = 1) -> "Scalar":
        if type(value) is not Fraction:
            value = Fraction(value)
        return Scalar(get_tower(m), value, None, None)

    @staticmethod
    def zeta(m: int, power: int = 1) -> "Scalar":
        tower = get_tower(m)
        power %= m
        if tower.degree == 1:
            # zeta_1 = 1, zeta_2 = -1
            val = Fraction(1) if m == 1 else Fraction(-1) ** power
            return Scalar(tower, Fraction(val), None, None)
        coeffs = [_F0] * tower.degree
        if power < tower.degree:
            coeffs[power] = _F1
            cyc: Cyc = tuple(coeffs)
        else:
            cyc = tower._one_cyc
            gen = [_F0] * tower.degree
            gen[1] = _F1
            g = tuple(gen)
            for _ in range(power):
                cyc = tower.cyc_mul(cyc, g)
        return Scalar._make(tower, tower.poly_from_cyc(cyc), tower.poly_one())

    @staticmethod
    def parameter(m: int = 1) -> "Scalar":
        """The transcendental t."""
        tower = get_tower(m)
        num = (tower._zero_cyc, tower._one_cyc)
        return Scalar._make(tower, num, tower.poly_one())

    @staticmethod
    def _make(tower: Tower, num: Poly, den: Poly) -> "Scalar":
        if not den:
            raise DivisionByZero("scalar with zero denominator")
        if not num:
            return Scalar(tower, _F0, None, None)
        g = tower.poly_gcd(num, den)
        if len(g) > 1 or g[0] != tower._one_cyc:
            num = tower.poly_divmod(num, g)[0]
            den = tower.poly_divmod(den, g)[0]
        inv_lead = tower.cyc_inv(den[-1])
        if den[-1] != tower._one_cyc:
            num = tuple(tower.cyc_mul(c, inv_lead) for c in num)
            den = tuple(tower.cyc_mul(c, inv_lead) for c in den)
        if len(num) == 1 and len(den) == 1 and tower.cyc_is_rational(num[0]):
            return Scalar(tower, num[0][0], None, None)
        return Scalar(tower, None, num, den)

    def _lifted(self) -> Tuple[Poly, Poly]:
        if self.rat is None:
            return self.num, self.den
        t = self.tower
        return t.poly_from_cyc(t.cyc_from_fraction(self.rat)), t.poly_one()

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.tower, Fraction(other), None, None)
        return NotImplemented

    def _pair_tower(self, other: "Scalar") -> Tower:
        if self.tower is other.tower or self.tower.m == other.tower.m:
            return self.tower
        if other.rat is not None and other.tower.m == 1:
            return self.tower
        if self.rat is not None and self.tower.m == 1:
            return other.tower
        raise ValueError(
            f"mixed cyclotomic towers m={self.tower.m} and m={other.tower.m}"
        )

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        r = self.rat
        return r is not None and r.numerator == 0

    def is_one(self) -> bool:
        r = self.rat
        return r is not None and r.numerator == r.denominator

    def is_rational(self) -> bool:
        return self.rat is not None

    def as_fraction(self) -> Fraction:
        if self.rat is None:
            raise ValueError("scalar is not rational")
        return self.rat

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.rat is not None and other.rat is not None:
            return Scalar(self._pair_tower(other), self.rat + other.rat, None, None)
        t = self._pair_tower(other)
        n1, d1 = self._lifted()
        n2, d2 = other._lifted()
        num = t.poly_add(t.poly_mul(n1, d2), t.poly_mul(n2, d1))
        return Scalar._make(t, num, t.poly_mul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        if self.rat is not None:
            return Scalar(self.tower, -self.rat, None, None)
        t = self.tower
        return Scalar(t, None, t.poly_neg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.rat is not None and other.rat is not None:
            return Scalar(self._pair_tower(other), self.rat * other.rat, None, None)
        t = self._pair_tower(other)
        n1, d1 = self._lifted()
        n2, d2 = other._lifted()
        return Scalar._make(t, t.poly_mul(n1, n2), t.poly_mul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("scalar inverse of zero")
        if self.rat is not None:
            return Scalar(self.tower, 1 / self.rat, None, None)
        return Scalar._make(self.tower, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("scalar division by zero")
        if self.rat is not None and other.rat is not None:
            return Scalar(self._pair_tower(other), self.rat / other.rat, None, None)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k == 0:
            return Scalar(self.tower, _F1, None, None)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rat is not None and self.rat == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.rat is not None or other.rat is not None:
            return self.rat == other.rat
        return (
            self.tower.m == other.tower.m
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self.rat is not None:
            return hash(self.rat)
        return hash((self.tower.m, self.num, self.den))

    # -- rendering ----------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        from .parsing import format_scalar

        return format_scalar(self)


def scalar_zero(m: int = 1) -> Scalar:
    return Scalar.rational(0, m)


def scalar_one(m: int = 1) -> Scalar:
    return Scalar.rational(1, m)


class SeedStream:
    """Deterministic randomness source, explicitly threaded through callers."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def randint(self, a: int, b: int) -> int:
        return self._rng.randint(a, b)

    def choice(self, seq):
        return seq[self._rng.randrange(len(seq))]

    def split(self) -> "SeedStream":
        """Derive an independent child stream."""
        return SeedStream(self._rng.getrandbits(64))

    @staticmethod
    def for_task(seed: int, tag: str) -> "SeedStream":
        """Order-independent child stream for a named task."""
        h = 1469598103934665603
        for ch in tag.encode():
            h = ((h ^ ch) * 1099511628211) % (1 << 64)
        return SeedStream((seed * 0x9E3779B97F4A7C15 + h) % (1 << 64))


def random_fraction(stream: SeedStream, height: int) -> Fraction:
    """Uniform over numerators in [-height, height] and denominators in [1, height]."""
    if height < 1:
        raise ValueError("height bound must be positive")
    return Fraction(stream.randint(-height, height), stream.randint(1, height))


def random_scalar(stream: SeedStream, height: int, m: int = 1) -> Scalar:
    return Scalar.rational(random_fraction(stream, height), m)


def random_nonzero_scalar(stream: SeedStream, height: int, m: int = 1) -> Scalar:
    while True:
        s = random_scalar(stream, height, m)
        if not s.is_zero():
            return s
