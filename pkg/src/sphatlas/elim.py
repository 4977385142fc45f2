"""Fraction-free elimination cores shared by matrix rank and Bruhat cells.

Rows are cleared of denominators first (row scaling never changes ranks or
pivot patterns), then Bareiss updates keep every intermediate entry equal to
a minor of the cleared matrix, so divisions are exact and growth polynomial.
Two coefficient rings: integer polynomials in t (cyclotomic order 1) and
polynomials with cyclotomic coefficients (general order).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, List, Optional, Sequence, Tuple

from .field import Scalar, Tower, get_tower

IntPoly = Tuple[int, ...]


# -- integer polynomial ring ----------------------------------------------------


def _ip_trim(c: List[int]) -> IntPoly:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _ip_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    if len(a) == 1 and len(b) == 1:
        return (a[0] * b[0],)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ip_trim(out)


def _ip_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        out = list(b)
        for i in range(len(out)):
            out[i] = -out[i]
        for i, x in enumerate(a):
            out[i] += x
        return _ip_trim(out)
    out = list(a)
    for i, y in enumerate(b):
        out[i] -= y
    return _ip_trim(out)


def _ip_divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a:
        return ()
    assert b, "division by zero polynomial"
    if len(b) == 1:
        d = b[0]
        out = []
        for x in a:
            q, r = divmod(x, d)
            assert r == 0, "inexact integer division in elimination"
            out.append(q)
        return _ip_trim(out)
    rem = list(a)
    qlen = len(a) - len(b) + 1
    quo = [0] * qlen
    lead = b[-1]
    for k in range(qlen - 1, -1, -1):
        c = rem[k + len(b) - 1]
        q, r = divmod(c, lead)
        assert r == 0, "inexact polynomial division in elimination"
        quo[k] = q
        if q:
            for j, y in enumerate(b):
                rem[k + j] -= q * y
    assert all(x == 0 for x in rem), "nonzero remainder in exact division"
    return tuple(quo)


class IntPolyRing:
    zero: IntPoly = ()
    one: IntPoly = (1,)
    mul = staticmethod(_ip_mul)
    sub = staticmethod(_ip_sub)
    divexact = staticmethod(_ip_divexact)

    @staticmethod
    def is_zero(a: IntPoly) -> bool:
        return not a


class CycPolyRing:
    def __init__(self, tower: Tower):
        self.tower = tower
        self.zero = tower.poly_zero()
        self.one = tower.poly_one()

    def mul(self, a, b):
        return self.tower.poly_mul(a, b)

    def sub(self, a, b):
        return self.tower.poly_sub(a, b)

    def divexact(self, a, b):
        q, r = self.tower.poly_divmod(a, b)
        assert not r, "nonzero remainder in exact division"
        return q

    @staticmethod
    def is_zero(a) -> bool:
        return not a


# -- denominator clearing --------------------------------------------------------


def _scalar_num_den(s: Scalar, tower: Tower):
    if s.rat is not None:
        num = tower.poly_from_cyc(tower.cyc_from_fraction(s.rat))
        return num, tower.poly_one()
    return s.num, s.den


def cleared_rows(data: Sequence[Sequence[Scalar]], m: int):
    """Clear denominators row by row; returns (ring, rows)."""
    tower = get_tower(m)
    ring: object
    if m == 1:
        rows_int: List[List[IntPoly]] = []
        for row in data:
            pairs = [_scalar_num_den(s, tower) for s in row]
            den_lcm = tower.poly_one()
            for _, d in pairs:
                g = tower.poly_gcd(den_lcm, d)
                den_lcm = tower.poly_mul(den_lcm, tower.poly_divmod(d, g)[0])
            cleared = []
            for npoly, d in pairs:
                mult = tower.poly_divmod(den_lcm, d)[0]
                cleared.append(tower.poly_mul(npoly, mult))
            # coefficients are 1-tuples of Fractions; scale to integers
            denoms = [c[0].denominator for p in cleared for c in p]
            scale = 1
            for d in denoms:
                scale = lcm(scale, d)
            int_row = []
            for p in cleared:
                int_row.append(tuple(int(c[0] * scale) for c in p))
            rows_int.append(int_row)
        return IntPolyRing(), rows_int
    rows = []
    for row in data:
        pairs = [_scalar_num_den(s, tower) for s in row]
        den_lcm = tower.poly_one()
        for _, d in pairs:
            g = tower.poly_gcd(den_lcm, d)
            den_lcm = tower.poly_mul(den_lcm, tower.poly_divmod(d, g)[0])
        cleared = []
        for npoly, d in pairs:
            mult = tower.poly_divmod(den_lcm, d)[0]
            cleared.append(tower.poly_mul(npoly, mult))
        rows.append(cleared)
    return CycPolyRing(tower), rows


# -- Bareiss cores -----------------------------------------------------------------


def bareiss_rank(ring, rows) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = ring.one
    rank = 0
    used = [False] * nrows
    for j in range(ncols):
        p = next((i for i in range(nrows) if not used[i] and not ring.is_zero(a[i][j])), None)
        if p is None:
            continue
        pivot = a[p][j]
        for i in range(nrows):
            if used[i] or i == p:
                continue
            aij = a[i][j]
            row = a[i]
            src = a[p]
            if ring.is_zero(aij):
                for c in range(j + 1, ncols):
                    if not ring.is_zero(row[c]):
                        row[c] = ring.divexact(ring.mul(pivot, row[c]), prev)
            else:
                for c in range(j + 1, ncols):
                    row[c] = ring.divexact(
                        ring.sub(ring.mul(pivot, row[c]), ring.mul(aij, src[c])), prev
                    )
                row[j] = ring.zero
        used[p] = True
        prev = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_bottom_pivots(ring, rows) -> Optional[List[int]]:
    """Pivot row of each column with bottom-most pivoting (Bruhat pattern);
    None when the matrix is singular."""
    a = [list(r) for r in rows]
    n = len(a)
    prev = ring.one
    used = [False] * n
    pivots = [-1] * n
    for j in range(n):
        p = next((i for i in range(n - 1, -1, -1) if not used[i] and not ring.is_zero(a[i][j])), None)
        if p is None:
            return None
        pivot = a[p][j]
        for i in range(n):
            if used[i] or i == p:
                continue
            aij = a[i][j]
            row = a[i]
            src = a[p]
            if ring.is_zero(aij):
                for c in range(j + 1, n):
                    if not ring.is_zero(row[c]):
                        row[c] = ring.divexact(ring.mul(pivot, row[c]), prev)
            else:
                for c in range(j + 1, n):
                    row[c] = ring.divexact(
                        ring.sub(ring.mul(pivot, row[c]), ring.mul(aij, src[c])), prev
                    )
                row[j] = ring.zero
        used[p] = True
        pivots[j] = p
        prev = pivot
    return pivots
