"""Root systems for the simple types, in ambient integer coordinates.

Roots are integer vectors (E and F coordinates are doubled so half-integral
roots become integral), which keeps orthogonality and norm tests exact.
Simple-root numbering follows the standard Dynkin diagram conventions for
each type (branch node of E_n is alpha_2, F4 has long roots first, G2 short
root first).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    CascadeUnavailable,
    KindUnavailable,
    NotARoot,
    NotOrthogonal,
    UnsupportedType,
)

Vector = Tuple[int, ...]

MAX_CLASSICAL_RANK = 12

WEYL_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: (1 << n) * _factorial(n),
    "C": lambda n: (1 << n) * _factorial(n),
    "D": lambda n: (1 << (n - 1)) * _factorial(n),
    "E6": lambda n: 51840,
    "E7": lambda n: 2903040,
    "E8": lambda n: 696729600,
    "F4": lambda n: 1152,
    "G2": lambda n: 12,
}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def dot(u: Vector, v: Vector) -> int:
    return sum(a * b for a, b in zip(u, v))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def _basis_vec(n: int, i: int, c: int = 1) -> Vector:
    v = [0] * n
    v[i] = c
    return tuple(v)


def _solve_int_combination(basis: Sequence[Vector], v: Vector) -> Optional[Tuple[int, ...]]:
    """Express v as an integer combination of basis vectors, or None."""
    rows = len(v)
    cols = len(basis)
    a = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(v[i])] for i in range(rows)]
    piv_cols: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * cols
    for idx, c in enumerate(piv_cols):
        sol[c] = a[idx][cols]
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    # verify (also covers the free-variable case)
    for i in range(rows):
        if sum(sol[j] * basis[j][i] for j in range(cols)) != v[i]:
            return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


class RootSystem:
    """Immutable root datum for one simple (or small classical) type."""

    def __init__(self, label: str, family: str, rank: int, ambient_dim: int,
                 simple_roots: Sequence[Vector], roots: Sequence[Vector]):
        self.label = label
        self.family = family
        self.rank = rank
        self.ambient_dim = ambient_dim
        self.simple_roots = tuple(simple_roots)
        coeff_map: Dict[Vector, Tuple[int, ...]] = {}
        for rt in roots:
            coeffs = _solve_int_combination(self.simple_roots, rt)
            if coeffs is None:
                raise UnsupportedType(f"root {rt} outside the simple-root lattice")
            coeff_map[rt] = coeffs
        self._coeffs = coeff_map
        positives = [rt for rt in roots if all(c >= 0 for c in coeff_map[rt])]
        positives.sort(key=lambda rt: (sum(coeff_map[rt]), coeff_map[rt]))
        self.positive_roots = tuple(positives)
        self.roots = tuple(positives + [neg(rt) for rt in positives])
        for rt in positives:
            coeff_map[neg(rt)] = tuple(-c for c in coeff_map[rt])
        norms = sorted({dot(rt, rt) for rt in self.roots})
        self.short_norm = norms[0]
        self.long_norm = norms[-1]
        self.cartan_matrix = tuple(
            tuple(self.pairing(a, b) for a in self.simple_roots)
            for b in self.simple_roots
        )
        # cartan_matrix[i][j] = <alpha_j, alpha_i^vee>
        self._root_set = frozenset(self.roots)
        self._coeff_to_root = {coeff_map[rt]: rt for rt in self.roots}

    # -- lookups -----------------------------------------------------------

    def is_root(self, v: Vector) -> bool:
        return tuple(v) in self._root_set

    def is_positive(self, v: Vector) -> bool:
        c = self.coeffs(v)
        return all(x >= 0 for x in c)

    def coeffs(self, v: Vector) -> Tuple[int, ...]:
        try:
            return self._coeffs[tuple(v)]
        except KeyError:
            raise NotARoot(f"{v} is not a root of {self.label}")

    def root_from_coeffs(self, coeffs: Dict[int, int] | Sequence[int]) -> Vector:
        """Root from simple-root coefficients; keys of a dict are 1-based."""
        if isinstance(coeffs, dict):
            vec = [0] * self.rank
            for k, c in coeffs.items():
                vec[k - 1] = c
            coeffs = vec
        key = tuple(coeffs)
        try:
            return self._coeff_to_root[key]
        except KeyError:
            raise NotARoot(f"coefficients {key} give no root of {self.label}")

    def simple_root(self, i: int) -> Vector:
        """1-based."""
        return self.simple_roots[i - 1]

    def norm(self, v: Vector) -> int:
        return dot(v, v)

    def pairing(self, a: Vector, b: Vector) -> int:
        """<a, b^vee> = 2(a,b)/(b,b)."""
        num = 2 * dot(a, b)
        den = dot(b, b)
        assert num % den == 0
        return num // den

    def is_short(self, v: Vector) -> bool:
        return self.norm(v) == self.short_norm

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    def weyl_order(self) -> int:
        key = self.family if self.family in ("A", "B", "C", "D") else self.label
        return WEYL_ORDERS[key](self.rank)

    def highest_root(self) -> Vector:
        return self.positive_roots[-1]

    def highest_short_root(self) -> Vector:
        if self.short_norm == self.long_norm:
            return self.highest_root()
        shorts = [rt for rt in self.positive_roots if self.is_short(rt)]
        return shorts[-1]

    def __repr__(self):
        return f"RootSystem({self.label})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.label == other.label

    def __hash__(self):
        return hash(self.label)


def _classical_roots(family: str, n: int) -> Tuple[List[Vector], List[Vector]]:
    if family == "A":
        d = n + 1
        simples = [tuple(int(k == i) - int(k == i + 1) for k in range(d)) for i in range(n)]
        roots = [
            tuple(int(k == i) - int(k == j) for k in range(d))
            for i in range(d)
            for j in range(d)
            if i != j
        ]
        return simples, roots
    d = n
    e = lambda i, c=1: _basis_vec(d, i, c)
    simples = [add(e(i), neg(e(i + 1))) for i in range(n - 1)]
    roots: List[Vector] = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(add(e(i, si), e(j, sj)))
    if family == "B":
        simples.append(e(n - 1))
        roots += [e(i, s) for i in range(n) for s in (1, -1)]
    elif family == "C":
        simples.append(e(n - 1, 2))
        roots += [e(i, 2 * s) for i in range(n) for s in (1, -1)]
    elif family == "D":
        if n < 2:
            raise UnsupportedType("type D needs rank >= 2")
        simples.append(add(e(n - 2), e(n - 1)))
    else:
        raise UnsupportedType(family)
    return simples, roots


def _g2_roots() -> Tuple[List[Vector], List[Vector]]:
    short = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]
    long_ = [(2, -1, -1), (-1, 2, -1), (1, 1, -2)]
    roots = [v for v in short + long_] + [neg(v) for v in short + long_]
    simples = [(1, -1, 0), (-2, 1, 1)]
    return simples, roots


def _f4_roots() -> Tuple[List[Vector], List[Vector]]:
    # doubled coordinates
    roots: List[Vector] = []
    for i in range(4):
        for s in (2, -2):
            roots.append(_basis_vec(4, i, s))
        for j in range(i + 1, 4):
            for si in (2, -2):
                for sj in (2, -2):
                    roots.append(add(_basis_vec(4, i, si), _basis_vec(4, j, sj)))
    roots += [tuple(signs) for signs in iproduct((1, -1), repeat=4)]
    simples = [
        (0, 2, -2, 0),
        (0, 0, 2, -2),
        (0, 0, 0, 2),
        (1, -1, -1, -1),
    ]
    return simples, roots


def _e8_roots() -> List[Vector]:
    roots: List[Vector] = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (2, -2):
                for sj in (2, -2):
                    roots.append(add(_basis_vec(8, i, si), _basis_vec(8, j, sj)))
    for signs in iproduct((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(signs))
    return roots


def _e_simples() -> List[Vector]:
    a1 = (1, -1, -1, -1, -1, -1, -1, 1)
    a2 = (2, 2, 0, 0, 0, 0, 0, 0)
    a3 = (-2, 2, 0, 0, 0, 0, 0, 0)
    rest = [
        tuple(2 * (int(k == i) - int(k == i - 1)) for k in range(8))
        for i in range(2, 7)
    ]
    return [a1, a2, a3] + rest


@lru_cache(maxsize=None)
def build_root_system(label: str) -> RootSystem:
    m = re.fullmatch(r"([A-G])(\d+)", label)
    if not m:
        raise UnsupportedType(f"bad root system label {label!r}")
    family, rank = m.group(1), int(m.group(2))
    if family in ("A", "B", "C", "D"):
        if rank < 1 or rank > MAX_CLASSICAL_RANK or (family == "D" and rank < 2):
            raise UnsupportedType(f"rank {rank} out of range for type {family}")
        simples, roots = _classical_roots(family, rank)
        ambient = rank + 1 if family == "A" else rank
        return RootSystem(label, family, rank, ambient, simples, roots)
    if label == "G2":
        simples, roots = _g2_roots()
        return RootSystem(label, label, 2, 3, simples, roots)
    if label == "F4":
        simples, roots = _f4_roots()
        return RootSystem(label, label, 4, 4, simples, roots)
    if label in ("E6", "E7", "E8"):
        rank = int(label[1])
        simples = _e_simples()[:rank]
        all_roots = _e8_roots()
        roots = [rt for rt in all_roots if _solve_int_combination(simples, rt) is not None]
        return RootSystem(label, label, rank, 8, simples, roots)
    raise UnsupportedType(f"unsupported label {label!r}")


# -- orthogonal subsystems and cascades -----------------------------------


@dataclass(frozen=True)
class SubSystem:
    """Irreducible component of a closed subsystem, with inherited positivity."""

    parent: RootSystem
    positive_roots: Tuple[Vector, ...]
    type_label: str
    rank: int

    @property
    def roots(self) -> Tuple[Vector, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    def _simples(self) -> List[Vector]:
        pos = set(self.positive_roots)
        out = []
        for p in self.positive_roots:
            if not any(tuple(a - b for a, b in zip(p, q)) in pos for q in pos if q != p):
                out.append(p)
        return out

    def _heights(self) -> Dict[Vector, int]:
        simples = self._simples()
        hts = {}
        for p in self.positive_roots:
            sol = _solve_int_combination(simples, p)
            assert sol is not None
            hts[p] = sum(sol)
        return hts

    @property
    def highest_root(self) -> Vector:
        hts = self._heights()
        return max(self.positive_roots, key=lambda p: (hts[p], p))

    @property
    def highest_short_root(self) -> Vector:
        norms = {dot(p, p) for p in self.positive_roots}
        short = min(norms)
        hts = self._heights()
        cands = [p for p in self.positive_roots if dot(p, p) == short]
        return max(cands, key=lambda p: (hts[p], p))

    def has_two_lengths(self) -> bool:
        return len({dot(p, p) for p in self.positive_roots}) > 1

    def is_a1(self) -> bool:
        return len(self.positive_roots) == 1


def _span_rank(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    a = [list(map(Fraction, v)) for v in vectors]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def _classify_component(rs: RootSystem, positives: Sequence[Vector]) -> Tuple[str, int]:
    n_roots = 2 * len(positives)
    rank = _span_rank(positives)
    norms = {dot(p, p) for p in positives}
    if len(norms) == 1:
        if n_roots == rank * (rank + 1):
            return f"A{rank}", rank
        if n_roots == 2 * rank * (rank - 1) and rank >= 4:
            return f"D{rank}", rank
        if (rank, n_roots) == (6, 72):
            return "E6", rank
        if (rank, n_roots) == (7, 126):
            return "E7", rank
        if (rank, n_roots) == (8, 240):
            return "E8", rank
    else:
        if (rank, n_roots) == (4, 48):
            return "F4", rank
        if (rank, n_roots) == (2, 12):
            return "G2", rank
        if n_roots == 2 * rank * rank:
            if rank == 2:
                # B2 and C2 are isomorphic; a fixed label keeps output stable
                return "B2", rank
            n_short_pos = sum(1 for p in positives if dot(p, p) == min(norms))
            return (f"B{rank}", rank) if n_short_pos == rank else (f"C{rank}", rank)
    raise UnsupportedType(f"unrecognized component with {n_roots} roots, rank {rank}")


def orthogonal_subsystem(rs: RootSystem, constraints: Sequence[Vector]) -> List[SubSystem]:
    """Irreducible components of the roots orthogonal to every constraint."""
    for c in constraints:
        if not rs.is_root(c):
            raise NotARoot(f"constraint {c} is not a root of {rs.label}")
    positives = [
        p for p in rs.positive_roots if all(dot(p, c) == 0 for c in constraints)
    ]
    # connected components under non-orthogonality
    parent = list(range(len(positives)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(positives)):
        for j in range(i + 1, len(positives)):
            if dot(positives[i], positives[j]) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: Dict[int, List[Vector]] = {}
    for i, p in enumerate(positives):
        groups.setdefault(find(i), []).append(p)
    comps = []
    for group in groups.values():
        group.sort()
        label, rank = _classify_component(rs, group)
        comps.append(SubSystem(rs, tuple(group), label, rank))
    comps.sort(key=lambda c: (-len(c.positive_roots), c.positive_roots))
    return comps


@dataclass(frozen=True)
class Cascade:
    """Orthogonal-root sequence built by peeling highest roots off orthogonal
    subsystems.  ``steps`` records the component labels seen at each stage so
    a verifier can reject ill-formed configurations."""

    kind: str
    rs: RootSystem
    roots: Tuple[Vector, ...]
    mus: Tuple[Vector, ...] = ()
    nus: Tuple[Vector, ...] = ()
    steps: Tuple[Tuple[str, ...], ...] = ()

    def prefix(self, count: int) -> Tuple[Vector, ...]:
        if count > len(self.roots):
            raise CascadeUnavailable(
                f"{self.kind} cascade of {self.rs.label} has only {len(self.roots)} terms,"
                f" {count} requested"
            )
        return self.roots[:count]

    def mu(self, r: int) -> Vector:
        if r > len(self.mus):
            raise CascadeUnavailable(f"mu_{r} unavailable in {self.rs.label}")
        return self.mus[r - 1]

    def nu(self, r: int) -> Vector:
        if r > len(self.nus):
            raise CascadeUnavailable(f"nu_{r} unavailable in {self.rs.label}")
        return self.nus[r - 1]


def _cascade_highest(rs: RootSystem, short: bool) -> Tuple[List[Vector], List[Tuple[str, ...]]]:
    chosen: List[Vector] = []
    steps: List[Tuple[str, ...]] = []
    while True:
        comps = orthogonal_subsystem(rs, chosen)
        steps.append(tuple(c.type_label for c in comps))
        if len(comps) != 1:
            break
        comp = comps[0]
        if short:
            shorts = [p for p in comp.positive_roots if rs.is_short(p)]
            if not shorts:
                break
            hts = comp._heights()
            chosen.append(max(shorts, key=lambda p: (hts[p], p)))
        else:
            chosen.append(comp.highest_root)
    return chosen, steps


def _cascade_mu_nu(rs: RootSystem) -> Tuple[List[Vector], List[Vector], List[Vector], List[Tuple[str, ...]]]:
    beta1 = build_cascade(rs, "beta").roots[0]
    chosen: List[Vector] = [beta1]
    mus: List[Vector] = []
    nus: List[Vector] = []
    steps: List[Tuple[str, ...]] = []
    while True:
        comps = orthogonal_subsystem(rs, chosen)
        steps.append(tuple(c.type_label for c in comps))
        if not comps:
            break
        a1_long = [
            c for c in comps if c.is_a1() and dot(c.positive_roots[0], c.positive_roots[0]) == rs.long_norm
        ]
        others = [c for c in comps if not c.is_a1()]
        if len(others) > 1:
            raise CascadeUnavailable(
                f"mu/nu cascade of {rs.label}: non-unique large component {steps[-1]}"
            )
        if not a1_long:
            break
        mu = max(c.positive_roots[0] for c in a1_long)
        mus.append(mu)
        chosen.append(mu)
        if others:
            nu = others[0].highest_root
        else:
            rest = [c.positive_roots[0] for c in comps if c.is_a1() and c.positive_roots[0] != mu]
            if not rest:
                break
            nu = max(rest)
        nus.append(nu)
        chosen.append(nu)
    return chosen, mus, nus, steps


def _cascade_gamma_prime(rs: RootSystem) -> Tuple[List[Vector], List[Tuple[str, ...]]]:
    chosen: List[Vector] = [rs.highest_short_root()]
    steps: List[Tuple[str, ...]] = []
    while True:
        comps = orthogonal_subsystem(rs, chosen)
        steps.append(tuple(c.type_label for c in comps))
        big = [c for c in comps if c.has_two_lengths()]
        if len(big) > 1:
            raise CascadeUnavailable(
                f"gamma' cascade of {rs.label}: non-unique two-length component"
            )
        if not big:
            break
        chosen.append(big[0].highest_short_root)
    return chosen, steps


@lru_cache(maxsize=None)
def build_cascade(rs_label: str | RootSystem, kind: str) -> Cascade:
    rs = rs_label if isinstance(rs_label, RootSystem) else build_root_system(rs_label)
    if kind == "beta":
        roots, steps = _cascade_highest(rs, short=False)
        return Cascade("beta", rs, tuple(roots), steps=tuple(steps))
    if kind == "gamma":
        if rs.short_norm == rs.long_norm:
            raise KindUnavailable(f"{rs.label} has a single root length")
        roots, steps = _cascade_highest(rs, short=True)
        return Cascade("gamma", rs, tuple(roots), steps=tuple(steps))
    if kind == "mu_nu":
        if rs.family not in ("B", "D"):
            raise KindUnavailable("mu/nu cascade only for types B and D")
        roots, mus, nus, steps = _cascade_mu_nu(rs)
        return Cascade("mu_nu", rs, tuple(roots), tuple(mus), tuple(nus), tuple(steps))
    if kind == "gamma_prime":
        if rs.family != "C":
            raise KindUnavailable("gamma' cascade only for type C")
        roots, steps = _cascade_gamma_prime(rs)
        return Cascade("gamma_prime", rs, tuple(roots), steps=tuple(steps))
    raise KindUnavailable(f"unknown cascade kind {kind!r}")


def strongly_orthogonal(rs: RootSystem, roots: Sequence[Vector]) -> bool:
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if dot(roots[i], roots[j]) != 0:
                return False
            if rs.is_root(add(roots[i], roots[j])):
                return False
            if rs.is_root(add(roots[i], neg(roots[j]))):
                return False
    return True


def graded_dim_oracle(rs: RootSystem, roots: Sequence[Vector]) -> int:
    """Orbit dimension of a sum of root vectors over pairwise strongly
    orthogonal roots, from the coroot-sum grading: #Phi - #Phi_0 - #Phi_1."""
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if dot(roots[i], roots[j]) != 0:
                raise NotOrthogonal(f"roots {roots[i]} and {roots[j]} are not orthogonal")
    if not strongly_orthogonal(rs, roots):
        raise NotOrthogonal("roots must be strongly orthogonal for the grading oracle")
    n0 = n1 = 0
    for alpha in rs.roots:
        c = sum(rs.pairing(alpha, b) for b in roots)
        if c == 0:
            n0 += 1
        elif c == 1:
            n1 += 1
    return len(rs.roots) - n0 - n1
