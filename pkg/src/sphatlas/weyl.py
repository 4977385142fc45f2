"""Weyl group elements as integer matrices on the root lattice.

The action matrix is written in the simple-root basis, so every entry is an
integer and equality/hashing are exact.  Lengths count positive roots sent
negative; the Bruhat order is decided through the lifting property, which
agrees with the subword characterization.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import GroupTooLarge, MixedRootSystems, NotARoot
from .roots import RootSystem, Vector, build_root_system, dot, neg

Matrix = Tuple[Tuple[int, ...], ...]

ENUMERATION_CAP = 10_000_000


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(a[i][k] * bt[j][k] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def _mat_inv_int(a: Matrix) -> Matrix:
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for k in range(n):
        p = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[p] = aug[p], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        assert all(x.denominator == 1 for x in row)
        out.append(tuple(int(x) for x in row))
    return tuple(out)


class WeylElement:
    __slots__ = ("rs", "mat", "_len", "_inv")

    def __init__(self, rs: RootSystem, mat: Matrix):
        self.rs = rs
        self.mat = mat
        self._len: Optional[int] = None
        self._inv: Optional["WeylElement"] = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def identity(rs: RootSystem) -> "WeylElement":
        return WeylElement(rs, _identity_matrix(rs.rank))

    @staticmethod
    def reflection(rs: RootSystem, alpha: Vector) -> "WeylElement":
        if not rs.is_root(alpha):
            raise NotARoot(f"{alpha} is not a root of {rs.label}")
        cols = []
        for j in range(rs.rank):
            image = _reflect(rs, alpha, rs.simple_roots[j])
            cols.append(rs.coeffs(image))
        mat = tuple(tuple(cols[j][i] for j in range(rs.rank)) for i in range(rs.rank))
        return WeylElement(rs, mat)

    @staticmethod
    def from_word(rs: RootSystem, word: Sequence[int]) -> "WeylElement":
        """Product of simple reflections; indices are 1-based."""
        out = WeylElement.identity(rs)
        for i in word:
            out = out * simple_reflection(rs, i)
        return out

    @staticmethod
    def from_ambient_images(rs: RootSystem, image_of_simple) -> "WeylElement":
        """Build from a map sending each simple root (ambient) to a root."""
        cols = []
        for j in range(rs.rank):
            img = image_of_simple(rs.simple_roots[j])
            cols.append(rs.coeffs(img))
        mat = tuple(tuple(cols[j][i] for j in range(rs.rank)) for i in range(rs.rank))
        return WeylElement(rs, mat)

    # -- structure ----------------------------------------------------------

    def apply_coeffs(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        return _mat_vec(self.mat, coeffs)

    def apply_root(self, root: Vector) -> Vector:
        """Image of a root, in ambient coordinates."""
        c = self.apply_coeffs(self.rs.coeffs(root))
        return self.rs.root_from_coeffs(c)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.rs != other.rs:
            raise MixedRootSystems("cannot multiply across root systems")
        return WeylElement(self.rs, _mat_mul(self.mat, other.mat))

    def inverse(self) -> "WeylElement":
        if self._inv is None:
            self._inv = WeylElement(self.rs, _mat_inv_int(self.mat))
            self._inv._inv = self
        return self._inv

    def is_identity(self) -> bool:
        return self.mat == _identity_matrix(self.rs.rank)

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.rs == other.rs
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.rs.label, self.mat))

    def __repr__(self):
        return f"WeylElement({self.rs.label}, word={self.reduced_word()})"

    # -- numerics -------------------------------------------------------------

    def length(self) -> int:
        if self._len is None:
            count = 0
            for p in self.rs.positive_roots:
                img = self.apply_coeffs(self.rs.coeffs(p))
                if any(c < 0 for c in img):
                    count += 1
            self._len = count
        return self._len

    def rank_one_minus(self) -> int:
        n = self.rs.rank
        a = [[Fraction(int(i == j) - self.mat[i][j]) for j in range(n)] for i in range(n)]
        r = 0
        for c in range(n):
            p = next((i for i in range(r, n) if a[i][c] != 0), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            for i in range(r + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] / a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
        return r

    def cell_weight(self) -> int:
        """length + rank(1 - w), the quantity matched against orbit dimensions."""
        return self.length() + self.rank_one_minus()

    # -- words and order --------------------------------------------------------

    def right_descents(self) -> List[int]:
        out = []
        for i in range(1, self.rs.rank + 1):
            img = self.apply_coeffs(self.rs.coeffs(self.rs.simple_root(i)))
            if any(c < 0 for c in img):
                out.append(i)
        return out

    def reduced_word(self) -> List[int]:
        """Deterministic word: repeatedly strip the smallest right descent."""
        word: List[int] = []
        u = self
        while True:
            ds = u.right_descents()
            if not ds:
                break
            i = ds[0]
            word.append(i)
            u = u * simple_reflection(self.rs, i)
        word.reverse()
        return word


@lru_cache(maxsize=None)
def _simple_reflections(rs_label: str) -> Tuple[WeylElement, ...]:
    rs = build_root_system(rs_label)
    return tuple(WeylElement.reflection(rs, a) for a in rs.simple_roots)


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """1-based."""
    return _simple_reflections(rs.label)[i - 1]


def _reflect(rs: RootSystem, alpha: Vector, v: Vector) -> Vector:
    c = Fraction(2 * dot(v, alpha), dot(alpha, alpha))
    assert c.denominator == 1
    return tuple(x - int(c) * a for x, a in zip(v, alpha))


def reflection(rs: RootSystem, alpha: Vector) -> WeylElement:
    return WeylElement.reflection(rs, alpha)


@lru_cache(maxsize=None)
def longest_element(rs_label: str) -> WeylElement:
    rs = build_root_system(rs_label)
    w = WeylElement.identity(rs)
    while True:
        i = next(
            (
                i
                for i in range(1, rs.rank + 1)
                if all(c >= 0 for c in w.apply_coeffs(rs.coeffs(rs.simple_root(i))))
            ),
            None,
        )
        if i is None:
            return w
        w = w * simple_reflection(rs, i)


def product_of_reflections(rs: RootSystem, roots: Iterable[Vector]) -> WeylElement:
    out = WeylElement.identity(rs)
    for r in roots:
        out = out * WeylElement.reflection(rs, r)
    return out


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """u <= w in the Chevalley-Bruhat order (lifting property)."""
    if u.rs != w.rs:
        raise MixedRootSystems("Bruhat order needs a common root system")
    rs = u.rs
    cache: Dict[Tuple[Matrix, Matrix], bool] = _leq_cache(rs.label)

    def rec(u: WeylElement, w: WeylElement) -> bool:
        if u.is_identity():
            return True
        lu, lw = u.length(), w.length()
        if lu > lw:
            return False
        key = (u.mat, w.mat)
        hit = cache.get(key)
        if hit is not None:
            return hit
        # smallest left descent of w: i with w^-1(alpha_i) < 0
        winv = w.inverse()
        i = next(
            i
            for i in range(1, rs.rank + 1)
            if any(c < 0 for c in winv.apply_coeffs(rs.coeffs(rs.simple_root(i))))
        )
        s = simple_reflection(rs, i)
        sw = s * w
        su = s * u
        if su.length() < lu:
            out = rec(su, sw)
        else:
            out = rec(u, sw)
        cache[key] = out
        return out

    return rec(u, w)


@lru_cache(maxsize=None)
def _leq_cache(rs_label: str) -> Dict:
    return {}


@lru_cache(maxsize=None)
def enumerate_weyl(rs_label: str) -> Tuple[WeylElement, ...]:
    rs = build_root_system(rs_label)
    order = rs.weyl_order()
    if order > ENUMERATION_CAP:
        raise GroupTooLarge(
            f"W({rs.label}) has order {order}, above the enumeration cap {ENUMERATION_CAP}"
        )
    gens = [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]
    seen = {WeylElement.identity(rs).mat: WeylElement.identity(rs)}
    frontier = [WeylElement.identity(rs)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws.mat not in seen:
                    seen[ws.mat] = ws
                    nxt.append(ws)
        frontier = nxt
    assert len(seen) == order
    return tuple(seen.values())


def unique_common_upper_bound_is_w0(ws: Sequence[WeylElement]) -> bool:
    """True iff the only common Bruhat upper bound of ``ws`` is w0."""
    if not ws:
        raise ValueError("need at least one element")
    rs = ws[0].rs
    if any(w.rs != rs for w in ws):
        raise MixedRootSystems("elements from different root systems")
    w0 = longest_element(rs.label)
    for cand in enumerate_weyl(rs.label):
        if cand == w0:
            continue
        if all(bruhat_leq(w, cand) for w in ws):
            return False
    return True


def signed_permutation(w: WeylElement) -> List[int]:
    """For classical types: image of e_i encoded as +/-(index+1), 1-based.

    Type A returns the plain permutation of 1..n+1.
    """
    rs = w.rs
    d = rs.ambient_dim
    images: List[int] = []
    basis_imgs = _ambient_action(w)
    for i in range(d):
        col = [basis_imgs[j][i] for j in range(d)]
        nz = [(j, c) for j, c in enumerate(col) if c != 0]
        assert len(nz) == 1 and abs(nz[0][1]) == 1
        j, c = nz[0]
        images.append((j + 1) * (1 if c > 0 else -1))
    return images


def _ambient_action(w: WeylElement) -> List[List[Fraction]]:
    """Ambient action matrix (column j = image of e_j), exact."""
    rs = w.rs
    d = rs.ambient_dim
    n = rs.rank
    # solve for the ambient matrix from its action on simple roots; on the
    # orthogonal complement of the root span the action is the identity
    simples = rs.simple_roots
    images = [w.apply_root(s) for s in simples]
    basis: List[Tuple[Fraction, ...]] = [tuple(map(Fraction, s)) for s in simples]
    img_vecs: List[Tuple[Fraction, ...]] = [tuple(map(Fraction, v)) for v in images]
    # complete with an orthogonal complement basis, fixed pointwise
    comp = _complement_basis(simples, d)
    basis += comp
    img_vecs += comp
    bmat = [[basis[r][c] for r in range(d)] for c in range(d)]
    imat = [[img_vecs[r][c] for r in range(d)] for c in range(d)]
    binv = _frac_inv(bmat)
    out = _frac_mul(imat, binv)
    # out maps coordinates: ambient action matrix A with A @ e_j = image
    return [[out[i][j] for j in range(d)] for i in range(d)]


def _complement_basis(simples: Sequence[Vector], d: int) -> List[Tuple[Fraction, ...]]:
    """Orthogonal basis of the orthocomplement of the root span (fixed by W)."""
    ortho: List[List[Fraction]] = []
    for s in simples:
        v = list(map(Fraction, s))
        for u in ortho:
            c = sum(a * b for a, b in zip(v, u)) / sum(a * a for a in u)
            v = [a - c * b for a, b in zip(v, u)]
        if any(x != 0 for x in v):
            ortho.append(v)
    out: List[Tuple[Fraction, ...]] = []
    for k in range(d):
        if len(simples) + len(out) == d:
            break
        v = [Fraction(int(i == k)) for i in range(d)]
        for u in ortho:
            c = sum(a * b for a, b in zip(v, u)) / sum(a * a for a in u)
            v = [a - c * b for a, b in zip(v, u)]
        if any(x != 0 for x in v):
            ortho.append(v)
            out.append(tuple(v))
    return out


def _frac_rank(rows: List[List[Fraction]]) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    rcount, ccount = len(a), len(a[0])
    r = 0
    for c in range(ccount):
        p = next((i for i in range(r, rcount) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, rcount):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def _frac_inv(a: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(a)
    aug = [list(a[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        p = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[p] = aug[p], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [row[n:] for row in aug]


def _frac_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _gram_matrix(rs: RootSystem) -> List[List[int]]:
    return [[dot(a, b) for b in rs.simple_roots] for a in rs.simple_roots]


def preserves_cartan_form(w: WeylElement) -> bool:
    """Check w^T B w = B for the Gram matrix B of the simple roots."""
    rs = w.rs
    b = _gram_matrix(rs)
    n = rs.rank
    m = w.mat
    for i in range(n):
        for j in range(n):
            lhs = sum(m[k][i] * b[k][l] * m[l][j] for k in range(n) for l in range(n))
            if lhs != b[i][j]:
                return False
    return True


def permutes_roots(w: WeylElement) -> bool:
    try:
        imgs = {w.apply_root(r) for r in w.rs.roots}
    except NotARoot:
        return False
    return imgs == set(w.rs.roots)
