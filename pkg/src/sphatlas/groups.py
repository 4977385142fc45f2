"""Classical matrix groups SL, Sp, SO with fixed bilinear forms.

Basis conventions (matching the block displays used throughout):
  family A: size n+1, no form;
  family C: (v_1..v_n, v_-1..v_-n), form ((0, I), (-I, 0));
  family D: (v_1..v_n, v_-1..v_-n), form ((0, I), (I, 0));
  family B: (v_0, v_1..v_n, v_-1..v_-n), form ((1,0,0),(0,0,I),(0,I,0)).

Root subgroup matrices come from explicit sl2-triples in the defining
representation, so x_a(s)x_a(s') = x_a(s+s') and the standard reflection
representatives n_a = x_a(1) x_{-a}(-1) x_a(1) are monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    BadRank,
    IncompatibleRecipe,
    NotARoot,
    NotInGroup,
    NotInWeylImage,
    NotUnipotent,
    WrongFamily,
)
from .field import Scalar, SeedStream, random_nonzero_scalar, random_scalar, scalar_one, scalar_zero
from .matrices import ExactMatrix
from .roots import RootSystem, Vector, build_root_system
from .weyl import WeylElement, signed_permutation


@dataclass(frozen=True)
class GroupContext:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "B", "C", "D"):
            raise WrongFamily(f"no matrix model for family {self.family!r}")
        if self.rank < 1 or (self.family == "D" and self.rank < 2):
            raise BadRank(f"rank {self.rank} invalid for family {self.family}")
        if self.rank > 12:
            raise BadRank("classical rank capped at 12")

    @property
    def size(self) -> int:
        return {
            "A": self.rank + 1,
            "B": 2 * self.rank + 1,
            "C": 2 * self.rank,
            "D": 2 * self.rank,
        }[self.family]

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.label)

    @property
    def gram(self) -> Optional[ExactMatrix]:
        return _gram_for(self.family, self.rank)
    def plus_index(self, i: int) -> int:
        """0-based matrix index of v_i, i in 1..n."""
        return i if self.family == "B" else i - 1

    def minus_index(self, i: int) -> int:
        n = self.rank
        return n + i if self.family == "B" else n + i - 1

    @property
    def zero_index(self) -> Optional[int]:
        return 0 if self.family == "B" else None


@lru_cache(maxsize=None)
def _gram_for(family: str, n: int) -> Optional[ExactMatrix]:
    if family == "A":
        return None
    if family == "C":
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[i][n + i] = 1
            rows[n + i][i] = -1
        return ExactMatrix.from_int_rows(rows)
    if family == "D":
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[i][n + i] = 1
            rows[n + i][i] = 1
        return ExactMatrix.from_int_rows(rows)
    rows = [[0] * (2 * n + 1) for _ in range(2 * n + 1)]
    rows[0][0] = 1
    for i in range(1, n + 1):
        rows[i][n + i] = 1
        rows[n + i][i] = 1
    return ExactMatrix.from_int_rows(rows)


def make_context(family: str, n: int) -> GroupContext:
    return GroupContext(family, n)


class GroupElement:
    __slots__ = ("ctx", "mat")

    def __init__(self, ctx: GroupContext, mat: ExactMatrix, validate: bool = True):
        if mat.rows != ctx.size or mat.cols != ctx.size:
            raise NotInGroup(f"matrix size {mat.rows}x{mat.cols}, expected {ctx.size}")
        self.ctx = ctx
        self.mat = mat
        if validate:
            self.validate()

    def validate(self) -> None:
        ctx = self.ctx
        gram = ctx.gram
        if gram is not None:
            lhs = self.mat.transpose() @ gram @ self.mat
            for i in range(ctx.size):
                for j in range(ctx.size):
                    if lhs[i, j] != gram[i, j]:
                        raise NotInGroup(f"form violated at ({i},{j})")
        if ctx.family != "C":
            if self.mat.det() != 1:
                raise NotInGroup("determinant is not 1")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.ctx != other.ctx:
            raise NotInGroup("elements of different groups")
        return GroupElement(self.ctx, self.mat @ other.mat, validate=False)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.ctx, self.mat.inverse(), validate=False)

    def conjugate_by(self, h: "GroupElement") -> "GroupElement":
        return GroupElement(self.ctx, h.mat @ self.mat @ h.mat.inverse(), validate=False)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.ctx == other.ctx and self.mat == other.mat

    def __hash__(self):
        return hash((self.ctx, self.mat))

    def __repr__(self):
        return f"GroupElement({self.ctx.label})"

    def is_identity(self) -> bool:
        return self.mat.is_identity()


def element(ctx: GroupContext, mat: ExactMatrix) -> GroupElement:
    return GroupElement(ctx, mat, validate=True)


def identity_element(ctx: GroupContext) -> GroupElement:
    return GroupElement(ctx, ExactMatrix.identity(ctx.size), validate=False)


# -- root subgroup matrices ---------------------------------------------------


def _root_entries(ctx: GroupContext, alpha: Vector) -> List[Tuple[int, int, int]]:
    """Sparse entries (i, j, coeff) of the Lie algebra element e_alpha."""
    fam = ctx.family
    n = ctx.rank
    if fam == "A":
        nz = [(k, c) for k, c in enumerate(alpha) if c != 0]
        (i, ci), (j, cj) = nz
        if ci == -1:
            i, j = j, i
        return [(i, j, 1)]
    plus = [k + 1 for k, c in enumerate(alpha) if c > 0]
    minus = [k + 1 for k, c in enumerate(alpha) if c < 0]
    p, m_ = ctx.plus_index, ctx.minus_index
    if len(plus) == 1 and len(minus) == 1:
        i, j = plus[0], minus[0]
        return [(p(i), p(j), 1), (m_(j), m_(i), -1)]
    if fam == "C" and len(plus) == 1 and abs(alpha[plus[0] - 1]) == 2:
        i = plus[0]
        return [(p(i), m_(i), 1)]
    if fam == "C" and len(minus) == 1 and abs(alpha[minus[0] - 1]) == 2:
        i = minus[0]
        return [(m_(i), p(i), 1)]
    if len(plus) == 2:
        i, j = plus
        sign = 1 if fam == "C" else -1
        return [(p(i), m_(j), 1), (p(j), m_(i), sign)]
    if len(minus) == 2:
        i, j = minus
        sign = 1 if fam == "C" else -1
        return [(m_(j), p(i), 1), (m_(i), p(j), sign)]
    if fam == "B" and len(plus) == 1:
        i = plus[0]
        return [(p(i), 0, 1), (0, m_(i), -1)]
    if fam == "B" and len(minus) == 1:
        i = minus[0]
        return [(0, p(i), 2), (m_(i), 0, -2)]
    raise NotARoot(f"{alpha} is not a root vector pattern for {ctx.label}")


def root_matrix(ctx: GroupContext, alpha: Vector) -> ExactMatrix:
    """Lie algebra element spanning the root space of alpha."""
    rs = ctx.root_system
    if not rs.is_root(alpha):
        raise NotARoot(f"{alpha} is not a root of {ctx.label}")
    size = ctx.size
    rows = [[0] * size for _ in range(size)]
    for i, j, c in _root_entries(ctx, alpha):
        rows[i][j] = c
    return ExactMatrix.from_int_rows(rows)


def root_element(ctx: GroupContext, alpha: Vector, s: Scalar | int | Fraction) -> GroupElement:
    """x_alpha(s) = exp(s e_alpha)."""
    if not isinstance(s, Scalar):
        s = Scalar.rational(Fraction(s))
    x = root_matrix(ctx, alpha)
    out = ExactMatrix.identity(ctx.size).to_lists()
    for i, j, c in _root_entries(ctx, alpha):
        out[i][j] = out[i][j] + s * c
    xs = ExactMatrix(out)
    x2 = x @ x
    if not x2.is_zero():
        half_s2 = s * s * Fraction(1, 2)
        data = xs.to_lists()
        for i in range(ctx.size):
            for j in range(ctx.size):
                if not x2[i, j].is_zero():
                    data[i][j] = data[i][j] + half_s2 * x2[i, j]
        xs = ExactMatrix(data)
    return GroupElement(ctx, xs, validate=False)


def torus_element(ctx: GroupContext, params: Sequence[Scalar]) -> GroupElement:
    """Diagonal torus element from n nonzero parameters."""
    n = ctx.rank
    if len(params) != n:
        raise NotInGroup(f"expected {n} torus parameters")
    params = [p if isinstance(p, Scalar) else Scalar.rational(Fraction(p)) for p in params]
    if any(p.is_zero() for p in params):
        raise NotInGroup("torus parameters must be nonzero")
    if ctx.family == "A":
        prod = params[0]
        for p in params[1:]:
            prod = prod * p
        entries = list(params) + [prod.inverse()]
    else:
        inv = [p.inverse() for p in params]
        if ctx.family == "B":
            entries = [scalar_one(1)] + list(params) + inv
        else:
            entries = list(params) + inv
    return GroupElement(ctx, ExactMatrix.diagonal(entries), validate=False)


def random_torus(ctx: GroupContext, stream: SeedStream, height: int) -> GroupElement:
    params = [random_nonzero_scalar(stream, height) for _ in range(ctx.rank)]
    return torus_element(ctx, params)


def reflection_representative(ctx: GroupContext, alpha: Vector) -> GroupElement:
    one = scalar_one(1)
    return (
        root_element(ctx, alpha, one)
        * root_element(ctx, tuple(-a for a in alpha), -one)
        * root_element(ctx, alpha, one)
    )


def weyl_representative(ctx: GroupContext, w: WeylElement) -> GroupElement:
    """Monomial representative from reflection representatives along a word."""
    if w.rs != ctx.root_system:
        raise NotInWeylImage(f"Weyl element of {w.rs.label} in context {ctx.label}")
    out = identity_element(ctx)
    for i in w.reduced_word():
        out = out * reflection_representative(ctx, ctx.root_system.simple_root(i))
    return out


def weyl_from_signed_images(rs: RootSystem, images: Sequence[int]) -> WeylElement:
    """Weyl element from e_i -> sign * e_|entry|; validates the family.

    ``images[i-1] = +j`` sends e_i to e_j, ``-j`` to -e_j.  For type D an odd
    number of sign changes is rejected.
    """
    n = rs.rank if rs.family != "A" else rs.ambient_dim
    if len(images) != n:
        raise NotInWeylImage(f"expected {n} images")
    if sorted(abs(x) for x in images) != list(range(1, n + 1)):
        raise NotInWeylImage("not a signed permutation")
    if rs.family == "A" and any(x < 0 for x in images):
        raise NotInWeylImage("type A admits no sign changes")
    if rs.family == "D" and sum(1 for x in images if x < 0) % 2 == 1:
        raise NotInWeylImage("type D requires an even number of sign changes")

    def image_of(simple: Vector) -> Vector:
        out = [0] * len(simple)
        for k, c in enumerate(simple):
            if c != 0:
                tgt = images[k]
                out[abs(tgt) - 1] += c * (1 if tgt > 0 else -1)
        return tuple(out)

    return WeylElement.from_ambient_images(rs, image_of)


# -- Jordan structure -----------------------------------------------------------


def jordan_type(g: GroupElement) -> Tuple[int, ...]:
    """Partition of the matrix size for a unipotent element."""
    m = g.ctx.size
    n_mat = g.mat - ExactMatrix.identity(m, g.mat.m)
    ranks = [m]
    power = n_mat
    k = 1
    while True:
        r = power.rank()
        ranks.append(r)
        if r == 0:
            break
        k += 1
        if k > m:
            raise NotUnipotent("(g - 1)^size is not zero")
        power = power @ n_mat
    parts: List[int] = []
    for size in range(1, len(ranks)):
        prev = ranks[size - 1]
        cur = ranks[size]
        nxt = ranks[size + 1] if size + 1 < len(ranks) else 0
        mult = prev - 2 * cur + nxt
        parts.extend([size] * mult)
    parts.sort(reverse=True)
    assert sum(parts) == m
    return tuple(parts)


def is_unipotent(g: GroupElement) -> bool:
    try:
        jordan_type(g)
        return True
    except NotUnipotent:
        return False


def _nilpotent_log(u: ExactMatrix) -> ExactMatrix:
    m = u.rows
    n_mat = u - ExactMatrix.identity(m, u.m)
    out = ExactMatrix.zero(m, m, u.m)
    power = ExactMatrix.identity(m, u.m)
    for k in range(1, m + 1):
        power = power @ n_mat
        if power.is_zero():
            break
        out = out + power.scale(Scalar.rational(Fraction((-1) ** (k + 1), k)))
    return out


def _nilpotent_exp(x: ExactMatrix) -> ExactMatrix:
    m = x.rows
    out = ExactMatrix.identity(m, x.m)
    power = ExactMatrix.identity(m, x.m)
    fact = 1
    for k in range(1, m + 1):
        power = power @ x
        if power.is_zero():
            break
        fact *= k
        out = out + power.scale(Scalar.rational(Fraction(1, fact)))
    return out


def jordan_parts_involution(g: GroupElement) -> Tuple[GroupElement, GroupElement]:
    """Multiplicative Jordan parts (s, u) when the semisimple part squares to 1.

    g^2 is then unipotent; u is its unique unipotent square root and s = g/u.
    """
    ctx = g.ctx
    g2 = g.mat @ g.mat
    log_g2 = _nilpotent_log(g2)
    u = _nilpotent_exp(log_g2.scale(Scalar.rational(Fraction(1, 2))))
    u_el = GroupElement(ctx, u, validate=False)
    s_el = GroupElement(ctx, g.mat @ u.inverse(), validate=False)
    if not (s_el.mat @ s_el.mat).is_identity():
        raise NotUnipotent("semisimple part does not square to the identity")
    if not (s_el.mat @ u - u @ s_el.mat).is_zero():
        raise NotUnipotent("Jordan parts do not commute")
    return s_el, u_el


# -- centralizer dimension -------------------------------------------------------


@lru_cache(maxsize=None)
def lie_algebra_basis(ctx: GroupContext) -> Tuple[ExactMatrix, ...]:
    rs = ctx.root_system
    basis = [root_matrix(ctx, alpha) for alpha in rs.roots]
    size = ctx.size
    if ctx.family == "A":
        for i in range(ctx.rank):
            rows = [[0] * size for _ in range(size)]
            rows[i][i] = 1
            rows[i + 1][i + 1] = -1
            basis.append(ExactMatrix.from_int_rows(rows))
    else:
        for i in range(1, ctx.rank + 1):
            rows = [[0] * size for _ in range(size)]
            rows[ctx.plus_index(i)][ctx.plus_index(i)] = 1
            rows[ctx.minus_index(i)][ctx.minus_index(i)] = -1
            basis.append(ExactMatrix.from_int_rows(rows))
    return tuple(basis)


def class_dim(g: GroupElement) -> int:
    """dim of the conjugacy class = rank of x -> g x g^-1 - x on the Lie algebra."""
    ctx = g.ctx
    basis = lie_algebra_basis(ctx)
    ginv = g.mat.inverse()
    rows = []
    for x in basis:
        y = g.mat @ x @ ginv - x
        rows.append([y[i, j] for i in range(ctx.size) for j in range(ctx.size)])
    return ExactMatrix(rows, g.mat.m).rank()


# -- automorphisms, embeddings, randomization -------------------------------------


def tau_hat(g: GroupElement) -> GroupElement:
    """Outer automorphism of SO_2n swapping v_n and v_-n."""
    ctx = g.ctx
    if ctx.family != "D":
        raise WrongFamily("tau_hat is defined for family D only")
    n = ctx.rank
    perm = list(range(2 * n))
    perm[n - 1], perm[2 * n - 1] = perm[2 * n - 1], perm[n - 1]
    data = [[g.mat[perm[i], perm[j]] for j in range(2 * n)] for i in range(2 * n)]
    return GroupElement(ctx, ExactMatrix(data), validate=False)


def embed_corner(g: GroupElement, ctx_big: GroupContext) -> GroupElement:
    """Corner embedding Sp_2k -> Sp_2n or SO_2k -> SO_2n (isometric blocks)."""
    ctx = g.ctx
    if ctx.family != ctx_big.family or ctx.family not in ("C", "D"):
        raise IncompatibleRecipe("corner embedding needs matching C or D families")
    k, n = ctx.rank, ctx_big.rank
    if k > n:
        raise IncompatibleRecipe("source rank exceeds target rank")
    size = ctx_big.size
    one, zero = scalar_one(1), scalar_zero(1)
    data = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for bi in range(2):
        for bj in range(2):
            for i in range(k):
                for j in range(k):
                    data[bi * n + i][bj * n + j] = g.mat[bi * k + i, bj * k + j]
    return GroupElement(ctx_big, ExactMatrix(data), validate=False)


def embed_so_even_into_odd(g: GroupElement, ctx_big: GroupContext) -> GroupElement:
    """SO_2n -> SO_2n+1, X -> diag(1, X)."""
    ctx = g.ctx
    if ctx.family != "D" or ctx_big.family != "B" or ctx.rank != ctx_big.rank:
        raise IncompatibleRecipe("expected SO_2n into SO_2n+1 at equal rank")
    size = ctx_big.size
    one, zero = scalar_one(1), scalar_zero(1)
    data = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for i in range(2 * ctx.rank):
        for j in range(2 * ctx.rank):
            data[i + 1][j + 1] = g.mat[i, j]
    return GroupElement(ctx_big, ExactMatrix(data), validate=False)


def embed_odd_times_even(g_odd: GroupElement, g_even: GroupElement, ctx_big: GroupContext) -> GroupElement:
    """SO_2a+1 x SO_2b -> SO_2n+1 with a + b = n; interleaved block placement."""
    if g_odd.ctx.family != "B" or g_even.ctx.family != "D" or ctx_big.family != "B":
        raise IncompatibleRecipe("expected SO_odd x SO_even into SO_odd")
    a = g_odd.ctx.rank
    b = g_even.ctx.rank
    n = ctx_big.rank
    if a + b != n:
        raise IncompatibleRecipe(f"ranks {a}+{b} do not fill rank {n}")
    size = ctx_big.size
    zero = scalar_zero(1)
    data = [[zero for _ in range(size)] for _ in range(size)]
    # odd factor occupies v_0, v_1..v_a, v_-1..v_-a
    def odd_slot(idx: int) -> int:
        if idx == 0:
            return 0
        if idx <= a:
            return idx
        return n + (idx - a)

    for i in range(2 * a + 1):
        for j in range(2 * a + 1):
            v = g_odd.mat[i, j]
            if not v.is_zero():
                data[odd_slot(i)][odd_slot(j)] = v

    # even factor occupies v_{a+1}..v_n, v_-(a+1)..v_-n
    def even_slot(idx: int) -> int:
        if idx < b:
            return a + 1 + idx
        return n + a + 1 + (idx - b)

    for i in range(2 * b):
        for j in range(2 * b):
            v = g_even.mat[i, j]
            if not v.is_zero():
                data[even_slot(i)][even_slot(j)] = v
    return GroupElement(ctx_big, ExactMatrix(data), validate=False)


def center_elements(ctx: GroupContext) -> List[GroupElement]:
    """Nontrivial center elements of the matrix group."""
    if ctx.family == "A":
        n1 = ctx.rank + 1
        if n1 == 1:
            return []
        zeta = Scalar.zeta(n1)
        out = []
        for j in range(1, n1):
            out.append(GroupElement(ctx, ExactMatrix.diagonal([zeta ** j] * n1), validate=False))
        return out
    if ctx.family in ("C", "D"):
        minus = Scalar.rational(-1)
        return [GroupElement(ctx, ExactMatrix.diagonal([minus] * ctx.size), validate=False)]
    return []


@lru_cache(maxsize=None)
def _exp_structure(ctx: GroupContext, alpha: Vector) -> Tuple[Tuple[Tuple[int, int, int], ...], Tuple[Tuple[int, int, int], ...]]:
    """Sparse entries of x_alpha(s) - I: linear part (times s) and quadratic
    part (times s^2/2, nonzero only for the short roots of family B)."""
    lin = tuple(_root_entries(ctx, alpha))
    x = root_matrix(ctx, alpha)
    x2 = x @ x
    quad = []
    for i in range(ctx.size):
        for j in range(ctx.size):
            v = x2[i, j]
            if not v.is_zero():
                quad.append((i, j, int(v.as_fraction())))
    return lin, tuple(quad)


def _apply_factor(a: List[List[Scalar]], entries: List[Tuple[int, int, Scalar]],
                  inv_entries: List[Tuple[int, int, Scalar]]) -> None:
    """In-place a <- (I+N) a (I+N'), N given as sparse (row, col, value)."""
    m = len(a)
    src_rows = {j: list(a[j]) for (_, j, _) in entries}
    for (i, j, v) in entries:
        row = a[i]
        srow = src_rows[j]
        for c in range(m):
            x = srow[c]
            if not x.is_zero():
                row[c] = row[c] + v * x
    src_cols = {i: [a[r][i] for r in range(m)] for (i, _, _) in inv_entries}
    for (i, j, v) in inv_entries:
        scol = src_cols[i]
        for r in range(m):
            x = scol[r]
            if not x.is_zero():
                a[r][j] = a[r][j] + x * v
    return None


def random_conjugate(
    g: GroupElement, stream: SeedStream, steps: int, height: int = 5
) -> GroupElement:
    """h g h^-1 for h a random product of root elements and torus elements."""
    if steps < 1:
        raise ValueError("steps must be positive")
    ctx = g.ctx
    rs = ctx.root_system
    m = ctx.size
    a = [list(row) for row in g.mat.data]
    half = Fraction(1, 2)
    for _ in range(steps):
        if stream.randint(1, 8) == 1:
            t = random_torus(ctx, stream, height)
            d = [t.mat[i, i] for i in range(m)]
            dinv = [x.inverse() for x in d]
            for i in range(m):
                for j in range(m):
                    x = a[i][j]
                    if not x.is_zero():
                        a[i][j] = d[i] * x * dinv[j]
        else:
            alpha = stream.choice(rs.roots)
            s = random_scalar(stream, height)
            if s.is_zero():
                continue
            lin, quad = _exp_structure(ctx, alpha)
            s2h = s * s * half
            fwd = [(i, j, s * c) for (i, j, c) in lin] + [
                (i, j, s2h * c) for (i, j, c) in quad
            ]
            bwd = [(i, j, -s * c) for (i, j, c) in lin] + [
                (i, j, s2h * c) for (i, j, c) in quad
            ]
            _apply_factor(a, fwd, bwd)
    return GroupElement(ctx, ExactMatrix(a), validate=False)


def regular_unipotent(ctx: GroupContext) -> GroupElement:
    out = identity_element(ctx)
    for alpha in ctx.root_system.simple_roots:
        out = out * root_element(ctx, alpha, 1)
    return out
