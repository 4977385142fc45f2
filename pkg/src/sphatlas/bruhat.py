"""Bruhat cells of concrete matrices, the lying-over predicate, big-cell
criteria, and the randomized estimator for the dense cell of a class.

For each family a basis reordering makes the Borel upper triangular:
type A already is; for C and D the negative coordinates are reversed
(v_1..v_n, v_-n..v_-1); for B additionally v_0 is moved to the middle.
The cell of g is then read off by pivot elimination with row operations
adding lower rows to upper rows and column operations adding earlier
columns to later ones, both of which preserve all bottom-left corner
ranks, so the surviving monomial pattern carries the rank profile of g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import IncomparableMaxima, NotInGroup, PreconditionViolated
from .field import Scalar, SeedStream
from .matrices import ExactMatrix
from .groups import GroupContext, GroupElement, random_conjugate, weyl_from_signed_images
from .weyl import WeylElement, bruhat_leq

DEFAULT_SAMPLES = 8
DEFAULT_HEIGHT = 5


def default_steps(ctx: GroupContext) -> int:
    return 4 * ctx.root_system.n_positive


def _new_order(ctx: GroupContext) -> List[int]:
    """new_order[new_slot] = old index."""
    n = ctx.rank
    if ctx.family == "A":
        return list(range(ctx.size))
    if ctx.family in ("C", "D"):
        return list(range(n)) + [2 * n - 1 - k for k in range(n)]
    # B: v_1..v_n, v_0, v_-n..v_-1
    return list(range(1, n + 1)) + [0] + [2 * n - k for k in range(n)]


def reordered(g: GroupElement) -> ExactMatrix:
    order = _new_order(g.ctx)
    return ExactMatrix([[g.mat[order[i], order[j]] for j in range(len(order))] for i in range(len(order))])


def _slot_label(ctx: GroupContext, slot: int) -> Tuple[int, int]:
    """(sign, coordinate) of a reordered basis slot; sign 0 marks v_0."""
    n = ctx.rank
    if ctx.family == "A":
        return (1, slot + 1)
    if ctx.family in ("C", "D"):
        return (1, slot + 1) if slot < n else (-1, 2 * n - slot)
    if slot < n:
        return (1, slot + 1)
    if slot == n:
        return (0, 0)
    return (-1, 2 * n + 1 - slot)


@dataclass(frozen=True)
class CellResult:
    weyl: WeylElement
    pivots: Tuple[int, ...]                    # pivots[j] = pivot row of column j

    def rank_profile(self) -> List[List[int]]:
        """profile[i][j] = rank of the bottom-left corner with i+1 rows, j+1 cols."""
        m = len(self.pivots)
        return [
            [sum(1 for c in range(j + 1) if self.pivots[c] >= m - 1 - i) for j in range(m)]
            for i in range(m)
        ]


def _pivot_eliminate(mat: ExactMatrix) -> Tuple[int, ...]:
    """Pivot row of each column under elimination inside B x B (fraction-free,
    bottom-most pivoting)."""
    from .elim import bareiss_bottom_pivots, cleared_rows

    ring, rows = cleared_rows(mat.data, mat.m)
    pivots = bareiss_bottom_pivots(ring, rows)
    if pivots is None:
        raise NotInGroup("singular matrix has no Bruhat cell")
    return tuple(pivots)


def bruhat_cell(g: GroupElement) -> CellResult:
    """The unique Weyl element w with g in BwB."""
    ctx = g.ctx
    mat = reordered(g)
    pivots = _pivot_eliminate(mat)
    rs = ctx.root_system
    n_amb = ctx.size if ctx.family == "A" else ctx.rank
    images = [0] * n_amb
    for j, p in enumerate(pivots):
        sj, cj = _slot_label(ctx, j)
        sp, cp = _slot_label(ctx, p)
        if sj == 0:
            if sp != 0:
                raise NotInGroup("cell permutation moves the zero-weight line")
            continue
        if sj == 1:
            if sp == 0:
                raise NotInGroup("cell permutation moves the zero-weight line")
            images[cj - 1] = sp * cp
    for j, p in enumerate(pivots):
        sj, cj = _slot_label(ctx, j)
        sp, cp = _slot_label(ctx, p)
        if sj == -1 and images[cj - 1] != -sp * cp:
            raise NotInGroup("cell permutation is not symplectic/orthogonal")
    w = weyl_from_signed_images(rs, images)
    return CellResult(w, pivots)


def lies_over(g: GroupElement, w: WeylElement) -> bool:
    return bruhat_cell(g).weyl == w


def in_opposite_borel(g: GroupElement) -> bool:
    return reordered(g).is_lower_triangular()


def in_borel(g: GroupElement) -> bool:
    return reordered(g).is_upper_triangular()


def big_cell_check(g: GroupElement) -> bool:
    """Decide g in Bw0B for g in the opposite Borel, from principal minors.

    Families: C any rank, D with even rank, B any rank (where w0 = -1); the
    test inspects the displayed block form of B^- and never computes a cell.
    """
    ctx = g.ctx
    n = ctx.rank
    if ctx.family == "A" or (ctx.family == "D" and n % 2 == 1):
        raise PreconditionViolated(f"big-cell criterion unavailable for {ctx.label}")
    if not in_opposite_borel(g):
        raise PreconditionViolated("element is not in the opposite Borel")
    if ctx.family in ("C", "D"):
        f_sigma = ExactMatrix([[g.mat[n + i, j] for j in range(n)] for i in range(n)])
        return all(not d.is_zero() for d in f_sigma.leading_principal_minors())
    # family B: blocks of ((1, psi^T, 0), (0, F^-T, 0), (-F psi, F Sigma, F))
    f_block = ExactMatrix([[g.mat[n + 1 + i, n + 1 + j] for j in range(n)] for i in range(n)])
    f_sigma = ExactMatrix([[g.mat[n + 1 + i, 1 + j] for j in range(n)] for i in range(n)])
    if any(d.is_zero() for d in f_sigma.leading_principal_minors()):
        return False
    col = [[g.mat[n + 1 + i, 0]] for i in range(n)]
    f_inv = f_block.inverse()
    psi = f_inv @ ExactMatrix(col)
    psi = ExactMatrix([[-psi[i, 0]] for i in range(n)])
    sigma = f_inv @ f_sigma
    val = (psi.transpose() @ sigma.inverse() @ psi)[0, 0]
    target = Scalar.rational((-1) ** n - 1)
    return val == target


@dataclass(frozen=True)
class ZEstimate:
    weyl: WeylElement
    base_cell: WeylElement
    sample_cells: Tuple[WeylElement, ...]

    @property
    def samples(self) -> int:
        return len(self.sample_cells)

    def is_stable(self) -> bool:
        """All sampled cells below the maximum, and the last half equal to it."""
        if not all(bruhat_leq(c, self.weyl) for c in self.sample_cells):
            return False
        half = self.sample_cells[len(self.sample_cells) // 2 :]
        return all(c == self.weyl for c in half)


def estimate_z(
    g: GroupElement,
    stream: SeedStream,
    samples: int = DEFAULT_SAMPLES,
    steps: Optional[int] = None,
    height: int = DEFAULT_HEIGHT,
) -> ZEstimate:
    """Bruhat-order maximum of the cells of random conjugates of g.

    The dense cell of the class is open, so generic conjugators land in it;
    the maximum over a batch of samples therefore stabilizes at z(O).
    Raises IncomparableMaxima when the sampled cells admit no maximum.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if steps is None:
        steps = default_steps(g.ctx)
    base = bruhat_cell(g).weyl
    cells = []
    for _ in range(samples):
        h = random_conjugate(g, stream, steps, height)
        cells.append(bruhat_cell(h).weyl)
    observed = [base] + cells
    maxima: List[WeylElement] = []
    for c in observed:
        if any(c != m and bruhat_leq(c, m) for m in observed):
            continue
        if c not in maxima:
            maxima.append(c)
    if len(maxima) != 1:
        raise IncomparableMaxima(maxima)
    return ZEstimate(maxima[0], base, tuple(cells))
