"""Verification of the dimension-vs-cell characterization and well-placedness.

A class is accepted as spherical exactly when dim O equals l(z) + rk(1-z)
for the Weyl element z of its dense Bruhat cell; the checks here evaluate
both sides exactly and report every comparison.  Reports serialize to JSON
with one entry per check and an overall pass flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .atlas import (
    SphericalRecord,
    enumerate_spherical,
    expected_z,
    oracle_roots,
    representative,
    semisimple_diagonal,
)
from .bruhat import (
    DEFAULT_HEIGHT,
    DEFAULT_SAMPLES,
    ZEstimate,
    bruhat_cell,
    estimate_z,
    in_opposite_borel,
)
from .errors import IncomparableMaxima, NoMatrixModel
from .field import Scalar, SeedStream
from .groups import (
    GroupElement,
    class_dim,
    jordan_parts_involution,
    jordan_type,
    make_context,
    regular_unipotent,
    root_element,
)
from .matrices import ExactMatrix
from .roots import build_cascade, build_root_system, graded_dim_oracle
from .weyl import WeylElement, bruhat_leq, enumerate_weyl, longest_element, unique_common_upper_bound_is_w0


@dataclass
class CheckResult:
    name: str
    status: str               # pass | fail | certified | warning
    lhs: object = None
    rhs: object = None
    rule: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "certified", "warning")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rule": self.rule,
        }


@dataclass
class VerificationReport:
    group: str
    label: str
    kind: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, status, lhs=None, rhs=None, rule=""):
        self.checks.append(CheckResult(name, status, lhs, rhs, rule))

    def compare(self, name, lhs, rhs, rule=""):
        self.checks.append(
            CheckResult(name, "pass" if lhs == rhs else "fail", lhs, rhs, rule)
        )

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "label": self.label,
            "kind": self.kind,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def check_characterization(rec: SphericalRecord) -> VerificationReport:
    """dim O = l(z) + rk(1 - z), with every independent recomputation available."""
    report = VerificationReport(rec.group, rec.label, rec.kind)
    z = expected_z(rec)
    weight = z.length() + z.rank_one_minus()
    report.compare(
        "dimension_vs_cell_weight",
        rec.dim,
        weight,
        rule="a class is spherical iff its dimension equals length(z) plus rank(1-z)",
    )
    report.compare(
        "z_is_involution",
        (z * z).is_identity(),
        True,
        rule="the dense-cell Weyl element of a spherical class squares to the identity",
    )
    if rec.has_matrix_model:
        d = class_dim(representative(rec))
        report.compare(
            "class_dim_vs_dimension",
            d,
            rec.dim,
            rule="centralizer codimension in the Lie algebra recomputes the class dimension",
        )
    roots = oracle_roots(rec)
    if roots is not None:
        rs = build_root_system(rec.group)
        report.compare(
            "grading_oracle_vs_dimension",
            graded_dim_oracle(rs, roots),
            rec.dim,
            rule="coroot-grading dimension count agrees with the catalog dimension",
        )
    return report


def certify_representative(rec: SphericalRecord) -> VerificationReport:
    """Jordan-type / eigenvalue certification of the stored matrix recipe."""
    report = VerificationReport(rec.group, rec.label, rec.kind)
    rep = representative(rec)          # construction itself validates membership
    report.add("group_membership", "pass", rule="determinant and bilinear form checked on construction")
    if rec.kind == "unipotent":
        report.compare(
            "jordan_type",
            list(jordan_type(rep)),
            list(rec.descriptor.partition),
            rule="partition from ranks of (g-1)^k matches the diagram",
        )
    elif rec.kind == "semisimple":
        diag = semisimple_diagonal(rec)
        report.compare(
            "characteristic_polynomial",
            [str(c) for c in rep.mat.charpoly()],
            [str(c) for c in diag.charpoly()],
            rule="conjugacy of semisimple classical elements is detected by eigenvalue data",
        )
    else:
        s, u = jordan_parts_involution(rep)
        diag = semisimple_diagonal(rec)
        report.compare(
            "semisimple_part_charpoly",
            [str(c) for c in s.mat.charpoly()],
            [str(c) for c in diag.charpoly()],
        )
        report.compare(
            "unipotent_part_jordan_type",
            list(jordan_type(u)),
            list(rec.descriptor.partition),
        )
        eps = rec.descriptor.mixed_eps
        um1 = u.mat - ExactMatrix.identity(u.ctx.size, u.mat.m)
        report.compare(
            "unipotent_part_placement",
            s.mat @ um1 == um1.scale(Scalar.rational(eps)),
            True,
            rule="the unipotent part acts inside the expected eigenspace of the semisimple part",
        )
    d = class_dim(rep)
    report.compare("class_dim_vs_dimension", d, rec.dim)
    return report


def check_well_placed(rec: SphericalRecord) -> VerificationReport:
    """Representative location: opposite Borel and the expected Bruhat cell."""
    report = VerificationReport(rec.group, rec.label, rec.kind)
    if not rec.has_matrix_model:
        raise NoMatrixModel(f"{rec.group} {rec.label} has no matrix model")
    rep = representative(rec)
    z = expected_z(rec)
    cell = bruhat_cell(rep).weyl
    report.compare(
        "lies_over_expected_z",
        cell.reduced_word(),
        z.reduced_word(),
        rule="the representative lies in the Bruhat cell of the expected z",
    )
    if rec.in_b_minus:
        report.compare(
            "in_opposite_borel",
            in_opposite_borel(rep),
            True,
            rule="the stored representative belongs to the opposite Borel",
        )
    elif rec.monomial:
        report.compare(
            "monomial_representative",
            rep.mat.is_monomial(),
            True,
            rule="the stored representative normalizes the diagonal torus",
        )
        report.add(
            "opposite_borel_meeting",
            "certified",
            rule=(
                "for a semisimple class meeting BzB, conjugating by the inverse "
                "Weyl part of the conjugator produces a point of the cell inside "
                "the opposite Borel"
            ),
        )
    z_weight = z.length() + z.rank_one_minus()
    report.compare("dimension_vs_cell_weight", rec.dim, z_weight)
    return report


@dataclass
class SphericityBudget:
    samples: int = DEFAULT_SAMPLES
    steps: Optional[int] = None
    height: int = DEFAULT_HEIGHT


@dataclass
class SphericityVerdict:
    verdict: str                      # spherical | non-spherical | inconclusive
    class_dim: int
    z_word: Optional[List[int]]
    cell_weight: Optional[int]
    samples: int
    note: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "class_dim": self.class_dim,
            "z_word": self.z_word,
            "length_plus_rank": self.cell_weight,
            "samples": self.samples,
            "note": self.note,
        }


def sphericity_test(
    g: GroupElement, stream: SeedStream, budget: SphericityBudget = SphericityBudget()
) -> SphericityVerdict:
    """Randomized test: estimate the dense cell and compare dim O with its weight."""
    d = class_dim(g)
    try:
        est = estimate_z(g, stream, budget.samples, budget.steps, budget.height)
    except IncomparableMaxima as exc:
        return SphericityVerdict(
            "inconclusive", d, None, None, budget.samples,
            note=f"no Bruhat maximum among sampled cells ({len(exc.maxima)} maxima)",
        )
    weight = est.weyl.length() + est.weyl.rank_one_minus()
    word = est.weyl.reduced_word()
    if d == weight:
        return SphericityVerdict("spherical", d, word, weight, est.samples)
    if d > weight:
        if est.is_stable():
            return SphericityVerdict("non-spherical", d, word, weight, est.samples)
        return SphericityVerdict(
            "inconclusive", d, word, weight, est.samples, note="estimate not stable"
        )
    return SphericityVerdict(
        "inconclusive", d, word, weight, est.samples,
        note="sampled cell weight exceeds the class dimension; sampling artifact",
    )


def infer_spherical_from_witness(dim: int, witness_cells: Sequence[WeylElement]) -> str:
    """Monotonicity-based inference from cells known to meet the class."""
    if not witness_cells:
        return "inconclusive"
    for w in witness_cells:
        if dim <= w.length() + w.rank_one_minus():
            return "spherical"
    if len(witness_cells) >= 2:
        rs = witness_cells[0].rs
        if unique_common_upper_bound_is_w0(list(witness_cells)):
            w0 = longest_element(rs.label)
            if dim <= w0.length() + w0.rank_one_minus():
                return "spherical"
    return "inconclusive"


def negative_controls() -> List[Tuple[str, GroupElement]]:
    """Known non-spherical classes used as strict-inequality controls."""
    out = []
    out.append(("regular unipotent SL3", regular_unipotent(make_context("A", 2))))
    out.append(("regular unipotent SL4", regular_unipotent(make_context("A", 3))))
    out.append(("regular unipotent Sp4", regular_unipotent(make_context("C", 2))))
    # sigma_1 times a width-2 two-column unipotent in Sp6, ruled out from the catalog
    ctx = make_context("C", 3)
    sigma1 = ExactMatrix.diagonal([-1, 1, 1, -1, 1, 1])
    rows = [[int(i == j) for j in range(6)] for i in range(6)]
    rows[4][1] = 1
    rows[5][2] = 1
    g = GroupElement(ctx, ExactMatrix(sigma1.to_lists()) @ ExactMatrix.from_int_rows(rows))
    out.append(("sigma(1)*(1,X(2,4)) Sp6", g))
    return out


# -- drivers ------------------------------------------------------------------


def verify_record(
    rec: SphericalRecord,
    seed: int = 0,
    estimate_samples: Optional[int] = None,
) -> List[VerificationReport]:
    reports = [check_characterization(rec)]
    if rec.has_matrix_model:
        reports.append(check_well_placed(rec))
        reports.append(certify_representative(rec))
        if estimate_samples:
            rep = representative(rec)
            stream = SeedStream.for_task(seed, f"{rec.group}:{rec.label}")
            report = VerificationReport(rec.group, rec.label, rec.kind)
            try:
                est = estimate_z(rep, stream, samples=estimate_samples)
                z = expected_z(rec)
                report.compare(
                    "estimated_z_vs_expected",
                    est.weyl.reduced_word(),
                    z.reduced_word(),
                    rule="the randomized dense-cell estimate reproduces the catalog z",
                )
            except IncomparableMaxima as exc:
                report.add(
                    "estimated_z_vs_expected",
                    "warning",
                    lhs=[m.reduced_word() for m in exc.maxima],
                    rule="sampling produced incomparable maxima; rerun with a larger budget",
                )
            reports.append(report)
    return reports


def verify_groups(
    groups: Sequence[str],
    seed: int = 0,
    estimate_samples: Optional[int] = None,
    jobs: int = 1,
) -> List[VerificationReport]:
    tasks = []
    for g in groups:
        for rec in enumerate_spherical(g):
            tasks.append((g, rec.label))
    tasks.sort()
    if jobs > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_verify_one, g, label, seed, estimate_samples)
                for g, label in tasks
            ]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_verify_one(g, label, seed, estimate_samples) for g, label in tasks]
    out: List[VerificationReport] = []
    for chunk in chunks:
        out.extend(chunk)
    return out


def _verify_one(group: str, label: str, seed: int, estimate_samples: Optional[int]):
    from .atlas import find_record

    return verify_record(find_record(group, label), seed, estimate_samples)


def default_group_selection(max_rank: int = 6) -> List[str]:
    groups: List[str] = []
    groups += [f"A{n}" for n in range(1, max_rank + 1)]
    groups += [f"B{n}" for n in range(2, max_rank + 1)]
    groups += [f"C{n}" for n in range(2, max_rank + 1)]
    groups += [f"D{n}" for n in range(4, max_rank + 1)]
    groups += ["E6", "E7", "E8", "F4", "G2"]
    return groups
