"""HTTP service exposing the atlas, Bruhat-cell queries, sphericity tests,
and verification runs.

Matrices travel as row-major arrays of scalar literals with a declared
cyclotomic order; Weyl elements travel as reduced words of 1-based simple
indices.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .atlas import atlas_export, enumerate_spherical
from .bruhat import bruhat_cell, in_opposite_borel
from .errors import ParseError, SphatlasError, UnsupportedGroup
from .field import SeedStream
from .groups import GroupElement, make_context
from .matrices import ExactMatrix
from .parsing import parse_scalar
from .verify import (
    SphericityBudget,
    default_group_selection,
    sphericity_test,
    verify_groups,
)


class ElementPayload(BaseModel):
    group: str = Field(..., description="group label such as C3")
    matrix: List[List[str]]
    cyclotomic_order: int = 1


class BruhatResponse(BaseModel):
    weyl_word: List[int]
    length: int
    rank_one_minus: int
    in_opposite_borel: bool


class SphericalRequest(BaseModel):
    element: ElementPayload
    seed: int = 0
    samples: int = 8


class SphericalResponse(BaseModel):
    verdict: str
    class_dim: int
    z_word: Optional[List[int]]
    length_plus_rank: Optional[int]
    samples: int
    note: str = ""


class AtlasRecordModel(BaseModel):
    group: str
    kind: str
    label: str
    dim: int
    z_word: List[int]
    has_matrix_model: bool


class VerifyRequest(BaseModel):
    groups: Optional[List[str]] = None
    all: bool = False
    max_rank: int = 6
    seed: int = 0
    samples: Optional[int] = None        # enables the randomized z cross-check
    jobs: int = 1


class VerifyResponse(BaseModel):
    passed: int
    failed: int
    warnings: int
    ok: bool
    reports: List[dict]


def parse_element(payload: ElementPayload) -> GroupElement:
    label = payload.group.strip()
    if len(label) < 2 or label[0] not in "ABCD" or not label[1:].isdigit():
        raise HTTPException(status_code=400, detail=f"no matrix group for label {label!r}")
    ctx = make_context(label[0], int(label[1:]))
    if len(payload.matrix) != ctx.size or any(len(r) != ctx.size for r in payload.matrix):
        raise HTTPException(
            status_code=400,
            detail=f"matrix must be {ctx.size}x{ctx.size} for {label}",
        )
    try:
        entries = [
            [parse_scalar(cell, payload.cyclotomic_order) for cell in row]
            for row in payload.matrix
        ]
        mat = ExactMatrix(entries, payload.cyclotomic_order)
        return GroupElement(ctx, mat, validate=True)
    except (ParseError, SphatlasError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def create_app() -> FastAPI:
    app = FastAPI(title="sphatlas", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/atlas/{group}", response_model=List[AtlasRecordModel])
    def atlas(group: str, expand_central: bool = False):
        try:
            return atlas_export(group, expand_central=expand_central)
        except (UnsupportedGroup, SphatlasError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/bruhat", response_model=BruhatResponse)
    def bruhat(payload: ElementPayload):
        g = parse_element(payload)
        cell = bruhat_cell(g)
        return BruhatResponse(
            weyl_word=cell.weyl.reduced_word(),
            length=cell.weyl.length(),
            rank_one_minus=cell.weyl.rank_one_minus(),
            in_opposite_borel=in_opposite_borel(g),
        )

    @app.post("/spherical", response_model=SphericalResponse)
    def spherical(req: SphericalRequest):
        g = parse_element(req.element)
        verdict = sphericity_test(
            g, SeedStream(req.seed), SphericityBudget(samples=req.samples)
        )
        return SphericalResponse(**verdict.to_json())

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        if req.all:
            groups = default_group_selection(req.max_rank)
        elif req.groups:
            groups = req.groups
        else:
            raise HTTPException(status_code=400, detail="select groups or set all=true")
        for g in groups:
            try:
                enumerate_spherical(g)
            except (UnsupportedGroup, SphatlasError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        reports = verify_groups(
            groups, seed=req.seed, estimate_samples=req.samples, jobs=req.jobs
        )
        json_reports = [r.to_json() for r in reports]
        failed = sum(1 for r in reports if not r.passed)
        warnings = sum(
            1 for r in reports for c in r.checks if c.status == "warning"
        )
        return VerifyResponse(
            passed=len(reports) - failed,
            failed=failed,
            warnings=warnings,
            ok=failed == 0,
            reports=json_reports,
        )

    return app


app = create_app()
