"""FastAPI service exposing datum inspection, character evaluation, basis
enumeration, and the verification suite.

The CLI drives this app in-process through an ASGI transport; `twistchar
serve` runs it standalone.  All payloads are exact: rationals as strings,
coefficients as decimal strings.
"""

from __future__ import annotations

import json
from fractions import Fraction as Q
from typing import Iterator

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse

from .. import characters as ch
from .. import quasiparticle as qp
from .. import verification as vf
from ..rational import format_rational, parse_rational
from ..rootdata import (
    InvalidRankError,
    RectangularWeight,
    TwistedRootDatum,
    build_datum,
)
from ..series import GradedSeries
from .models import (
    CharRequest,
    DatumRequest,
    DatumResponse,
    EnumerateRequest,
    OrbitEntry,
    ReportModel,
    SeriesMeta,
    SeriesResponse,
    SeriesTerm,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="twistchar",
    description="Exact characters and quasi-particle bases for the twisted "
    "series A and D with rectangular highest weights.",
)


def _datum_or_400(series: str, rank: int) -> TwistedRootDatum:
    try:
        return build_datum(series, rank)
    except InvalidRankError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _weight_or_400(k0: int, kj: int) -> RectangularWeight:
    try:
        return RectangularWeight(k0, kj)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _qmax_or_400(text: str) -> Q:
    value = parse_rational(text)
    if value < 0:
        raise HTTPException(status_code=400, detail="qmax must be nonnegative")
    return value


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/datum", response_model=DatumResponse)
def datum_endpoint(req: DatumRequest) -> DatumResponse:
    datum = _datum_or_400(req.series, req.rank)
    return DatumResponse(
        series=datum.series,
        rank=datum.l,
        rk_g=datum.rk_g,
        j_node=datum.j_node,
        nu=list(datum.nu),
        mu=[format_rational(m) for m in datum.mu],
        gram0=[[format_rational(v) for v in row] for row in datum.gram0],
        gamma=[format_rational(v) for v in datum.gamma_coords],
        orbits=[
            OrbitEntry(a=list(a), halfnorm=format_rational(h), size=size)
            for (a, h), size in zip(
                datum.pos_orbit_projections, datum.orbit_sizes
            )
        ],
    )


def series_payload(series: GradedSeries, meta: SeriesMeta) -> SeriesResponse:
    terms = [
        SeriesTerm(
            q=format_rational(qexp),
            y=[format_rational(v) for v in yexp],
            c=str(coeff),
        )
        for qexp, yexp, coeff in series.terms_sorted()
    ]
    meta = meta.model_copy(update={"denominator": series.denom})
    return SeriesResponse(meta=meta, terms=terms)


def compute_character(req: CharRequest) -> GradedSeries:
    datum = _datum_or_400(req.series, req.rank)
    qmax = _qmax_or_400(req.qmax)
    if req.object in ("psp-verma", "product"):
        weight = RectangularWeight(1, 0)
    else:
        weight = _weight_or_400(req.k0, req.kj)
    enumerate_method = req.method == "enumerate"

    if req.object == "psp-std":
        if enumerate_method:
            return qp.tally(
                qp.enumerate_basis(
                    datum, weight, qp.KIND_STANDARD, weight.k, qmax
                ),
                qp.energy_color_weight,
                datum.l,
                qmax,
            )
        return ch.ch_principal_standard(datum, weight, qmax)
    if req.object == "psp-verma":
        if enumerate_method:
            return qp.tally(
                qp.enumerate_basis(datum, weight, qp.KIND_VERMA, None, qmax),
                qp.energy_color_weight,
                datum.l,
                qmax,
            )
        return ch.ch_principal_verma(datum, qmax)
    if req.object == "product":
        if enumerate_method:
            raise HTTPException(
                status_code=400,
                detail="the product side has no enumeration method",
            )
        return ch.ch_product_side(datum, qmax)
    if req.object == "std":
        return ch.ch_standard_module(datum, weight, qmax, method=req.method)
    if req.object == "vacuum":
        return ch.ch_vacuum(datum, weight, qmax, method=req.method)
    return ch.ch_parafermionic(
        datum, weight, qmax, track_colors=req.track_colors, method=req.method
    )


@app.post("/char", response_model=SeriesResponse)
def char_endpoint(req: CharRequest) -> SeriesResponse:
    series = compute_character(req)
    meta = SeriesMeta(
        series=req.series,
        rank=req.rank,
        k0=req.k0,
        kj=req.kj,
        object=req.object,
        qmax=req.qmax,
        denominator=series.denom,
    )
    return series_payload(series, meta)


def monomial_record(mono: qp.QPMonomial) -> dict:
    data = qp.charge_data(mono)
    return {
        "charges": [list(ct) for ct in data.charge_type],
        "energies": [
            [format_rational(-m) for _, m in part] for part in mono.parts
        ],
        "charge_type": [list(ct) for ct in data.charge_type],
        "dual_charge_type": [list(dt) for dt in data.dual_charge_type],
        "color_type": list(data.color_type),
        "total_charge": list(data.y_degrees),
        "total_energy": format_rational(data.total_energy),
    }


@app.post("/enumerate")
def enumerate_endpoint(req: EnumerateRequest) -> StreamingResponse:
    datum = _datum_or_400(req.series, req.rank)
    weight = _weight_or_400(req.k0, req.kj)
    qmax = _qmax_or_400(req.qmax)
    kind = qp.KIND_STANDARD if req.kind == "standard" else qp.KIND_VERMA
    cap = req.cap
    if cap is None and kind == qp.KIND_STANDARD:
        cap = weight.k

    def lines() -> Iterator[bytes]:
        for mono in qp.enumerate_basis(datum, weight, kind, cap, qmax):
            yield (
                json.dumps(monomial_record(mono), separators=(",", ":"))
                + "\n"
            ).encode()

    return StreamingResponse(lines(), media_type="application/x-ndjson")


def _acceptance_grid() -> list[vf.VerificationReport]:
    reports = []
    for series in ("A", "D"):
        datum = build_datum(series, 2)
        reports.append(vf.verify_corollary(datum, Q(5)))
    for series in ("A", "D"):
        datum = build_datum(series, 2)
        for k in (1, 2):
            for k0 in range(k + 1):
                reports.append(
                    vf.verify_psp(datum, RectangularWeight(k0, k - k0), Q(4))
                )
    for series in ("A", "D"):
        reports.append(vf.verify_verma(build_datum(series, 2), Q(4)))
    reports.append(vf.verify_para_examples(Q(4)))
    for series in ("A", "D"):
        datum = build_datum(series, 2)
        for k0, kj in ((2, 0), (1, 1), (0, 2)):
            reports.append(
                vf.verify_para(datum, RectangularWeight(k0, kj), Q(3))
            )
    reports.append(vf.verify_level_one(Q(3)))
    reports.append(vf.verify_minsum(42, 500))
    return reports


def run_verify(req: VerifyRequest) -> VerifyResponse:
    if req.check == "all":
        reports = _acceptance_grid()
    else:
        series = req.series or "A"
        rank = req.rank or 2
        qmax = parse_rational(req.qmax) if req.qmax is not None else Q(4)
        if qmax < 0:
            raise HTTPException(status_code=400, detail="qmax must be nonnegative")
        if req.check == "corollary":
            datum = _datum_or_400(series, rank)
            reports = [vf.verify_corollary(datum, qmax, all_roots=req.all_roots)]
        elif req.check == "psp":
            datum = _datum_or_400(series, rank)
            weight = _weight_or_400(
                req.k0 if req.k0 is not None else 1,
                req.kj if req.kj is not None else 0,
            )
            reports = [vf.verify_psp(datum, weight, qmax)]
        elif req.check == "verma":
            datum = _datum_or_400(series, rank)
            reports = [vf.verify_verma(datum, qmax)]
        elif req.check == "para":
            datum = _datum_or_400(series, rank)
            weight = _weight_or_400(
                req.k0 if req.k0 is not None else 1,
                req.kj if req.kj is not None else 1,
            )
            reports = [vf.verify_para(datum, weight, qmax)]
        elif req.check == "para-examples":
            reports = [vf.verify_para_examples(qmax)]
        elif req.check == "level-one":
            reports = [vf.verify_level_one(qmax if req.qmax is not None else Q(3))]
        else:
            reports = [vf.verify_minsum(req.seed, req.trials)]

    overall = vf.PASS
    for report in reports:
        if report.status == vf.FAIL:
            overall = vf.FAIL
            break
        if report.status == vf.INSUFFICIENT_PRECISION:
            overall = vf.INSUFFICIENT_PRECISION
    return VerifyResponse(
        reports=[ReportModel(**r.to_dict()) for r in reports], overall=overall
    )


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(req: VerifyRequest) -> VerifyResponse:
    return run_verify(req)
