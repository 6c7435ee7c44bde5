"""Named identity checks pairing independent computational routes.

Every check returns a VerificationReport: deterministic for fixed
parameters, with the lexicographically first mismatching term as witness
on failure, and a dedicated insufficient-precision status whenever a
requested comparison order would exceed a computed truncation (never a
silent pass).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction as Q

from . import characters as ch
from . import quasiparticle as qp
from . import series as gs
from .displays import display_example
from .rational import format_rational
from .rootdata import RectangularWeight, TwistedRootDatum, build_datum

PASS = "pass"
FAIL = "fail"
INSUFFICIENT_PRECISION = "insufficient-precision"

Witness = tuple[Q, tuple[Q, ...], int, int]


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    parameters: dict
    status: str
    witness: Witness | None
    terms_compared: int
    elapsed: float

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            qexp, yexp, lhs, rhs = self.witness
            witness = {
                "q": format_rational(qexp),
                "y": [format_rational(v) for v in yexp],
                "lhs": str(lhs),
                "rhs": str(rhs),
            }
        return {
            "check": self.check_name,
            "parameters": self.parameters,
            "status": self.status,
            "witness": witness,
            "terms_compared": self.terms_compared,
            "elapsed_seconds": round(self.elapsed, 6),
        }


def _report_from_comparison(
    name: str,
    parameters: dict,
    lhs: gs.GradedSeries,
    rhs: gs.GradedSeries,
    qbound: Q,
    started: float,
) -> VerificationReport:
    try:
        cmp = gs.compare_to_order(lhs, rhs, qbound)
    except gs.InsufficientPrecisionError:
        return VerificationReport(
            name, parameters, INSUFFICIENT_PRECISION, None, 0,
            time.perf_counter() - started,
        )
    status = PASS if cmp.equal else FAIL
    return VerificationReport(
        name, parameters, status, cmp.witness, cmp.terms_compared,
        time.perf_counter() - started,
    )


def _params(datum: TwistedRootDatum, qmax: Q, w: RectangularWeight | None = None, **extra) -> dict:
    out = {"series": datum.series, "rank": datum.l, "qmax": format_rational(qmax)}
    if w is not None:
        out["k0"] = w.k0
        out["kj"] = w.kj
    out.update(extra)
    return out


def verify_corollary(
    datum: TwistedRootDatum, qmax: Q, all_roots: bool = False
) -> VerificationReport:
    """Orbit Pochhammer product against the Verma fermionic sum.

    all_roots=True runs the deliberately wrong per-root product: the
    permanent negative control, expected to fail with first witness at the
    lightest two-element orbit."""
    started = time.perf_counter()
    qmax = Q(qmax)
    lhs = ch.ch_product_side(datum, qmax, all_roots=all_roots)
    rhs = ch.ch_principal_verma(datum, qmax)
    name = "corollary-all-roots" if all_roots else "corollary"
    return _report_from_comparison(
        name, _params(datum, qmax, all_roots=all_roots), lhs, rhs, qmax, started
    )


def verify_psp(
    datum: TwistedRootDatum, w: RectangularWeight, qmax: Q
) -> VerificationReport:
    """Enumerated principal-subspace basis (charges up to the level) tallied
    by (energy, color charge) against the closed fermionic sum."""
    started = time.perf_counter()
    qmax = Q(qmax)
    lhs = qp.tally(
        qp.enumerate_basis(datum, w, qp.KIND_STANDARD, w.k, qmax),
        qp.energy_color_weight,
        datum.l,
        qmax,
    )
    rhs = ch.ch_principal_standard(datum, w, qmax)
    return _report_from_comparison(
        "psp", _params(datum, qmax, w), lhs, rhs, qmax, started
    )


def verify_verma(datum: TwistedRootDatum, qmax: Q) -> VerificationReport:
    """Enumerated shift-free basis with unbounded charges against the Verma
    fermionic sum."""
    started = time.perf_counter()
    qmax = Q(qmax)
    w = RectangularWeight(1, 0)
    lhs = qp.tally(
        qp.enumerate_basis(datum, w, qp.KIND_VERMA, None, qmax),
        qp.energy_color_weight,
        datum.l,
        qmax,
    )
    rhs = ch.ch_principal_verma(datum, qmax)
    return _report_from_comparison(
        "verma", _params(datum, qmax), lhs, rhs, qmax, started
    )


def verify_para(
    datum: TwistedRootDatum, w: RectangularWeight, qmax: Q
) -> VerificationReport:
    """Conformal-energy tally over enumerated charge-capped monomials
    against the closed parafermionic sum, color-refined."""
    started = time.perf_counter()
    qmax = Q(qmax)
    lhs = ch.ch_parafermionic(datum, w, qmax, track_colors=True, method="enumerate")
    rhs = ch.ch_parafermionic(datum, w, qmax, track_colors=True)
    return _report_from_comparison(
        "para", _params(datum, qmax, w), lhs, rhs, qmax, started
    )


_PARA_EXAMPLE_CASES = (
    ("A5_para_2L1", "A", 3, 0, 2),
    ("A5_para_L0L1", "A", 3, 1, 1),
    ("D3_para_2L2", "D", 2, 0, 2),
    ("D3_para_L0L2", "D", 2, 1, 1),
)


def verify_para_examples(qmax: Q) -> VerificationReport:
    """Closed parafermionic sum against the four hand-coded displays."""
    started = time.perf_counter()
    qmax = Q(qmax)
    total = 0
    for name, series, rank, k0, kj in _PARA_EXAMPLE_CASES:
        datum = build_datum(series, rank)
        lhs = ch.ch_parafermionic(datum, RectangularWeight(k0, kj), qmax)
        rhs = display_example(name, qmax)
        report = _report_from_comparison(
            "para-examples", {"example": name, "qmax": format_rational(qmax)},
            lhs, rhs, qmax, started,
        )
        if report.status != PASS:
            return report
        total += report.terms_compared
    return VerificationReport(
        "para-examples",
        {"examples": [c[0] for c in _PARA_EXAMPLE_CASES], "qmax": format_rational(qmax)},
        PASS,
        None,
        total,
        time.perf_counter() - started,
    )


_LEVEL_ONE_CASES = (
    ("A5_L1", "A", 3, 0, 1),
    ("D3_L2", "D", 2, 0, 1),
)


def verify_level_one(qmax: Q) -> VerificationReport:
    """Level-one standard characters against the hand-coded displays,
    validating the projected-lattice theta reading and the coweight
    realization."""
    started = time.perf_counter()
    qmax = Q(qmax)
    total = 0
    for name, series, rank, k0, kj in _LEVEL_ONE_CASES:
        datum = build_datum(series, rank)
        lhs = ch.ch_standard_module(datum, RectangularWeight(k0, kj), qmax)
        rhs = display_example(name, qmax)
        report = _report_from_comparison(
            "level-one", {"example": name, "qmax": format_rational(qmax)},
            lhs, rhs, qmax, started,
        )
        if report.status != PASS:
            return report
        total += report.terms_compared
    return VerificationReport(
        "level-one",
        {"examples": [c[0] for c in _LEVEL_ONE_CASES], "qmax": format_rational(qmax)},
        PASS,
        None,
        total,
        time.perf_counter() - started,
    )


def _random_counts(rng: random.Random, max_charge: int, max_count: int) -> tuple[int, ...]:
    depth = rng.randint(0, max_charge)
    return tuple(rng.randint(0, max_count) for _ in range(depth))


def verify_minsum(seed: int, trials: int) -> VerificationReport:
    """Random sweep of the min-sum/conjugate-row identity and the agreement
    of both quadratic-form evaluations."""
    started = time.perf_counter()
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    data = [build_datum("A", 2), build_datum("D", 2), build_datum("A", 3)]
    for trial in range(trials):
        datum = data[trial % len(data)]
        P = [_random_counts(rng, 6, 5) for _ in range(datum.l)]
        rows_depth = max((len(p) for p in P), default=0)
        rows = [
            [sum(p[s] for s in range(t, len(p))) for p in P]
            for t in range(rows_depth)
        ]
        for i in range(datum.l):
            for r in range(datum.l):
                direct = sum(
                    min(m, n) * P[i][m - 1] * P[r][n - 1]
                    for m in range(1, len(P[i]) + 1)
                    for n in range(1, len(P[r]) + 1)
                )
                via_rows = sum(row[i] * row[r] for row in rows)
                if direct != via_rows:
                    return VerificationReport(
                        "minsum",
                        {"seed": seed, "trials": trials, "failed_trial": trial},
                        FAIL,
                        (Q(0), (), direct, via_rows),
                        trial + 1,
                        time.perf_counter() - started,
                    )
        lhs = qp.minsum_quadratic(datum, P)
        rhs = qp.minsum_via_dual_rows(datum, P)
        if lhs != rhs:
            return VerificationReport(
                "minsum",
                {"seed": seed, "trials": trials, "failed_trial": trial},
                FAIL,
                (Q(0), (), lhs, rhs),
                trial + 1,
                time.perf_counter() - started,
            )
    return VerificationReport(
        "minsum",
        {"seed": seed, "trials": trials},
        PASS,
        None,
        trials,
        time.perf_counter() - started,
    )
