"""Hand-coded fixture series for the six displayed standard-module
characters and the four displayed parafermionic characters.

These are literal transcriptions with hard-coded exponent polynomials,
deliberately bypassing the general fermionic-sum machinery: they share
only the root-datum and graded-series primitives with the rest of the
package, so agreement with the general formulas is an actual check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction as Q
from typing import Callable, Sequence

from . import series as gs
from .rootdata import (
    TwistedRootDatum,
    build_datum,
    dual_coordinates,
    invert_matrix,
    lattice_ball,
    quadratic_value,
    theta_minimum,
)
from .series import GradedSeries

DISPLAY_NAMES = (
    "A5_L1",
    "A5_2L1",
    "A5_L0L1",
    "D3_L2",
    "D3_2L2",
    "D3_L0L2",
    "A5_para_2L1",
    "A5_para_L0L1",
    "D3_para_2L2",
    "D3_para_L0L2",
)


def _lambda_bound(datum: TwistedRootDatum) -> Q:
    inv = invert_matrix(datum.gram0)
    return 1 / max(sum(abs(v) for v in row) for row in inv)


def _oscillator_product(datum: TwistedRootDatum, qmax: Q) -> GradedSeries:
    out = gs.one(datum.l, qmax, 2)
    for mu_i in datum.mu:
        out = out.mul(
            gs.inv_pochhammer_infinite(mu_i, (0,) * datum.l, mu_i, qmax, denom=2)
        )
    return out


def _theta_terms(
    datum: TwistedRootDatum,
    level: int,
    linear: Sequence[Q],
    budget: Q,
) -> list[tuple[Q, tuple[int, ...]]]:
    out = []
    for v in lattice_ball(datum, level, linear, budget):
        value = Q(level) * quadratic_value(datum.gram0, v) / 2 + sum(
            Q(linear[i]) * v[i] for i in range(datum.l)
        )
        out.append((value, v))
    return out


def _level1_standard_display(
    datum: TwistedRootDatum, pairing: Sequence[Q], qmax: Q
) -> GradedSeries:
    """Oscillator product times the bare theta sum of the displayed
    level-one characters."""
    c_lam = dual_coordinates(datum, pairing)
    theta = _theta_terms(datum, 1, pairing, qmax)
    if not theta:
        return gs.zero(datum.l, qmax, 2)
    local = qmax - min(min(t for t, _ in theta), Q(0))
    osc = _oscillator_product(datum, local)
    acc = gs.zero(datum.l, qmax, 2)
    for value, v in theta:
        y_off = tuple(v[i] + c_lam[i] for i in range(datum.l))
        acc = acc.add(osc.shift(value, y_off, qmax=qmax, denom=2))
    return acc


def _level2_standard_display(
    datum: TwistedRootDatum,
    pairing: Sequence[Q],
    exponent: Callable[[Sequence[int]], Q],
    qmax: Q,
) -> GradedSeries:
    """Oscillator product times grid sum times theta sum of the displayed
    level-two characters; `exponent` is the literal power of q in front of
    the bounded towers (quadratic plus optional linear shift).

    Grid completeness: the literal quadratic equals half the Gram form of
    the grid vector, and the theta exponent over real vectors is bounded
    below by minus a quarter of the inverse-form value of its linear part,
    so the total exceeds qmax once any grid coordinate passes the scanned
    scalar bound.
    """
    l = datum.l
    c_lam = dual_coordinates(datum, pairing)
    lam = _lambda_bound(datum)
    c0 = sum(Q(pairing[i]) * c_lam[i] for i in range(l)) / 4
    w_abs = sum(abs(Q(c)) for c in pairing)
    n = 0
    while lam * n * n / 4 - w_abs * n / 2 - c0 <= qmax:
        n += 1
    acc = gs.zero(l, qmax, 2)
    osc_cache: dict[Q, GradedSeries] = {}
    for p in itertools.product(range(n + 1), repeat=l):
        base = exponent(p)
        linear = tuple(
            Q(pairing[i]) + sum(datum.gram0[i][r] * p[r] for r in range(l))
            for i in range(l)
        )
        if base + theta_minimum(datum, 2, linear) > qmax:
            continue
        theta = _theta_terms(datum, 2, linear, qmax - base)
        if not theta:
            continue
        local = qmax - min(min(t for t, _ in theta), Q(0))
        if local not in osc_cache:
            osc_cache[local] = _oscillator_product(datum, local)
        factor = osc_cache[local]
        for i in range(l):
            if p[i]:
                factor = factor.mul(
                    gs.inv_pochhammer_finite(
                        datum.mu[i], p[i], local, l=l, denom=2
                    )
                )
        for value, v in theta:
            y_off = tuple(
                2 * v[i] + c_lam[i] + p[i] for i in range(l)
            )
            acc = acc.add(factor.shift(base + value, y_off, qmax=qmax, denom=2))
    return acc


def _para_display(
    datum: TwistedRootDatum,
    exponent: Callable[[Sequence[int]], Q],
    qmax: Q,
) -> GradedSeries:
    """Displayed parafermionic sums: q^exponent over grids of one count per
    color, divided by the bounded towers.  The literal quadratic equals a
    quarter of the Gram form, and the linear part never exceeds a quarter
    of a single coordinate, which yields the scanned coordinate bound."""
    l = datum.l
    lam = _lambda_bound(datum)
    n = 0
    while lam * n * n / 4 - Q(n, 4) <= qmax:
        n += 1
    acc = gs.zero(l, qmax, 8)
    for p in itertools.product(range(n + 1), repeat=l):
        base = exponent(p)
        term = gs.monomial(base, (0,) * l, 1, qmax, denom=8)
        if term.is_zero():
            continue
        for i in range(l):
            if p[i]:
                term = term.mul(
                    gs.inv_pochhammer_finite(datum.mu[i], p[i], qmax, l=l, denom=8)
                )
        acc = acc.add(term)
    return acc


def display_example(name: str, qmax: Q) -> GradedSeries:
    """Evaluate one named displayed character to the given truncation."""
    qmax = Q(qmax)
    if name not in DISPLAY_NAMES:
        raise ValueError(f"unknown example {name!r}")

    if name.startswith("A5"):
        datum = build_datum("A", 3)
    else:
        datum = build_datum("D", 2)

    half = Q(1, 2)
    quarter = Q(1, 4)

    if name == "A5_L1":
        return _level1_standard_display(datum, (half, Q(0), Q(0)), qmax)
    if name == "D3_L2":
        return _level1_standard_display(datum, (Q(0), half), qmax)

    def a5_quad(p: Sequence[int]) -> Q:
        return half * (
            p[0] * p[0]
            - p[0] * p[1]
            + p[1] * p[1]
            - 2 * p[1] * p[2]
            + 2 * p[2] * p[2]
        )

    def d3_quad(p: Sequence[int]) -> Q:
        return half * (2 * p[0] * p[0] - 2 * p[0] * p[1] + p[1] * p[1])

    if name == "A5_2L1":
        return _level2_standard_display(
            datum,
            (Q(1), Q(0), Q(0)),
            lambda p: a5_quad(p) + half * p[0],
            qmax,
        )
    if name == "A5_L0L1":
        return _level2_standard_display(
            datum, (half, Q(0), Q(0)), a5_quad, qmax
        )
    if name == "D3_2L2":
        return _level2_standard_display(
            datum,
            (Q(0), Q(1)),
            lambda p: d3_quad(p) + half * p[1],
            qmax,
        )
    if name == "D3_L0L2":
        return _level2_standard_display(datum, (Q(0), half), d3_quad, qmax)

    if name == "A5_para_2L1":
        return _para_display(datum, lambda p: a5_quad(p) / 2, qmax)
    if name == "A5_para_L0L1":
        return _para_display(
            datum, lambda p: a5_quad(p) / 2 - quarter * p[0], qmax
        )
    if name == "D3_para_2L2":
        return _para_display(datum, lambda p: d3_quad(p) / 2, qmax)
    return _para_display(
        datum, lambda p: d3_quad(p) / 2 - quarter * p[1], qmax
    )
