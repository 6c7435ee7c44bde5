"""Closed-form character evaluations into graded series.

Covers the principal-subspace fermionic sums (standard and Verma kinds),
the orbit Pochhammer product, the full standard-module and vacuum-space
characters (theta sum over the projected root lattice), and the
parafermionic sum with its D/G/B factors.  Each sum is truncated with a
provable bound, never a heuristic one: the quadratic forms are positive
(semi)definite, so exact rational pruning radii exist.
"""

from __future__ import annotations

import itertools
from fractions import Fraction as Q
from typing import Iterator, Sequence

from . import quasiparticle as qp
from . import series as gs
from .rootdata import (
    RectangularWeight,
    TwistedRootDatum,
    dual_coordinates,
    invert_matrix,
    lattice_ball,
    quadratic_value,
    theta_minimum,
    weight_pairing,
)
from .series import GradedSeries


class ExponentSignError(AssertionError):
    """Tripwire: a parafermionic quadratic exponent came out negative."""


_POCH_CACHE: dict[tuple, GradedSeries] = {}


def _poch(step: Q, r: int, qmax: Q, l: int, denom: int) -> GradedSeries:
    key = (step, r, qmax, l, denom)
    found = _POCH_CACHE.get(key)
    if found is None:
        found = gs.inv_pochhammer_finite(step, r, qmax, l=l, denom=denom)
        _POCH_CACHE[key] = found
    return found


def _charge_factor(
    datum: TwistedRootDatum,
    P: Sequence[Sequence[int]],
    qmax: Q,
    denom: int,
) -> GradedSeries:
    """Product of the per-(color, charge) bounded-partition towers."""
    out = gs.one(datum.l, qmax, denom)
    for i in range(datum.l):
        mu_i = datum.mu[i]
        for count in P[i]:
            if count:
                out = out.mul(_poch(mu_i, count, qmax, datum.l, denom))
    return out


def _ptilde(
    datum: TwistedRootDatum, w: RectangularWeight, P: Sequence[Sequence[int]]
) -> Q:
    mu_j = datum.mu[datum.j_node - 1]
    pj = P[datum.j_node - 1]
    return mu_j * sum(
        (s - w.k0) * pj[s - 1] for s in range(w.k0 + 1, len(pj) + 1)
    )


def _iter_p_grids(
    datum: TwistedRootDatum,
    w: RectangularWeight | None,
    cap: int | None,
    budget: Q,
) -> Iterator[tuple[tuple[tuple[int, ...], ...], Q, Q]]:
    """Charge-count grids P with quadratic + shift within budget; yields
    (P, quadratic value, shift value)."""
    kind = qp.KIND_VERMA if w is None else qp.KIND_STANDARD
    weight = w if w is not None else RectangularWeight(1, 0)
    for charges, cost in qp._iter_dual_row_configs(datum, weight, kind, cap, budget):
        P = tuple(_charges_to_counts(c) for c in charges)
        ptilde = _ptilde(datum, weight, P) if w is not None else Q(0)
        yield P, cost - ptilde, ptilde


def _charges_to_counts(charges: Sequence[int]) -> tuple[int, ...]:
    counts = [0] * (charges[0] if charges else 0)
    for n in charges:
        counts[n - 1] += 1
    return tuple(counts)


def _y_degrees(P: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(
        sum((s + 1) * p for s, p in enumerate(color)) for color in P
    )


def ch_principal_standard(
    datum: TwistedRootDatum, w: RectangularWeight, qmax: Q
) -> GradedSeries:
    """Fermionic sum for the principal subspace at level k: charges up to k,
    quadratic exponent plus the weight shift, one bounded-partition tower
    per (color, charge)."""
    qmax = Q(qmax)
    parts = []
    for P, quad, ptilde in _iter_p_grids(datum, w, w.k, qmax):
        base = quad + ptilde
        term = gs.monomial(base, _y_degrees(P), 1, qmax, denom=2)
        if not term.is_zero():
            parts.append(term.mul(_charge_factor(datum, P, qmax, 2)))
    return gs.sum_series(parts, datum.l, qmax, 2)


def ch_principal_verma(datum: TwistedRootDatum, qmax: Q) -> GradedSeries:
    """Fermionic sum for the Verma principal subspace: unbounded charges,
    no weight shift."""
    qmax = Q(qmax)
    parts = []
    for P, quad, _ in _iter_p_grids(datum, None, None, qmax):
        term = gs.monomial(quad, _y_degrees(P), 1, qmax, denom=2)
        if not term.is_zero():
            parts.append(term.mul(_charge_factor(datum, P, qmax, 2)))
    return gs.sum_series(parts, datum.l, qmax, 2)


def ch_product_side(
    datum: TwistedRootDatum, qmax: Q, all_roots: bool = False
) -> GradedSeries:
    """Pochhammer product over nu-orbits of positive roots.

    all_roots=True repeats each factor per orbit member; that variant is
    wrong by design and kept as the negative control.
    """
    qmax = Q(qmax)
    out = gs.one(datum.l, qmax, 2)
    for (a_vec, halfnorm), size in zip(
        datum.pos_orbit_projections, datum.orbit_sizes
    ):
        factor = gs.inv_pochhammer_infinite(
            halfnorm, a_vec, halfnorm, qmax, denom=2
        )
        repeats = size if all_roots else 1
        for _ in range(repeats):
            out = out.mul(factor)
    return out


def heisenberg_factor(datum: TwistedRootDatum, qmax: Q) -> GradedSeries:
    """Free-oscillator character: one unbounded tower per color on its
    mode lattice."""
    qmax = Q(qmax)
    out = gs.one(datum.l, qmax, 2)
    for mu_i in datum.mu:
        out = out.mul(
            gs.inv_pochhammer_infinite(
                mu_i, (0,) * datum.l, mu_i, qmax, denom=2
            )
        )
    return out


def _theta_linear(
    datum: TwistedRootDatum, pairing: Sequence[Q], n_vec: Sequence[int]
) -> tuple[Q, ...]:
    l = datum.l
    return tuple(
        Q(pairing[i])
        + sum(datum.gram0[i][r] * n_vec[r] for r in range(l))
        for i in range(l)
    )


def _theta_value(
    datum: TwistedRootDatum, level: int, linear: Sequence[Q], v: Sequence[int]
) -> Q:
    return Q(level) * quadratic_value(datum.gram0, v) / 2 + sum(
        Q(linear[i]) * v[i] for i in range(datum.l)
    )


def _standard_p_entry_cap(
    datum: TwistedRootDatum, w: RectangularWeight, qmax: Q
) -> int:
    """Bound on any dual-charge-row entry in the standard-module sum.

    With N the largest entry, the total exponent is at least
    N^2 * lam / (2k(k-1)) - mu_j kj N / k - c0 (quadratic-vs-theta
    balance), so scanning that scalar bound is exhaustive.
    """
    k = w.k
    lam = qp._row_floor(datum)
    mu_j = datum.mu[datum.j_node - 1]
    pairing = weight_pairing(datum, w)
    c_lam = dual_coordinates(datum, pairing)
    c0 = sum(p * c for p, c in zip(pairing, c_lam)) / (2 * k)
    coeff = lam / (2 * k * (k - 1))
    linear = mu_j * w.kj / k
    n = 0
    while coeff * n * n - linear * n - c0 <= qmax:
        n += 1
    return n


def _iter_standard_grids(
    datum: TwistedRootDatum, w: RectangularWeight, qmax: Q
) -> Iterator[tuple[tuple[tuple[int, ...], ...], Q, Q]]:
    """P grids (charges <= k-1) that can contribute to the standard-module
    character at truncation qmax, with their quadratic and shift values."""
    k = w.k
    if k == 1:
        yield (tuple(() for _ in range(datum.l)), Q(0), Q(0))
        return
    cap_entry = _standard_p_entry_cap(datum, w, qmax)
    pairing = weight_pairing(datum, w)
    rows_space = [
        row
        for row in itertools.product(range(cap_entry + 1), repeat=datum.l)
    ]
    seen: set[tuple[tuple[int, ...], ...]] = set()

    def dfs(rows: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
        yield rows
        if len(rows) == k - 1:
            return
        prev = rows[-1] if rows else None
        for row in rows_space:
            if not any(row):
                continue
            if prev is not None and any(a > b for a, b in zip(row, prev)):
                continue
            rows.append(row)
            yield from dfs(rows)
            rows.pop()

    for rows in dfs([]):
        charges = tuple(
            tuple(
                sum(1 for row in rows if row[i] >= p)
                for p in range(1, (rows[0][i] if rows else 0) + 1)
            )
            for i in range(datum.l)
        )
        if charges in seen:
            continue
        seen.add(charges)
        P = tuple(_charges_to_counts(c) for c in charges)
        quad = qp.minsum_via_dual_rows(datum, P)
        ptilde = _ptilde(datum, w, P)
        n_vec = _y_degrees(P)
        linear = _theta_linear(datum, pairing, n_vec)
        if quad + ptilde + theta_minimum(datum, k, linear) <= qmax:
            yield P, quad, ptilde


def _standard_sum(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    qmax: Q,
    include_heisenberg: bool,
) -> GradedSeries:
    qmax = Q(qmax)
    k = w.k
    pairing = weight_pairing(datum, w)
    c_lam = dual_coordinates(datum, pairing)
    parts = []
    for P, quad, ptilde in _iter_standard_grids(datum, w, qmax):
        base = quad + ptilde
        n_vec = _y_degrees(P)
        linear = _theta_linear(datum, pairing, n_vec)
        ball = lattice_ball(datum, k, linear, qmax - base)
        if not ball:
            continue
        theta_values = [(_theta_value(datum, k, linear, v), v) for v in ball]
        local_qmax = qmax - min(min(t for t, _ in theta_values), Q(0))
        factor = _charge_factor(datum, P, local_qmax, 2)
        if include_heisenberg:
            factor = factor.mul(heisenberg_factor(datum, local_qmax))
        for theta, v in theta_values:
            y_off = tuple(
                k * v[i] + c_lam[i] + n_vec[i] for i in range(datum.l)
            )
            parts.append(factor.shift(base + theta, y_off, qmax=qmax, denom=2))
    return gs.sum_series(parts, datum.l, qmax, 2)


def ch_standard_module(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    qmax: Q,
    method: str = "formula",
) -> GradedSeries:
    """Full standard-module character: Heisenberg factor times the
    fermionic P-sum (charges below the level) times the theta sum over the
    projected root lattice; y-exponents are coweight values and may be
    non-integral rationals."""
    if method == "enumerate":
        return _standard_by_enumeration(datum, w, Q(qmax), heisenberg=True)
    return _standard_sum(datum, w, Q(qmax), include_heisenberg=True)


def ch_vacuum(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    qmax: Q,
    method: str = "formula",
) -> GradedSeries:
    """Vacuum-space character: the standard character with the Heisenberg
    factor omitted (not divided out after the fact)."""
    if method == "enumerate":
        return _standard_by_enumeration(datum, w, Q(qmax), heisenberg=False)
    return _standard_sum(datum, w, Q(qmax), include_heisenberg=False)


def _iter_partitions_on_lattice(
    step: Q, budget: Q
) -> Iterator[tuple[Q, int]]:
    """(degree, count) pairs of partitions with parts in step*Z_{>0} and
    total degree <= budget; count is the number of such partitions."""
    smax = int(budget / step) if budget >= 0 else -1
    if smax < 0:
        return
    table = [1] + [0] * smax
    for part in range(1, smax + 1):
        for s in range(part, smax + 1):
            table[s] += table[s - part]
    for s in range(smax + 1):
        yield step * s, table[s]


def _standard_by_enumeration(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    qmax: Q,
    heisenberg: bool,
) -> GradedSeries:
    """Direct tally of the basis index set: lattice translate, oscillator
    monomial (optional), quasi-particle monomial with charges below the
    level, graded by the same exponent rule as the closed formula."""
    k = w.k
    pairing = weight_pairing(datum, w)
    c_lam = dual_coordinates(datum, pairing)
    terms: dict[tuple[Q, tuple[Q, ...]], int] = {}
    for P, quad, ptilde in _iter_standard_grids(datum, w, qmax):
        base = quad + ptilde
        n_vec = _y_degrees(P)
        linear = _theta_linear(datum, pairing, n_vec)
        ball = lattice_ball(datum, k, linear, qmax - base)
        if not ball:
            continue
        theta_values = [(_theta_value(datum, k, linear, v), v) for v in ball]
        local_qmax = qmax - min(min(t for t, _ in theta_values), Q(0))
        charges = tuple(_counts_to_charges(p) for p in P)
        qp_terms: dict[Q, int] = {}
        for mono in qp.iter_energy_configs(
            datum, w, qp.KIND_STANDARD, charges, local_qmax
        ):
            energy = -sum(
                (m for part in mono.parts for _, m in part), start=Q(0)
            )
            qp_terms[energy] = qp_terms.get(energy, 0) + 1
        heis = (
            _heisenberg_degree_counts(datum, local_qmax)
            if heisenberg
            else {Q(0): 1}
        )
        for theta, v in theta_values:
            y_off = tuple(
                k * v[i] + c_lam[i] + n_vec[i] for i in range(datum.l)
            )
            for e_qp, c_qp in qp_terms.items():
                for e_h, c_h in heis.items():
                    qexp = theta + e_qp + e_h
                    if qexp > qmax:
                        continue
                    key = (qexp, y_off)
                    terms[key] = terms.get(key, 0) + c_qp * c_h
    return GradedSeries(datum.l, qmax, 2, terms)


def _heisenberg_degree_counts(
    datum: TwistedRootDatum, budget: Q
) -> dict[Q, int]:
    """Degree histogram of oscillator monomials up to the budget."""
    counts: dict[Q, int] = {Q(0): 1}
    for mu_i in datum.mu:
        new: dict[Q, int] = {}
        for deg, c in counts.items():
            for extra, c2 in _iter_partitions_on_lattice(mu_i, budget - deg):
                key = deg + extra
                new[key] = new.get(key, 0) + c * c2
        counts = new
    return counts


def _counts_to_charges(counts: Sequence[int]) -> tuple[int, ...]:
    charges: list[int] = []
    for s in range(len(counts), 0, -1):
        charges.extend([s] * counts[s - 1])
    return tuple(charges)


# -- parafermionic ----------------------------------------------------------


def _bridge_matrix(k: int) -> list[list[Q]]:
    """The kernel min(m,n) - mn/k on charges 1..k-1 (positive definite)."""
    return [
        [Q(min(m, n)) - Q(m * n, k) for n in range(1, k)]
        for m in range(1, k)
    ]


def para_exponents(
    datum: TwistedRootDatum, w: RectangularWeight, P: Sequence[Sequence[int]]
) -> tuple[Q, Q]:
    """Quadratic (bridge-kernel) and linear (weight) exponents of one grid
    term of the parafermionic sum."""
    k = w.k
    l = datum.l
    quad = Q(0)
    for i in range(l):
        for r in range(l):
            g = datum.gram0[i][r]
            if g == 0:
                continue
            for m, pm in enumerate(P[i], start=1):
                if pm == 0:
                    continue
                for n, pn in enumerate(P[r], start=1):
                    if pn:
                        quad += g * (Q(min(m, n)) - Q(m * n, k)) * pm * pn
    quad = quad / 2
    mu_j = datum.mu[datum.j_node - 1]
    pj = P[datum.j_node - 1]
    linear = mu_j * sum(
        (t - w.k0) * pj[t - 1] for t in range(w.k0 + 1, len(pj) + 1)
    ) - mu_j * Q(w.kj, k) * sum(t * pj[t - 1] for t in range(1, len(pj) + 1))
    return quad, linear


def _para_coordinate_cap(
    datum: TwistedRootDatum, w: RectangularWeight, qmax: Q
) -> int:
    """Bound on any single charge count in the parafermionic sum."""
    k = w.k
    if k == 1:
        return 0
    bridge = _bridge_matrix(k)
    lam_a = 1 / max(sum(abs(v) for v in row) for row in invert_matrix(bridge))
    lam_g = qp._row_floor(datum)
    half = lam_a * lam_g / 2
    mu_j = datum.mu[datum.j_node - 1]
    slope = mu_j * (k - 1)
    # Per-coordinate deficit of the remaining coordinates.
    deficit = slope * slope / (2 * half)
    slack = qmax + (datum.l * (k - 1) - 1) * deficit
    n = 0
    while half * n * n - slope * n <= slack:
        n += 1
    return n


def ch_parafermionic(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    qmax: Q,
    track_colors: bool = False,
    method: str = "formula",
) -> GradedSeries:
    """Parafermionic character: sum over charge-count grids of the
    bounded-partition towers times q^(bridge quadratic + weight linear).
    The quadratic part is nonnegative for every grid; a negative value
    aborts the summation (formula bug tripwire)."""
    qmax = Q(qmax)
    if method == "enumerate":
        return _para_by_enumeration(datum, w, qmax, track_colors)
    k = w.k
    denom = 4 * k
    if k == 1:
        return gs.one(datum.l, qmax, denom)
    cap = _para_coordinate_cap(datum, w, qmax)
    coords = datum.l * (k - 1)
    parts = []
    for flat in itertools.product(range(cap + 1), repeat=coords):
        P = tuple(
            flat[i * (k - 1) : (i + 1) * (k - 1)] for i in range(datum.l)
        )
        quad, linear = para_exponents(datum, w, P)
        if quad < 0:
            raise ExponentSignError(
                f"negative bridge exponent {quad} at grid {P}"
            )
        base = quad + linear
        yexp = _y_degrees(P) if track_colors else (0,) * datum.l
        term = gs.monomial(base, yexp, 1, qmax, denom=denom)
        if not term.is_zero():
            parts.append(term.mul(_charge_factor(datum, P, qmax, denom)))
    return gs.sum_series(parts, datum.l, qmax, denom)


def para_conformal_energy(
    datum: TwistedRootDatum, w: RectangularWeight, mono: qp.QPMonomial
) -> Q:
    """Conformal energy of the parafermionic basis vector attached to a
    quasi-particle monomial with charges below the level."""
    k = w.k
    data = qp.charge_data(mono)
    if any(n >= k for ct in data.charge_type for n in ct):
        raise ValueError(
            f"charge cap {k - 1} violated for parafermionic grading"
        )
    mu_j = datum.mu[datum.j_node - 1]
    pj = data.p_vectors[datum.j_node - 1]
    energy = data.total_energy
    energy -= mu_j * Q(w.kj, k) * sum(
        t * pj[t - 1] for t in range(1, len(pj) + 1)
    )
    for i in range(1, datum.l + 1):
        part = mono.parts[i - 1]
        mu_i = datum.mu[i - 1]
        for u, (n_u, _) in enumerate(part):
            energy -= Q(n_u * n_u) * mu_i / k
            same = sum(n_s for n_s, _ in part[:u])
            cross = Q(0)
            for r in range(1, i):
                g = datum.gram0[i - 1][r - 1]
                if g:
                    cross += g * sum(n_s for n_s, _ in mono.parts[r - 1])
            energy -= (Q(n_u) * (2 * mu_i * same) + Q(n_u) * cross) / k
    return energy


def _para_by_enumeration(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    qmax: Q,
    track_colors: bool,
) -> GradedSeries:
    """Tally of conformal energies over enumerated charge-capped monomials;
    the independent route against the closed parafermionic sum."""
    k = w.k
    denom = 4 * k
    if k == 1:
        return gs.one(datum.l, qmax, denom)
    cap = _para_coordinate_cap(datum, w, qmax)
    coords = datum.l * (k - 1)
    terms: dict[tuple[Q, tuple[Q, ...]], int] = {}
    for flat in itertools.product(range(cap + 1), repeat=coords):
        P = tuple(
            flat[i * (k - 1) : (i + 1) * (k - 1)] for i in range(datum.l)
        )
        quad, linear = para_exponents(datum, w, P)
        if quad + linear > qmax:
            continue
        charges = tuple(_counts_to_charges(p) for p in P)
        # Conformal energy = total energy minus a grid-constant; enumerate
        # up to the energy budget implied by the conformal truncation.
        shift = _ptilde(datum, w, P) + qp.minsum_via_dual_rows(datum, P) - (
            quad + linear
        )
        yexp = tuple(Q(v) for v in (_y_degrees(P) if track_colors else (0,) * datum.l))
        for mono in qp.iter_energy_configs(
            datum, w, qp.KIND_STANDARD, charges, qmax + shift
        ):
            energy = para_conformal_energy(datum, w, mono)
            if energy <= qmax:
                key = (energy, yexp)
                terms[key] = terms.get(key, 0) + 1
    return GradedSeries(datum.l, qmax, denom, terms)
