"""Quasi-particle monomials, difference/initial conditions, enumeration.

A monomial is, per color, a list of (charge, mode) pairs in canonical
order: charges nonincreasing, and among equal charges modes nonincreasing
(the admissibility gap makes them strictly decreasing there).  Modes of
color i live on the lattice mu_i * Z; the energy of a quasi-particle of
mode m is -m.

Two kinds of admissibility are supported: Standard carries the
weight-dependent initial-condition shift at the distinguished color j,
Verma is the shift-free variant with unbounded charges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from math import isqrt
from typing import Callable, Iterable, Iterator, Sequence

from .rootdata import RectangularWeight, TwistedRootDatum, _min_eigenvalue_bound
from .series import GradedSeries

KIND_STANDARD = "standard"
KIND_VERMA = "verma"

ColorPart = tuple[tuple[int, Q], ...]


class NonCanonicalError(ValueError):
    """Raised for inputs that violate the canonical monomial order."""


@dataclass(frozen=True)
class QPMonomial:
    """parts[i] holds the (charge, mode) pairs of color i+1."""

    parts: tuple[ColorPart, ...]

    @property
    def l(self) -> int:
        return len(self.parts)

    def is_empty(self) -> bool:
        return all(not p for p in self.parts)


@dataclass(frozen=True)
class ChargeData:
    """Derived charge/energy view of a monomial."""

    charge_type: tuple[tuple[int, ...], ...]
    dual_charge_type: tuple[tuple[int, ...], ...]
    color_type: tuple[int, ...]
    p_vectors: tuple[tuple[int, ...], ...]
    total_energy: Q
    y_degrees: tuple[int, ...]


def conjugate(partition: Sequence[int]) -> tuple[int, ...]:
    """Conjugate of a nonincreasing partition; an involution."""
    parts = list(partition)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise NonCanonicalError(f"partition not nonincreasing: {parts}")
    if any(p <= 0 for p in parts):
        raise NonCanonicalError(f"partition has nonpositive part: {parts}")
    if not parts:
        return ()
    return tuple(
        sum(1 for p in parts if p >= t) for t in range(1, parts[0] + 1)
    )


def charge_data(mono: QPMonomial) -> ChargeData:
    charge_type = tuple(tuple(n for n, _ in part) for part in mono.parts)
    dual = tuple(conjugate(ct) for ct in charge_type)
    p_vectors = []
    for ct in charge_type:
        counts = [0] * (ct[0] if ct else 0)
        for n in ct:
            counts[n - 1] += 1
        p_vectors.append(tuple(counts))
    total_energy = -sum(
        (m for part in mono.parts for _, m in part), start=Q(0)
    )
    return ChargeData(
        charge_type=charge_type,
        dual_charge_type=dual,
        color_type=tuple(len(ct) for ct in charge_type),
        p_vectors=tuple(p_vectors),
        total_energy=total_energy,
        y_degrees=tuple(sum(ct) for ct in charge_type),
    )


def is_canonical(datum: TwistedRootDatum, mono: QPMonomial) -> bool:
    """Canonical order and mode lattice check."""
    if mono.l != datum.l:
        return False
    for i, part in enumerate(mono.parts, start=1):
        mu_i = datum.mu[i - 1]
        for p, (n, m) in enumerate(part):
            if n < 1:
                return False
            if (m / mu_i).denominator != 1:
                return False
            if p > 0:
                n_prev, m_prev = part[p - 1]
                if n > n_prev:
                    return False
                if n == n_prev and m > m_prev:
                    return False
    return True


def minsum_quadratic(
    datum: TwistedRootDatum, P: Sequence[Sequence[int]]
) -> Q:
    """Value of (1/2) sum_{i,r} <a_i(0),a_r(0)> sum_{m,n} min(m,n) p_i^m p_r^n."""
    l = datum.l
    if len(P) != l:
        raise ValueError("one charge-count vector per color required")
    total = Q(0)
    for i in range(l):
        for r in range(l):
            g = datum.gram0[i][r]
            if g == 0:
                continue
            acc = 0
            for m, pm in enumerate(P[i], start=1):
                if pm == 0:
                    continue
                for n, pn in enumerate(P[r], start=1):
                    if pn:
                        acc += min(m, n) * pm * pn
            total += g * acc
    return total / 2


def minsum_via_dual_rows(
    datum: TwistedRootDatum, P: Sequence[Sequence[int]]
) -> Q:
    """Same quadratic form evaluated as (1/2) sum_t R_t^T G R_t over the
    dual-charge rows R_t; independent evaluation used for cross-checking."""
    depth = max((len(p) for p in P), default=0)
    total = Q(0)
    for t in range(1, depth + 1):
        row = [sum(p[s] for s in range(t - 1, len(p))) for p in P]
        total += Q(
            sum(
                row[i] * datum.gram0[i][r] * row[r]
                for i in range(datum.l)
                for r in range(datum.l)
            )
        )
    return total / 2


def initial_shift(
    datum: TwistedRootDatum, w: RectangularWeight, kind: str, color: int, charge: int
) -> Q:
    """Weight-dependent shift entering the color-j difference bound."""
    if kind == KIND_VERMA or color != datum.j_node:
        return Q(0)
    mu_j = datum.mu[datum.j_node - 1]
    return mu_j * max(0, min(charge, w.k) - w.k0)


def difference_bound(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    kind: str,
    mono: QPMonomial,
    color: int,
    position: int,
) -> Q:
    """Upper bound for the mode of the quasi-particle at (color, position)."""
    part = mono.parts[color - 1]
    if not 1 <= position <= len(part):
        raise IndexError(f"position {position} out of range for color {color}")
    n = part[position - 1][0]
    return _mode_bound(
        datum,
        w,
        kind,
        color,
        position,
        n,
        [q_charge for q_charge, _ in mono.parts[color - 2]] if color >= 2 else [],
    )


def _mode_bound(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    kind: str,
    color: int,
    position: int,
    charge: int,
    prev_charges: Sequence[int],
) -> Q:
    mu_i = datum.mu[color - 1]
    bound = (1 - 2 * position) * mu_i * charge
    if color >= 2:
        g = datum.gram0[color - 1][color - 2]
        bound -= g * sum(min(qc, charge) for qc in prev_charges)
    return bound - initial_shift(datum, w, kind, color, charge)


def satisfies_conditions(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    kind: str,
    charge_cap: int | None,
    mono: QPMonomial,
) -> bool:
    """Difference and initial conditions, plus the charge cap."""
    if not is_canonical(datum, mono):
        raise NonCanonicalError("monomial violates canonical order")
    for i, part in enumerate(mono.parts, start=1):
        mu_i = datum.mu[i - 1]
        prev = [n for n, _ in mono.parts[i - 2]] if i >= 2 else []
        for p, (n, m) in enumerate(part, start=1):
            if charge_cap is not None and n > charge_cap:
                return False
            if m > _mode_bound(datum, w, kind, i, p, n, prev):
                return False
            if p >= 2:
                n_prev, m_prev = part[p - 2]
                if n == n_prev and m > m_prev - 2 * mu_i * n:
                    return False
    return True


# -- enumeration ------------------------------------------------------------


def _iter_dual_row_configs(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    kind: str,
    charge_cap: int | None,
    budget: Q,
) -> Iterator[tuple[tuple[tuple[int, ...], ...], Q]]:
    """Charge configurations (per-color charge lists) whose minimal total
    energy fits the budget, generated through dual-charge rows.

    Rows are componentwise nonincreasing; each row costs half its Gram norm,
    plus the initial-condition shift at color j for Standard rows past k0.
    Positive definiteness makes every nonzero row cost > 0, so the search
    terminates even with no charge cap.
    """
    l = datum.l
    j = datum.j_node - 1
    mu_j = datum.mu[j]

    # Entry bound: lam * r_i^2 <= r^T G r <= 2 * budget for admitted rows.
    lam = _row_floor(datum)
    entry_cap = isqrt(max(0, int(2 * budget / lam))) + 1
    candidates = []
    for row in itertools.product(range(entry_cap + 1), repeat=l):
        if any(row):
            cost = Q(
                sum(
                    row[i] * datum.gram0[i][r] * row[r]
                    for i in range(l)
                    for r in range(l)
                )
            ) / 2
            if cost <= budget:
                candidates.append((row, cost))
    candidates.sort()

    def shift_for_row(t: int, row: Sequence[int]) -> Q:
        if kind == KIND_VERMA:
            return Q(0)
        return mu_j * row[j] if t > w.k0 else Q(0)

    def rows_to_config(rows: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
        config = []
        for i in range(l):
            height = rows[0][i] if rows else 0
            charges = tuple(
                sum(1 for row in rows if row[i] >= p) for p in range(1, height + 1)
            )
            config.append(charges)
        return tuple(config)

    def dfs(
        rows: list[tuple[int, ...]], spent: Q
    ) -> Iterator[tuple[tuple[tuple[int, ...], ...], Q]]:
        yield rows_to_config(rows), spent
        t = len(rows) + 1
        if charge_cap is not None and t > charge_cap:
            return
        prev = rows[-1] if rows else None
        for row, cost in candidates:
            if prev is not None and any(a > b for a, b in zip(row, prev)):
                continue
            total = spent + cost + shift_for_row(t, row)
            if total <= budget:
                rows.append(row)
                yield from dfs(rows, total)
                rows.pop()

    yield from dfs([], Q(0))


def _row_floor(datum: TwistedRootDatum) -> Q:
    """Positive lower bound on v^T G v over nonzero integer vectors."""
    return _min_eigenvalue_bound(datum.gram0)


def iter_energy_configs(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    kind: str,
    charges: Sequence[Sequence[int]],
    energy_budget: Q,
) -> Iterator[QPMonomial]:
    """All admissible monomials with the given per-color charge lists and
    total energy at most energy_budget."""
    l = datum.l
    slots: list[tuple[int, int, int]] = []  # (color, position, charge)
    for i in range(1, l + 1):
        for p, n in enumerate(charges[i - 1], start=1):
            slots.append((i, p, n))

    bounds = [
        _mode_bound(
            datum, w, kind, i, p, n, charges[i - 2] if i >= 2 else []
        )
        for (i, p, n) in slots
    ]
    # Minimal possible energy of the remaining slots: sum of -bound.
    suffix_min = [Q(0)] * (len(slots) + 1)
    for idx in range(len(slots) - 1, -1, -1):
        suffix_min[idx] = suffix_min[idx + 1] - bounds[idx]

    modes: list[Q] = [Q(0)] * len(slots)

    def dfs(idx: int, spent: Q) -> Iterator[QPMonomial]:
        if idx == len(slots):
            parts = []
            cursor = 0
            for i in range(1, l + 1):
                count = len(charges[i - 1])
                parts.append(
                    tuple(
                        (charges[i - 1][p], modes[cursor + p])
                        for p in range(count)
                    )
                )
                cursor += count
            yield QPMonomial(parts=tuple(parts))
            return
        i, p, n = slots[idx]
        mu_i = datum.mu[i - 1]
        ub = bounds[idx]
        if p >= 2 and charges[i - 1][p - 2] == n:
            ub = min(ub, modes[idx - 1] - 2 * mu_i * n)
        # Energy floor: spending more than the remaining budget cannot work.
        floor = -(energy_budget - spent - suffix_min[idx + 1])
        m = ub
        while m >= floor:
            modes[idx] = m
            yield from dfs(idx + 1, spent - m)
            m -= mu_i
        return

    yield from dfs(0, Q(0))


def enumerate_basis(
    datum: TwistedRootDatum,
    w: RectangularWeight,
    kind: str,
    charge_cap: int | None,
    qmax: Q,
) -> Iterator[QPMonomial]:
    """All admissible monomials of total energy at most qmax, in a
    deterministic order (energy, then canonical part tuples)."""
    if qmax < 0:
        return iter(())
    collected: list[tuple[Q, tuple[ColorPart, ...], QPMonomial]] = []
    for charges, _min_energy in _iter_dual_row_configs(
        datum, w, kind, charge_cap, Q(qmax)
    ):
        for mono in iter_energy_configs(datum, w, kind, charges, Q(qmax)):
            energy = -sum((m for part in mono.parts for _, m in part), start=Q(0))
            collected.append((energy, mono.parts, mono))
    collected.sort(key=lambda item: (item[0], item[1]))
    return iter([mono for _, _, mono in collected])


def tally(
    stream: Iterable[QPMonomial],
    weight: Callable[[QPMonomial], tuple[Q, Sequence[Q | int], int]],
    l: int,
    qmax: Q,
    denom: int = 2,
) -> GradedSeries:
    """Fold a monomial stream into a series via a weight function."""
    qmax = Q(qmax)
    terms: dict[tuple[Q, tuple[Q, ...]], int] = {}
    for mono in stream:
        qexp, yexp, coeff = weight(mono)
        qexp = Q(qexp)
        if coeff == 0 or qexp > qmax:
            continue
        key = (qexp, tuple(Q(v) for v in yexp))
        total = terms.get(key, 0) + coeff
        if total:
            terms[key] = total
        else:
            del terms[key]
    return GradedSeries(l, qmax, denom, terms)


def energy_color_weight(
    mono: QPMonomial,
) -> tuple[Q, tuple[int, ...], int]:
    """Weight by (total energy, per-color total charge)."""
    data = charge_data(mono)
    return data.total_energy, data.y_degrees, 1
