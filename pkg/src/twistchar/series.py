"""Exact sparse truncated series in q with color variables y_1..y_l.

Terms are keyed by (q-exponent, y-exponent vector), both exact rationals,
with arbitrary-precision integer coefficients.  A series carries an upper
truncation threshold qmax (closed: terms at exactly qmax are kept) and a
declared common denominator for q-exponents; inserting an exponent outside
that lattice is a bug and raises immediately.  Negative q-exponents are
allowed (linear shifts can dip below zero before a sum rebalances them);
only the upper end is truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from math import lcm
from typing import Iterable, Sequence

TermKey = tuple[Q, tuple[Q, ...]]


class SeriesMismatchError(ValueError):
    """Raised when two series disagree on color count or truncation."""


class DenominatorError(ValueError):
    """Raised when a q-exponent leaves the declared denominator lattice."""


class NonconvergentProductError(ValueError):
    """Raised for an infinite product whose base exponent is not positive."""


class InsufficientPrecisionError(ValueError):
    """Raised when a comparison order exceeds a series truncation."""


def _as_yexp(yexp: Sequence[Q | int]) -> tuple[Q, ...]:
    return tuple(Q(v) for v in yexp)


class GradedSeries:
    """Immutable truncated series; use the module constructors and the
    arithmetic methods, which always return new instances."""

    __slots__ = ("l", "qmax", "denom", "_terms")

    def __init__(self, l: int, qmax: Q, denom: int, terms: dict[TermKey, int]):
        self.l = l
        self.qmax = Q(qmax)
        self.denom = denom
        for (qexp, yexp), coeff in terms.items():
            if coeff == 0 or qexp > self.qmax:
                raise ValueError("constructor requires pre-normalized terms")
            if denom % qexp.denominator != 0:
                raise DenominatorError(
                    f"exponent {qexp} outside the 1/{denom} lattice"
                )
            if len(yexp) != l:
                raise SeriesMismatchError("y-exponent length mismatch")
        self._terms = terms

    # -- inspection ---------------------------------------------------------

    def terms_sorted(self) -> list[tuple[Q, tuple[Q, ...], int]]:
        """Terms in canonical order: ascending q-exponent, then lex y."""
        return [
            (qexp, yexp, self._terms[(qexp, yexp)])
            for qexp, yexp in sorted(self._terms)
        ]

    def coefficient(self, qexp: Q, yexp: Sequence[Q | int]) -> int:
        return self._terms.get((Q(qexp), _as_yexp(yexp)), 0)

    def coefficient_sum_at(self, qexp: Q) -> int:
        """Sum of coefficients over all y-exponents at one q-exponent."""
        qexp = Q(qexp)
        return sum(c for (q, _), c in self._terms.items() if q == qexp)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.l == other.l
            and self.qmax == other.qmax
            and self._terms == other._terms
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self.l, self.qmax, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        parts = []
        for qexp, yexp, coeff in self.terms_sorted()[:8]:
            ys = "".join(
                f"*y{i + 1}^{e}" for i, e in enumerate(yexp) if e != 0
            )
            parts.append(f"{coeff}*q^{qexp}{ys}")
        tail = " + ..." if self.num_terms() > 8 else ""
        body = " + ".join(parts) if parts else "0"
        return f"<GradedSeries l={self.l} qmax={self.qmax} {body}{tail}>"

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: GradedSeries) -> None:
        if self.l != other.l:
            raise SeriesMismatchError(
                f"color count mismatch: {self.l} vs {other.l}"
            )
        if self.qmax != other.qmax:
            raise SeriesMismatchError(
                f"truncation mismatch: {self.qmax} vs {other.qmax}"
            )

    def add(self, other: GradedSeries) -> GradedSeries:
        self._check_compatible(other)
        denom = lcm(self.denom, other.denom)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            total = terms.get(key, 0) + coeff
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return GradedSeries(self.l, self.qmax, denom, terms)

    def negate(self) -> GradedSeries:
        return self.scale(-1)

    def scale(self, factor: int) -> GradedSeries:
        if factor == 0:
            return GradedSeries(self.l, self.qmax, self.denom, {})
        terms = {key: factor * coeff for key, coeff in self._terms.items()}
        return GradedSeries(self.l, self.qmax, self.denom, terms)

    def mul(self, other: GradedSeries) -> GradedSeries:
        self._check_compatible(other)
        denom = lcm(self.denom, other.denom)
        terms: dict[TermKey, int] = {}
        small, big = self._terms, other._terms
        if len(big) < len(small):
            small, big = big, small
        for (qa, ya), ca in small.items():
            for (qb, yb), cb in big.items():
                qexp = qa + qb
                if qexp > self.qmax:
                    continue
                key = (qexp, tuple(a + b for a, b in zip(ya, yb)))
                total = terms.get(key, 0) + ca * cb
                if total:
                    terms[key] = total
                else:
                    del terms[key]
        return GradedSeries(self.l, self.qmax, denom, terms)

    def shift(
        self,
        qdelta: Q,
        ydelta: Sequence[Q | int] | None = None,
        qmax: Q | None = None,
        denom: int | None = None,
    ) -> GradedSeries:
        """Multiply by the monomial q^qdelta * y^ydelta, optionally
        retruncating to a new qmax (terms above it are dropped)."""
        qdelta = Q(qdelta)
        ydelta = _as_yexp(ydelta) if ydelta is not None else (Q(0),) * self.l
        new_qmax = self.qmax if qmax is None else Q(qmax)
        new_denom = lcm(self.denom, qdelta.denominator, denom or 1)
        terms: dict[TermKey, int] = {}
        for (qexp, yexp), coeff in self._terms.items():
            q = qexp + qdelta
            if q > new_qmax:
                continue
            terms[(q, tuple(a + b for a, b in zip(yexp, ydelta)))] = coeff
        return GradedSeries(self.l, new_qmax, new_denom, terms)

    def truncate(self, qmax: Q) -> GradedSeries:
        qmax = Q(qmax)
        if qmax > self.qmax:
            raise InsufficientPrecisionError(
                f"cannot extend truncation {self.qmax} to {qmax}"
            )
        terms = {k: c for k, c in self._terms.items() if k[0] <= qmax}
        return GradedSeries(self.l, qmax, self.denom, terms)


def zero(l: int, qmax: Q, denom: int = 1) -> GradedSeries:
    return GradedSeries(l, Q(qmax), denom, {})


def one(l: int, qmax: Q, denom: int = 1) -> GradedSeries:
    return monomial(Q(0), (0,) * l, 1, qmax, denom=denom)


def monomial(
    qexp: Q,
    yexp: Sequence[Q | int],
    coeff: int,
    qmax: Q,
    denom: int | None = None,
) -> GradedSeries:
    """Single-term series; empty when the coefficient vanishes or the
    exponent lies beyond the truncation."""
    qexp = Q(qexp)
    qmax = Q(qmax)
    denom = lcm(denom or 1, qexp.denominator)
    if coeff == 0 or qexp > qmax:
        return GradedSeries(len(yexp), qmax, denom, {})
    return GradedSeries(len(yexp), qmax, denom, {(qexp, _as_yexp(yexp)): coeff})


def partitions_bounded_count(total: int, max_parts: int) -> int:
    """Number of partitions of `total` with at most `max_parts` parts."""
    if total < 0:
        return 0
    table = [1] + [0] * total
    for part in range(1, max_parts + 1):
        for s in range(part, total + 1):
            table[s] += table[s - part]
    return table[total]


def inv_pochhammer_finite(
    step: Q, r: int, qmax: Q, l: int = 0, denom: int | None = None
) -> GradedSeries:
    """Expansion of 1 / (q^step; q^step)_r: partitions with at most r parts
    counted on the step-lattice.  y-exponents are all zero."""
    step = Q(step)
    qmax = Q(qmax)
    if step <= 0:
        raise ValueError("step must be positive")
    if r < 0:
        raise ValueError("r must be nonnegative")
    denom = lcm(denom or 1, step.denominator)
    smax = int(qmax / step) if qmax >= 0 else -1
    yzero = (Q(0),) * l
    terms: dict[TermKey, int] = {}
    if smax >= 0:
        table = [1] + [0] * smax
        for part in range(1, r + 1):
            for s in range(part, smax + 1):
                table[s] += table[s - part]
        for s in range(smax + 1):
            if table[s]:
                terms[(step * s, yzero)] = table[s]
    return GradedSeries(l, qmax, denom, terms)


def inv_pochhammer_infinite(
    base_q: Q,
    base_y: Sequence[Q | int],
    step: Q,
    qmax: Q,
    denom: int | None = None,
) -> GradedSeries:
    """Expansion of prod_{i>=1} (1 - q^{base_q+(i-1)step} y^{base_y})^{-1}."""
    base_q = Q(base_q)
    step = Q(step)
    qmax = Q(qmax)
    if base_q <= 0:
        raise NonconvergentProductError("base exponent must be positive")
    if step <= 0:
        raise ValueError("step must be positive")
    l = len(base_y)
    denom = lcm(denom or 1, base_q.denominator, step.denominator)
    result = one(l, qmax, denom)
    exponent = base_q
    yvec = _as_yexp(base_y)
    while exponent <= qmax:
        geo_terms: dict[TermKey, int] = {}
        m = 0
        while m * exponent <= qmax:
            geo_terms[(m * exponent, tuple(m * v for v in yvec))] = 1
            m += 1
        result = result.mul(GradedSeries(l, qmax, denom, geo_terms))
        exponent += step
    return result


def sum_series(parts: Iterable[GradedSeries], l: int, qmax: Q, denom: int = 1) -> GradedSeries:
    """Sum many series of identical shape in one pass."""
    qmax = Q(qmax)
    terms: dict[TermKey, int] = {}
    for part in parts:
        if part.l != l or part.qmax != qmax:
            raise SeriesMismatchError("shape mismatch in summation")
        denom = lcm(denom, part.denom)
        for key, coeff in part._terms.items():
            total = terms.get(key, 0) + coeff
            if total:
                terms[key] = total
            else:
                del terms[key]
    return GradedSeries(l, qmax, denom, terms)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: tuple[Q, tuple[Q, ...], int, int] | None
    terms_compared: int


def compare_to_order(a: GradedSeries, b: GradedSeries, qbound: Q) -> Comparison:
    """Coefficientwise comparison for q-exponents up to and including qbound.

    Never compares past either truncation: that raises instead of silently
    passing.  The witness is the lexicographically first mismatch in
    (q-exponent, y-exponent) order.
    """
    qbound = Q(qbound)
    if qbound > a.qmax or qbound > b.qmax:
        raise InsufficientPrecisionError(
            f"comparison to order {qbound} exceeds truncation "
            f"min({a.qmax}, {b.qmax})"
        )
    if a.l != b.l:
        raise SeriesMismatchError("color count mismatch")
    keys = {k for k in a._terms if k[0] <= qbound}
    keys.update(k for k in b._terms if k[0] <= qbound)
    witness = None
    for key in sorted(keys):
        ca = a._terms.get(key, 0)
        cb = b._terms.get(key, 0)
        if ca != cb:
            witness = (key[0], key[1], ca, cb)
            break
    return Comparison(witness is None, witness, len(keys))


def equal_to_order(
    a: GradedSeries, b: GradedSeries, qbound: Q
) -> tuple[bool, tuple[Q, tuple[Q, ...], int, int] | None]:
    cmp = compare_to_order(a, b, qbound)
    return cmp.equal, cmp.witness
