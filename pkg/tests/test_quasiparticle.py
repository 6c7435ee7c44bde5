"""Monomial combinatorics: conjugation, bounds, admissibility, enumeration.

The enumeration oracle below builds monomials from a raw grid of charges
and modes and filters with satisfies_conditions, fully independently of
the production search; a box-soundness assertion guarantees the grid is
wide enough before sets are compared.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction as Q

import pytest

import twistchar.quasiparticle as qp
from twistchar.rootdata import RectangularWeight, build_datum


def test_conjugate_examples():
    assert qp.conjugate((3, 1)) == (2, 1, 1)
    assert qp.conjugate(()) == ()
    assert qp.conjugate((2, 2, 1)) == (3, 2)
    with pytest.raises(qp.NonCanonicalError):
        qp.conjugate((1, 2))


def test_conjugate_involution_small_sweep():
    # The exhaustive sweep required by the acceptance suite lives there;
    # this is a spot check on everything of weight at most 12.
    def partitions(total, max_part):
        if total == 0:
            yield ()
            return
        for first in range(min(total, max_part), 0, -1):
            for rest in partitions(total - first, first):
                yield (first,) + rest

    for n in range(0, 13):
        for p in partitions(n, n if n else 1):
            assert qp.conjugate(qp.conjugate(p)) == p
            assert sum(qp.conjugate(p)) == sum(p)


def test_minsum_examples():
    dA2 = build_datum("A", 2)
    dA3 = build_datum("A", 3)
    assert qp.minsum_quadratic(dA2, ((1,), (1,))) == Q(1, 2)
    assert qp.minsum_quadratic(dA2, ((), ())) == 0
    assert qp.minsum_quadratic(dA3, ((1,), (1,), (1,))) == Q(1, 2)


def test_minsum_dual_row_identity_random():
    rng = random.Random(13)
    data = [build_datum("A", 2), build_datum("D", 2), build_datum("A", 3)]
    for trial in range(120):
        datum = data[trial % 3]
        P = [
            tuple(rng.randint(0, 4) for _ in range(rng.randint(0, 5)))
            for _ in range(datum.l)
        ]
        assert qp.minsum_quadratic(datum, P) == qp.minsum_via_dual_rows(datum, P)


def test_min_sum_conjugate_square_example():
    # Two charge-1 and one charge-2 quasi-particle: sum min = 10 = 3^2 + 1^2.
    P = (2, 1)
    direct = sum(
        min(m, n) * P[m - 1] * P[n - 1]
        for m in range(1, 3)
        for n in range(1, 3)
    )
    assert direct == 10 == 3 * 3 + 1 * 1


def test_difference_bound_examples():
    dA2 = build_datum("A", 2)
    mono = qp.QPMonomial((((1, Q(-1, 2)),), ()))
    assert qp.difference_bound(
        dA2, RectangularWeight(1, 0), qp.KIND_STANDARD, mono, 1, 1
    ) == Q(-1, 2)
    assert qp.difference_bound(
        dA2, RectangularWeight(0, 1), qp.KIND_STANDARD, mono, 1, 1
    ) == Q(-1)
    assert qp.difference_bound(
        dA2, RectangularWeight(0, 1), qp.KIND_VERMA, mono, 1, 1
    ) == Q(-1, 2)
    with pytest.raises(IndexError):
        qp.difference_bound(dA2, RectangularWeight(1, 0), qp.KIND_STANDARD, mono, 1, 2)


def test_satisfies_conditions_examples():
    dA2 = build_datum("A", 2)
    w0 = RectangularWeight(1, 0)
    w1 = RectangularWeight(0, 1)
    single = qp.QPMonomial((((1, Q(-1, 2)),), ()))
    assert qp.satisfies_conditions(dA2, w0, qp.KIND_STANDARD, 1, single)
    assert not qp.satisfies_conditions(dA2, w1, qp.KIND_STANDARD, 1, single)
    tight = qp.QPMonomial((((1, Q(-1, 2)), (1, Q(-1))), ()))
    good = qp.QPMonomial((((1, Q(-1, 2)), (1, Q(-3, 2))), ()))
    assert not qp.satisfies_conditions(dA2, w0, qp.KIND_STANDARD, 1, tight)
    assert qp.satisfies_conditions(dA2, w0, qp.KIND_STANDARD, 1, good)
    capped = qp.QPMonomial((((2, Q(-2)),), ()))
    assert not qp.satisfies_conditions(dA2, w0, qp.KIND_STANDARD, 1, capped)
    assert qp.satisfies_conditions(dA2, w0, qp.KIND_VERMA, None, capped)


def test_charge_data():
    mono = qp.QPMonomial((((2, Q(-1)), (1, Q(-3, 2))), ((1, Q(0)),)))
    data = qp.charge_data(mono)
    assert data.charge_type == ((2, 1), (1,))
    assert data.dual_charge_type == ((2, 1), (1,))
    assert data.color_type == (2, 1)
    assert data.y_degrees == (3, 1)
    assert data.p_vectors == ((1, 1), (1,))
    assert data.total_energy == Q(5, 2)


def _oracle_monomials(datum, w, kind, cap, qmax, max_count, mode_lo, mode_hi):
    """Independent enumeration from a raw grid, filtered by the public
    admissibility predicate."""
    per_color_options = []
    for i in range(1, datum.l + 1):
        mu = datum.mu[i - 1]
        modes = []
        m = Q(mode_lo)
        while m <= mode_hi:
            if (m / mu).denominator == 1:
                modes.append(m)
            m += Q(1, 2)
        options = [()]
        pairs = [
            (n, m) for n in range(1, (cap or 3) + 1) for m in modes
        ]
        for count in range(1, max_count + 1):
            for combo in itertools.combinations_with_replacement(pairs, count):
                ordered = tuple(
                    sorted(combo, key=lambda nm: (-nm[0], -nm[1]))
                )
                options.append(ordered)
        per_color_options.append(sorted(set(options)))
    out = set()
    for parts in itertools.product(*per_color_options):
        mono = qp.QPMonomial(tuple(parts))
        if not qp.is_canonical(datum, mono):
            continue
        energy = qp.charge_data(mono).total_energy
        if energy > qmax:
            continue
        if qp.satisfies_conditions(datum, w, kind, cap, mono):
            out.add(mono.parts)
    return out


@pytest.mark.parametrize(
    "series,k0,kj,qmax",
    [("A", 1, 0, Q(3, 2)), ("A", 0, 1, Q(3, 2)), ("D", 1, 0, Q(3, 2)), ("D", 0, 1, Q(1))],
)
def test_enumerate_matches_bruteforce(series, k0, kj, qmax):
    datum = build_datum(series, 2)
    w = RectangularWeight(k0, kj)
    got = {m.parts for m in qp.enumerate_basis(datum, w, qp.KIND_STANDARD, w.k, qmax)}
    # Box soundness: production output must sit strictly inside the grid.
    for parts in got:
        for part in parts:
            for n, m in part:
                assert -3 < m < 3
            assert len(part) <= 2
    oracle = _oracle_monomials(
        datum, w, qp.KIND_STANDARD, w.k, qmax, max_count=2, mode_lo=-3, mode_hi=3
    )
    assert got == oracle


def test_enumerate_worked_examples():
    dA2 = build_datum("A", 2)
    w0 = RectangularWeight(1, 0)
    monos = list(qp.enumerate_basis(dA2, w0, qp.KIND_STANDARD, 1, Q(1, 2)))
    assert [m.parts for m in monos] == [
        ((), ()),
        (((1, Q(-1, 2)),), ()),
        (((1, Q(-1, 2)),), ((1, Q(0)),)),
    ]
    assert [m.parts for m in qp.enumerate_basis(dA2, w0, qp.KIND_STANDARD, 1, Q(0))] == [
        ((), ())
    ]
    # Oracle-derived count at energy exactly 1, including the grid with
    # two color-1 and one color-2 quasi-particles (a positive-mode member).
    at_one = [
        m
        for m in qp.enumerate_basis(dA2, w0, qp.KIND_STANDARD, 1, Q(1))
        if qp.charge_data(m).total_energy == 1
    ]
    assert len(at_one) == 4


def test_enumerate_monotone_in_qmax():
    datum = build_datum("D", 2)
    w = RectangularWeight(1, 1)
    small = {m.parts for m in qp.enumerate_basis(datum, w, qp.KIND_STANDARD, 2, Q(1))}
    large = {m.parts for m in qp.enumerate_basis(datum, w, qp.KIND_STANDARD, 2, Q(2))}
    assert small <= large


def test_enumerated_monomials_selfcheck():
    datum = build_datum("A", 2)
    w = RectangularWeight(1, 1)
    for mono in qp.enumerate_basis(datum, w, qp.KIND_STANDARD, 2, Q(2)):
        assert qp.is_canonical(datum, mono)
        assert qp.satisfies_conditions(datum, w, qp.KIND_STANDARD, 2, mono)
        for i in range(1, datum.l + 1):
            mu = datum.mu[i - 1]
            for p, (n, m) in enumerate(mono.parts[i - 1], start=1):
                assert (m / mu).denominator == 1
                assert m <= qp.difference_bound(
                    datum, w, qp.KIND_STANDARD, mono, i, p
                )


def test_tally_examples():
    dA2 = build_datum("A", 2)
    w0 = RectangularWeight(1, 0)
    empty = qp.tally(iter(()), qp.energy_color_weight, 2, Q(2))
    assert empty.is_zero()
    single = qp.tally(
        iter([qp.QPMonomial(((), ()))]), qp.energy_color_weight, 2, Q(2)
    )
    assert single.terms_sorted() == [(Q(0), (Q(0), Q(0)), 1)]
    stream = qp.enumerate_basis(dA2, w0, qp.KIND_STANDARD, 1, Q(1, 2))
    series = qp.tally(stream, qp.energy_color_weight, 2, Q(1, 2))
    assert series.terms_sorted() == [
        (Q(0), (Q(0), Q(0)), 1),
        (Q(1, 2), (Q(1), Q(0)), 1),
        (Q(1, 2), (Q(1), Q(1)), 1),
    ]
