"""Graded-series kernel: arithmetic, Pochhammer expansions, comparison.

Partition-counting expectations come from the explicit enumerator below,
which lists partitions one by one; the library uses a DP table, so the two
routes are independent.
"""

from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

import twistchar.series as gs


def enumerate_partitions(total, max_part=None):
    """Yield every partition of `total` as a nonincreasing tuple."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in enumerate_partitions(total - first, first):
            yield (first,) + rest


def count_partitions_at_most_parts(total, parts):
    return sum(1 for p in enumerate_partitions(total) if len(p) <= parts)


def test_monomial_examples():
    s = gs.monomial(Q(0), (0, 0), 1, Q(5))
    assert s.terms_sorted() == [(Q(0), (Q(0), Q(0)), 1)]
    s = gs.monomial(Q(1, 2), (1, 0), 1, Q(5))
    assert s.coefficient(Q(1, 2), (1, 0)) == 1
    assert gs.monomial(Q(6), (0, 0), 1, Q(5)).is_zero()
    assert gs.monomial(Q(1), (0, 0), 0, Q(5)).is_zero()


def test_add_mul_examples():
    one = gs.one(1, Q(1), 2)
    a = one.add(gs.monomial(Q(1, 2), (1,), 1, Q(1), denom=2))
    sq = a.mul(a)
    assert sq.terms_sorted() == [
        (Q(0), (Q(0),), 1),
        (Q(1, 2), (Q(1),), 2),
        (Q(1), (Q(2),), 1),
    ]
    assert a.add(a.negate()).is_zero()
    assert a.mul(gs.one(1, Q(1))).terms_sorted() == a.terms_sorted()


def test_mismatch_errors():
    a = gs.one(1, Q(1))
    b = gs.one(1, Q(2))
    c = gs.one(2, Q(1))
    with pytest.raises(gs.SeriesMismatchError):
        a.add(b)
    with pytest.raises(gs.SeriesMismatchError):
        a.mul(b)
    with pytest.raises(gs.SeriesMismatchError):
        a.add(c)


def test_denominator_lattice_enforced():
    with pytest.raises(gs.DenominatorError):
        gs.GradedSeries(1, Q(2), 2, {(Q(1, 3), (Q(0),)): 1})


def test_inv_pochhammer_finite_examples():
    s = gs.inv_pochhammer_finite(Q(1), 2, Q(4))
    assert [(q, c) for q, _, c in s.terms_sorted()] == [
        (Q(0), 1),
        (Q(1), 1),
        (Q(2), 2),
        (Q(3), 2),
        (Q(4), 3),
    ]
    s = gs.inv_pochhammer_finite(Q(1, 2), 1, Q(1))
    assert [(q, c) for q, _, c in s.terms_sorted()] == [
        (Q(0), 1),
        (Q(1, 2), 1),
        (Q(1), 1),
    ]
    s = gs.inv_pochhammer_finite(Q(1), 0, Q(9))
    assert [(q, c) for q, _, c in s.terms_sorted()] == [(Q(0), 1)]


def test_inv_pochhammer_finite_against_enumeration():
    for r in range(0, 5):
        s = gs.inv_pochhammer_finite(Q(1), r, Q(12))
        for n in range(0, 13):
            assert s.coefficient(Q(n), ()) == count_partitions_at_most_parts(n, r)


def test_inv_pochhammer_infinite_examples():
    s = gs.inv_pochhammer_infinite(Q(1), (), Q(1), Q(4))
    assert [(q, c) for q, _, c in s.terms_sorted()] == [
        (Q(0), 1),
        (Q(1), 1),
        (Q(2), 2),
        (Q(3), 3),
        (Q(4), 5),
    ]
    s = gs.inv_pochhammer_infinite(Q(1), (1,), Q(1), Q(3))
    # Partitions of 3 into exactly 2 parts: {2+1}.
    assert s.coefficient(Q(3), (2,)) == 1
    s = gs.inv_pochhammer_infinite(Q(1, 2), (1,), Q(1, 2), Q(1))
    assert [(q, tuple(y), c) for q, y, c in s.terms_sorted()] == [
        (Q(0), (Q(0),), 1),
        (Q(1, 2), (Q(1),), 1),
        (Q(1), (Q(1),), 1),
        (Q(1), (Q(2),), 1),
    ]


def test_inv_pochhammer_infinite_requires_positive_base():
    with pytest.raises(gs.NonconvergentProductError):
        gs.inv_pochhammer_infinite(Q(0), (), Q(1), Q(2))


def test_euler_product_cancels():
    # inv product times the finite product of its factors is 1 up to c*N.
    c = Q(1, 2)
    n_factors = 5
    qmax = c * n_factors
    inv = gs.inv_pochhammer_infinite(c, (1,), c, qmax)
    finite = gs.one(1, qmax, 2)
    for i in range(1, n_factors + 1):
        factor = gs.one(1, qmax, 2).add(
            gs.monomial(c * i, (1,), -1, qmax, denom=2)
        )
        finite = finite.mul(factor)
    product = inv.mul(finite)
    ok, witness = gs.equal_to_order(product, gs.one(1, qmax, 2), qmax)
    assert ok, witness


def test_finite_stabilizes_to_infinite():
    qmax = Q(5)
    infinite = gs.inv_pochhammer_infinite(Q(1, 2), (), Q(1, 2), qmax)
    stable = gs.inv_pochhammer_finite(Q(1, 2), 11, qmax)
    assert gs.equal_to_order(stable, infinite, qmax)[0]
    # One part short of the threshold must differ.
    off = gs.inv_pochhammer_finite(Q(1, 2), 9, qmax)
    assert not gs.equal_to_order(off, infinite, qmax)[0]


def test_pochhammer_coefficients_nonnegative():
    for step in (Q(1), Q(1, 2)):
        s = gs.inv_pochhammer_finite(step, 4, Q(6))
        assert all(c > 0 for _, _, c in s.terms_sorted())
        s = gs.inv_pochhammer_infinite(step, (2,), step, Q(4))
        assert all(c > 0 for _, _, c in s.terms_sorted())


def _random_series(rng, l, qmax, denom=2, size=5):
    terms = gs.zero(l, qmax, denom)
    for _ in range(size):
        qexp = Q(rng.randint(0, int(qmax * 2)), 2)
        yexp = tuple(rng.randint(-2, 2) for _ in range(l))
        coeff = rng.randint(-3, 3)
        terms = terms.add(gs.monomial(qexp, yexp, coeff, qmax, denom=denom))
    return terms


def test_ring_axioms_random():
    rng = random.Random(11)
    qmax = Q(3)
    for _ in range(40):
        a = _random_series(rng, 2, qmax)
        b = _random_series(rng, 2, qmax)
        c = _random_series(rng, 2, qmax)
        assert a.add(b) == b.add(a)
        assert a.add(b).add(c) == a.add(b.add(c))
        assert a.mul(b) == b.mul(a)
        assert a.mul(b).mul(c) == a.mul(b.mul(c))
        assert a.mul(b.add(c)) == a.mul(b).add(a.mul(c))


def test_coefficient_examples():
    s = gs.one(0, Q(2)).add(gs.monomial(Q(1), (), 1, Q(2)))
    assert s.coefficient(Q(1), ()) == 1
    assert s.coefficient(Q(2), ()) == 0
    assert gs.inv_pochhammer_finite(Q(1), 2, Q(4)).coefficient(Q(4), ()) == 3


def test_equal_to_order():
    s = gs.one(0, Q(2)).add(gs.monomial(Q(1), (), 1, Q(2)))
    assert gs.equal_to_order(s, s, Q(2)) == (True, None)
    t = gs.one(0, Q(2)).add(gs.monomial(Q(1), (), 2, Q(2)))
    ok, witness = gs.equal_to_order(s, t, Q(1))
    assert not ok
    assert witness == (Q(1), (), 1, 2)
    with pytest.raises(gs.InsufficientPrecisionError):
        gs.equal_to_order(s, t, Q(3))


def test_equal_to_order_ignores_tail():
    # Tails beyond the bound are not inspected.
    a = gs.one(0, Q(2)).add(gs.monomial(Q(2), (), 5, Q(2)))
    b = gs.one(0, Q(2)).add(gs.monomial(Q(2), (), 7, Q(2)))
    assert gs.equal_to_order(a, b, Q(1))[0]
    assert not gs.equal_to_order(a, b, Q(2))[0]


def test_witness_is_lex_first():
    qmax = Q(2)
    a = gs.monomial(Q(1), (0, 1), 1, qmax).add(gs.monomial(Q(1), (1, 0), 1, qmax))
    b = gs.monomial(Q(1), (0, 1), 2, qmax).add(gs.monomial(Q(1), (1, 0), 3, qmax))
    _, witness = gs.equal_to_order(a, b, qmax)
    assert witness == (Q(1), (Q(0), Q(1)), 1, 2)


def test_shift_and_truncate():
    s = gs.inv_pochhammer_finite(Q(1), 2, Q(3))
    shifted = s.shift(Q(1, 2), None, qmax=Q(2), denom=2)
    assert shifted.coefficient(Q(3, 2), ()) == 1
    assert shifted.qmax == Q(2)
    with pytest.raises(gs.InsufficientPrecisionError):
        s.truncate(Q(4))
    assert s.truncate(Q(1)).num_terms() == 2
