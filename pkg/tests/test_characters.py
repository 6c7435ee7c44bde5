"""Closed-form characters: frozen coefficients, structural identities,
and agreement between the formula and enumeration methods.
"""

from __future__ import annotations

from fractions import Fraction as Q

import pytest

import twistchar.characters as ch
import twistchar.quasiparticle as qp
import twistchar.series as gs
from twistchar.displays import DISPLAY_NAMES, display_example
from twistchar.rootdata import RectangularWeight, build_datum


@pytest.fixture(scope="module")
def dA2():
    return build_datum("A", 2)


@pytest.fixture(scope="module")
def dD2():
    return build_datum("D", 2)


def test_principal_standard_examples(dA2):
    w0 = RectangularWeight(1, 0)
    w1 = RectangularWeight(0, 1)
    s0 = ch.ch_principal_standard(dA2, w0, Q(2))
    assert s0.coefficient(Q(1, 2), (1, 0)) == 1
    assert s0.coefficient(Q(0), (0, 0)) == 1
    s1 = ch.ch_principal_standard(dA2, w1, Q(2))
    assert s1.coefficient(Q(1, 2), (1, 0)) == 0
    assert s1.coefficient(Q(1), (1, 0)) == 1


def test_weight_shift_vanishes_without_kj(dA2):
    # With kj = 0 the shift sum is empty for every admissible grid.
    w = RectangularWeight(2, 0)
    for P, quad, ptilde in ch._iter_p_grids(dA2, w, w.k, Q(4)):
        assert ptilde == 0


def test_principal_verma_examples(dA2):
    s = ch.ch_principal_verma(dA2, Q(2))
    assert s.coefficient(Q(1, 2), (1, 0)) == 1
    assert s.coefficient(Q(1), (2, 0)) == 1
    assert s.coefficient(Q(0), (0, 0)) == 1


def test_product_side_examples(dA2, dD2):
    s = ch.ch_product_side(dA2, Q(2))
    assert s.coefficient(Q(1, 2), (1, 0)) == 1
    # Factor table read off the orbit projections: lightest appearances.
    assert s.coefficient(Q(1, 2), (1, 1)) == 1
    assert s.coefficient(Q(1), (0, 1)) == 1
    # One from the (2,1)-orbit factor, one from the product of the two
    # halfnorm-1/2 factors.
    assert s.coefficient(Q(1), (2, 1)) == 2
    t = ch.ch_product_side(dD2, Q(2))
    assert t.coefficient(Q(1), (1, 0)) == 1
    assert t.coefficient(Q(1, 2), (0, 1)) == 1
    assert t.coefficient(Q(1, 2), (1, 1)) == 1
    assert t.coefficient(Q(1), (1, 2)) == 2


def test_product_all_roots_doubles_two_element_orbits(dA2):
    s = ch.ch_product_side(dA2, Q(1), all_roots=True)
    assert s.coefficient(Q(1, 2), (1, 0)) == 2


def test_standard_module_oracle_values(dA2):
    # Oracle: direct expansion of the level-one formula.  The q^(1/2)
    # layer holds the oscillator term and the four Gram-norm-1 lattice
    # points, (1,0), (1,1) and their negatives.
    w0 = RectangularWeight(1, 0)
    s = ch.ch_standard_module(dA2, w0, Q(1))
    assert s.coefficient(Q(0), (0, 0)) == 1
    assert s.coefficient_sum_at(Q(1, 2)) == 5
    v = ch.ch_vacuum(dA2, w0, Q(1))
    assert v.coefficient_sum_at(Q(1, 2)) == 4


def test_standard_equals_heisenberg_times_vacuum(dA2, dD2):
    for datum, w in (
        (dA2, RectangularWeight(1, 0)),
        (dA2, RectangularWeight(0, 1)),
        (dD2, RectangularWeight(1, 1)),
    ):
        qmax = Q(2)
        std = ch.ch_standard_module(datum, w, qmax)
        vac = ch.ch_vacuum(datum, w, qmax)
        heis = ch.heisenberg_factor(datum, qmax)
        assert gs.compare_to_order(std, heis.mul(vac), qmax).equal


def test_standard_y_zero_slice_is_heisenberg_at_level_one(dA2):
    # kj = 0, k = 1: the only lattice point with vanishing y-offset is the
    # origin, so the neutral slice is exactly the oscillator character.
    qmax = Q(3)
    std = ch.ch_standard_module(dA2, RectangularWeight(1, 0), qmax)
    heis = ch.heisenberg_factor(dA2, qmax)
    for qexp, yexp, coeff in std.terms_sorted():
        if all(v == 0 for v in yexp):
            assert coeff == heis.coefficient(qexp, yexp)


def test_standard_methods_agree(dA2, dD2):
    cases = [
        (dA2, RectangularWeight(0, 1), Q(3, 2)),
        (dA2, RectangularWeight(1, 1), Q(1)),
        (dD2, RectangularWeight(1, 1), Q(1)),
    ]
    for datum, w, qmax in cases:
        formula = ch.ch_standard_module(datum, w, qmax)
        enumerated = ch.ch_standard_module(datum, w, qmax, method="enumerate")
        assert gs.compare_to_order(formula, enumerated, qmax).equal
        formula_v = ch.ch_vacuum(datum, w, qmax)
        enumerated_v = ch.ch_vacuum(datum, w, qmax, method="enumerate")
        assert gs.compare_to_order(formula_v, enumerated_v, qmax).equal


def test_parafermionic_level_one_is_constant(dA2, dD2):
    for datum in (dA2, dD2):
        for w in (RectangularWeight(1, 0), RectangularWeight(0, 1)):
            s = ch.ch_parafermionic(datum, w, Q(3))
            assert s.terms_sorted() == [(Q(0), (Q(0), Q(0)), 1)]


def test_parafermionic_exponent_lattice(dA2):
    w = RectangularWeight(1, 1)
    s = ch.ch_parafermionic(dA2, w, Q(2))
    assert s.denom == 8
    for qexp, _, _ in s.terms_sorted():
        assert (qexp * 8).denominator == 1


def test_para_conformal_energy_examples(dA2):
    single = qp.QPMonomial((((1, Q(-1, 2)),), ()))
    empty = qp.QPMonomial(((), ()))
    assert ch.para_conformal_energy(dA2, RectangularWeight(2, 0), empty) == 0
    assert ch.para_conformal_energy(dA2, RectangularWeight(2, 0), single) == Q(1, 4)
    assert ch.para_conformal_energy(dA2, RectangularWeight(1, 1), single) == 0
    over = qp.QPMonomial((((2, Q(-2)),), ()))
    with pytest.raises(ValueError):
        ch.para_conformal_energy(dA2, RectangularWeight(1, 1), over)


def test_para_leading_exponents_track_the_weight(dA2):
    # The linear shift moves grid exponents down by p1/4 for the mixed
    # weight, mirroring the displayed examples' -p/4 terms: the exponent
    # ((p1-p2)^2 + p2^2 - p1)/4 vanishes on exactly the four grids
    # (0,0), (1,0), (1,1), (2,1).
    pure = ch.ch_parafermionic(dA2, RectangularWeight(2, 0), Q(1))
    mixed = ch.ch_parafermionic(dA2, RectangularWeight(1, 1), Q(1))
    assert pure.coefficient(Q(0), (0, 0)) == 1
    # Grids (1,0) and (1,1) both sit at 1/4 for the pure weight.
    assert pure.coefficient(Q(1, 4), (0, 0)) == 2
    assert mixed.coefficient(Q(0), (0, 0)) == 4


def test_display_example_names_and_trivial_case():
    with pytest.raises(ValueError):
        display_example("A7_L1", Q(1))
    s = display_example("D3_para_2L2", Q(0))
    assert s.terms_sorted() == [(Q(0), (Q(0), Q(0)), 1)]
    assert set(DISPLAY_NAMES) == {
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
    }


def test_level_two_standard_fixtures_match_formula(dA2, dD2):
    qmax = Q(1)
    cases = [
        ("A5_2L1", "A", 3, 0, 2),
        ("A5_L0L1", "A", 3, 1, 1),
        ("D3_2L2", "D", 2, 0, 2),
        ("D3_L0L2", "D", 2, 1, 1),
    ]
    for name, series, rank, k0, kj in cases:
        datum = build_datum(series, rank)
        fixture = display_example(name, qmax)
        formula = ch.ch_standard_module(datum, RectangularWeight(k0, kj), qmax)
        assert gs.compare_to_order(fixture, formula, qmax).equal, name
