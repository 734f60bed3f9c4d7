import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entorder.errors import BandViolation, ParamOutOfRange
from entorder.measures import concurrence, negativity
from entorder.ordering import (
    CNPoint,
    PairComparison,
    Verdict,
    classify_region,
    compare,
    delta_grid,
    extremal_gaps,
    lower_bound_negativity,
    maxneg_minneg_delta,
    numeric_extremal_search,
    verdict,
)
from entorder.states import KAPPA, SQRT2, horodecki, mixture, werner

from conftest import ginibre_density

GAP = 1 - SQRT2 / 2
DELTA_MAX = KAPPA**2 / 2


def test_delta_max_constant():
    assert DELTA_MAX == pytest.approx(0.021446609406726238, abs=1e-15)
    assert DELTA_MAX == pytest.approx((3 - 2 * SQRT2) / 8, abs=1e-15)


def test_compare_self():
    rho = mixture(0.3, 0.4)
    assert compare(rho, rho) == PairComparison(0.0, 0.0, 0.0, Verdict.EQUAL_BOTH)


def test_compare_max_violation():
    r = compare(werner(1 / 3 + SQRT2 / 6), horodecki(0.5))
    assert r.delta == pytest.approx(DELTA_MAX, abs=1e-9)
    assert r.verdict is Verdict.ORDER_VIOLATION


def test_compare_equal_concurrence():
    r = compare(werner(2 / 3), horodecki(0.5))
    assert r.delta_c == pytest.approx(0, abs=1e-9)
    assert r.delta_n == pytest.approx(GAP, abs=1e-9)
    assert r.verdict is Verdict.EQUAL_C_DIFF_N


def test_verdict_table():
    assert verdict(0.1, 0.2) is Verdict.SAME_ORDER
    assert verdict(-0.1, -0.2) is Verdict.SAME_ORDER
    assert verdict(0.1, -0.2) is Verdict.ORDER_VIOLATION
    assert verdict(1e-10, 0.3) is Verdict.EQUAL_C_DIFF_N
    assert verdict(-0.3, 5e-10) is Verdict.EQUAL_N_DIFF_C
    assert verdict(5e-10, -5e-10) is Verdict.EQUAL_BOTH
    # product within the 1e-12 slack is not a violation
    assert verdict(2e-6, -2e-7) is Verdict.SAME_ORDER
    assert str(Verdict.ORDER_VIOLATION) == "order_violation"


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_delta_invariants(dc, dn):
    r = PairComparison.from_differences(dc, dn)
    assert r.delta >= 0
    assert r.delta == -min(0.0, dc * dn)
    if dc == 0 or dn == 0:
        assert r.delta == 0
    swapped = PairComparison.from_differences(-dc, -dn)
    assert swapped.delta == r.delta and swapped.verdict is r.verdict


def test_compare_antisymmetry(rng):
    a, b = ginibre_density(rng, 2, 2)
    ab, ba = compare(a, b), compare(b, a)
    assert ab.delta_c == pytest.approx(-ba.delta_c, abs=1e-15)
    assert ab.delta_n == pytest.approx(-ba.delta_n, abs=1e-15)
    assert ab.delta == pytest.approx(ba.delta, abs=1e-15)
    assert ab.verdict is ba.verdict


def test_lower_bound():
    assert lower_bound_negativity(0) == 0
    assert lower_bound_negativity(1) == 1
    assert lower_bound_negativity(0.5) == pytest.approx(KAPPA, abs=1e-15)
    with pytest.raises(ParamOutOfRange):
        lower_bound_negativity(1.2)


def test_classify_region_examples():
    x = (0.5, KAPPA)
    assert classify_region(x, (KAPPA, KAPPA)) is Verdict.EQUAL_N_DIFF_C
    assert classify_region(x, (SQRT2 / 4, SQRT2 / 4)) is Verdict.ORDER_VIOLATION
    assert classify_region((0.3, 0.2), (0.3, 0.2)) is Verdict.EQUAL_BOTH
    assert classify_region(x, (0.5, 0.5)) is Verdict.EQUAL_C_DIFF_N
    assert classify_region(x, (0.9, 0.85)) is Verdict.SAME_ORDER


def test_classify_region_band_checks():
    with pytest.raises(BandViolation):
        classify_region((0.5, 0.6), (0.3, 0.2))
    with pytest.raises(BandViolation):
        classify_region((0.5, KAPPA), (0.5, 0.1))
    CNPoint(0.5, KAPPA - 5e-10)


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_classify_matches_compare(seed):
    a, b = ginibre_density(np.random.default_rng(seed), 2, 2)
    assert classify_region(CNPoint.of(a), CNPoint.of(b)) is compare(a, b).verdict


def test_extremal_gaps():
    g = extremal_gaps()
    assert g.max_dc == pytest.approx(0.292893219, abs=1e-9)
    assert g.max_dn == pytest.approx(0.292893219, abs=1e-9)
    assert g.max_delta == pytest.approx(0.021446609, abs=1e-9)
    y, x = g.witnesses["dc"]
    assert abs(concurrence(y) - concurrence(x)) == pytest.approx(g.max_dc, abs=1e-9)
    assert negativity(y) == pytest.approx(negativity(x), abs=1e-9)
    z, x = g.witnesses["dn"]
    assert negativity(z) - negativity(x) == pytest.approx(g.max_dn, abs=1e-9)
    v, x = g.witnesses["delta"]
    assert compare(v, x).delta == pytest.approx(g.max_delta, abs=1e-9)


def test_numeric_extremal_search():
    r = numeric_extremal_search(1000)
    assert r.max_dc == pytest.approx(GAP, abs=1e-6)
    assert r.max_dn == pytest.approx(GAP, abs=1e-6)
    assert r.max_delta == pytest.approx(DELTA_MAX, abs=1e-6)
    assert r.argmax_dn == pytest.approx((0.5, 0.5), abs=1e-5)
    assert r.argmax_dc == pytest.approx((KAPPA, 0.5), abs=1e-5)
    assert r.argmax_delta == pytest.approx((SQRT2 / 4, 0.5), abs=1e-5)
    with pytest.raises(ParamOutOfRange):
        numeric_extremal_search(50)


def test_delta_grid_shape_and_values():
    g = delta_grid(101, 201)
    assert g.shape == (101, 201)
    c1 = np.linspace(0, 1, 101)
    c2 = np.linspace(0, 1, 201)
    # diagonal C1 == C2
    for i in range(101):
        assert g[i, 2 * i] == 0.0
    assert np.all(g[c1[:, None] > c2[None, :]] == 0.0)
    assert g.max() <= DELTA_MAX + 1e-12
    assert float(maxneg_minneg_delta(SQRT2 / 4, 0.5)) == pytest.approx(DELTA_MAX, abs=1e-15)
    with pytest.raises(ParamOutOfRange):
        delta_grid(1, 5)


def test_delta_grid_matches_constructed_witnesses():
    # werner(p) has C = N = (3p-1)/2, horodecki(p) is on the lower edge with C = p
    for c1, c2 in [(SQRT2 / 4, 0.5), (0.3, 0.6), (0.1, 0.8)]:
        rho1 = werner((2 * c1 + 1) / 3)
        rho2 = horodecki(c2)
        assert compare(rho1, rho2).delta == pytest.approx(
            float(maxneg_minneg_delta(c1, c2)), abs=1e-9)


@given(st.floats(0, 1), st.floats(0, 1))
def test_delta_bounded_everywhere(c1, c2):
    assert float(maxneg_minneg_delta(c1, c2)) <= DELTA_MAX + 1e-12
