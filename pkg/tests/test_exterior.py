import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2abc.errors import DegreeError, MetricError
from g2abc.exterior import (
    Form,
    Metric7,
    PRUNE_TOL,
    contract,
    contract_basis,
    form_inner,
    hodge,
    volume_form,
    wedge,
)
from g2abc.g2core import STANDARD_PHI, STANDARD_PSI
from g2abc.gabc import OMEGA

from conftest import random_form, random_monomial

TOP = (1, 2, 3, 4, 5, 6, 7)


# -- Form construction ---------------------------------------------------------

def test_unsorted_keys_are_normalised_with_sign():
    a = Form.from_coeffs(2, {(2, 1): 1.0})
    assert a.coeffs == {(1, 2): -1.0}


def test_repeated_index_contributes_zero():
    assert Form.from_coeffs(2, {(1, 1): 5.0}).is_zero()


def test_out_of_range_index_rejected():
    with pytest.raises(DegreeError):
        Form.from_coeffs(1, {(8,): 1.0})


def test_prune_threshold_drops_tiny_coefficients():
    a = Form.from_coeffs(1, {(1,): PRUNE_TOL / 2, (2,): 1.0})
    assert a.coeffs == {(2,): 1.0}


# -- wedge ----------------------------------------------------------------------

def test_wedge_repeated_monomial_is_zero():
    e1 = Form.monomial((1,))
    assert wedge(e1, e1).is_zero()


def test_omega7_squared():
    assert wedge(OMEGA[7], OMEGA[7]).coeffs == {(3, 4, 5, 6): 2.0}


def test_distinct_omegas_wedge_to_zero():
    for i, j in itertools.permutations((7, 1, 2), 2):
        assert wedge(OMEGA[i], OMEGA[j]).is_zero()


def test_wedge_degree_overflow():
    with pytest.raises(DegreeError):
        wedge(STANDARD_PSI, STANDARD_PSI)


def test_graded_anticommutativity_on_monomials(rng):
    # a ^ b == (-1)^(deg a * deg b) b ^ a, exactly, on 10_000 random monomial pairs
    for _ in range(10_000):
        ka = int(rng.integers(0, 5))
        kb = int(rng.integers(0, 8 - ka))
        a = Form.monomial(random_monomial(rng, ka), float(rng.integers(-3, 4)) or 1.0)
        b = Form.monomial(random_monomial(rng, kb), float(rng.integers(-3, 4)) or 1.0)
        sign = -1.0 if (ka * kb) % 2 else 1.0
        assert (wedge(a, b) - sign * wedge(b, a)).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_wedge_bilinear_and_associative(ka, kb, seed):
    rng = np.random.default_rng(seed)
    a = random_form(rng, ka)
    b = random_form(rng, kb)
    c = random_form(rng, kb)
    lam = float(rng.standard_normal())
    assert (wedge(a, b + lam * c) - (wedge(a, b) + lam * wedge(a, c))).norm_inf() < 1e-12
    kc = int(rng.integers(0, 8 - ka - kb)) if ka + kb < 7 else 0
    d = random_form(rng, kc)
    assert (wedge(wedge(a, b), d) - wedge(a, wedge(b, d))).norm_inf() < 1e-10


# -- contraction ------------------------------------------------------------------

def test_contract_phi_rows():
    assert contract_basis(1, STANDARD_PHI).coeffs == {(2, 7): 1.0, (3, 5): 1.0, (4, 6): -1.0}
    assert contract_basis(7, STANDARD_PHI).coeffs == {(1, 2): 1.0, (3, 4): 1.0, (5, 6): 1.0}


def test_contract_absent_index_is_zero():
    assert contract_basis(3, Form.monomial((1, 2))).is_zero()


def test_contract_zero_form_rejected():
    with pytest.raises(DegreeError):
        contract(np.zeros(7), Form.from_coeffs(0, {(): 1.0}))


def test_contract_linear_in_both_arguments(rng):
    for _ in range(20):
        k = int(rng.integers(1, 8))
        a, b = random_form(rng, k), random_form(rng, k)
        x, y = rng.standard_normal(7), rng.standard_normal(7)
        lam = float(rng.standard_normal())
        lhs = contract(x + lam * y, a + b)
        rhs = (contract(x, a) + contract(x, b)
               + lam * (contract(y, a) + contract(y, b)))
        assert (lhs - rhs).norm_inf() < 1e-12


# -- Hodge star -------------------------------------------------------------------

def test_star_phi_is_psi_componentwise():
    assert (hodge(STANDARD_PHI) - STANDARD_PSI).is_zero()


def test_star_of_one_is_volume():
    one = Form.from_coeffs(0, {(): 1.0})
    assert hodge(one).coeffs == {TOP: 1.0}


def test_double_star_is_identity(rng):
    for k in range(8):
        a = random_form(rng, k)
        assert (hodge(hodge(a)) - a).norm_inf() < 1e-13


def test_star_isometry_identity_metric(rng):
    for k in range(8):
        a, b = random_form(rng, k), random_form(rng, k)
        dev = abs(form_inner(a, b) - form_inner(hodge(a), hodge(b)))
        assert dev <= 1e-12


def test_wedge_with_star_recovers_inner_product(rng):
    for k in range(8):
        a, b = random_form(rng, k), random_form(rng, k)
        top = wedge(a, hodge(b))
        assert abs(top(*TOP) - form_inner(a, b)) <= 1e-12


def test_star_general_metric_defining_identity(rng):
    g = rng.standard_normal((7, 7))
    m = Metric7(g @ g.T + 7 * np.eye(7))
    vol = volume_form(m)
    for k in range(8):
        a, b = random_form(rng, k), random_form(rng, k)
        lhs = wedge(b, hodge(a, m))
        dev = (lhs - form_inner(b, a, m) * vol).norm_inf()
        assert dev <= 1e-9


def test_non_positive_metric_rejected():
    with pytest.raises(MetricError):
        Metric7(np.diag([1.0, 1, 1, 1, 1, 1, -1]))
    with pytest.raises(MetricError):
        Metric7(np.eye(7) + 0.1 * np.triu(np.ones((7, 7)), 1))


# -- inner products ---------------------------------------------------------------

def test_inner_products_of_omegas():
    assert form_inner(OMEGA[1], OMEGA[2]) == 0.0
    assert form_inner(OMEGA[7], OMEGA[7]) == 2.0
    assert form_inner(Form.monomial((1, 2)), Form.monomial((1, 2))) == 1.0


def test_inner_degree_mismatch():
    with pytest.raises(DegreeError):
        form_inner(Form.monomial((1,)), Form.monomial((1, 2)))


# -- the contraction and wedge tables of the reference 3-form ---------------------

IOTA_PHI = {
    1: {(2, 7): 1.0, (3, 5): 1.0, (4, 6): -1.0},
    2: {(1, 7): -1.0, (3, 6): -1.0, (4, 5): -1.0},
    3: {(4, 7): 1.0, (1, 5): -1.0, (2, 6): 1.0},
    4: {(3, 7): -1.0, (1, 6): 1.0, (2, 5): 1.0},
    5: {(6, 7): 1.0, (1, 3): 1.0, (2, 4): -1.0},
    6: {(5, 7): -1.0, (1, 4): -1.0, (2, 3): -1.0},
    7: {(1, 2): 1.0, (3, 4): 1.0, (5, 6): 1.0},
}

WEDGE_1J = {
    3: {(1, 2, 5, 7): 1.0, (3, 4, 5, 7): -1.0, (2, 3, 5, 6): 1.0, (1, 4, 5, 6): -1.0},
    4: {(1, 2, 6, 7): -1.0, (1, 3, 5, 6): 1.0, (3, 4, 6, 7): 1.0, (2, 4, 5, 6): 1.0},
    5: {(1, 2, 3, 7): -1.0, (3, 5, 6, 7): 1.0, (2, 3, 4, 5): 1.0, (1, 3, 4, 6): -1.0},
    6: {(1, 2, 4, 7): 1.0, (1, 3, 4, 5): 1.0, (4, 5, 6, 7): -1.0, (2, 3, 4, 6): 1.0},
}

WEDGE_2J = {
    3: {(1, 2, 6, 7): -1.0, (3, 4, 6, 7): 1.0, (1, 3, 5, 6): -1.0, (2, 4, 5, 6): -1.0},
    4: {(1, 2, 5, 7): -1.0, (2, 3, 5, 6): 1.0, (3, 4, 5, 7): 1.0, (1, 4, 5, 6): -1.0},
    5: {(1, 2, 4, 7): 1.0, (2, 3, 4, 6): -1.0, (4, 5, 6, 7): -1.0, (1, 3, 4, 5): -1.0},
    6: {(1, 2, 3, 7): 1.0, (3, 5, 6, 7): -1.0, (1, 3, 4, 6): -1.0, (2, 3, 4, 5): 1.0},
}

WEDGE_7J = {
    3: {(1, 2, 4, 7): 1.0, (1, 3, 4, 5): -1.0, (2, 3, 4, 6): 1.0, (4, 5, 6, 7): 1.0},
    4: {(1, 2, 3, 7): -1.0, (1, 3, 4, 6): 1.0, (2, 3, 4, 5): 1.0, (3, 5, 6, 7): -1.0},
    5: {(1, 2, 6, 7): 1.0, (3, 4, 6, 7): 1.0, (1, 3, 5, 6): 1.0, (2, 4, 5, 6): -1.0},
    6: {(1, 2, 5, 7): -1.0, (3, 4, 5, 7): -1.0, (1, 4, 5, 6): -1.0, (2, 3, 5, 6): -1.0},
}

HALF_SQUARES = {
    3: {(1, 4, 5, 7): 1.0, (2, 4, 6, 7): -1.0, (1, 2, 5, 6): 1.0},
    4: {(1, 3, 6, 7): 1.0, (2, 3, 5, 7): 1.0, (1, 2, 5, 6): 1.0},
    5: {(1, 3, 6, 7): 1.0, (2, 4, 6, 7): -1.0, (1, 2, 3, 4): 1.0},
    6: {(1, 4, 5, 7): 1.0, (2, 3, 5, 7): 1.0, (1, 2, 3, 4): 1.0},
}

OPPOSITE_PAIRS = {
    3: {(2, 3, 4, 7): -1.0, (1, 2, 4, 6): 1.0, (2, 5, 6, 7): 1.0, (1, 2, 3, 5): 1.0},
    4: {(2, 3, 4, 7): -1.0, (1, 2, 4, 6): -1.0, (2, 5, 6, 7): 1.0, (1, 2, 3, 5): -1.0},
}


def test_iota_phi_table_all_rows():
    for j, expected in IOTA_PHI.items():
        assert contract_basis(j, STANDARD_PHI).coeffs == expected


@pytest.mark.parametrize("k,table", [(1, WEDGE_1J), (2, WEDGE_2J), (7, WEDGE_7J)])
def test_iota_wedge_tables(k, table):
    left = contract_basis(k, STANDARD_PHI)
    for j, expected in table.items():
        got = wedge(left, contract_basis(j, STANDARD_PHI))
        assert got.coeffs == expected, (k, j)


def test_half_square_table():
    for j, expected in HALF_SQUARES.items():
        iota = contract_basis(j, STANDARD_PHI)
        assert (0.5 * wedge(iota, iota)).coeffs == expected


def test_opposite_pair_table():
    for j in (3, 4, 5, 6):
        expected = OPPOSITE_PAIRS[3] if j in (3, 6) else OPPOSITE_PAIRS[4]
        got = wedge(contract_basis(j, STANDARD_PHI), contract_basis(9 - j, STANDARD_PHI))
        assert got.coeffs == expected, j


# -- triple-wedge vanishing spans --------------------------------------------------

SPAN_S1 = [
    (1, 2, 7), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6), (1, 5, 6),
    (2, 3, 4), (2, 3, 5), (2, 3, 6), (2, 4, 5), (2, 4, 6), (2, 5, 6),
    (3, 4, 7), (3, 5, 7), (3, 6, 7), (4, 5, 7), (4, 6, 7), (5, 6, 7),
]
SPAN_S2 = [
    (1, 3, 4), (1, 3, 6), (1, 4, 5), (1, 5, 6), (2, 3, 4), (2, 3, 5),
    (2, 4, 6), (2, 5, 6), (3, 5, 7), (3, 6, 7), (4, 5, 7), (4, 6, 7),
]
SPAN_S3 = [
    (1, 2, 7), (1, 3, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 3, 5),
    (2, 3, 6), (2, 4, 5), (2, 4, 6), (2, 5, 6), (3, 4, 7), (3, 6, 7), (4, 5, 7),
    (5, 6, 7),
]


def test_mixed_pair_triple_wedges_vanish_on_span1():
    for k in (1, 2, 7):
        left = contract_basis(k, STANDARD_PHI)
        for i in (3, 4, 5, 6):
            pair = wedge(left, contract_basis(i, STANDARD_PHI))
            for chi in SPAN_S1:
                assert wedge(pair, Form.monomial(chi)).is_zero(), (k, i, chi)


def test_diagonal_pair_triple_wedges_vanish_on_span2():
    for n in (3, 4, 5, 6):
        iota = contract_basis(n, STANDARD_PHI)
        square = wedge(iota, iota)
        for chi in SPAN_S2:
            assert wedge(square, Form.monomial(chi)).is_zero(), (n, chi)


def test_opposite_pair_triple_wedges_vanish_on_span3():
    # garbled printed range read as 3 <= m <= 6
    for m in (3, 4, 5, 6):
        pair = wedge(contract_basis(m, STANDARD_PHI), contract_basis(9 - m, STANDARD_PHI))
        for chi in SPAN_S3:
            assert wedge(pair, Form.monomial(chi)).is_zero(), (m, chi)


def test_matrix_coaction_scales_monomials_by_diagonal(rng):
    from g2abc.exterior import matrix_coaction
    d = np.diag(rng.standard_normal(7))
    for _ in range(20):
        k = int(rng.integers(1, 7))
        mono = random_monomial(rng, k)
        expected = sum(d[i - 1, i - 1] for i in mono)
        got = matrix_coaction(d, Form.monomial(mono))
        assert abs(got(*mono) - expected) <= 1e-12
        assert len(got.coeffs) <= 1
