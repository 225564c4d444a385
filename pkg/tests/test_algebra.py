import random
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from overqt.algebra import (
    ONE,
    Q,
    T,
    U,
    ZERO,
    MPoly,
    RationalMPoly,
    USeries,
    divexact,
    gaussian,
    gaussian_by_division,
    mp_arith,
    mp_pow,
    pochhammer,
    qmultinomial,
    qpoch,
    rat_eq,
    useries_from_poly,
    useries_invert,
    useries_ops,
)
from overqt.errors import DivisionCheck, LaurentAtZero, NonUnitSeries

qs, ts, us = sympy.symbols("q t u")


def to_mpoly(expr) -> MPoly:
    """Independent route: expand with sympy and read off the terms."""
    poly = sympy.Poly(sympy.expand(expr), qs, ts, us)
    return MPoly({k: int(c) for k, c in poly.terms()})


def random_mpoly(rng, terms=4, deg=3, big=False):
    out = {}
    for _ in range(rng.randint(0, terms)):
        key = (rng.randint(0, deg), rng.randint(0, 2), rng.randint(0, 1))
        c = rng.randint(-5, 5)
        if big and rng.random() < 0.2:
            c *= 10 ** 30
        out[key] = out.get(key, 0) + c
    return MPoly(out)


mpolys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 2), st.integers(0, 2)),
    st.integers(-10 ** 25, 10 ** 25),
    max_size=5,
).map(MPoly)


# -- basic arithmetic ---------------------------------------------------------


def test_difference_of_squares():
    assert (ONE + Q) * (ONE - Q) == ONE - Q ** 2


def test_additive_identity():
    p = ONE + Q + T * Q
    assert p + ZERO == p
    assert p + 0 == p


def test_square_expansion_matches_sympy():
    p = ONE + Q + T * Q
    expected = to_mpoly((1 + qs + ts * qs) ** 2)
    assert p ** 2 == expected
    assert expected == MPoly({(0, 0, 0): 1, (1, 0, 0): 2, (1, 1, 0): 2,
                              (2, 0, 0): 1, (2, 1, 0): 2, (2, 2, 0): 1})


def test_mp_arith_and_pow():
    a, b = ONE + Q, ONE - Q
    assert mp_arith(a, b, "add") == MPoly.const(2)
    assert mp_arith(a, b, "sub") == 2 * Q
    assert mp_arith(a, b, "mul") == ONE - Q ** 2
    assert mp_pow(a, 0) == ONE
    with pytest.raises(ValueError):
        mp_arith(a, b, "div")


def test_no_zero_terms_stored():
    p = (ONE + Q) - Q
    assert p.terms == {(0, 0, 0): 1}
    assert (Q - Q).terms == {}
    assert not (Q - Q)


@given(mpolys, mpolys)
@settings(max_examples=200)
def test_product_matches_sympy(a, b):
    sa = sum(c * qs ** e[0] * ts ** e[1] * us ** e[2] for e, c in a.items())
    sb = sum(c * qs ** e[0] * ts ** e[1] * us ** e[2] for e, c in b.items())
    assert a * b == to_mpoly(sa * sb)


def test_ring_axioms_randomized(seed):
    rng = random.Random(seed)
    for _ in range(500):
        a, b, c = (random_mpoly(rng, big=True) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


# -- specialize -----------------------------------------------------------------


def test_specialize_t0_gives_gaussian():
    assert (ONE + Q + T * Q).specialize(t=0) == ONE + Q


def test_specialize_q1_t1_counts_paths():
    assert (ONE + Q + T * Q).specialize(q=1, t=1) == 3


def test_specialize_empty_assignment():
    p = ONE + Q + T * Q * U
    assert p.specialize() == p


def test_full_assignment_is_int():
    v = (ONE + Q + T * Q * U).specialize(q=2, t=3, u=5)
    assert isinstance(v, int) and v == 1 + 2 + 30


def test_laurent_guard():
    with pytest.raises(ValueError):
        MPoly({(-1, 0, 0): 1})
    p = MPoly({(-1, 0, 0): 1, (0, 0, 0): 1}, laurent=True)
    with pytest.raises(LaurentAtZero):
        p.specialize(q=0)
    assert p.specialize(q=1) == 2
    assert p.specialize(q=-1) == 0


def test_swap_qt():
    assert (ONE + T * Q ** 2).swap_qt() == ONE + Q * T ** 2


# -- pochhammer / gaussian ------------------------------------------------------


def test_pochhammer_examples():
    assert pochhammer(Q, 2, "minus") == (ONE - Q) * (ONE - Q ** 2)
    assert pochhammer(T * Q, 1, "plus") == ONE + T * Q
    expected = to_mpoly((1 + ts * us * qs ** 2) * (1 + ts * us * qs ** 3))
    assert pochhammer(T * U * Q ** 2, 2, "plus") == expected
    assert pochhammer(T * U * Q ** 2, 0, "plus") == ONE


def test_pochhammer_rejects_non_monomial():
    with pytest.raises(ValueError):
        pochhammer(ONE + Q, 2)


def test_laurent_pochhammer_matches_closed_form():
    # (q^-n; q)_k = (q)_n / (q)_{n-k} (-1)^k q^{C(k,2) - nk}
    for n in range(6):
        for k in range(n + 1):
            lhs = pochhammer(MPoly.monomial(1, q=-n), k)
            rhs = divexact(qpoch(n), qpoch(n - k)) * MPoly.monomial(
                (-1) ** k, q=comb(k, 2) - n * k)
            assert lhs == rhs


def _box_partitions(rows, cols):
    """Gaussian oracle: enumerate partitions in a rows x cols box."""
    from itertools import combinations_with_replacement

    counts = {}
    for r in range(rows + 1):
        for parts in combinations_with_replacement(range(1, cols + 1), r):
            w = sum(parts)
            counts[(w, 0, 0)] = counts.get((w, 0, 0), 0) + 1
    return MPoly(counts)


def test_gaussian_examples():
    assert gaussian(2, 1) == ONE + Q
    assert gaussian(4, 2) == ONE + Q + 2 * Q ** 2 + Q ** 3 + Q ** 4
    assert gaussian(4, 2) == _box_partitions(2, 2)
    assert gaussian(3, 5) == ZERO
    assert gaussian(3, -1) == ZERO


@pytest.mark.parametrize("n", range(13))
def test_gaussian_properties(n):
    for k in range(n + 1):
        g = gaussian(n, k)
        assert g == gaussian(n, n - k)
        assert g.specialize(q=1) == comb(n, k)
        assert g == gaussian_by_division(n, k)
        if 0 < k < n:
            assert g == gaussian(n - 1, k - 1) + gaussian(n - 1, k).shift(q=k)


def test_gaussian_counts_box_partitions():
    for rows in range(5):
        for cols in range(5):
            assert gaussian(rows + cols, rows) == _box_partitions(rows, cols)


def test_qmultinomial():
    for a in range(4):
        for b in range(4):
            for c in range(4):
                assert qmultinomial(a, b, c) == divexact(
                    qpoch(a + b + c), qpoch(a) * qpoch(b) * qpoch(c))


def test_divexact_detects_remainder():
    with pytest.raises(DivisionCheck):
        divexact(ONE + Q ** 2, ONE - Q)
    with pytest.raises(ZeroDivisionError):
        divexact(ONE, ZERO)


def test_divexact_laurent_and_multivariate():
    d = ONE - MPoly.monomial(1, q=-2)
    p = (T + Q ** 3 * U) * d
    assert divexact(p, d) == T + Q ** 3 * U


# -- series ---------------------------------------------------------------------


def test_invert_geometric():
    s = USeries.from_poly(ONE - U * Q, 2)
    assert s.invert() == USeries([ONE, Q, Q ** 2], 2)


def test_invert_is_inverse():
    s = useries_from_poly(ONE - U * Q - U ** 2 * T * Q ** 3, 5)
    assert useries_ops(useries_invert(s), s, "mul") == USeries.one(5)


def test_u2_coefficient_of_double_geometric():
    s = USeries.from_poly((ONE - U * Q) * (ONE - U * Q ** 2), 4).invert()
    expr = 1 / ((1 - us * qs) * (1 - us * qs ** 2))
    oracle = sympy.series(expr, us, 0, 3).removeO().coeff(us, 2)
    assert s.coeffs[2] == to_mpoly(oracle)
    assert s.coeffs[2] == Q ** 2 + Q ** 3 + Q ** 4


def test_invert_requires_unit():
    with pytest.raises(NonUnitSeries):
        USeries.from_poly(2 * ONE + U, 3).invert()
    with pytest.raises(NonUnitSeries):
        USeries.from_poly(U, 3).invert()


def test_series_truncation_consistent(seed):
    rng = random.Random(seed)
    for _ in range(50):
        a = random_mpoly(rng, terms=6, deg=3)
        b = random_mpoly(rng, terms=6, deg=3)
        # u-degree up to 1 per factor; truncate at K=1
        exact = USeries.from_poly(a * b, 1)
        assert USeries.from_poly(a, 1) * USeries.from_poly(b, 1) == exact


# -- rational functions ---------------------------------------------------------


def test_rat_eq_examples():
    assert rat_eq(RationalMPoly(ONE + Q), RationalMPoly(ONE - Q ** 2, ONE - Q))
    assert not rat_eq(RationalMPoly(ONE, ONE - Q), RationalMPoly(ONE, ONE - Q ** 2))
    p = ONE + Q + T * Q
    assert rat_eq(RationalMPoly(p * (ONE + Q), ONE + Q), RationalMPoly(p))


def test_rational_arithmetic():
    x = RationalMPoly(ONE, ONE - Q)
    y = RationalMPoly(Q, ONE - Q)
    assert x + y == RationalMPoly(ONE + Q, ONE - Q)
    assert x * (ONE - Q) == ONE
    assert x - x == 0
    with pytest.raises(ZeroDivisionError):
        RationalMPoly(ONE, ZERO)


# -- serialization ---------------------------------------------------------------


def test_canonical_text():
    assert (ONE + Q + T * Q).to_text() == "1 + q + t*q"
    assert (2 * T * Q ** 2 - ONE).to_text() == "-1 + 2*t*q^2"
    assert ZERO.to_text() == "0"


@given(mpolys)
def test_json_roundtrip(p):
    assert MPoly.from_json(p.to_json()) == p


def test_json_shape():
    assert (ONE + T * Q).to_json_obj() == [
        {"q": 0, "t": 0, "u": 0, "c": "1"},
        {"q": 1, "t": 1, "u": 0, "c": "1"},
    ]


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MPoly({(0, 0, 0): 2.0})
    with pytest.raises(TypeError):
        ONE * 1.5
