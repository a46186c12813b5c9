import cmath
import math
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gcas.cyclotomic import (
    CyclotomicSum,
    IntPolynomial,
    add_term,
    cyclotomic_polynomial,
    is_zero,
    magnitude_of_real_integer,
    to_complex,
    vanishing_rows,
)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_add_term_examples():
    z = CyclotomicSum.zero(6)
    assert add_term(z, 2, 1).coeffs == (0, 0, 1, 0, 0, 0)
    one = CyclotomicSum(6, (1, 0, 0, 0, 0, 0))
    assert add_term(one, 6, 1).coeffs == (2, 0, 0, 0, 0, 0)
    assert add_term(one, 0, -1).coeffs == (0,) * 6


@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-3, 3)), max_size=12), st.randoms())
def test_add_term_order_independent(terms, rnd):
    a = CyclotomicSum.zero(6)
    for e, w in terms:
        a = add_term(a, e, w)
    shuffled = list(terms)
    rnd.shuffle(shuffled)
    b = CyclotomicSum.zero(6)
    for e, w in shuffled:
        b = add_term(b, e, w)
    assert a == b


@pytest.mark.parametrize("n, coeffs", [(1, (-1, 1)), (2, (1, 1)), (6, (1, -1, 1))])
def test_cyclotomic_examples(n, coeffs):
    assert cyclotomic_polynomial(n).coeffs == coeffs


@pytest.mark.parametrize("n", range(1, 65))
def test_cyclotomic_degree_and_sympy_oracle(n):
    phi = cyclotomic_polynomial(n)
    assert phi.degree == totient(n)
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(phi.coeffs) == [int(c) for c in ref]


@pytest.mark.parametrize("n", range(1, 65))
def test_product_identity(n):
    prod = IntPolynomial((1,))
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * cyclotomic_polynomial(d)
    assert prod.coeffs == (-1,) + (0,) * (n - 1) + (1,)


@pytest.mark.parametrize(
    "q, coeffs, expected",
    [(6, (0, 0, 1, 0, 1, 0), False), (3, (1, 1, 1), True), (6, (1, 0, 1, 0, 1, 0), True)],
)
def test_is_zero_examples(q, coeffs, expected):
    assert is_zero(CyclotomicSum(q, coeffs)) is expected


def test_is_zero_numeric_oracle_for_nonzero_example():
    re, im = to_complex(CyclotomicSum(6, (0, 0, 1, 0, 1, 0)))
    assert math.hypot(re, im) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "q, coeffs, value",
    [(4, (0, 1, 0, 0), (0, 1)), (2, (3, 1), (2, 0)), (6, (1, 0, 1, 0, 1, 0), (0, 0))],
)
def test_to_complex_examples(q, coeffs, value):
    re, im = to_complex(CyclotomicSum(q, coeffs))
    assert re == pytest.approx(value[0], abs=1e-12)
    assert im == pytest.approx(value[1], abs=1e-12)


@pytest.mark.parametrize(
    "q, coeffs, value",
    [(6, (144, 0, 0, 0, 0, 0), 144), (3, (5, 2, 2), 3), (6, (0, 1, 0, 0, 0, 0), None)],
)
def test_magnitude_of_real_integer(q, coeffs, value):
    assert magnitude_of_real_integer(CyclotomicSum(q, coeffs)) == value


def test_conjugate_reverses_exponents():
    s = CyclotomicSum(6, (1, 2, 3, 4, 5, 6))
    assert s.conjugate().coeffs == (1, 6, 5, 4, 3, 2)
    assert s.conjugate().to_complex() == pytest.approx(s.to_complex().conjugate())


@given(st.sampled_from([2, 3, 4, 5, 6, 8, 9, 10, 12, 15]), st.data())
def test_vanishing_rows_matches_is_zero(q, data):
    rows = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=q, max_size=q), min_size=1, max_size=6))
    got = vanishing_rows(np.array(rows))
    assert list(got) == [is_zero(CyclotomicSum(q, r)) for r in rows]


def test_vanishing_full_orbit_sums():
    # the sum of all d-th roots of unity vanishes for every divisor d > 1 of q
    for q in (4, 6, 12):
        for d in range(2, q + 1):
            if q % d == 0:
                s = CyclotomicSum.from_exponents(q, range(0, q, q // d))
                assert is_zero(s)
                assert abs(sum(cmath.exp(2j * cmath.pi * e / q) for e in range(0, q, q // d))) < 1e-9
