from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mindtree.errors import DomainError
from mindtree.formulas import (
    C_ASC_METHODS,
    DELTA_METHODS,
    SIGMA_METHODS,
    TAKAGI_METHODS,
    DyadicRational,
    c_asc,
    c_desc,
    c_max,
    delta,
    delta_cfb,
    equal_digits,
    exponents,
    mind_bounds,
    normalized_colless,
    rho,
    sigma,
    takagi_dyadic,
    weight,
)
from mindtree.oracle import takagi_tent

# published leading terms, n = 2..16
SIGMA_2_16 = [1, 1, 3, 2, 3, 4, 7, 5, 5, 5, 7, 7, 9, 11, 15]
DELTA_2_16 = [0, 1, 0, 2, 2, 2, 0, 3, 4, 5, 4, 5, 4, 3, 0]
DELTA_CFB_2_16 = [0, 1, 0, 2, 1, 2, 0, 3, 2, 3, 1, 3, 2, 3, 0]


def _delta_methods(n):
    return [m for m in DELTA_METHODS if not (m == "midpoint" and n & (n - 1) == 0)]


# weight and bits -------------------------------------------------------------


def test_weight_examples():
    assert weight(27) == 4
    assert weight(1 << 20) == 1
    assert weight(13) == 3  # 2^4 - 3 with r = 3, k = 3: 2 + 3 - 2


def test_weight_complement_identity():
    for k in range(1, 10):
        for r in range(1, 2**k, 2):
            assert weight(2 ** (k + 1) - r) == 2 + k - weight(r)


def test_exponents_and_rho():
    assert exponents(27) == [4, 3, 1, 0]
    assert [rho(27, i) for i in (1, 2, 3, 4)] == [0, 1, 3, 4]
    with pytest.raises(DomainError):
        rho(8, 2)


# sigma / delta ---------------------------------------------------------------


def test_leading_terms():
    assert [sigma(n) for n in range(2, 17)] == SIGMA_2_16
    assert [delta(n) for n in range(2, 17)] == DELTA_2_16
    assert [delta_cfb(n) for n in range(2, 17)] == DELTA_CFB_2_16


def test_methods_agree_small_range():
    for n in range(1, 3000):
        s = {sigma(n, m) for m in SIGMA_METHODS}
        d = {delta(n, m) for m in _delta_methods(n)}
        assert len(s) == 1 and len(d) == 1
        assert s.pop() + d.pop() == n - 1


@given(st.integers(1, 10**12))
def test_methods_agree_large(n):
    s = {sigma(n, m) for m in SIGMA_METHODS}
    d = {delta(n, m) for m in _delta_methods(n) if m != "recurrence"}
    assert len(s) == 1 and len(d) == 1
    assert s.pop() + d.pop() == n - 1


def test_sigma_delta_bounds():
    for n in range(2, 10**4):
        assert n // 2 <= sigma(n) <= n - 1
        assert 2 * delta(n) < n
        if n % 2:
            assert 1 <= delta(n) <= n // 2


def test_delta_reaches_floor_half_only_at_jacobsthal_numbers():
    # the strict bound delta(n) < floor(n/2) fails exactly at (2^k - (-1)^k) / 3
    hits = [n for n in range(2, 10**5) if delta(n) == n // 2]
    jacobsthal = [(2**k - (-1) ** k) // 3 for k in range(3, 20)]
    assert hits == [j for j in jacobsthal if j < 10**5]


def test_powers_of_two():
    for k in range(0, 40):
        assert delta(2**k) == 0
        assert sigma(2**k) == 2**k - 1


def test_delta_reflection():
    assert delta(13) == delta(11) == 5
    for k in range(1, 11):
        for r in range(0, 2**k + 1):
            assert delta(2 ** (k + 1) - r) == delta(2**k + r)


def test_midpoint_undefined_at_powers_of_two():
    with pytest.raises(DomainError):
        delta(64, "midpoint")


@pytest.mark.parametrize("fn", [sigma, delta, delta_cfb, c_desc, c_max])
def test_zero_rejected(fn):
    with pytest.raises(DomainError):
        fn(0)


def test_unknown_method():
    with pytest.raises(ValueError):
        sigma(5, "magic")
    with pytest.raises(ValueError):
        delta(5, "magic")


def test_delta_cfb_equals_equal_digits():
    assert delta_cfb(6) == 1 and delta_cfb(10) == 2
    for n in range(1, 5000):
        assert delta_cfb(n) == equal_digits(n)


# Takagi ------------------------------------------------------------------------


def test_takagi_examples():
    assert takagi_dyadic(0, 5) == 0
    assert takagi_dyadic(1, 2) == Fraction(1, 2)
    assert takagi_dyadic(3, 3) == Fraction(5, 8)
    assert takagi_dyadic(8, 3) == 0


def test_takagi_methods_and_tent_oracle():
    for k in range(0, 10):
        for r in range(0, 2**k + 1):
            values = {takagi_dyadic(r, k, m) for m in TAKAGI_METHODS}
            assert len(values) == 1
            assert values.pop() == takagi_tent(r, k)


def test_takagi_domain():
    with pytest.raises(DomainError):
        takagi_dyadic(9, 3)
    with pytest.raises(ValueError):
        takagi_dyadic(1, 3, "magic")


def test_dyadic_rational_normalizes():
    assert DyadicRational(4, 3) == DyadicRational(1, 1)
    assert DyadicRational(0, 7).k == 0
    assert DyadicRational(3, 3).value == Fraction(3, 8)
    assert DyadicRational.from_fraction(Fraction(5, 16)) == DyadicRational(5, 4)
    with pytest.raises(DomainError):
        DyadicRational.from_fraction(Fraction(1, 3))


# Colless extremes ----------------------------------------------------------------


def test_colless_examples():
    for k in range(1, 20):
        assert c_desc(2**k + 1) == 2**k - 1
    assert c_asc(5) == 3
    for k in range(2, 20):
        assert c_asc(2**k - 1) == 2**k * (k - 1) - 3 * (2 ** (k - 1) - 1)
    assert c_asc(7) == 7
    assert c_max(27) == 325 and c_max(2) == 0 and c_max(16) == 105
    assert c_desc(27) == 11 and c_asc(27) == 55


def test_c_asc_methods_agree():
    for n in range(1, 5000):
        assert len({c_asc(n, m) for m in C_ASC_METHODS}) == 1


def test_ordering_of_extremes():
    for n in range(1, 5000):
        assert delta(n) <= c_desc(n) <= c_asc(n) <= c_max(n)


def test_when_c_desc_is_minimal():
    # equality with the global minimum exactly at 2^k and 2^(k+1) - 2^j
    special = {2**k for k in range(14)}
    special |= {2 ** (k + 1) - 2**j for k in range(13) for j in range(k + 1)}
    for n in range(1, 2**12 + 1):
        assert (c_desc(n) == delta(n)) == (n in special)


def test_when_c_asc_is_minimal():
    special = {2**k for k in range(14)} | {2**k + 2 ** (k - 1) for k in range(1, 14)}
    for n in range(1, 2**12 + 1):
        assert (c_asc(n) == delta(n)) == (n in special)


def test_normalized_examples():
    assert normalized_colless(c_asc(5), 5) == Fraction(1, 4)
    assert normalized_colless(c_asc(7), 7) == Fraction(5, 13)
    for n in range(4, 200):
        assert normalized_colless(delta(n), n) == 0
        assert normalized_colless(c_max(n), n) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_normalized_undefined_small(n):
    with pytest.raises(DomainError):
        normalized_colless(0, n)


def test_normalized_global_maximum_at_seven():
    values = {n: normalized_colless(c_asc(n), n) for n in range(4, 2**12 + 1)}
    assert max(values, key=values.get) == 7


def test_mind_bounds():
    b = mind_bounds(5)
    assert b.normalized_upper == Fraction(4, 5) and b.normalized_asc == Fraction(1, 4)
    assert mind_bounds(7).normalized_asc == Fraction(5, 13)
    assert mind_bounds(64).normalized_asc == 0
    for n in range(4, 2**12 + 1):
        b = mind_bounds(n)
        assert b.normalized_asc < b.normalized_upper
        assert b.delta <= b.c_desc <= b.c_asc <= b.c_max
    with pytest.raises(DomainError):
        mind_bounds(3)
