from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from defobs.alexander import (
    SymmetrizedAlexander,
    poly_divexact,
    poly_mul,
    render_poly,
    torsion_coefficient,
    torsion_coefficients,
    torus_knot_alexander,
)

coprime_pairs = st.tuples(st.integers(2, 13), st.integers(2, 13)).filter(lambda t: gcd(*t) == 1)


def semigroup_gaps(p, q):
    """Positive integers not in the semigroup generated by p and q."""
    bound = (p - 1) * (q - 1)
    reach = {a * p + b * q for a in range(q) for b in range(p)}
    return [n for n in range(bound) if n not in reach]


def semigroup_torsion(p, q, i):
    # t_i counts gaps at or above g + i, g the genus
    g = (p - 1) * (q - 1) // 2
    return sum(1 for n in semigroup_gaps(p, q) if n >= g + abs(i))


def test_known_polynomials():
    assert str(torus_knot_alexander(2, 3)) == "t^-1 - 1 + t"
    assert torus_knot_alexander(2, 5).coefficients == {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}
    assert torus_knot_alexander(3, 4).coefficients == {-3: 1, -2: -1, 0: 1, 2: -1, 3: 1}
    assert torus_knot_alexander(1, 7).coefficients == {0: 1}


def test_trefoil_torsion():
    delta = torus_knot_alexander(2, 3)
    assert [torsion_coefficient(delta, i) for i in range(3)] == [1, 0, 0]
    assert torsion_coefficients(delta) == [1]
    assert torsion_coefficients(torus_knot_alexander(1, 2)) == []


@pytest.mark.parametrize("bad", [(2, 4), (0, 3), (-2, 3)])
def test_rejects_bad_parameters(bad):
    with pytest.raises(ValueError):
        torus_knot_alexander(*bad)


def test_symmetry_and_normalization_enforced():
    with pytest.raises(ValueError):
        SymmetrizedAlexander.from_coefficients({0: 1, 1: 1})
    with pytest.raises(ValueError):
        SymmetrizedAlexander.from_coefficients({-1: 1, 0: 1, 1: 1})


def test_divexact_rejects_remainder():
    with pytest.raises(ArithmeticError):
        poly_divexact({2: 1, 0: 1}, {1: 1, 0: -1})
    with pytest.raises(ValueError):
        poly_divexact({2: 1}, {1: 2})


def test_render_poly():
    assert render_poly({-2: 1, 0: -3, 2: 1}) == "t^-2 - 3 + t^2"
    assert render_poly({}) == "0"


@given(coprime_pairs)
def test_product_formula(pq):
    # Delta(t) (t^p - 1)(t^q - 1) = t^g (t^pq - 1)(t - 1), checked at t = 2, 3, 5
    p, q = pq
    delta = torus_knot_alexander(p, q)
    g = (p - 1) * (q - 1) // 2
    for t in (Fraction(2), Fraction(3), Fraction(5)):
        lhs = sum(c * t**e for e, c in delta.coefficients.items()) * (t**p - 1) * (t**q - 1)
        assert lhs == (t ** (p * q) - 1) * (t - 1) / t**g


@given(coprime_pairs)
def test_semigroup_oracle(pq):
    p, q = pq
    delta = torus_knot_alexander(p, q)
    assert delta.degree == (p - 1) * (q - 1) // 2
    for i in range(delta.degree + 2):
        assert torsion_coefficient(delta, i) == semigroup_torsion(p, q, i)
        assert torsion_coefficient(delta, -i) == torsion_coefficient(delta, i)


@given(coprime_pairs)
def test_second_difference_reconstruction(pq):
    # a_i = t_{i-1} - 2 t_i + t_{i+1} for i >= 1, a_0 from Delta(1) = 1
    p, q = pq
    delta = torus_knot_alexander(p, q)
    t = lambda i: torsion_coefficient(delta, i)  # noqa: E731
    rebuilt = {}
    for i in range(1, delta.degree + 2):
        rebuilt[i] = rebuilt[-i] = t(i - 1) - 2 * t(i) + t(i + 1)
    rebuilt[0] = 1 - sum(rebuilt.values())
    assert SymmetrizedAlexander.from_coefficients(rebuilt) == delta


@given(st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=5))
def test_mul_then_divide(f, g):
    g = {e: c for e, c in g.items() if c}
    assume(g and g[max(g)] in (1, -1))
    assert poly_divexact(poly_mul(f, g), g) == {e: c for e, c in f.items() if c}
