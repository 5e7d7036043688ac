from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from defobs.errors import DescriptorError, UnknownAtomError
from defobs.exact import FiniteAbelianGroup
from defobs.manifolds import (
    O,
    P,
    Atom,
    Manifold,
    brieskorn,
    family,
    family_parameters,
    lookup,
    parse_descriptor,
    register_atom,
    registry,
    spherical_pi1_order,
    surgery,
)


def test_canonical_atoms():
    assert brieskorn(5, 3, 2) == P
    assert surgery(3, 2) == O.reverse()
    assert surgery(1, 7) == surgery(1, 1)
    assert str(brieskorn(7, 2, 3)) == "sigma(2,3,7)"


@pytest.mark.parametrize("text, rendered", [
    ("P", "P"),
    ("S3", "S3"),
    ("P # -9*O", "-9*O # P"),
    ("-25*O # 3*P", "-25*O # 3*P"),
    ("25*-O", "-25*O"),
    ("- - P", "P"),
    ("P # P # -P", "2*P # -P"),
    ("sigma(7,3,2)", "sigma(2,3,7)"),
    ("sigma(2,3,5)", "P"),
    ("surgery(T(3,2),2)", "-O"),
    ("surgery(T(1,5),2)", "surgery(T(1,1),2)"),
])
def test_parse_and_render(text, rendered):
    assert parse_descriptor(text).render() == rendered


@pytest.mark.parametrize("text, position", [
    ("", 0),
    ("P #", 3),
    ("P ## O", 3),
    ("3*", 2),
    ("sigma(2,3)", 9),
    ("P$", 1),
])
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(DescriptorError) as info:
        parse_descriptor(text)
    assert info.value.position == position
    assert f"at position {position}" in str(info.value)


@pytest.mark.parametrize("text", ["sigma(2,4,5)", "surgery(T(2,3),3)", "surgery(T(2,4),2)"])
def test_parse_rejects_invalid_parameters(text):
    with pytest.raises(ValueError):
        parse_descriptor(text)


def test_unknown_atom():
    with pytest.raises(UnknownAtomError):
        parse_descriptor("Q")


def test_family():
    assert family(2, 17).render() == "-17*O # 2*P"
    assert family_parameters(family(2, 17)) == (2, 17)
    assert family_parameters(family(1, -5)) is None  # +O summands: not the literal family
    assert family_parameters(parse_descriptor("P")) is None
    assert family(0, 0).is_s3()


def test_reverse_and_sum():
    m = parse_descriptor("2*P # -3*O")
    assert m.reverse().render() == "3*O # -2*P"
    assert (m + m.reverse()).multiplicity(P) == 2
    assert m.reverse().reverse() == m


def test_lookup_records():
    p = lookup(P)
    assert p.pi1_order == 120 and p.h1 == FiniteAbelianGroup() and p.d_table[()] == 2
    o = lookup(O)
    assert o.pi1_order == 48 and o.h1 == FiniteAbelianGroup((2,))
    assert sorted(o.d_table.values()) == [Fraction(1, 4), Fraction(7, 4)]
    assert lookup(brieskorn(2, 3, 7)).pi1_order is None
    assert lookup(surgery(2, 5)).pi1_order is None
    assert lookup(surgery(1, 1)).pi1_order == 2


def test_pi1_orders_of_spherical_seifert_manifolds():
    # binary polyhedral groups: tetrahedral 24, octahedral 48, icosahedral 120
    assert spherical_pi1_order((2, 3, 5), Fraction(1, 30)) == 120
    assert spherical_pi1_order((2, 3, 4), Fraction(2, 24)) == 48
    assert spherical_pi1_order((2, 3, 3), Fraction(1, 6)) == 24  # (-2; 1/2, 2/3, 2/3)
    assert spherical_pi1_order((2, 3, 6), Fraction(1, 36)) is None


def test_octahedral_order_from_surgery_description():
    # +2-surgery on T(2,3): base (2,3,4), |e| = 2 / (2*3*4)
    assert spherical_pi1_order((2, 3, 4), Fraction(2, 2 * 3 * 4)) == lookup(O).pi1_order


def test_register_atom_validates():
    with pytest.raises(ValueError):
        register_atom("bad name", 4, (2,), {(0,): 0, (1,): 0})
    with pytest.raises(ValueError):
        register_atom("X", 3, (2,), {(0,): 0, (1,): 0})  # |H1| must divide |pi1|
    assert "P" in registry() and "O" in registry()


atoms = st.sampled_from([P, O, brieskorn(2, 3, 7), surgery(2, 5), surgery(1, 1), brieskorn(2, 5, 7)])
signed_atoms = st.tuples(atoms, st.sampled_from([1, -1])).map(
    lambda t: t[0] if t[1] > 0 else t[0].reverse())
manifolds = st.lists(signed_atoms, max_size=8).map(lambda xs: Manifold.of(*xs))


@given(manifolds)
def test_render_parse_round_trip(m):
    assert parse_descriptor(m.render()) == m


@given(st.lists(signed_atoms, max_size=6), st.randoms())
def test_summand_order_irrelevant(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert Manifold.of(*xs) == Manifold.of(*ys)


@given(signed_atoms)
def test_atom_reverse_involution(a):
    assert a.reverse().reverse() == a
    assert isinstance(a, Atom)
