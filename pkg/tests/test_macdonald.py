"""Frozen values.

Rank one values are hand chains of Demazure operators.  Higher rank type A
expansions are checked against Kostka-Foulkes polynomials: for type A the
level one Demazure characters are q-Whittaker functions, whose Schur
coefficients are ``K_{mu' lam'}(q^{-1})`` (conjugate partitions).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macdemaz import CharacterElement, CoeffPoly, build_affine_data, e_double_limit, e_tinf, expand_in_weyl_characters, p_tinf
from macdemaz.errors import NotAntidominant
from macdemaz.macdonald import is_invariant, q_step
from macdemaz.demazure import weyl_character
from macdemaz.weyl import LARGEST, act_linear, longest_word

from conftest import TINF_LABELS, mono


def qpoly(m, *exps):
    out = CoeffPoly(m)
    for e in exps:
        out = out + CoeffPoly.monomial(m, q=e)
    return out


def test_a1_e_values(a1):
    assert e_tinf(a1, (0,)) == CharacterElement.one(a1)
    assert e_tinf(a1, (1,)) == mono(a1, (1,))
    assert e_tinf(a1, (2,)) == mono(a1, (2,)) + mono(a1, (0,), q=-1)
    assert e_tinf(a1, (-2,)) == mono(a1, (2,)) + mono(a1, (0,)) + mono(a1, (-2,)) + mono(a1, (0,), q=-1)
    assert e_tinf(a1, (-1,)) == mono(a1, (1,)) + mono(a1, (-1,))
    want = mono(a1, (3,)) + mono(a1, (1,), q=-1) + mono(a1, (1,), q=-2) + mono(a1, (-1,), q=-2)
    assert e_tinf(a1, (3,)) == want


def test_a1_p_and_expansion(a1):
    assert p_tinf(a1, (0,)) == CharacterElement.one(a1)
    assert p_tinf(a1, (-1,)) == mono(a1, (1,)) + mono(a1, (-1,))
    with pytest.raises(NotAntidominant):
        p_tinf(a1, (2,))
    t = expand_in_weyl_characters(a1, (-2,)).entries
    assert t == {(-2,): qpoly(2, 0), (0,): qpoly(2, -1)}
    assert expand_in_weyl_characters(a1, (-1,)).entries == {(-1,): qpoly(2, 0)}
    t = expand_in_weyl_characters(a1, (-4,)).entries
    assert t == {(-4,): qpoly(2, 0), (-2,): qpoly(2, -1, -2, -3), (0,): qpoly(2, -2, -4)}


def test_a1_double_limit(a1):
    assert e_double_limit(a1, (2,)) == mono(a1, (2,))
    assert e_double_limit(a1, (-2,)) == mono(a1, (2,)) + mono(a1, (0,)) + mono(a1, (-2,))
    assert e_double_limit(a1, (1,)) == mono(a1, (1,))


def test_a2_kostka_foulkes(a2):
    assert e_tinf(a2, (1, 1)) == mono(a2, (1, 1)) + mono(a2, (0, 0), q=-1)
    # adjoint: lam = (2,1), mu = (1,1,1): K_{(3),(2,1)} = q
    assert expand_in_weyl_characters(a2, (-1, -1)).entries == {(-1, -1): qpoly(2, 0), (0, 0): qpoly(2, -1)}
    # lam = (3): K_{(2,1),(1,1,1)} = q + q^2, K_{(3),(1,1,1)} = q^3
    assert expand_in_weyl_characters(a2, (-3, 0)).entries == {
        (-3, 0): qpoly(2, 0),
        (-1, -1): qpoly(2, -1, -2),
        (0, 0): qpoly(2, -3),
    }


def test_a3_kostka_foulkes():
    d = build_affine_data("A3~1")
    # lam = (2,2): K_{(3,1),(2,2)} = q, K_{(4),(2,2)} = q^2
    assert expand_in_weyl_characters(d, (0, -2, 0)).entries == {
        (0, -2, 0): qpoly(2, 0),
        (-1, 0, -1): qpoly(2, -1),
        (0, 0, 0): qpoly(2, -2),
    }


def test_nonreduced_half_powers():
    d = build_affine_data("A4~2")
    assert q_step(d) == Fraction(1, 2)
    halves = set()
    for lam in [(-1, 0), (0, -1), (-2, 0), (2, 0), (1, 1)]:
        for c in e_tinf(d, lam).by_weight().values():
            assert c.is_poly_in_qinv(Fraction(1, 2))
            halves.update(e for e, _, _ in c.exponents() if e.denominator == 2)
    assert halves


@pytest.mark.parametrize("label", TINF_LABELS)
def test_policies_agree(label):
    d = build_affine_data(label)
    for lam in [(-1,) * d.n, (2,) + (0,) * (d.n - 1), (0,) * (d.n - 1) + (-2,)]:
        assert e_tinf(d, lam) == e_tinf(d, lam, LARGEST)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(TINF_LABELS), st.data())
def test_p_is_invariant_and_dimension_matches(label, draw):
    d = build_affine_data(label)
    lam = tuple(-x for x in draw.draw(st.lists(st.integers(0, 2), min_size=d.n, max_size=d.n)))
    P = p_tinf(d, lam)
    assert is_invariant(P)
    table = expand_in_weyl_characters(d, lam)
    assert table.resynthesize(d) == P
    assert all(c.is_poly_in_qinv(q_step(d)) for c in table.entries.values())
    # d_{lam mu}(1) are multiplicities, so they add up to the total size
    size = sum(c.at_q_inverse_one() for c in P.by_weight().values())
    dims = sum(
        e["d_at_1"] * sum(c.at_q_inverse_one() for c in weyl_character(d, act_linear(d, longest_word(d), mu)).by_weight().values())
        for e, mu in zip(table.to_json(), sorted(table.entries))
    )
    assert size == dims
