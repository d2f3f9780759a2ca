import pytest
from hypothesis import given, settings, strategies as st

from macdemaz import CharacterElement, build_affine_data, delta, delta_word, demazure_character, weyl_character
from macdemaz.demazure import AFFINE, FINITE
from macdemaz.errors import AlcoveViolation, IndexOutOfRange, NotDominant
from macdemaz.weyl import longest_word, reduced_words

from conftest import mono


def test_a1_deltas(a1):
    assert delta(1, mono(a1, (1,))) == mono(a1, (1,)) + mono(a1, (-1,))
    assert delta(1, mono(a1, (0,))) == mono(a1, (0,))
    assert delta(0, mono(a1, (0,))) == mono(a1, (0,)) + mono(a1, (2,), q=1)
    want = mono(a1, (0,)) + (mono(a1, (2,)) + mono(a1, (0,)) + mono(a1, (-2,))) * mono(a1, (0,), q=1)
    assert delta_word((1, 0), mono(a1, (0,))) == want
    f = mono(a1, (1,), 2) + mono(a1, (-3,), q=-1)
    assert delta_word((), f) == f


def test_a1_demazure_characters(a1):
    assert demazure_character(a1, (), (1,)) == mono(a1, (1,))
    assert demazure_character(a1, (0,), (0,)) == mono(a1, (0,)) + mono(a1, (2,), q=1)
    adj = mono(a1, (2,)) + mono(a1, (0,)) + mono(a1, (-2,))
    assert demazure_character(a1, (1,), (2,), FINITE) == adj
    with pytest.raises(AlcoveViolation):
        demazure_character(a1, (0,), (2,))


def test_weyl_characters(a1, a2):
    assert weyl_character(a1, (0,)) == CharacterElement.one(a1)
    assert weyl_character(a1, (1,)) == mono(a1, (1,)) + mono(a1, (-1,))
    assert weyl_character(a1, (2,)) == mono(a1, (2,)) + mono(a1, (0,)) + mono(a1, (-2,))
    # dimensions of sl3 modules: (a+1)(b+1)(a+b+2)/2
    for a in range(3):
        for b in range(3):
            chi = weyl_character(a2, (a, b))
            assert sum(c.at_q_inverse_one() for c in chi.by_weight().values()) == (a + 1) * (b + 1) * (a + b + 2) // 2
    with pytest.raises(NotDominant):
        weyl_character(a2, (1, -1))


def test_index_ranges(a1):
    with pytest.raises(IndexOutOfRange):
        delta(0, mono(a1, (0,)), FINITE)
    with pytest.raises(IndexOutOfRange):
        delta(2, mono(a1, (0,)), AFFINE)


def test_longest_word_independence(a2):
    f = mono(a2, (1, 1))
    results = {str(delta_word(w, f, FINITE)) for w in reduced_words(a2, longest_word(a2).indices, affine=False)}
    assert len(results) == 1


@st.composite
def elements(draw):
    label = draw(st.sampled_from(["A1~1", "A2~1", "A3~2", "D3~2", "A4~2", "D4~3"]))
    d = build_affine_data(label)
    f = CharacterElement.zero(d)
    for _ in range(draw(st.integers(1, 3))):
        w = tuple(draw(st.lists(st.integers(-3, 3), min_size=d.n, max_size=d.n)))
        f = f + CharacterElement.monomial(d, w, draw(st.integers(-2, 3).filter(bool)), q=draw(st.integers(-1, 1)))
    return f


@settings(max_examples=100, deadline=None)
@given(elements(), st.data())
def test_idempotent(f, draw):
    i = draw.draw(st.integers(0, f.data.n))
    once = delta(i, f)
    assert delta(i, once) == once


@settings(max_examples=100, deadline=None)
@given(elements(), st.data())
def test_finite_delta_fixes_invariants(f, draw):
    d = f.data
    i = draw.draw(st.integers(1, d.n))
    once = delta(i, f, FINITE)
    assert delta(i, once, FINITE) == once
    chi = delta_word(longest_word(d), f, FINITE)
    for j in range(1, d.n + 1):
        assert delta(j, chi, FINITE) == chi
