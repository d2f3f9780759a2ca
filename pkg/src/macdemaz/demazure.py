"""Affine and finite Demazure operators.

``Delta_i e^L = (e^L - e^{-alpha_i} e^{s_i<L>}) / (1 - e^{-alpha_i})``.  With
``r`` the coroot pairing of ``L`` (level one in the affine regime, level zero
in the finite one) this is the chain ``e^L + e^{L - alpha_i} + ... `` of
``r + 1`` terms, read as a negative chain when ``r + 1 < 0``.
"""

from __future__ import annotations

from collections import defaultdict

from .charring import CharacterElement, chain_terms
from .errors import AlcoveViolation, IndexOutOfRange, NotDominant
from .rootdata import RootSystemData
from .weyl import _word, in_alcove, longest_word

AFFINE = "affine"
FINITE = "finite"


def _level(data: RootSystemData, i: int, regime: str) -> int:
    if regime == AFFINE:
        if not 0 <= i <= data.n:
            raise IndexOutOfRange(f"affine Demazure index {i} outside 0..{data.n}")
        return 1
    if regime == FINITE:
        if not 1 <= i <= data.n:
            raise IndexOutOfRange(f"finite Demazure index {i} outside 1..{data.n}")
        return 0
    raise ValueError(f"unknown regime {regime!r}")


def step_q_units(data: RootSystemData, i: int) -> int:
    """q-exponent (in units of 1/m) carried by one factor ``e^{-alpha_i}``."""
    v = data.alpha_delta[i] * data.m
    assert v.denominator == 1
    return int(v)


def delta(i: int, f: CharacterElement, regime: str = AFFINE) -> CharacterElement:
    data = f.data
    level = _level(data, i, regime)
    step = data.alpha_finite[i]
    # in the finite regime alpha_0 never occurs, so the q-step is 0 there
    sq = step_q_units(data, i)
    out: dict = defaultdict(int)
    for (mu, a, b, c), v in f.terms.items():
        r = data.level_coroot(mu, i, level)
        for w, dq, sign in chain_terms(mu, r + 1, step, sq):
            out[(w, a + dq, b, c)] += sign * v
    return CharacterElement(data, out)


def delta_word(w, f: CharacterElement, regime: str = AFFINE) -> CharacterElement:
    """``Delta_{i1} ... Delta_{il} f``: the last letter acts first."""
    for i in reversed(_word(w)):
        f = delta(i, f, regime)
    return f


def demazure_character(data: RootSystemData, w, lam, regime: str = AFFINE) -> CharacterElement:
    """``Delta_w(e^lam)`` with ``q = e^{-delta}`` folded into the coefficients.

    In the affine regime ``lam`` must lie in the fundamental alcove; in the
    finite regime it is normally the dominant ``lam_+``.
    """
    lam = tuple(lam)
    if regime == AFFINE and not in_alcove(data, lam):
        raise AlcoveViolation(f"{lam} is not in the fundamental alcove of {data.label}")
    return delta_word(w, CharacterElement.monomial(data, lam), regime)


def is_dominant(data: RootSystemData, lam) -> bool:
    return all(c >= 0 for c in lam)


def is_antidominant(data: RootSystemData, lam) -> bool:
    return all(c <= 0 for c in lam)


def weyl_character(data: RootSystemData, mu) -> CharacterElement:
    """Character of the irreducible finite-dimensional module with highest weight ``mu``."""
    mu = tuple(mu)
    if len(mu) != data.n:
        raise ValueError(f"weight {mu} has wrong rank for {data.label}")
    if not is_dominant(data, mu):
        raise NotDominant(f"{mu} is not dominant")
    cache = data._cache.setdefault("weyl_character", {})
    if mu not in cache:
        cache[mu] = delta_word(longest_word(data), CharacterElement.monomial(data, mu), FINITE)
    return cache[mu]
