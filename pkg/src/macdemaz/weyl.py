"""Affine Weyl group bookkeeping: actions, descents, reduced words, Bruhat order.

Words are tuples of node indices read left to right as products,
``(j1, ..., jl) -> s_{j1} ... s_{jl}``; the rightmost letter acts first.

Group elements are handled through their action on a regular point: for the
affine group, ``sum(lambda_i)`` at level ``N = 1 + sum(a_i^vee)`` lies in the
interior of the fundamental alcove, so ``w -> w(point)`` is injective and
``s_i`` is a left descent of ``w`` exactly when ``w(point)`` sits on the
negative side of the ``alpha_i`` wall.  The finite group uses
``sum(lambda_i)`` at level zero the same way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, NonTermination
from .rootdata import AffineRoot, AffineWeight, RootSystemData

SMALLEST = "smallest"
LARGEST = "largest"


@dataclass(frozen=True)
class WeylWord:
    indices: tuple[int, ...]
    reduced: bool = True

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def to_json(self) -> list[int]:
        return list(self.indices)


def _word(w) -> tuple[int, ...]:
    return w.indices if isinstance(w, WeylWord) else tuple(w)


def _check_index(data: RootSystemData, i: int, finite: bool = False) -> None:
    lo = 1 if finite else 0
    if not lo <= i <= data.n:
        raise IndexOutOfRange(f"node {i} outside {lo}..{data.n} for {data.label}")


# -- actions ------------------------------------------------------------------


def reflect(data: RootSystemData, i: int, lam, level: int = 1) -> tuple[int, ...]:
    """Finite part of ``s_i`` acting on ``lam + level*Lambda_0`` (level 1: dot action)."""
    r = data.level_coroot(lam, i, level)
    if not r:
        return tuple(lam)
    a = data.alpha_finite[i]
    return tuple(x - r * y for x, y in zip(lam, a))


def simple_dot_action(data: RootSystemData, i: int, lam) -> tuple[int, ...]:
    """``s_i . lam``; for ``i = 0`` this is ``s_theta(lam) + theta / a_0``."""
    _check_index(data, i)
    return reflect(data, i, lam, 1)


def linear_action(data: RootSystemData, i: int, lam) -> tuple[int, ...]:
    """Finite part of the linear action ``s_i(lam)``; for ``i = 0`` that is ``s_theta(lam)``."""
    _check_index(data, i)
    return reflect(data, i, lam, 0)


def simple_affine_action(data: RootSystemData, i: int, x: AffineWeight) -> AffineWeight:
    """``s_i<x>``: reflection of the level-one vector ``x + Lambda_0`` in ``alpha_i``."""
    _check_index(data, i)
    r = data.level_coroot(x.finite, i, 1)
    a = data.alpha_finite[i]
    return AffineWeight(
        data,
        tuple(c - r * y for c, y in zip(x.finite, a)),
        Fraction(x.delta) - r * data.alpha_delta[i],
    )


def act_affine(data: RootSystemData, word, x: AffineWeight) -> AffineWeight:
    for i in reversed(_word(word)):
        x = simple_affine_action(data, i, x)
    return x


def act_dot(data: RootSystemData, word, lam) -> tuple[int, ...]:
    lam = tuple(lam)
    for i in reversed(_word(word)):
        lam = reflect(data, i, lam, 1)
    return lam


def act_linear(data: RootSystemData, word, lam) -> tuple[int, ...]:
    lam = tuple(lam)
    for i in reversed(_word(word)):
        lam = reflect(data, i, lam, 0)
    return lam


def reflect_root(data: RootSystemData, i: int, coeffs) -> tuple:
    """Linear ``s_i`` on an affine root given in ``alpha_0..alpha_n`` coordinates."""
    row = data.cartan[i]
    p = sum(row[j] * c for j, c in enumerate(coeffs))
    return tuple(c - p if k == i else c for k, c in enumerate(coeffs))


def finite_reflect_root(data: RootSystemData, i: int, beta) -> tuple:
    """Linear ``s_i`` (``i >= 1``) on a finite root in simple-root coordinates."""
    row = data.finite_cartan[i - 1]
    p = sum(row[j] * b for j, b in enumerate(beta))
    return tuple(b - p if k == i - 1 else b for k, b in enumerate(beta))


def finite_act_root(data: RootSystemData, word, beta) -> tuple:
    beta = tuple(beta)
    for i in reversed(_word(word)):
        beta = finite_reflect_root(data, i, beta)
    return beta


# -- descents -----------------------------------------------------------------


def _pick(candidates: list[int], policy: str) -> int:
    return candidates[0] if policy == SMALLEST else candidates[-1]


def _cap(data: RootSystemData, lam) -> int:
    return 10 * (1 + sum(abs(int(c)) for c in lam)) * data.n


def descend(data: RootSystemData, vec, level: int, nodes: Sequence[int], policy: str = SMALLEST, sign: int = -1, cap: int | None = None):
    """Greedy descent: while some node ``i`` has ``sign * (vec + level*Lambda_0, alpha_i^vee) > 0``,
    reflect.  Returns the end point and the recorded indices."""
    vec = tuple(vec)
    word: list[int] = []
    if cap is None:
        cap = _cap(data, vec) + 10 * data.n * (level + 1)
    while True:
        cands = [i for i in nodes if sign * data.level_coroot(vec, i, level) > 0]
        if not cands:
            return vec, tuple(word)
        i = _pick(cands, policy)
        vec = reflect(data, i, vec, level)
        word.append(i)
        if len(word) > cap:
            raise NonTermination(f"descent did not terminate for {data.label} (cap {cap})")


def in_alcove(data: RootSystemData, lam) -> bool:
    return all(data.level_coroot(lam, i, 1) >= 0 for i in range(data.n + 1))


def descend_to_alcove(data: RootSystemData, lam, policy: str = SMALLEST) -> tuple[tuple[int, ...], WeylWord]:
    """Return ``(lam_tilde, w_lam)`` with ``w_lam . lam_tilde = lam`` and ``w_lam`` reduced."""
    lam = tuple(lam)
    end, word = descend(data, lam, 1, range(data.n + 1), policy, cap=_cap(data, lam))
    return end, WeylWord(word)


@dataclass(frozen=True)
class FiniteDescents:
    lam_minus: tuple[int, ...]
    lam_plus: tuple[int, ...]
    wring: WeylWord  # minimal finite element with wring(lam_minus) = lam
    w0: WeylWord
    wring_w0: WeylWord  # reduced word of wring * w0


def longest_word(data: RootSystemData, policy: str = SMALLEST) -> WeylWord:
    key = ("w0", policy)
    if key not in data._cache:
        _, word = descend(data, (1,) * data.n, 0, range(1, data.n + 1), policy, sign=1)
        data._cache[key] = WeylWord(word)
    return data._cache[key]


def finite_descents(data: RootSystemData, lam, policy: str = SMALLEST) -> FiniteDescents:
    lam = tuple(lam)
    lam_minus, word = descend(data, lam, 0, range(1, data.n + 1), policy, sign=1, cap=_cap(data, lam))
    w0 = longest_word(data, policy)
    lam_plus = act_linear(data, w0, lam_minus)
    prod = reduce_finite_word(data, word + w0.indices, policy)
    return FiniteDescents(lam_minus, lam_plus, WeylWord(word), w0, prod)


@dataclass(frozen=True)
class OrbitData:
    lam: tuple[int, ...]
    lam_tilde: tuple[int, ...]
    w_lam: WeylWord
    lam_minus: tuple[int, ...]
    lam_plus: tuple[int, ...]
    wring: WeylWord
    w0: WeylWord
    wring_w0: WeylWord
    delta_shift: Fraction  # k with w_lam<lam_tilde> = lam + k delta, i.e. (Lambda_0, w_lam<lam_tilde>)


def orbit_data(data: RootSystemData, lam, policy: str = SMALLEST) -> OrbitData:
    lam = tuple(lam)
    lt, w = descend_to_alcove(data, lam, policy)
    fd = finite_descents(data, lam, policy)
    img = act_affine(data, w, AffineWeight(data, lt, Fraction(0)))
    if img.finite != lam:
        raise AssertionError(f"w_lam<lam_tilde> has finite part {img.finite}, expected {lam}")
    return OrbitData(lam, lt, w, fd.lam_minus, fd.lam_plus, fd.wring, fd.w0, fd.wring_w0, img.delta)


# -- group elements -----------------------------------------------------------


def _regular(data: RootSystemData, affine: bool):
    return (1,) * data.n, (data.dual_coxeter_level if affine else 0)


def element_vector(data: RootSystemData, word, affine: bool = True) -> tuple[int, ...]:
    """Image of the regular point under ``word``; equal vectors <=> equal elements."""
    pt, level = _regular(data, affine)
    for i in reversed(_word(word)):
        if not affine:
            _check_index(data, i, finite=True)
        pt = reflect(data, i, pt, level)
    return pt


def is_left_descent(data: RootSystemData, vec, i: int, affine: bool = True) -> bool:
    level = data.dual_coxeter_level if affine else 0
    return data.level_coroot(vec, i, level) < 0


def reduced_word_from_vector(data: RootSystemData, vec, affine: bool = True, policy: str = SMALLEST) -> WeylWord:
    pt, level = _regular(data, affine)
    nodes = range(data.n + 1) if affine else range(1, data.n + 1)
    end, word = descend(data, vec, level, nodes, policy, cap=10_000)
    if end != pt:
        raise AssertionError("descent of an element vector missed the regular point")
    return WeylWord(word)


def reduce_word(data: RootSystemData, word, policy: str = SMALLEST) -> WeylWord:
    return reduced_word_from_vector(data, element_vector(data, word, True), True, policy)


def reduce_finite_word(data: RootSystemData, word, policy: str = SMALLEST) -> WeylWord:
    return reduced_word_from_vector(data, element_vector(data, word, False), False, policy)


def length(data: RootSystemData, word, affine: bool = True) -> int:
    if affine:
        return len(reduce_word(data, word))
    return len(reduce_finite_word(data, word))


def is_reduced(data: RootSystemData, word, affine: bool = True) -> bool:
    return length(data, word, affine) == len(_word(word))


def same_element(data: RootSystemData, u, w) -> bool:
    """Compare two words through their level-one action on ``lambda_1, ..., lambda_n, 0``."""
    n = data.n
    points = [tuple(int(k == j) for k in range(n)) for j in range(n)] + [(0,) * n]
    for p in points:
        x = AffineWeight(data, p, Fraction(0))
        if act_affine(data, u, x) != act_affine(data, w, x):
            return False
    return True


def bruhat_leq(data: RootSystemData, u, w, affine: bool = True) -> bool:
    """``u <= w`` in the Bruhat order; ``w`` must be given by a reduced word.

    Uses the lifting property: if ``s`` is a left descent of ``w`` then
    ``u <= w`` iff ``min(u, s u) <= s w``.
    """
    level = data.dual_coxeter_level if affine else 0
    v = element_vector(data, u, affine)
    for s in _word(w):
        if data.level_coroot(v, s, level) < 0:
            v = reflect(data, s, v, level)
    return v == _regular(data, affine)[0]


def bruhat_lt(data: RootSystemData, u, w, affine: bool = True) -> bool:
    return element_vector(data, u, affine) != element_vector(data, w, affine) and bruhat_leq(data, u, w, affine)


def weight_leq(data: RootSystemData, mu, lam) -> bool:
    """``mu <= lam`` in the order induced from ``w_mu <= w_lam``."""
    _, wm = descend_to_alcove(data, mu)
    _, wl = descend_to_alcove(data, lam)
    return bruhat_leq(data, wm, wl)


def weight_lt(data: RootSystemData, mu, lam) -> bool:
    _, wm = descend_to_alcove(data, mu)
    _, wl = descend_to_alcove(data, lam)
    return bruhat_lt(data, wm, wl)


def inversion_roots(data: RootSystemData, word) -> list[tuple]:
    """``Pi(w)`` for ``w = s_{jp} ... s_{j1}`` given as the word ``(jp, ..., j1)``:
    the roots ``s_{j1} ... s_{j(i-1)}(alpha_{ji})`` in ``alpha_0..alpha_n`` coordinates."""
    letters = list(reversed(_word(word)))  # j1, j2, ...
    size = data.n + 1
    out = []
    for k, j in enumerate(letters):
        c = tuple(int(x == j) for x in range(size))
        for i in reversed(letters[:k]):
            c = reflect_root(data, i, c)
        out.append(c)
    return out


def reduced_words(data: RootSystemData, word, affine: bool = True, limit: int = 10_000) -> list[tuple[int, ...]]:
    """All reduced words of the element represented by ``word``."""
    level = data.dual_coxeter_level if affine else 0
    nodes = range(data.n + 1) if affine else range(1, data.n + 1)
    memo: dict[tuple, list[tuple[int, ...]]] = {}
    pt = _regular(data, affine)[0]

    def rec(v):
        if v == pt:
            return [()]
        if v in memo:
            return memo[v]
        out = []
        for i in nodes:
            if data.level_coroot(v, i, level) < 0:
                for tail in rec(reflect(data, i, v, level)):
                    out.append((i,) + tail)
                    if len(out) > limit:
                        raise NonTermination("too many reduced words")
        memo[v] = out
        return out

    return rec(element_vector(data, word, affine))


def elements_up_to_length(data: RootSystemData, max_length: int, affine: bool = True) -> list[WeylWord]:
    """One reduced word for every element of length <= ``max_length``."""
    level = data.dual_coxeter_level if affine else 0
    nodes = range(data.n + 1) if affine else range(1, data.n + 1)
    pt = _regular(data, affine)[0]
    seen = {pt: ()}
    frontier = [pt]
    for _ in range(max_length):
        nxt = []
        for v in frontier:
            for i in nodes:
                # s_i w is longer than w iff s_i is not a left descent
                if data.level_coroot(v, i, level) > 0:
                    u = reflect(data, i, v, level)
                    if u not in seen:
                        seen[u] = (i,) + seen[v]
                        nxt.append(u)
        frontier = nxt
    return [WeylWord(w) for w in sorted(seen.values(), key=lambda w: (len(w), w))]


def finite_group(data: RootSystemData) -> list[WeylWord]:
    return elements_up_to_length(data, len(longest_word(data)), affine=False)


def braid_order(data: RootSystemData, i: int, j: int) -> int | None:
    """Order of ``s_i s_j`` (``None`` for infinite)."""
    p = data.cartan[i][j] * data.cartan[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p)


def weight_box(n: int, bound: int) -> list[tuple[int, ...]]:
    """All integer vectors with ``sum(|c_i|) <= bound``, in a fixed order."""
    out = [
        c
        for c in itertools.product(range(-bound, bound + 1), repeat=n)
        if sum(abs(x) for x in c) <= bound
    ]
    return sorted(out, key=lambda c: (sum(abs(x) for x in c), c))


def all_words(nodes: Iterable[int], length_: int):
    return itertools.product(list(nodes), repeat=length_)


def affine_root(data: RootSystemData, coeffs) -> AffineRoot:
    return AffineRoot.from_simple_coords(data, coeffs)
