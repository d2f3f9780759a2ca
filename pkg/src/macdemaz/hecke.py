"""Generic ``(q, t)`` oracle: the polynomial representation of the double
affine Hecke algebra, eigenvalue monomials, the ``G_{i,lam}`` recursion,
intertwiners and the symmetrizer.

Only reduced types are handled; the non-reduced type needs extra parameters.

``T_<0>`` acts through the level-one action ``s_0<.>`` while ``T_0`` uses the
linear one; both are ``t^{1/2} e^{s(lam)} + (t^{1/2} - t^{-1/2}) K`` with ``K``
the geometric kernel ``(e^lam - e^{s(lam)}) / (1 - e^{-alpha_0})``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .charring import T_INFINITY, CharacterElement, CoeffPoly, chain_terms, specialize
from .demazure import step_q_units, weyl_character
from .errors import BudgetExceeded, IndexOutOfRange, NegativePairing, NonReducedType, PositiveExponent, PositiveTExponent
from .rootdata import RootSystemData
from .weyl import (
    SMALLEST,
    _word,
    finite_act_root,
    finite_descents,
    finite_group,
    orbit_data,
    reduced_word_from_vector,
    reflect,
    simple_dot_action,
)

DEFAULT_BUDGET = (2, 4)  # (max rank, max sum |c_i|)


def _require_reduced(data: RootSystemData) -> None:
    if not data.reduced:
        raise NonReducedType(f"{data.label}: the generic oracle needs a reduced root system")


def t_half(data: RootSystemData, i: int) -> tuple[int, int]:
    """``t_i^{1/2}`` as ``(t_s, t_l)`` half-unit exponents."""
    cls = data.t_classes[i]
    if cls == "s":
        return (1, 0)
    if cls == "l":
        return (0, 1)
    raise NonReducedType(f"node {i} of {data.label} has a middle root length")


def _t_coeff(data: RootSystemData, i: int, power: int) -> CoeffPoly:
    """``t_i^{power/2}``."""
    s, l = t_half(data, i)
    return CoeffPoly(data.m, {(0, s * power, l * power): 1})


def t_minus(data: RootSystemData, i: int) -> CoeffPoly:
    """``t_i^{1/2} - t_i^{-1/2}``."""
    return _t_coeff(data, i, 1) - _t_coeff(data, i, -1)


# -- T_i --------------------------------------------------------------------


def hecke_t(i: int, f: CharacterElement, inverse: bool = False, linear_zero: bool = False) -> CharacterElement:
    """``pi(T_i) f`` (``pi(T_<0>) f`` for ``i = 0`` unless ``linear_zero``)."""
    data = f.data
    _require_reduced(data)
    if not 0 <= i <= data.n:
        raise IndexOutOfRange(f"Hecke index {i} outside 0..{data.n}")
    ds, dl = t_half(data, i)
    level = 0 if (i == 0 and linear_zero) else 1
    step = data.alpha_finite[i]
    sq = step_q_units(data, i)
    groups: dict = defaultdict(list)
    for (mu, a, b, c), v in f.terms.items():
        groups[mu].append((a, b, c, v))
    out: dict = defaultdict(int)
    for mu, coeffs in groups.items():
        r = data.level_coroot(mu, i, level)
        # t^{1/2} e^{s(mu)} plus the kernel, each kernel term with t^{1/2} - t^{-1/2}
        img = (tuple(x - r * y for x, y in zip(mu, step)), r * sq, 1)
        targets = [(w, dq, sign) for w, dq, sign in chain_terms(mu, r, step, sq)]
        for a, b, c, v in coeffs:
            out[(img[0], a + img[1], b + ds, c + dl)] += v
            for w, dq, sign in targets:
                sv = sign * v
                out[(w, a + dq, b + ds, c + dl)] += sv
                out[(w, a + dq, b - ds, c - dl)] -= sv
            if inverse:
                out[(mu, a, b + ds, c + dl)] -= v
                out[(mu, a, b - ds, c - dl)] += v
    return CharacterElement(data, out)


def hecke_word(w, f: CharacterElement, inverse: bool = False, linear_zero: bool = False) -> CharacterElement:
    """``T_{i1} ... T_{il} f`` (last letter first); with ``inverse`` every factor is inverted
    in place, i.e. ``T_{i1}^{-1} ... T_{il}^{-1} f``."""
    for i in reversed(_word(w)):
        f = hecke_t(i, f, inverse, linear_zero)
    return f


def s_theta_word(data: RootSystemData) -> tuple[int, ...]:
    """A reduced word of the finite reflection ``s_theta``."""
    key = "s_theta_word"
    if key not in data._cache:
        vec = reflect(data, 0, (1,) * data.n, 0)
        data._cache[key] = reduced_word_from_vector(data, vec, affine=False).indices
    return data._cache[key]


def t0_inverse(f: CharacterElement) -> CharacterElement:
    """``T_0^{-1} = T_<0> X_{-alpha_0}``."""
    data = f.data
    neg = tuple(-x for x in data.alpha_finite[0])
    return hecke_t(0, f.shift(neg, q=data.alpha_delta[0]))


def y_theta(f: CharacterElement) -> CharacterElement:
    """``Y_theta = T_0^{-1} T_{s_theta}^{-1}``."""
    data = f.data
    _require_reduced(data)
    word = s_theta_word(data)
    # T_{s_theta}^{-1} = T_{jl}^{-1} ... T_{j1}^{-1}: T_{j1}^{-1} acts first
    for i in word:
        f = hecke_t(i, f, inverse=True)
    return t0_inverse(f)


# -- eigenvalues --------------------------------------------------------------


@dataclass(frozen=True)
class EigenMonomial:
    """``q^q t_s^ts t_l^tl`` with rational exponents."""

    q: Fraction
    ts: Fraction
    tl: Fraction

    def __mul__(self, other: "EigenMonomial") -> "EigenMonomial":
        return EigenMonomial(self.q + other.q, self.ts + other.ts, self.tl + other.tl)

    def inverse(self) -> "EigenMonomial":
        return EigenMonomial(-self.q, -self.ts, -self.tl)

    def poly(self, m: int) -> CoeffPoly:
        return CoeffPoly.monomial(m, self.q, self.ts, self.tl)


def eigen_monomial(data: RootSystemData, mu, k, lam, policy: str = SMALLEST) -> EigenMonomial:
    """``q^{k + (mu, lam)} prod_i t_i^{-(mu, wring_lam(lam_i^vee))}``; ``mu`` in root coordinates."""
    lam = tuple(lam)
    fd = finite_descents(data, lam, policy)
    inv = finite_act_root(data, tuple(reversed(fd.wring.indices)), tuple(mu))
    ts = tl = Fraction(0)
    for i in range(1, data.n + 1):
        c = Fraction(inv[i - 1])
        if not c:
            continue
        cls = data.t_classes[i]
        if cls == "s":
            ts -= c
        elif cls == "l":
            tl -= c
        else:
            raise NonReducedType(f"node {i} of {data.label} has a middle root length")
    return EigenMonomial(Fraction(k) + data.pair_root_weight(mu, lam), ts, tl)


def alpha_eigen(data: RootSystemData, i: int, lam, policy: str = SMALLEST) -> EigenMonomial:
    """``q^{(alpha_i, lam_bar)}``; ``alpha_0 = delta - theta`` for reduced types."""
    if i == 0:
        return eigen_monomial(data, tuple(-c for c in data.theta_root), 1, lam, policy)
    return eigen_monomial(data, tuple(int(k == i - 1) for k in range(data.n)), 0, lam, policy)


# -- G recursion ----------------------------------------------------------------


def g_op(i: int, lam, f: CharacterElement, policy: str = SMALLEST) -> CharacterElement:
    data = f.data
    _require_reduced(data)
    lam = tuple(lam)
    r = data.level_coroot(lam, i, 1)
    if r < 0:
        raise NegativePairing(f"(lam + Lambda_0, alpha_{i}^vee) = {r} < 0 for lam = {lam}")
    T = hecke_t(i, f)
    tinv = _t_coeff(data, i, -1)
    if r == 0:
        return T * tinv
    ev_inv = alpha_eigen(data, i, lam, policy).inverse().poly(data.m)
    one = CoeffPoly.constant(data.m, 1)
    return T * ((one - ev_inv) * tinv) + f * (ev_inv * (one - tinv * tinv))


@dataclass
class GenericResult:
    F: CharacterElement
    normalization: CoeffPoly
    qshift: Fraction


def within_budget(data: RootSystemData, lam, budget=DEFAULT_BUDGET) -> bool:
    max_rank, max_norm = budget
    return data.n <= max_rank and sum(abs(c) for c in lam) <= max_norm


def e_generic(data: RootSystemData, lam, budget=DEFAULT_BUDGET, policy: str = SMALLEST) -> GenericResult:
    """Run ``G`` along ``w_lam`` from ``e^{lam~}``.

    ``F`` is ``normalization * q^qshift * E_lam(q, t)``; its ``t``-exponents are
    checked to be nonpositive.
    """
    _require_reduced(data)
    lam = tuple(lam)
    if budget is not None and not within_budget(data, lam, budget):
        raise BudgetExceeded(f"{data.label} rank {data.n}, weight {lam} outside oracle budget {budget}")
    od = orbit_data(data, lam, policy)
    F = CharacterElement.monomial(data, od.lam_tilde)
    norm = CoeffPoly.constant(data.m, 1)
    cur = od.lam_tilde
    for i in reversed(od.w_lam.indices):
        ev_inv = alpha_eigen(data, i, cur, policy).inverse().poly(data.m)
        norm = norm * (CoeffPoly.constant(data.m, 1) - ev_inv)
        F = g_op(i, cur, F, policy)
        cur = simple_dot_action(data, i, cur)
    assert cur == lam
    b, c = max(k[2] for k in F.terms), max(k[3] for k in F.terms)
    if b > 0 or c > 0:
        raise PositiveTExponent(f"in the renormalized E_{lam}(q,t) (t_s^{Fraction(b, 2)}, t_l^{Fraction(c, 2)})")
    return GenericResult(F, norm, -od.delta_shift)


def normalization_at_tinf(res: GenericResult) -> CoeffPoly:
    try:
        return specialize(res.normalization, T_INFINITY)
    except PositiveExponent:
        raise PositiveTExponent("in the normalization factor") from None


# -- intertwiners ---------------------------------------------------------------


def intertwiner_apply(i: int, f: CharacterElement, lam, policy: str = SMALLEST) -> CharacterElement:
    """``I_i f = T_<i>(1 - Y_{alpha_i}) f - (t_i^{1/2} - t_i^{-1/2}) f`` with ``Y_{alpha_i}``
    replaced by its eigenvalue on ``f`` (eigenvalue data ``lam``)."""
    data = f.data
    _require_reduced(data)
    ev = alpha_eigen(data, i, lam, policy).poly(data.m)
    one = CoeffPoly.constant(data.m, 1)
    return hecke_t(i, f) * (one - ev) - f * t_minus(data, i)


def intertwiner_square_scalar(data: RootSystemData, i: int, lam, policy: str = SMALLEST) -> CoeffPoly:
    """``t_i + t_i^{-1} - ev - ev^{-1}`` with ``ev = q^{(alpha_i, lam_bar)}``."""
    ev = alpha_eigen(data, i, lam, policy)
    m = data.m
    return _t_coeff(data, i, 2) + _t_coeff(data, i, -2) - ev.poly(m) - ev.inverse().poly(m)


# -- symmetrizer -------------------------------------------------------------------


def symmetrize_C(f: CharacterElement, budget=DEFAULT_BUDGET) -> CharacterElement:
    """Unnormalized symmetrizer ``sum_w chi(T_w) T_w f`` with ``chi(T_i) = t_i^{1/2}``.

    The scalar prefactor ``(sum_w chi(T_w)^2)^{-1}`` is dropped; callers
    normalize by a coefficient of the result instead.
    """
    data = f.data
    _require_reduced(data)
    if budget is not None and data.n > budget[0]:
        raise BudgetExceeded(f"{data.label}: rank {data.n} above oracle budget {budget[0]}")
    out = CharacterElement.zero(data)
    # T_w for a word (j1..jl) is T_{j1} T_{w'}; build by prefixing along BFS words
    images: dict[tuple[int, ...], CharacterElement] = {(): f}
    for w in finite_group(data):
        word = w.indices
        if word:
            img = hecke_t(word[0], images[word[1:]])
            images[word] = img
        else:
            img = f
        chi = CoeffPoly.constant(data.m, 1)
        for j in word:
            chi = chi * _t_coeff(data, j, 1)
        out = out + img * chi
    return out


def finite_word_images(data: RootSystemData) -> list[tuple[int, ...]]:
    return [w.indices for w in finite_group(data)]


def weyl_point(data: RootSystemData) -> tuple[int, int]:
    """``(k_s, k_l)`` with ``t_s = q^{k_s}``, ``t_l = q^{k_l}`` the point where
    symmetric polynomials become Weyl characters: ``t_alpha = q^{(alpha, alpha)/2}``
    relative to the short length of ``alpha_0``."""
    short = data.squared_lengths[0]
    long_ = max(data.squared_lengths)
    r = long_ / short
    assert r.denominator == 1
    return 1, int(r)


def substitute_t(f, ks: int, kl: int):
    """Substitute ``t_s = q^{ks}``, ``t_l = q^{kl}`` in a :class:`CharacterElement`."""
    half = f.data.m // 2
    out: dict = defaultdict(int)
    for (w, a, b, c), v in f.terms.items():
        out[(w, a + half * (ks * b + kl * c), 0, 0)] += v
    return CharacterElement(f.data, out)


def degenerates_to_weyl(data: RootSystemData, lam, ks: int, kl: int, F: CharacterElement | None = None) -> tuple[bool, str]:
    """Symmetrize ``E_lam`` (any nonzero multiple ``F`` of it), substitute
    ``t_s = q^{ks}, t_l = q^{kl}`` and compare with ``chi_{lam_+}``.

    Returns ``(ok, detail)``; ``ok`` requires a nonzero multiple of the Weyl
    character, the multiple being the coefficient of ``e^{lam_+}``.
    """
    lam = tuple(lam)
    if F is None:
        F = e_generic(data, lam, budget=None).F
    S = substitute_t(symmetrize_C(F, budget=None), ks, kl)
    lam_plus = finite_descents(data, lam).lam_plus
    c = S.coefficient(lam_plus)
    if c.is_zero():
        return False, "coefficient of e^{lam_+} vanishes after substitution"
    if S != weyl_character(data, lam_plus) * c:
        return False, "symmetrized polynomial is not a multiple of the Weyl character"
    return True, ""
