"""Specialized nonsymmetric and symmetric Macdonald polynomials at ``t = infinity``.

``E_lam(q, inf)`` is obtained from a Demazure character: descend ``lam`` to
the alcove point ``lam~`` along ``w_lam``, apply ``Delta_{w_lam}`` to
``e^{lam~}`` and multiply by ``q^k`` where ``w_lam<lam~> = lam + k delta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charring import Q_INFINITY, CharacterElement, CoeffPoly, specialize
from .demazure import AFFINE, FINITE, delta, delta_word, is_antidominant, weyl_character
from .errors import (
    InvarianceFailure,
    NegativeCoefficient,
    NonTermination,
    NotAntidominant,
    TheoremMismatch,
)
from .rootdata import RootSystemData
from .weyl import SMALLEST, act_linear, linear_action, longest_word, orbit_data, weight_leq


def q_step(data: RootSystemData) -> Fraction:
    """Exponent unit of ``q`` in ``E_lam(q, inf)``: ``e^{-alpha_0}`` carries ``q^{1/a_0}``."""
    return Fraction(1, data.a0)


def e_tinf_raw(data: RootSystemData, lam, policy: str = SMALLEST) -> tuple[CharacterElement, Fraction]:
    """``(Delta_{w_lam} e^{lam~}, k)`` before the ``q^k`` renormalization."""
    od = orbit_data(data, lam, policy)
    raw = delta_word(od.w_lam, CharacterElement.monomial(data, od.lam_tilde), AFFINE)
    return raw, od.delta_shift


def e_tinf(data: RootSystemData, lam, policy: str = SMALLEST) -> CharacterElement:
    """``E_lam(q, inf)``; the coefficient of ``e^lam`` is checked to be exactly 1."""
    lam = tuple(lam)
    raw, k = e_tinf_raw(data, lam, policy)
    out = raw.shift(q=k)
    lead = out.coefficient(lam)
    if lead != CoeffPoly.constant(data.m, 1):
        raise TheoremMismatch(f"coefficient of e^{lam} in E_lam(q,inf) is {lead}, not 1")
    return out


def is_invariant(f: CharacterElement) -> bool:
    """Finite Weyl group invariance, checked generator by generator."""
    data = f.data
    groups = f.by_weight()
    for i in range(1, data.n + 1):
        for mu, c in groups.items():
            if groups.get(linear_action(data, i, mu)) != c:
                return False
    return True


def p_tinf(data: RootSystemData, lam, policy: str = SMALLEST) -> CharacterElement:
    """``P_lam(q, inf)`` for antidominant ``lam``; equals ``E_lam(q, inf)``."""
    lam = tuple(lam)
    if not is_antidominant(data, lam):
        raise NotAntidominant(f"{lam} is not antidominant")
    f = e_tinf(data, lam, policy)
    for i in range(1, data.n + 1):
        if delta(i, f, FINITE) != f:
            raise InvarianceFailure(f"Delta_{i} does not fix P_{lam}(q,inf)")
    if not is_invariant(f):
        raise InvarianceFailure(f"P_{lam}(q,inf) is not W-invariant")
    return f


@dataclass
class ExpansionTable:
    """``P_lam(q, inf) = sum_mu d_{lam mu}(q) chi_mu`` indexed by antidominant ``mu``."""

    lam: tuple[int, ...]
    entries: dict[tuple[int, ...], CoeffPoly] = field(default_factory=dict)

    def to_json(self) -> list[dict]:
        return [
            {"mu": list(mu), "d": d.to_json(), "d_at_1": d.at_q_inverse_one()}
            for mu, d in sorted(self.entries.items())
        ]

    def resynthesize(self, data: RootSystemData) -> CharacterElement:
        w0 = longest_word(data)
        out = CharacterElement.zero(data)
        for mu, d in sorted(self.entries.items()):
            out = out + weyl_character(data, act_linear(data, w0, mu)) * d
        return out


def _dominance_maximal(data: RootSystemData, weights) -> tuple[int, ...]:
    dom = [nu for nu in weights if all(c >= 0 for c in nu)]
    if not dom:
        raise InvarianceFailure("no dominant weight left in a W-invariant remainder")
    for nu in sorted(dom, reverse=True):
        beaten = False
        for other in dom:
            if other == nu:
                continue
            diff = data.weight_to_root(tuple(a - b for a, b in zip(other, nu)))
            if all(x >= 0 for x in diff):
                beaten = True
                break
        if not beaten:
            return nu
    raise AssertionError("dominance order has no maximal element")


def expand_in_weyl_characters(data: RootSystemData, lam, policy: str = SMALLEST) -> ExpansionTable:
    lam = tuple(lam)
    P = p_tinf(data, lam, policy)
    w0 = longest_word(data)
    table = ExpansionTable(lam)
    rest = P
    cap = 10 * (len(P.support()) + 1)
    while rest:
        cap -= 1
        if cap < 0:
            raise NonTermination("expansion into Weyl characters did not terminate")
        nu = _dominance_maximal(data, rest.support())
        d = rest.coefficient(nu)
        mu = act_linear(data, w0, nu)
        if not d.is_poly_in_qinv(q_step(data)):
            raise NegativeCoefficient(f"d_{{{lam},{mu}}} = {d} is not a nonnegative integer polynomial in q^-{q_step(data)}")
        table.entries[mu] = d
        rest = rest - weyl_character(data, nu) * d
    if table.entries.get(lam) != CoeffPoly.constant(data.m, 1):
        raise TheoremMismatch(f"d_{{lam,lam}} = {table.entries.get(lam)} for lam = {lam}")
    for mu in table.entries:
        if not weight_leq(data, mu, lam):
            raise TheoremMismatch(f"expansion index {mu} is not below {lam} in the Bruhat order")
    if table.resynthesize(data) != P:
        raise TheoremMismatch(f"re-synthesis of P_{lam} failed")
    return table


def e_double_limit(data: RootSystemData, lam, policy: str = SMALLEST) -> CharacterElement:
    """``E_lam(inf, inf)``, cross-checked against the finite Demazure character
    ``Delta_{wring_lam w0}(e^{lam_+})``."""
    lam = tuple(lam)
    lim = specialize(e_tinf(data, lam, policy), Q_INFINITY)
    od = orbit_data(data, lam, policy)
    other = delta_word(od.wring_w0, CharacterElement.monomial(data, od.lam_plus), FINITE)
    if lim != other:
        raise TheoremMismatch(f"E_{lam}(inf,inf) = {lim} but the finite Demazure character is {other}")
    return lim
