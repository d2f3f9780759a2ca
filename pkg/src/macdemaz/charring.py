"""Exact sparse arithmetic in the group algebra of the weight lattice.

Coefficients live in ``Q[q^{+-1/m}, t_s^{+-1/2}, t_l^{+-1/2}]``.  Exponents are
stored as integers in units of ``1/m`` (for ``q``) and ``1/2`` (for ``t``);
coefficients are ``int`` or ``Fraction``.

A :class:`CharacterElement` keeps one flat dictionary keyed by
``(weight, q, t_s, t_l)``; that is the layout every operator in the package
iterates over, so grouping by weight only happens on output.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Union

from .errors import GridError, MixedRootSystem, NonIntegralChain, PositiveExponent
from .rootdata import AffineRoot, AffineWeight, RootSystemData

Number = Union[int, Fraction]

T_INFINITY = "t-infinity"
Q_INFINITY = "q-infinity"
T_EQUALS_Q = "t-equals-q"
MODES = (T_INFINITY, Q_INFINITY, T_EQUALS_Q)


def _units(x, unit: int, what: str) -> int:
    v = Fraction(x) * unit
    if v.denominator != 1:
        raise GridError(f"{what} exponent {x} is not on the 1/{unit} grid")
    return int(v)


def _norm(c):
    if c.__class__ is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _clean(terms: dict) -> dict:
    return {k: (_norm(v) if v.__class__ is Fraction else v) for k, v in terms.items() if v}


class CoeffPoly:
    """Sparse Laurent polynomial in ``q^{1/m}``, ``t_s^{1/2}``, ``t_l^{1/2}``."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: dict | None = None):
        self.m = m
        self.terms = _clean(terms) if terms else {}

    @classmethod
    def monomial(cls, m: int, q=0, ts=0, tl=0, coeff: Number = 1) -> "CoeffPoly":
        key = (_units(q, m, "q"), _units(ts, 2, "t_s"), _units(tl, 2, "t_l"))
        return cls(m, {key: coeff})

    @classmethod
    def constant(cls, m: int, c: Number) -> "CoeffPoly":
        return cls(m, {(0, 0, 0): c})

    def _check(self, other: "CoeffPoly") -> None:
        if other.m != self.m:
            raise MixedRootSystem(f"q-grids 1/{self.m} and 1/{other.m} differ")

    def _coerce(self, other) -> "CoeffPoly":
        if isinstance(other, CoeffPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CoeffPoly.constant(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CoeffPoly(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = defaultdict(int)
        for (a, b, c), x in self.terms.items():
            for (d, e, f), y in other.terms.items():
                out[(a + d, b + e, c + f)] += x * y
        return CoeffPoly(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CoeffPoly.constant(self.m, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CoeffPoly.constant(self.m, other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def exponents(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [(Fraction(a, self.m), Fraction(b, 2), Fraction(c, 2)) for a, b, c in self.terms]

    def shift(self, q=0, ts=0, tl=0) -> "CoeffPoly":
        """Multiply by ``q^q t_s^ts t_l^tl`` (exponents as rationals)."""
        dq, ds, dl = _units(q, self.m, "q"), _units(ts, 2, "t_s"), _units(tl, 2, "t_l")
        return CoeffPoly(self.m, {(a + dq, b + ds, c + dl): v for (a, b, c), v in self.terms.items()})

    def specialize(self, mode: str) -> "CoeffPoly":
        return CoeffPoly(self.m, _specialize_terms(self.terms, mode, self.m, lambda k: k))

    def is_poly_in_qinv(self, step=1, nonnegative_integers: bool = True) -> bool:
        """True if every term is ``c q^{-j}`` with ``j >= 0`` a multiple of ``step`` and no ``t``.

        ``step`` is the exponent unit of the variable, ``1`` for ``Z[q^-1]`` and
        ``1/2`` for ``Z[q^{-1/2}]``.
        """
        unit = Fraction(step) * self.m
        if unit.denominator != 1:
            raise GridError(f"step {step} is not on the 1/{self.m} grid")
        unit = int(unit)
        for (a, b, c), v in self.terms.items():
            if b or c or a > 0 or a % unit:
                return False
            if nonnegative_integers and not (isinstance(v, int) and v > 0):
                return False
        return True

    def at_q_inverse_one(self) -> Number:
        """Value at ``q = 1`` for a ``t``-free polynomial."""
        if any(b or c for _, b, c in self.terms):
            raise ValueError("polynomial depends on t")
        return _norm(sum(self.terms.values(), 0))

    def sort_key(self):
        return sorted(self.terms.items())

    def to_json(self) -> list[dict]:
        return [
            {
                "q": str(Fraction(a, self.m)),
                "ts": str(Fraction(b, 2)),
                "tl": str(Fraction(c, 2)),
                "val": str(Fraction(v)),
            }
            for (a, b, c), v in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1], kv[0][2]))
        ]

    @classmethod
    def from_json(cls, m: int, items: Iterable[dict]) -> "CoeffPoly":
        out: dict = defaultdict(int)
        for it in items:
            key = (
                _units(Fraction(it["q"]), m, "q"),
                _units(Fraction(it["ts"]), 2, "t_s"),
                _units(Fraction(it["tl"]), 2, "t_l"),
            )
            out[key] += Fraction(it["val"])
        return cls(m, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1], kv[0][2])):
            mono = []
            for name, e in (("q", Fraction(a, self.m)), ("ts", Fraction(b, 2)), ("tl", Fraction(c, 2))):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}" if e > 0 and e.denominator == 1 else f"{name}^({e})")
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append("*".join(mono))
            elif v == -1:
                parts.append("-" + "*".join(mono))
            else:
                parts.append(f"{v}*" + "*".join(mono))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CoeffPoly({self})"


def _specialize_terms(terms: dict, mode: str, m: int, weight_of):
    """Shared kernel of :func:`specialize`; ``terms`` keys end in ``(q, ts, tl)``."""
    out: dict = defaultdict(int)
    if mode == T_INFINITY:
        for key, v in terms.items():
            *head, a, b, c = key
            if b > 0 or c > 0:
                raise PositiveExponent(mode, f"at {tuple(head)} (t_s^{Fraction(b, 2)} t_l^{Fraction(c, 2)})")
            if b == 0 and c == 0:
                out[key] += v
    elif mode == Q_INFINITY:
        for key, v in terms.items():
            *head, a, b, c = key
            if a > 0:
                raise PositiveExponent(mode, f"at {tuple(head)} (q^{Fraction(a, m)})")
            if a == 0:
                out[key] += v
    elif mode == T_EQUALS_Q:
        half = m // 2
        for key, v in terms.items():
            *head, a, b, c = key
            out[(*head, a + (b + c) * half, 0, 0)] += v
    else:
        raise ValueError(f"unknown specialization mode {mode!r}")
    return out


class CharacterElement:
    """Finite sum ``sum c_{mu}(q, t) e^{mu}`` over weights ``mu`` of one root system."""

    __slots__ = ("data", "terms")

    def __init__(self, data: RootSystemData, terms: dict | None = None):
        self.data = data
        self.terms = _clean(terms) if terms else {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, data: RootSystemData) -> "CharacterElement":
        return cls(data)

    @classmethod
    def one(cls, data: RootSystemData) -> "CharacterElement":
        return cls.monomial(data, (0,) * data.n)

    @classmethod
    def monomial(cls, data: RootSystemData, weight, coeff=1, q=0, ts=0, tl=0) -> "CharacterElement":
        """``coeff * q^q t_s^ts t_l^tl e^weight``; ``coeff`` may itself be a :class:`CoeffPoly`."""
        weight = tuple(int(c) for c in weight)
        if len(weight) != data.n:
            raise ValueError(f"weight {weight} has wrong rank for {data.label}")
        base = CoeffPoly.monomial(data.m, q, ts, tl)
        if isinstance(coeff, CoeffPoly):
            base = base * coeff
        else:
            base = CoeffPoly(data.m, {k: v * coeff for k, v in base.terms.items()})
        return cls(data, {(weight, *k): v for k, v in base.terms.items()})

    @classmethod
    def from_affine_weight(cls, x: AffineWeight) -> "CharacterElement":
        """``e^{lambda + k delta} = q^{-k} e^{lambda}``."""
        return cls.monomial(x.data, x.finite, q=-Fraction(x.delta))

    @classmethod
    def from_weights(cls, data: RootSystemData, coeffs: dict) -> "CharacterElement":
        out = cls(data)
        for w, c in coeffs.items():
            out = out + cls.monomial(data, w, c)
        return out

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "CharacterElement") -> None:
        if not self.data.same_as(other.data):
            raise MixedRootSystem(f"{self.data.label} vs {other.data.label}")

    def __add__(self, other):
        if not isinstance(other, CharacterElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CharacterElement(self.data, out)

    def __neg__(self):
        return CharacterElement(self.data, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CharacterElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CharacterElement(self.data, {k: v * other for k, v in self.terms.items()})
        if isinstance(other, CoeffPoly):
            if other.m != self.data.m:
                raise MixedRootSystem("coefficient grid does not match the root system")
            out: dict = defaultdict(int)
            for (w, a, b, c), x in self.terms.items():
                for (d, e, f), y in other.terms.items():
                    out[(w, a + d, b + e, c + f)] += x * y
            return CharacterElement(self.data, out)
        if isinstance(other, CharacterElement):
            self._check(other)
            out = defaultdict(int)
            for (w1, a, b, c), x in self.terms.items():
                for (w2, d, e, f), y in other.terms.items():
                    out[(tuple(p + r for p, r in zip(w1, w2)), a + d, b + e, c + f)] += x * y
            return CharacterElement(self.data, out)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, beta=None, q=0, ts=0, tl=0, coeff: Number = 1) -> "CharacterElement":
        """Multiply by the monomial ``coeff * q^q t_s^ts t_l^tl e^beta`` (``pi(X_beta)`` for ``beta`` only)."""
        m = self.data.m
        dq, ds, dl = _units(q, m, "q"), _units(ts, 2, "t_s"), _units(tl, 2, "t_l")
        beta = tuple(beta) if beta is not None else (0,) * self.data.n
        out = {}
        for (w, a, b, c), v in self.terms.items():
            out[(tuple(x + y for x, y in zip(w, beta)), a + dq, b + ds, c + dl)] = v * coeff
        return CharacterElement(self.data, out)

    def __eq__(self, other):
        if not isinstance(other, CharacterElement):
            return NotImplemented
        return self.data.same_as(other.data) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection ---------------------------------------------------------

    def by_weight(self) -> dict[tuple[int, ...], CoeffPoly]:
        groups: dict = defaultdict(dict)
        for (w, a, b, c), v in self.terms.items():
            groups[w][(a, b, c)] = v
        return {w: CoeffPoly(self.data.m, groups[w]) for w in sorted(groups)}

    def coefficient(self, weight) -> CoeffPoly:
        weight = tuple(weight)
        return CoeffPoly(self.data.m, {(a, b, c): v for (w, a, b, c), v in self.terms.items() if w == weight})

    def support(self) -> list[tuple[int, ...]]:
        return sorted({k[0] for k in self.terms})

    def max_exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        a = max(k[1] for k in self.terms)
        b = max(k[2] for k in self.terms)
        c = max(k[3] for k in self.terms)
        return Fraction(a, self.data.m), Fraction(b, 2), Fraction(c, 2)

    def map_weights(self, fn) -> "CharacterElement":
        out: dict = defaultdict(int)
        for (w, a, b, c), v in self.terms.items():
            out[(tuple(fn(w)), a, b, c)] += v
        return CharacterElement(self.data, out)

    def to_json(self) -> list[dict]:
        return [{"weight": list(w), "coeff": p.to_json()} for w, p in self.by_weight().items()]

    @classmethod
    def from_json(cls, data: RootSystemData, items: Iterable[dict]) -> "CharacterElement":
        out = cls(data)
        for it in items:
            p = CoeffPoly.from_json(data.m, it["coeff"])
            out = out + cls.monomial(data, it["weight"], p)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, p in sorted(self.by_weight().items(), reverse=True):
            mono = "e^" + ",".join(str(x) for x in w) if any(w) else ""
            s = str(p)
            if not mono:
                parts.append(f"({s})" if len(p.terms) > 1 else s)
            elif s == "1":
                parts.append(mono)
            else:
                parts.append(f"({s})*{mono}" if len(p.terms) > 1 else f"{s}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CharacterElement[{self.data.label}]({self})"


def ring_ops():
    """Names of the supported ring operations (documentation helper for the CLI)."""
    return ("add", "subtract", "shift", "scalar")


def specialize(f, mode: str):
    """Specialize a :class:`CharacterElement` or :class:`CoeffPoly`.

    ``t-infinity`` drops every term with a negative ``t`` exponent and raises
    :class:`PositiveExponent` if a positive one is present; ``q-infinity`` does
    the same for ``q``; ``t-equals-q`` substitutes ``t_s = t_l = q``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown specialization mode {mode!r}")
    if isinstance(f, CoeffPoly):
        return f.specialize(mode)
    return CharacterElement(f.data, _specialize_terms(f.terms, mode, f.data.m, None))


# -- geometric kernel -----------------------------------------------------------


def chain_terms(mu, r: int, step_fin, step_q: int):
    """Terms of ``(e^mu - e^{mu - r*step}) / (1 - e^{-step})`` as ``(weight, q_units, sign)``.

    ``step`` has finite part ``step_fin`` and contributes ``q^{step_q/m}`` per
    factor ``e^{-step}``.  ``r >= 0`` gives ``sum_{j<r} e^{mu - j step}``;
    ``r < 0`` gives ``-sum_{1<=j<=-r} e^{mu + j step}``.
    """
    if r > 0:
        return [
            (tuple(x - j * y for x, y in zip(mu, step_fin)), j * step_q, 1)
            for j in range(r)
        ]
    if r < 0:
        return [
            (tuple(x + j * y for x, y in zip(mu, step_fin)), -j * step_q, -1)
            for j in range(1, -r + 1)
        ]
    return []


def geometric_kernel(top: AffineWeight, bottom: AffineWeight, step) -> CharacterElement:
    """``(e^top - e^bottom) / (1 - e^{-step})`` when ``top - bottom`` is an integer multiple of ``step``.

    ``step`` is an :class:`AffineRoot` or an :class:`AffineWeight`-like
    ``(finite, delta)`` pair; the level of ``top`` and ``bottom`` cancels.
    """
    data = top.data
    data.check_same(bottom.data)
    if isinstance(step, AffineRoot):
        data.check_same(step.data)
        s_fin = data.root_to_weight(step.finite)
        s_delta = Fraction(step.delta)
    else:
        s_fin, s_delta = tuple(step[0]), Fraction(step[1])
    diff = [Fraction(x) - y for x, y in zip(top.finite, bottom.finite)]
    ddelta = Fraction(top.delta) - Fraction(bottom.delta)
    r = None
    for x, y in zip(diff, s_fin):
        if y:
            r = Fraction(x) / y
            break
    if r is None:
        if s_delta:
            r = ddelta / s_delta
        elif any(diff) or ddelta:
            raise NonIntegralChain("step is zero but top != bottom")
        else:
            r = Fraction(0)
    if r.denominator != 1 or any(x != r * y for x, y in zip(diff, s_fin)) or ddelta != r * s_delta:
        raise NonIntegralChain("top - bottom is not an integer multiple of the step")
    r = int(r)
    if any(Fraction(y).denominator != 1 for y in s_fin):
        raise NonIntegralChain("step finite part is not a weight")
    m = data.m
    step_q = _units(s_delta, m, "q")
    base_q = _units(-Fraction(top.delta), m, "q")
    out: dict = defaultdict(int)
    for w, dq, sign in chain_terms(top.finite, r, tuple(int(y) for y in s_fin), step_q):
        out[(w, base_q + dq, 0, 0)] += sign
    return CharacterElement(data, out)


def one_minus_exp(data: RootSystemData, step) -> CharacterElement:
    """``1 - e^{-step}`` for an :class:`AffineRoot` step."""
    fin = data.root_to_weight(step.finite)
    if any(Fraction(y).denominator != 1 for y in fin):
        raise NonIntegralChain("step finite part is not a weight")
    return CharacterElement.one(data) - CharacterElement.monomial(
        data, tuple(-int(y) for y in fin), q=Fraction(step.delta)
    )
