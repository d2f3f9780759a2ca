"""Static data for affine root systems whose affine simple root is short.

Supported families (Kac labels ``X_N^{(r)}``, written ``"XN~r"``):

* untwisted simply-laced ``A_N^{(1)}``, ``D_N^{(1)}``, ``E_{6,7,8}^{(1)}``
* twisted ``A_{2n-1}^{(2)}``, ``D_{n+1}^{(2)}``, ``E_6^{(2)}``, ``D_4^{(3)}``
* the non-reduced ``A_{2n}^{(2)}`` in the basis
  ``alpha_0 = delta/2 + e_1``, ``alpha_i = -e_i + e_{i+1}``, ``alpha_n = -2 e_n``

Finite weights are integer tuples in the fundamental-weight basis; finite
roots are tuples in the simple-root basis.  The invariant form is normalized
by ``(alpha_i, alpha_j) = a_ij / d_i`` with ``d_i = a_i / a_i^vee``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import sympy

from .errors import MixedRootSystem, TypeLabelError, UnsupportedType

_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d*)\s*(?:~\s*(\d+))?\s*$")

_LONG_ALPHA0 = {"B", "C", "F", "G"}


@dataclass(frozen=True)
class AffineType:
    family: str  # "A", "D" or "E"
    index: int  # the N in X_N^{(r)}
    twist: int  # r
    rank: int  # number of finite simple roots

    @property
    def label(self) -> str:
        return f"{self.family}{self.index}~{self.twist}"

    @property
    def is_nonreduced(self) -> bool:
        return self.family == "A" and self.twist == 2 and self.index % 2 == 0


def parse_type_label(label: str, rank: int | None = None) -> AffineType:
    """Parse labels like ``"A2~1"``, ``"D3~2"``, ``"A4~2"``.

    A missing twist defaults to 1.  ``rank``, when given, must agree with the
    rank implied by the label; a label without the index (``"D~2"``) takes it
    from ``rank`` where that is unambiguous.
    """
    match = _LABEL_RE.match(label)
    if not match:
        raise TypeLabelError(f"cannot parse affine type label {label!r}")
    family = match.group(1).upper()
    twist = int(match.group(3) or 1)
    if match.group(2):
        index = int(match.group(2))
    else:
        index = _index_from_rank(label, family, twist, rank)

    if family in _LONG_ALPHA0 and twist == 1:
        raise UnsupportedType(
            f"{family}{index}~1 has a long affine simple root; only short-alpha_0 types are supported"
        )

    implied = _implied_rank(family, index, twist)
    if implied is None:
        raise UnsupportedType(f"no supported affine type {family}_{index}^({twist})")
    if rank is not None and rank != implied:
        raise TypeLabelError(f"rank {rank} does not match {label!r} (rank {implied})")
    return AffineType(family, index, twist, implied)


def _index_from_rank(label: str, family: str, twist: int, rank: int | None) -> int:
    if rank is None:
        raise TypeLabelError(f"label {label!r} needs an explicit rank")
    if rank < 1:
        raise UnsupportedType(f"rank {rank} is not positive")
    if twist == 1:
        return rank
    if twist == 2 and family == "D":
        return rank + 1
    if twist == 2 and family == "E":
        return 6
    if twist == 3 and family == "D":
        return 4
    raise TypeLabelError(f"label {label!r} is ambiguous without the index (A_(2n)^(2) or A_(2n-1)^(2))")


def _implied_rank(family: str, index: int, twist: int) -> int | None:
    if twist == 1:
        if family == "A" and index >= 1:
            return index
        if family == "D" and index >= 4:
            return index
        if family == "E" and index in (6, 7, 8):
            return index
        return None
    if twist == 2:
        if family == "A" and index >= 2:
            return index // 2 if index % 2 == 0 else (index + 1) // 2
        if family == "D" and index >= 3:
            return index - 1
        if family == "E" and index == 6:
            return 4
        return None
    if twist == 3 and family == "D" and index == 4:
        return 2
    return None


# Tables below follow Kac's "Aff" tables (node numbering as in Kac, except
# A_{2n}^{(2)} which is numbered so that alpha_0 is the shortest node and
# alpha_n the longest).  Each entry: squared lengths, bonds (i, j, (alpha_i, alpha_j)),
# marks a_i, comarks a_i^vee.


def _chain(nodes, value):
    return [(a, b, value) for a, b in zip(nodes, nodes[1:])]


def _table(t: AffineType):
    n = t.rank
    fam, idx, r = t.family, t.index, t.twist
    if r == 1:
        lengths = [2] * (n + 1)
        if fam == "A":
            if n == 1:
                bonds = [(0, 1, -2)]
            else:
                bonds = _chain(list(range(n + 1)), -1) + [(n, 0, -1)]
            marks = [1] * (n + 1)
        elif fam == "D":
            bonds = [(0, 2, -1), (1, 2, -1)] + _chain(list(range(2, n - 1)), -1)
            bonds += [(n - 2, n - 1, -1), (n - 2, n, -1)]
            marks = [1, 1] + [2] * (n - 3) + [1, 1]
        elif idx == 6:
            bonds = [(1, 3, -1), (3, 4, -1), (4, 5, -1), (5, 6, -1), (2, 4, -1), (0, 2, -1)]
            marks = [1, 1, 2, 2, 3, 2, 1]
        elif idx == 7:
            bonds = [(0, 1, -1), (1, 3, -1), (3, 4, -1), (4, 5, -1), (5, 6, -1), (6, 7, -1), (2, 4, -1)]
            marks = [1, 2, 2, 3, 4, 3, 2, 1]
        else:
            bonds = [(1, 3, -1), (3, 4, -1), (4, 5, -1), (5, 6, -1), (6, 7, -1), (7, 8, -1), (2, 4, -1), (0, 8, -1)]
            marks = [1, 2, 3, 4, 6, 5, 4, 3, 2]
        comarks = list(marks)
        return lengths, bonds, marks, comarks

    if r == 2 and fam == "A" and idx % 2 == 0:
        # A_{2n}^{(2)}: |alpha_0|^2 = 1, middle 2, |alpha_n|^2 = 4
        if n == 1:
            return [1, 4], [(0, 1, -2)], [2, 1], [1, 2]
        lengths = [1] + [2] * (n - 1) + [4]
        bonds = [(0, 1, -1)] + _chain(list(range(1, n)), -1) + [(n - 1, n, -2)]
        marks = [2] * n + [1]
        comarks = [1] + [2] * n
        return lengths, bonds, marks, comarks

    if r == 2 and fam == "A":
        # A_{2n-1}^{(2)}: alpha_0, alpha_1 both attach to alpha_2, alpha_n long
        lengths = [2] * n + [4]
        if n == 2:
            bonds = [(0, 2, -2), (1, 2, -2)]
        else:
            bonds = [(0, 2, -1), (1, 2, -1)] + _chain(list(range(2, n)), -1) + [(n - 1, n, -2)]
        marks = [1, 1] + [2] * (n - 2) + [1]
        comarks = [1, 1] + [2] * (n - 2) + [2]
        return lengths, bonds, marks, comarks

    if r == 2 and fam == "D":
        # D_{n+1}^{(2)}: short ends, long interior
        lengths = [2] + [4] * (n - 1) + [2]
        bonds = [(0, 1, -2)] + _chain(list(range(1, n)), -2) + [(n - 1, n, -2)]
        marks = [1] * (n + 1)
        comarks = [1] + [2] * (n - 1) + [1]
        return lengths, bonds, marks, comarks

    if r == 2 and fam == "E":
        lengths = [2, 2, 2, 4, 4]
        bonds = [(0, 1, -1), (1, 2, -1), (2, 3, -2), (3, 4, -2)]
        return lengths, bonds, [1, 2, 3, 2, 1], [1, 2, 3, 4, 2]

    # D_4^{(3)}
    return [2, 2, 6], [(0, 1, -1), (1, 2, -3)], [1, 2, 1], [1, 2, 3]


def _frac_inverse(rows):
    inv = sympy.Matrix(rows).inv()
    return tuple(
        tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(inv.rows)
    )


@dataclass(frozen=True, eq=False)
class RootSystemData:
    """Immutable tables for one affine type.

    Index ``0`` is the affine node throughout; finite weights and roots are
    indexed ``1..n`` but stored 0-based in tuples of length ``n``.
    """

    affine_type: AffineType
    cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    squared_lengths: tuple[Fraction, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic labels -------------------------------------------------------

    @property
    def label(self) -> str:
        return self.affine_type.label

    @property
    def n(self) -> int:
        return self.affine_type.rank

    @property
    def reduced(self) -> bool:
        return not self.affine_type.is_nonreduced

    @property
    def a0(self) -> int:
        return self.marks[0]

    @cached_property
    def d(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, c) for a, c in zip(self.marks, self.comarks))

    @cached_property
    def root_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """``(alpha_i, alpha_j)`` for ``0 <= i, j <= n``."""
        return tuple(
            tuple(Fraction(self.cartan[i][j]) / self.d[i] for j in range(self.n + 1))
            for i in range(self.n + 1)
        )

    @cached_property
    def finite_cartan(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row[1:] for row in self.cartan[1:])

    # -- finite lattice conversions -------------------------------------------

    @cached_property
    def simple_root_weights(self) -> tuple[tuple[int, ...], ...]:
        """Fundamental-weight coordinates of the finite simple roots (index 0 -> alpha_1)."""
        A = self.finite_cartan
        return tuple(tuple(A[i][j] for i in range(self.n)) for j in range(self.n))

    @cached_property
    def _weight_to_root(self):
        # columns of the finite Cartan matrix are the simple roots
        return _frac_inverse([[self.finite_cartan[i][j] for j in range(self.n)] for i in range(self.n)])

    def root_to_weight(self, beta) -> tuple:
        out = [0] * self.n
        for j, b in enumerate(beta):
            if b:
                col = self.simple_root_weights[j]
                for i in range(self.n):
                    out[i] += b * col[i]
        return tuple(out)

    def weight_to_root(self, lam) -> tuple[Fraction, ...]:
        M = self._weight_to_root
        return tuple(sum((M[i][j] * lam[j] for j in range(self.n)), Fraction(0)) for i in range(self.n))

    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """``(lambda_i, lambda_j)``."""
        # lambda_i = sum_k M_ik alpha_k with M = (A^T)^{-1}; (alpha_k, lambda_j) = delta_kj / d_j
        At = [[self.finite_cartan[j][i] for j in range(self.n)] for i in range(self.n)]
        M = _frac_inverse(At)
        return tuple(tuple(M[i][j] / self.d[j + 1] for j in range(self.n)) for i in range(self.n))

    def pair_weights(self, x, y) -> Fraction:
        G = self.weight_gram
        return sum((G[i][j] * x[i] * y[j] for i in range(self.n) if x[i] for j in range(self.n) if y[j]), Fraction(0))

    def pair_root_weight(self, beta, lam) -> Fraction:
        """``(beta, lambda)`` with ``beta`` in root and ``lambda`` in weight coordinates."""
        d = self.d
        return sum((Fraction(beta[j]) * lam[j] / d[j + 1] for j in range(self.n) if beta[j]), Fraction(0))

    def pair_roots(self, beta, gamma) -> Fraction:
        B = self.root_gram
        return sum(
            (B[i + 1][j + 1] * beta[i] * gamma[j] for i in range(self.n) if beta[i] for j in range(self.n) if gamma[j]),
            Fraction(0),
        )

    # -- theta, alpha_0 and the level-one pairings ----------------------------

    @cached_property
    def theta_root(self) -> tuple[int, ...]:
        return tuple(self.marks[1:])

    @cached_property
    def theta(self) -> tuple[int, ...]:
        return self.root_to_weight(self.theta_root)

    @cached_property
    def alpha_finite(self) -> tuple[tuple[int, ...], ...]:
        """Finite part of ``alpha_i`` (weight coordinates), ``i = 0..n``.

        ``alpha_0 = (delta - theta) / a_0`` has finite part ``-theta / a_0``.
        """
        a0 = self.a0
        th = self.theta
        if any(c % a0 for c in th):
            raise AssertionError(f"{self.label}: theta/a_0 is not in the weight lattice")
        return (tuple(-c // a0 for c in th),) + self.simple_root_weights

    @cached_property
    def alpha_delta(self) -> tuple[Fraction, ...]:
        """delta-coefficient of ``alpha_i``."""
        return (Fraction(1, self.a0),) + (Fraction(0),) * self.n

    @cached_property
    def lambda0_coroot(self) -> tuple[Fraction, ...]:
        """``(Lambda_0, alpha_i^vee) = d_i delta_{i0} / a_0``."""
        return (self.d[0] / self.a0,) + (Fraction(0),) * self.n

    @cached_property
    def _coroot0_coeffs(self) -> tuple[int, ...]:
        # (lambda, alpha_0^vee) = -(d_0 / a_0) (lambda, theta) = sum_j c_j lambda_j
        out = []
        for j in range(self.n):
            c = -self.d[0] / self.a0 * self.theta_root[j] / self.d[j + 1]
            if c.denominator != 1:
                raise AssertionError(f"{self.label}: non-integral (lambda_{j + 1}, alpha_0^vee)")
            out.append(int(c))
        return tuple(out)

    def linear_coroot(self, lam, i: int) -> int:
        """``(lambda, alpha_i^vee)`` for a finite weight (level zero)."""
        if i:
            return lam[i - 1]
        return sum(c * x for c, x in zip(self._coroot0_coeffs, lam))

    def level_coroot(self, lam, i: int, level: int = 1) -> int:
        """``(lambda + level * Lambda_0, alpha_i^vee)``; asserted integral."""
        if i:
            return lam[i - 1]
        v = self.linear_coroot(lam, 0) + level * self.lambda0_coroot[0]
        if v.denominator != 1:
            raise AssertionError(f"{self.label}: non-integral level pairing at alpha_0")
        return int(v)

    # -- misc derived data --------------------------------------------------

    @cached_property
    def m(self) -> int:
        dens = [2]
        for i in range(1, self.n + 1):
            dens.append((1 / self.d[i]).denominator)
        return lcm(*dens)

    @cached_property
    def t_classes(self) -> tuple[str, ...]:
        """Parameter class of each node: ``"s"`` (same length as alpha_0), ``"l"`` or ``"m"``."""
        lens = self.squared_lengths
        longest = max(lens)
        out = []
        for L in lens:
            if L == lens[0]:
                out.append("s")
            elif L == longest:
                out.append("l")
            else:
                out.append("m")
        return tuple(out)

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        """``rho = sum of fundamental coweights`` in weight coordinates (``lambda_i^vee = d_i lambda_i``)."""
        return tuple(self.d[i + 1] for i in range(self.n))

    @cached_property
    def dual_coxeter_level(self) -> int:
        """A level ``N`` at which ``sum(lambda_i)`` lies inside the fundamental alcove."""
        return 1 + sum(self.comarks[1:])

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Finite positive roots (reduced system) in simple-root coordinates, sorted by height."""
        n = self.n
        A = self.finite_cartan
        simple = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    p = sum(A[i][j] * beta[j] for j in range(n))
                    if p < 0:
                        gamma = tuple(b - p if k == i else b for k, b in enumerate(beta))
                        if gamma not in seen:
                            seen.add(gamma)
                            nxt.append(gamma)
            frontier = nxt
        return tuple(sorted(seen, key=lambda b: (sum(b), b)))

    def same_as(self, other: "RootSystemData") -> bool:
        return self is other or self.label == other.label

    def check_same(self, other: "RootSystemData") -> None:
        if not self.same_as(other):
            raise MixedRootSystem(f"{self.label} vs {other.label}")

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "rank": self.n,
            "cartan": [list(r) for r in self.cartan],
            "marks": list(self.marks),
            "comarks": list(self.comarks),
            "positive_roots": [[_json_number(c) for c in b.finite] for b in finite_positive_roots(self)],
        }

    def __repr__(self) -> str:
        return f"RootSystemData({self.label})"


def _json_number(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


_DATA_CACHE: dict[AffineType, RootSystemData] = {}


def build_affine_data(t: AffineType | str, rank: int | None = None) -> RootSystemData:
    """Build (and cache) the root data for an affine type or label."""
    if isinstance(t, str):
        t = parse_type_label(t, rank)
    elif _implied_rank(t.family, t.index, t.twist) != t.rank:
        raise UnsupportedType(f"invalid affine type {t}")
    if t in _DATA_CACHE:
        return _DATA_CACHE[t]

    lengths, bonds, marks, comarks = _table(t)
    size = t.rank + 1
    B = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        B[i][i] = Fraction(lengths[i])
    for i, j, v in bonds:
        B[i][j] = B[j][i] = Fraction(v)
    cartan = []
    for i in range(size):
        row = []
        for j in range(size):
            v = 2 * B[i][j] / B[i][i]
            if v.denominator != 1:
                raise AssertionError(f"non-integral Cartan entry in {t.label}")
            row.append(int(v))
        cartan.append(tuple(row))

    data = RootSystemData(
        affine_type=t,
        cartan=tuple(cartan),
        marks=tuple(marks),
        comarks=tuple(comarks),
        squared_lengths=tuple(Fraction(x) for x in lengths),
    )
    _check_invariants(data)
    _DATA_CACHE[t] = data
    return data


def _check_invariants(data: RootSystemData) -> None:
    n = data.n
    B = data.root_gram
    for i in range(n + 1):
        if B[i][i] != data.squared_lengths[i]:
            raise AssertionError(f"{data.label}: marks/comarks disagree with root lengths at node {i}")
        for j in range(n + 1):
            if B[i][j] != B[j][i]:
                raise AssertionError(f"{data.label}: pairing table not symmetric")
    for j in range(n + 1):
        if sum(data.marks[i] * B[i][j] for i in range(n + 1)) != 0:
            raise AssertionError(f"{data.label}: delta does not pair to zero with alpha_{j}")
    if data.comarks[0] != 1:
        raise AssertionError(f"{data.label}: expected a_0^vee = 1")
    th = data.theta_root
    if data.pair_roots(th, th) != 2 * data.a0:
        raise AssertionError(f"{data.label}: (theta, theta) != 2 a_0")
    if th not in data.positive_roots:
        raise AssertionError(f"{data.label}: theta is not a finite root")
    # touching these runs their integrality assertions
    data.alpha_finite
    data._coroot0_coeffs


# -- roots, weights and pairing ------------------------------------------------


@dataclass(frozen=True)
class AffineRoot:
    """``beta + k delta``; ``beta`` in simple-root coordinates (rational for the
    non-reduced type), ``k`` rational."""

    data: RootSystemData = field(compare=False, repr=False)
    finite: tuple
    delta: Fraction = Fraction(0)

    @classmethod
    def simple(cls, data: RootSystemData, i: int) -> "AffineRoot":
        if i == 0:
            return cls(data, tuple(Fraction(-a, data.a0) for a in data.theta_root), Fraction(1, data.a0))
        return cls(data, tuple(Fraction(int(k == i - 1)) for k in range(data.n)), Fraction(0))

    @classmethod
    def from_simple_coords(cls, data: RootSystemData, coeffs) -> "AffineRoot":
        """From coordinates in the affine simple roots ``alpha_0..alpha_n``."""
        c0 = Fraction(coeffs[0])
        k = c0 / data.a0
        fin = tuple(Fraction(coeffs[j + 1]) - c0 * data.theta_root[j] / data.a0 for j in range(data.n))
        return cls(data, fin, k)

    def simple_coords(self) -> tuple[Fraction, ...]:
        c0 = self.delta * self.data.a0
        return (c0,) + tuple(Fraction(b) + c0 * data_t / self.data.a0 for b, data_t in zip(self.finite, self.data.theta_root))

    def is_positive(self) -> bool:
        if self.delta > 0:
            return True
        if self.delta < 0:
            return False
        nz = [b for b in self.finite if b]
        return bool(nz) and all(b > 0 for b in nz)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(self.data, tuple(-b for b in self.finite), -self.delta)

    def weight(self) -> tuple:
        return self.data.root_to_weight(self.finite)


@dataclass(frozen=True)
class AffineWeight:
    """Level-one weight ``lambda + Lambda_0 + k delta`` (the ``Lambda_0`` is implicit)."""

    data: RootSystemData = field(compare=False, repr=False)
    finite: tuple[int, ...]
    delta: Fraction = Fraction(0)


def coroot(data: RootSystemData, i: int) -> AffineRoot:
    """``alpha_i^vee = d_i alpha_i`` viewed inside ``h*`` via the form."""
    a = AffineRoot.simple(data, i)
    return AffineRoot(data, tuple(data.d[i] * b for b in a.finite), data.d[i] * a.delta)


def finite_positive_roots(data: RootSystemData, nonreduced: bool = True) -> list[AffineRoot]:
    """Positive roots of the finite root system (``k = 0``).

    For ``A_{2n}^{(2)}`` the finite system is ``BC_n``: with ``nonreduced`` the
    halves of the long roots (the ``e_i``-type roots) are included as well.
    """
    roots = [AffineRoot(data, tuple(Fraction(b) for b in beta)) for beta in data.positive_roots]
    if nonreduced and not data.reduced:
        longest = max(data.pair_roots(b, b) for b in data.positive_roots)
        halves = [
            AffineRoot(data, tuple(Fraction(b, 2) for b in beta))
            for beta in data.positive_roots
            if data.pair_roots(beta, beta) == longest
        ]
        roots = sorted(roots + halves, key=lambda r: (sum(r.finite), r.finite))
    return roots


def affine_positive_roots(data: RootSystemData, max_height: int) -> list[tuple[int, ...]]:
    """Positive real affine roots of height <= ``max_height``, in ``alpha_0..alpha_n`` coordinates."""
    size = data.n + 1
    A = data.cartan
    simple = [tuple(int(k == j) for k in range(size)) for j in range(size)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            h = sum(c)
            for i in range(size):
                p = sum(A[i][j] * c[j] for j in range(size))
                if p < 0 and h - p <= max_height:
                    g = tuple(x - p if k == i else x for k, x in enumerate(c))
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
        frontier = nxt
    return sorted(seen, key=lambda c: (sum(c), c))


def _as_vector(x):
    """(finite part in weight coordinates, delta coefficient, Lambda_0 coefficient)."""
    if isinstance(x, AffineWeight):
        return x.data, tuple(Fraction(c) for c in x.finite), Fraction(x.delta), Fraction(1)
    if isinstance(x, AffineRoot):
        w = x.data.root_to_weight(x.finite)
        return x.data, tuple(Fraction(c) for c in w), Fraction(x.delta), Fraction(0)
    raise TypeError(f"cannot pair {type(x).__name__}")


def pairing(x, y) -> Fraction:
    """The invariant form on ``h*`` for affine weights and roots.

    ``(Lambda_0, delta) = 1``, ``(Lambda_0, Lambda_0) = (delta, delta) = 0``
    and ``Lambda_0``, ``delta`` are orthogonal to the finite part.
    """
    dx, fx, kx, lx = _as_vector(x)
    dy, fy, ky, ly = _as_vector(y)
    dx.check_same(dy)
    return dx.pair_weights(fx, fy) + kx * ly + lx * ky


def dump_rootdata(data: RootSystemData) -> str:
    return json.dumps(data.to_json(), sort_keys=True)
