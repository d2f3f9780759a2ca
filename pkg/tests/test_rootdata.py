from fractions import Fraction

import pytest

from macdemaz import AffineRoot, AffineWeight, build_affine_data, finite_positive_roots, pairing, parse_type_label
from macdemaz.errors import MixedRootSystem, TypeLabelError, UnsupportedType
from macdemaz.rootdata import affine_positive_roots, coroot
from macdemaz.weyl import weight_box

from conftest import ALL_LABELS

# number of positive roots of the finite (reduced) root system
ROOT_COUNTS = {
    "A1~1": 1, "A2~1": 3, "A3~1": 6, "D4~1": 12, "E6~1": 36,
    "A2~2": 1, "A4~2": 4, "A6~2": 9,
    "A3~2": 4, "A5~2": 9, "D3~2": 4, "D4~2": 9, "E6~2": 24, "D4~3": 6,
}


def test_a1_tables():
    d = build_affine_data("A1~1")
    assert d.marks == (1, 1) and d.comarks == (1, 1)
    assert d.d == (1, 1)
    assert d.theta_root == (1,)
    assert d.theta == (2,)


def test_nonreduced_a0_is_two():
    d = build_affine_data("A4~2")
    assert d.a0 == 2
    assert not d.reduced
    for label in ALL_LABELS:
        other = build_affine_data(label)
        assert (other.a0 == 2) == (not other.reduced)


@pytest.mark.parametrize("label", ["B3~1", "C2~1", "F4~1", "G2~1", "A0~1", "D3~1", "E9~1", "A1~2"])
def test_unsupported(label):
    with pytest.raises(UnsupportedType):
        build_affine_data(label)


def test_label_parsing():
    assert parse_type_label("A4~2").rank == 2
    assert parse_type_label("A3~2").rank == 2
    assert parse_type_label("D3~2").rank == 2
    assert parse_type_label("E6~2").rank == 4
    assert parse_type_label("D4~3").rank == 2
    assert parse_type_label("A2").twist == 1
    assert parse_type_label("D~2", rank=3).label == "D4~2"
    with pytest.raises(TypeLabelError):
        parse_type_label("nonsense")
    with pytest.raises(TypeLabelError):
        parse_type_label("A2~1", rank=3)


@pytest.mark.parametrize("label", ALL_LABELS)
def test_invariants(label):
    d = build_affine_data(label)
    n = d.n
    B = d.root_gram
    for i in range(n + 1):
        for j in range(n + 1):
            assert B[i][j] == B[j][i]
        # delta = sum a_i alpha_i is isotropic against everything
        assert sum(d.marks[k] * B[k][i] for k in range(n + 1)) == 0
    # (lambda_i, alpha_j^vee) = delta_ij
    for i in range(n):
        lam = tuple(int(k == i) for k in range(n))
        for j in range(1, n + 1):
            assert d.level_coroot(lam, j, 0) == int(i == j - 1)
    # (Lambda_0, alpha_i^vee) is 1 at i = 0 and 0 elsewhere
    zero = (0,) * n
    assert [d.level_coroot(zero, i, 1) for i in range(n + 1)] == [1] + [0] * n
    theta = d.theta_root
    assert theta in d.positive_roots
    assert d.pair_roots(theta, theta) == 2 * d.a0
    assert len(d.positive_roots) == ROOT_COUNTS[label]


@pytest.mark.parametrize("label", ALL_LABELS)
def test_level_one_pairings_integral(label):
    d = build_affine_data(label)
    for lam in weight_box(d.n, 3 if d.n <= 3 else 2):
        for i in range(d.n + 1):
            assert isinstance(d.level_coroot(lam, i, 1), int)


@pytest.mark.parametrize("label", ["A2~1", "D3~2", "A4~2", "D4~3"])
def test_root_closure_is_idempotent(label):
    d = build_affine_data(label)
    roots = set(d.positive_roots)
    A = d.finite_cartan
    for beta in roots:
        for i in range(d.n):
            p = sum(A[i][j] * beta[j] for j in range(d.n))
            gamma = tuple(b - p if k == i else b for k, b in enumerate(beta))
            if gamma != tuple(-int(k == i) for k in range(d.n)):
                assert gamma in roots or tuple(-g for g in gamma) in roots


def test_finite_positive_roots_small():
    d = build_affine_data("A2~1")
    got = sorted(tuple(r.finite) for r in finite_positive_roots(d))
    assert got == [(0, 1), (1, 0), (1, 1)]
    # BC_n: both halves and full long roots appear
    d = build_affine_data("A4~2")
    fins = {tuple(r.finite) for r in finite_positive_roots(d)}
    assert any(Fraction(1, 2) in f for f in fins)
    assert len(fins) == 6


def test_pairing_examples(a1):
    al = AffineRoot.simple(a1, 1)
    assert pairing(al, al) == 2 / a1.d[1]
    lam0 = AffineWeight(a1, (0,))
    assert pairing(lam0, AffineRoot.simple(a1, 0)) == Fraction(1, a1.a0)
    for label in ["D3~2", "A4~2"]:
        d = build_affine_data(label)
        assert pairing(AffineWeight(d, (0,) * d.n), AffineRoot.simple(d, 0)) == Fraction(1, d.a0)
        for i in range(1, d.n + 1):
            for j in range(d.n):
                lam = tuple(int(k == j) for k in range(d.n))
                x = AffineWeight(d, lam)
                assert pairing(x, coroot(d, i)) - pairing(AffineWeight(d, (0,) * d.n), coroot(d, i)) == int(j == i - 1)


def test_pairing_mixed_systems():
    with pytest.raises(MixedRootSystem):
        pairing(AffineRoot.simple(build_affine_data("A1~1"), 1), AffineRoot.simple(build_affine_data("A2~1"), 1))


def test_affine_roots_positive():
    d = build_affine_data("D3~2")
    for c in affine_positive_roots(d, 6):
        r = AffineRoot.from_simple_coords(d, c)
        assert r.is_positive() and not (-r).is_positive()
        assert r.simple_coords() == tuple(Fraction(x) for x in c)
