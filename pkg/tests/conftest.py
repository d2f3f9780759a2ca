import pytest

from macdemaz import CharacterElement, build_affine_data

ALL_LABELS = [
    "A1~1", "A2~1", "A3~1", "D4~1", "E6~1",
    "A2~2", "A4~2", "A6~2",
    "A3~2", "A5~2", "D3~2", "D4~2", "E6~2", "D4~3",
]
TINF_LABELS = ["A1~1", "A2~1", "A3~1", "A4~2", "A3~2", "D3~2"]
ORACLE_LABELS = ["A1~1", "A2~1", "A3~2", "D3~2"]


@pytest.fixture(scope="session")
def a1():
    return build_affine_data("A1~1")


@pytest.fixture(scope="session")
def a2():
    return build_affine_data("A2~1")


def mono(data, w, coeff=1, **exps):
    return CharacterElement.monomial(data, w, coeff, **exps)
