"""Sign-data combinatorics: admissibility, census, exact counting."""

import random

import pytest

from orbitop.errors import PreconditionError
from orbitop.invariants import (
    ChiData,
    chi_admissible,
    chi_count_brute_force,
    chi_family_census,
    chi_total_count,
    code_admissible,
)


def all_plus(n=4):
    row = tuple(tuple(1 for _ in range(n)) for _ in range(n))
    return ChiData(chi1=row, chi2=row, chi3=row)


def test_all_plus_admissible():
    assert chi_admissible(all_plus())


def test_two_minus_in_one_triple_inadmissible():
    base = [[1] * 4 for _ in range(4)]
    chi1 = [row[:] for row in base]
    chi2 = [row[:] for row in base]
    chi1[0][0] = -1  # chi1[j=0,k=0]
    chi2[0][0] = -1  # chi2[i=0,k=0] -> triple (0,0,0) has exactly two
    data = ChiData(
        chi1=tuple(map(tuple, chi1)),
        chi2=tuple(map(tuple, chi2)),
        chi3=tuple(map(tuple, base)),
    )
    assert not chi_admissible(data)


def test_single_minus_admissible():
    base = [[1] * 4 for _ in range(4)]
    chi1 = [row[:] for row in base]
    chi1[1][2] = -1
    data = ChiData(
        chi1=tuple(map(tuple, chi1)),
        chi2=tuple(map(tuple, base)),
        chi3=tuple(map(tuple, base)),
    )
    assert chi_admissible(data)


def test_product_family_always_admissible():
    rng = random.Random(11)
    for _ in range(50):
        delta = [rng.choice([1, -1]) for _ in range(4)]
        eps = [rng.choice([1, -1]) for _ in range(4)]
        zeta = [rng.choice([1, -1]) for _ in range(4)]
        chi1 = tuple(tuple(eps[j] * zeta[k] for k in range(4)) for j in range(4))
        chi2 = tuple(tuple(delta[i] * zeta[k] for k in range(4)) for i in range(4))
        chi3 = tuple(tuple(-delta[i] * eps[j] for j in range(4)) for i in range(4))
        data = ChiData(chi1=chi1, chi2=chi2, chi3=chi3)
        assert chi_admissible(data)
        # and the product of the three signs at every point is -1
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    assert chi1[j][k] * chi2[i][k] * chi3[i][j] == -1


def test_code_roundtrip_and_equivalence():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.choice([1, 2, 3, 4])
        code = rng.getrandbits(3 * n * n)
        data = ChiData.decode(code, n)
        assert data.encode() == code
        assert chi_admissible(data) == code_admissible(code, n)


def test_census_counts():
    census = chi_family_census(4)
    assert census.family1_count == 2048
    assert census.axis_family_count == 65536
    assert census.union_count == 198651
    assert census.union_count == 2048 + 3 * 65536 - 6 + 1


def test_census_members_admissible_sample():
    census = chi_family_census(4)
    rng = random.Random(5)
    members = sorted(census.members)
    for code in rng.sample(members, 500):
        assert chi_admissible(ChiData.decode(code, 4))


def test_total_count_small_grids():
    assert chi_total_count(1) == 5
    assert chi_total_count(2) == chi_count_brute_force(2)


def test_total_count_n3_consistent():
    # the two internal algorithms must agree (checked inside)
    assert chi_total_count(3) > 0


def test_total_count_n4_bounds():
    census = chi_family_census(4)
    total = chi_total_count(4)
    assert total >= census.union_count


def test_total_count_rejects_large_grid():
    with pytest.raises(PreconditionError):
        chi_total_count(5)


def test_brute_force_n1_patterns():
    # 8 sign patterns on one triple: all-plus, three singles, the triple
    assert chi_count_brute_force(1) == 5
