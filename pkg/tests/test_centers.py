from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mqapprox.centers import (
    CenterSet,
    ExplicitSequence,
    IntegerLattice,
    JitteredLattice,
    SequenceExhaustedError,
    UnsortedPointsError,
    load_explicit_sequence,
    next_at_least,
    select_centers,
    validate_separation,
)


def test_validate_separation():
    assert validate_separation([0, 1, 2, 3], 1)
    assert not validate_separation([0, Fraction(1, 2), 2], 1)
    assert validate_separation([5], 1)
    with pytest.raises(UnsortedPointsError):
        validate_separation([0, 2, 1], 1)


def test_integer_lattice():
    lattice = IntegerLattice()
    assert next_at_least(lattice, Fraction(15, 2)) == 8
    assert next_at_least(lattice, 8) == 8
    assert next_at_least(lattice, -Fraction(1, 2)) == 0
    assert lattice.points(Fraction(1, 2), 3) == [1, 2, 3]
    assert lattice.declared_delta == 1


def test_jittered_lattice_is_deterministic_and_separated():
    first = JitteredLattice(radius=Fraction(1, 4), seed=7)
    second = JitteredLattice(radius=Fraction(1, 4), seed=7)
    points = first.points(-20, 200)
    assert points == second.points(-20, 200)
    assert validate_separation(points, first.declared_delta)
    assert first.declared_delta == Fraction(1, 2)
    assert all(abs(first.point(n) - n) <= Fraction(1, 4) for n in range(-10, 10))
    assert all(p.denominator <= 1024 for p in points)
    assert JitteredLattice(radius=Fraction(1, 4), seed=8).points(0, 50) != first.points(0, 50)
    assert JitteredLattice(radius=0).point(5) == 5


@given(st.fractions(min_value=-100, max_value=1000, max_denominator=64), st.integers(0, 5))
def test_jittered_next_at_least(t: Fraction, seed: int):
    lattice = JitteredLattice(radius=Fraction(3, 8), seed=seed)
    found = lattice.next_at_least(t)
    assert found >= t
    assert not [p for p in lattice.points(t, found) if p < found]


def test_jittered_lattice_radius_validation():
    with pytest.raises(ValueError):
        JitteredLattice(radius=Fraction(1, 2))
    with pytest.raises(ValueError):
        JitteredLattice(radius=-Fraction(1, 8))


def test_explicit_sequence():
    seq = ExplicitSequence([1, 3, Fraction(7, 2), 10])
    assert seq.declared_delta == Fraction(1, 2)
    assert next_at_least(seq, 2) == 3
    assert next_at_least(seq, 10) == 10
    assert seq.points(2, 4) == [3, Fraction(7, 2)]
    with pytest.raises(SequenceExhaustedError):
        next_at_least(seq, 11)
    with pytest.raises(UnsortedPointsError):
        ExplicitSequence([1, 1])
    with pytest.raises(ValueError):
        ExplicitSequence([])
    with pytest.raises(ValueError):
        ExplicitSequence([0, Fraction(1, 2)], delta=1)


def test_load_explicit_sequence(tmp_path: Path):
    path = tmp_path / "points.txt"
    path.write_text("# centers\n16\n8\n\n33/2\n40.5\n")
    seq = load_explicit_sequence(path)
    assert seq.values == (8, 16, Fraction(33, 2), Fraction(81, 2))
    bad = tmp_path / "bad.txt"
    bad.write_text("8\nsixteen\n")
    with pytest.raises(ValueError, match="bad.txt:2"):
        load_explicit_sequence(bad)


def test_center_set():
    centers = CenterSet([8, 16, 33])
    assert len(centers) == 3
    assert list(centers) == [8, 16, 33]
    assert centers[1] == 16
    assert centers.smallest == 8
    assert centers.largest == 33
    assert centers.prefix(2) == CenterSet([8, 16])
    with pytest.raises(ValueError):
        centers.prefix(4)
    with pytest.raises(ValueError):
        CenterSet([8, 15])
    with pytest.raises(ValueError):
        CenterSet([0, 1])
    with pytest.raises(ValueError):
        CenterSet([])


def test_select_centers():
    assert select_centers(IntegerLattice(), 4, 8).centers == (8, 16, 32, 64)
    assert select_centers(IntegerLattice(), 3, Fraction(15, 2)).centers == (8, 16, 32)
    seq = ExplicitSequence([5, 9, 12, 19, 40, 100])
    assert select_centers(seq, 3, 6).centers == (9, 19, 40)
    with pytest.raises(SequenceExhaustedError):
        select_centers(seq, 5, 6)
    with pytest.raises(ValueError):
        select_centers(IntegerLattice(), 0, 8)
    with pytest.raises(ValueError):
        select_centers(IntegerLattice(), 2, 0)


@given(st.integers(1, 8), st.fractions(min_value=1, max_value=500, max_denominator=16), st.integers(0, 3))
def test_select_centers_doubles_from_a_jittered_lattice(M: int, y_min: Fraction, seed: int):
    centers = select_centers(JitteredLattice(radius=Fraction(1, 4), seed=seed), M, y_min)
    assert len(centers) == M
    assert centers.smallest >= y_min
    assert all(b >= 2 * a for a, b in zip(centers, list(centers)[1:]))
