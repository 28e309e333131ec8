"""Unitary spectrum, chirality classification, fusion-dimension bounds."""

from fractions import Fraction

import pytest

from ns2engine.minimal import (CharacterSeries, MinimalLabel, central_charge,
                               classify_chirality, fusion_upper_bound,
                               leading_exponent, spectrum)

HALF = Fraction(1, 2)


def test_central_charges():
    assert central_charge(1) == 1
    assert central_charge(2) == Fraction(3, 2)
    assert central_charge(3) == Fraction(9, 5)


@pytest.mark.parametrize("m,size", [(1, 3), (2, 6), (3, 10)])
def test_spectrum_sizes(m, size):
    labels = spectrum(m)
    assert len(labels) == size == (m + 1) * (m + 2) // 2
    assert len(set(labels)) == size


def test_spectrum_contains_vacuum():
    for m in (1, 2, 3):
        vac = MinimalLabel(m, HALF, HALF)
        assert vac in spectrum(m)
        assert vac.h == 0 and vac.q == 0


def test_paper_strict_convention():
    assert spectrum(1, "paper-strict") == []
    assert len(spectrum(3, "paper-strict")) == 3
    with pytest.raises(ValueError):
        spectrum(2, "no-such-convention")


def test_label_weights():
    lab = MinimalLabel(2, HALF, Fraction(3, 2))
    assert lab.h == Fraction(1, 8)
    assert lab.q == Fraction(-1, 4)
    assert lab.c == Fraction(3, 2)
    with pytest.raises(ValueError):
        MinimalLabel(2, Fraction(1), HALF)  # labels lie in {1/2, 3/2, ...}


def test_chirality_classification():
    # chiral iff k = 1/2, anti-chiral iff j = 1/2
    for m in (1, 2, 3):
        for lab in spectrum(m):
            got = classify_chirality(lab)
            chiral = lab.k == HALF
            anti = lab.j == HALF
            want = ("both" if chiral and anti else "chiral" if chiral
                    else "anti-chiral" if anti else "neither")
            assert got == want, lab


def test_fusion_bound_example():
    # bound 0: charge difference outside {0, +-1}
    l1 = MinimalLabel(2, HALF, Fraction(3, 2))
    l3 = MinimalLabel(2, HALF, HALF)
    assert fusion_upper_bound(l1, l1, l3) == 0


def test_fusion_bound_vacuum_fusion():
    for m in (1, 2):
        vac = MinimalLabel(m, HALF, HALF)
        for lab in spectrum(m):
            # vacuum is both chiral and anti-chiral: bound reduces to 1
            assert fusion_upper_bound(vac, lab, lab) == 1


def test_fusion_bound_rules():
    for m in (2, 3):
        labels = spectrum(m)
        for l1 in labels:
            for l2 in labels:
                for l3 in labels:
                    bound = fusion_upper_bound(l1, l2, l3)
                    diff = l3.q - l1.q - l2.q
                    if diff not in (-1, 0, 1):
                        assert bound == 0
                    elif diff in (1, -1):
                        assert bound <= 1
                    else:
                        assert bound <= 2
                    if classify_chirality(l1) != "neither":
                        assert bound <= 1


def test_fusion_requires_same_level():
    with pytest.raises(ValueError):
        fusion_upper_bound(MinimalLabel(1, HALF, HALF),
                           MinimalLabel(2, HALF, HALF),
                           MinimalLabel(2, HALF, HALF))


def test_leading_exponent():
    l1 = MinimalLabel(2, HALF, Fraction(3, 2))
    vac = MinimalLabel(2, HALF, HALF)
    assert leading_exponent(vac, l1, l1) == 0
    assert leading_exponent(l1, l1, vac) == -Fraction(1, 4)


def test_character_series():
    s = CharacterSeries(Fraction(2))
    s.add(Fraction(0), Fraction(0), 1)
    s.add(Fraction(1), Fraction(0), 2)
    s.add(Fraction(1), Fraction(0), 1)
    assert s.coeffs[(Fraction(1), Fraction(0))] == 3
    with pytest.raises(ValueError):
        s.add(Fraction(5, 2), Fraction(0), 1)
    with pytest.raises(ValueError):
        s.add(Fraction(1), Fraction(0), -1)
    data = s.to_json()
    assert data["truncation"] == "2"
    assert data["terms"][0] == {"weight": "0", "charge": "0", "dim": 1}
