"""Unitary minimal-model spectrum, chirality and fusion-dimension bounds.

Labels (m; j, k) with j, k in {1/2, 3/2, ...} carry

    h = (jk - 1/4)/(m+2),  q = (j-k)/(m+2),  c = 3m/(m+2).

The admissible range is j+k < m+2 under the standard convention and
j+k < m under the strict one (the strict range is empty at m = 1 and
excludes the vacuum label; both are exposed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import HALF
from .scalars import Scalar
from .verma import VermaModule, VermaParams

CONVENTIONS = ("standard", "paper-strict")


def central_charge(m: int) -> Fraction:
    return Fraction(3 * m, m + 2)


@dataclass(frozen=True)
class MinimalLabel:
    m: int
    j: Fraction
    k: Fraction

    def __post_init__(self):
        for v in (self.j, self.k):
            if v <= 0 or (v - HALF).denominator != 1:
                raise ValueError("labels lie in {1/2, 3/2, ...}")

    @property
    def h(self) -> Fraction:
        return (self.j * self.k - Fraction(1, 4)) / (self.m + 2)

    @property
    def q(self) -> Fraction:
        return (self.j - self.k) / (self.m + 2)

    @property
    def c(self) -> Fraction:
        return central_charge(self.m)

    def params(self) -> VermaParams:
        return VermaParams(self.c, self.h, self.q, self.m)

    def to_json(self):
        return {
            "m": self.m,
            "j": str(self.j),
            "k": str(self.k),
            "h": str(self.h),
            "q": str(self.q),
            "c": str(self.c),
        }


def spectrum(m: int, convention: str = "standard") -> list[MinimalLabel]:
    if m < 1:
        raise ValueError("m must be a positive integer")
    if convention not in CONVENTIONS:
        raise ValueError("unknown convention %r" % (convention,))
    bound = m if convention == "paper-strict" else m + 2
    labels = []
    j = HALF
    while j + HALF < bound:
        k = HALF
        while j + k < bound:
            labels.append(MinimalLabel(m, j, k))
            k += 1
        j += 1
    labels.sort(key=lambda l: (l.j, l.k))
    return labels


def classify_chirality(label: MinimalLabel) -> str:
    """'chiral', 'anti-chiral', 'both' or 'neither', decided by the
    level-1/2 Gram entries 2h -/+ q of the label's Verma module."""
    module = VermaModule(label.params())
    _, plus_rows = module.gram_matrix(HALF, 1)
    _, minus_rows = module.gram_matrix(HALF, -1)
    chiral = plus_rows[0][0].is_zero()
    anti = minus_rows[0][0].is_zero()
    if chiral and anti:
        return "both"
    if chiral:
        return "chiral"
    if anti:
        return "anti-chiral"
    return "neither"


def fusion_upper_bound(l1: MinimalLabel, l2: MinimalLabel, l3: MinimalLabel) -> int:
    """Upper bound for the dimension of the intertwiner space of type
    (l3; l1, l2), from charge bookkeeping and the chirality reduction
    applied to the first label."""
    if not (l1.m == l2.m == l3.m):
        raise ValueError("labels must share m")
    diff = l3.q - l1.q - l2.q
    if diff == 0:
        bound = 2
    elif diff in (1, -1):
        bound = 1
    else:
        return 0
    if classify_chirality(l1) != "neither":
        bound = min(bound, 1)
    return bound


def leading_exponent(l1: MinimalLabel, l2: MinimalLabel, l3: MinimalLabel) -> Fraction:
    if not (l1.m == l2.m == l3.m):
        raise ValueError("labels must share m")
    return l3.h - l1.h - l2.h


@dataclass
class CharacterSeries:
    """Truncated two-variable graded-dimension series: weight (q-exponent)
    and charge (z-exponent) to nonnegative dimension."""

    truncation: Fraction
    coeffs: dict[tuple[Fraction, Fraction], int] = field(default_factory=dict)

    def add(self, weight: Fraction, charge: Fraction, dim: int) -> None:
        if dim < 0:
            raise ValueError("negative dimension")
        if weight > self.truncation:
            raise ValueError("weight beyond truncation")
        if dim:
            key = (weight, charge)
            self.coeffs[key] = self.coeffs.get(key, 0) + dim

    def items(self):
        return sorted(self.coeffs.items())

    def to_json(self):
        return {
            "truncation": str(self.truncation),
            "terms": [
                {"weight": str(w), "charge": str(z), "dim": d}
                for (w, z), d in self.items()
            ],
        }
