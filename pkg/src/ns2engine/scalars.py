"""Exact arithmetic in the number field Q(i, sqrt(2), sqrt(m+2)).

A Scalar is a vector of 8 rational coordinates over the basis

    { 1, i, s, i*s, r, i*r, s*r, i*s*r },   s = sqrt(2), r = sqrt(m+2),

indexed by bit masks: bit 0 = i, bit 1 = s, bit 2 = r.  When m+2 is a
perfect square or twice a perfect square, r collapses into the {1, s}
sub-tower and the r-coordinates of the canonical form are zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

_I = 1
_S = 2
_R = 4

_ZERO8 = (Fraction(0),) * 8


_COLLAPSE_CACHE: dict[int, tuple[str, int]] = {}


def _collapse_mode(m: int) -> tuple[str, int]:
    """How r = sqrt(m+2) sits in the tower: ('square', k) if m+2 = k^2,
    ('twice', k) if m+2 = 2 k^2, else ('free', 0)."""
    cached = _COLLAPSE_CACHE.get(m)
    if cached is not None:
        return cached
    n = m + 2
    k = isqrt(n)
    if k * k == n:
        res = ("square", k)
    elif n % 2 == 0 and 2 * isqrt(n // 2) ** 2 == n:
        res = ("twice", isqrt(n // 2))
    else:
        res = ("free", 0)
    _COLLAPSE_CACHE[m] = res
    return res


class Scalar:
    """Immutable element of Q(i, sqrt(2), sqrt(m+2)) in canonical form."""

    __slots__ = ("coords", "m", "_hash", "_supp")

    def __init__(self, coords, m: int):
        if m < 0:
            raise ValueError("level parameter m must be nonnegative")
        cs = [c if type(c) is Fraction else Fraction(c) for c in coords]
        if len(cs) != 8:
            raise ValueError("need 8 coordinates")
        mode, k = _collapse_mode(m)
        if mode == "square":
            # r = k
            for j in range(8):
                if j & _R:
                    cs[j & ~_R] += k * cs[j]
                    cs[j] = Fraction(0)
        elif mode == "twice":
            # r = k*s, so s*r = 2k
            for j in range(8):
                if j & _R:
                    if j & _S:
                        cs[j & ~_R & ~_S] += 2 * k * cs[j]
                    else:
                        cs[(j & ~_R) | _S] += k * cs[j]
                    cs[j] = Fraction(0)
        object.__setattr__(self, "coords", tuple(cs))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_supp", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _unsafe(cls, coords: tuple, m: int) -> "Scalar":
        # internal: coords already canonical (linear images of canonical
        # forms, or products when r does not collapse)
        self = object.__new__(cls)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_supp", None)
        return self

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_fraction(cls, value, m: int) -> "Scalar":
        # rationals are canonical at every level parameter
        c = list(_ZERO8)
        c[0] = value if type(value) is Fraction else Fraction(value)
        return cls._unsafe(tuple(c), m)

    @classmethod
    def zero(cls, m: int) -> "Scalar":
        return cls(_ZERO8, m)

    @classmethod
    def one(cls, m: int) -> "Scalar":
        return cls.from_fraction(1, m)

    @classmethod
    def i(cls, m: int) -> "Scalar":
        c = list(_ZERO8)
        c[_I] = Fraction(1)
        return cls(c, m)

    @classmethod
    def sqrt2(cls, m: int) -> "Scalar":
        c = list(_ZERO8)
        c[_S] = Fraction(1)
        return cls(c, m)

    @classmethod
    def root(cls, m: int) -> "Scalar":
        """sqrt(m+2) (collapsed into the sub-tower when degenerate)."""
        c = list(_ZERO8)
        c[_R] = Fraction(1)
        return cls(c, m)

    @classmethod
    def sqrt_half_level(cls, m: int) -> "Scalar":
        """sqrt((m+2)/2) = sqrt(2)*sqrt(m+2)/2."""
        c = list(_ZERO8)
        c[_S | _R] = Fraction(1, 2)
        return cls(c, m)

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for j, c in enumerate(self.coords) if j != 0)

    def is_real(self) -> bool:
        return all(c == 0 for j, c in enumerate(self.coords) if j & _I)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational: %r" % (self,))
        return self.coords[0]

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.m != self.m:
                raise ValueError("mixed level parameters %d and %d" % (self.m, other.m))
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_fraction(other, self.m)
        return None

    def _support(self):
        supp = self._supp
        if supp is None:
            supp = tuple((j, c) for j, c in enumerate(self.coords) if c)
            object.__setattr__(self, "_supp", supp)
        return supp

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._unsafe(
            tuple(a + b if (a and b) else (a or b)
                  for a, b in zip(self.coords, o.coords)), self.m)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._unsafe(tuple(-a for a in self.coords), self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._unsafe(
            tuple(a - b if b else a for a, b in zip(self.coords, o.coords)),
            self.m)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.m + 2
        sa = self._support()
        sb = o._support()
        if len(sa) == 1 and len(sb) == 1:
            j, a = sa[0]
            k, b = sb[0]
            c = a * b
            both = j & k
            if both & _I:
                c = -c
            if both & _S:
                c = c + c
            if both & _R:
                c = n * c
            out = [Fraction(0)] * 8
            out[j ^ k] = c
            # canonical inputs in a collapsed tower have no r-support, so
            # a one-term product never needs re-collapsing
            return Scalar._unsafe(tuple(out), self.m)
        out = [Fraction(0)] * 8
        for j, a in sa:
            for k, b in sb:
                c = a * b
                both = j & k
                if both & _I:
                    c = -c
                if both & _S:
                    c = 2 * c
                if both & _R:
                    c = n * c
                out[j ^ k] += c
        if _collapse_mode(self.m)[0] == "free":
            return Scalar._unsafe(tuple(out), self.m)
        return Scalar(out, self.m)

    __rmul__ = __mul__

    def _conjugate(self, mask: int) -> "Scalar":
        """Flip the sign of every basis element containing one of the
        generators in `mask`."""
        return Scalar(
            [(-c if (j & mask) and ((j & mask).bit_count() % 2) else c)
             for j, c in enumerate(self.coords)],
            self.m,
        )

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        # product of the 7 nontrivial Galois conjugates; a * prod is the
        # rational norm (each conjugation flips one generator's sign)
        prod = Scalar.one(self.m)
        for mask in range(1, 8):
            prod = prod * self._conjugate(mask)
        norm = self * prod
        if not norm.is_rational():
            raise ArithmeticError("norm failed to land in Q")
        return prod * Scalar.from_fraction(Fraction(1) / norm.as_fraction(), self.m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Scalar.one(self.m)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_fraction(other, self.m)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.m == other.m and self.coords == other.coords

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.coords, self.m))
            object.__setattr__(self, "_hash", h)
        return h

    # -- exact real sign -------------------------------------------------

    def real_sign(self) -> int:
        """-1, 0 or +1 under the real embedding s -> 1.414..., r -> +root.

        Decided by interval bisection with exact rational endpoints; the
        zero test is coordinate-wise thanks to canonical independence.
        """
        if not self.is_real():
            raise ValueError("real_sign of a non-real scalar")
        if self.is_zero():
            return 0
        a0 = self.coords[0]
        a_s = self.coords[_S]
        a_r = self.coords[_R]
        a_sr = self.coords[_S | _R]
        n = self.m + 2
        prec = 8
        while True:
            s_lo, s_hi = _sqrt_bounds(2, prec)
            r_lo, r_hi = _sqrt_bounds(n, prec)
            lo = a0 + _ival_min(a_s, s_lo, s_hi)
            hi = a0 + _ival_max(a_s, s_lo, s_hi)
            lo += _ival_min(a_r, r_lo, r_hi)
            hi += _ival_max(a_r, r_lo, r_hi)
            sr_lo, sr_hi = s_lo * r_lo, s_hi * r_hi
            lo += _ival_min(a_sr, sr_lo, sr_hi)
            hi += _ival_max(a_sr, sr_lo, sr_hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    # -- rendering -------------------------------------------------------

    _NAMES = ("", "i", "s2", "i*s2", "r", "i*r", "s2*r", "i*s2*r")

    def render(self) -> str:
        parts = []
        for j, c in enumerate(self.coords):
            if c == 0:
                continue
            name = self._NAMES[j]
            if name:
                parts.append("%s*%s" % (c, name))
            else:
                parts.append(str(c))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "Scalar(%s; m=%d)" % (self.render(), self.m)

    def to_json(self):
        return {
            "m": self.m,
            "coords": ["%d/%d" % (c.numerator, c.denominator) for c in self.coords],
        }

    @classmethod
    def from_json(cls, data) -> "Scalar":
        return cls([Fraction(c) for c in data["coords"]], data["m"])


def _sqrt_bounds(n: int, prec: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(n) <= hi with hi - lo <= 2^-prec."""
    scale = 1 << prec
    lo = isqrt(n * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


def _ival_min(coef: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return coef * lo if coef >= 0 else coef * hi


def _ival_max(coef: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return coef * hi if coef >= 0 else coef * lo
