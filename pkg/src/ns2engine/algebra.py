"""Structure constants and super-brackets for the mode algebras.

Supported algebras: the N=2 Neveu-Schwarz algebra ns2 (L, J, G+, G-, C),
the Virasoro algebra (L, C), the rank-one Heisenberg algebra (a, d) and
affine sl2 (E, F, H, K).  Brackets are the super-brackets
[x, y] = xy - (-1)^{|x||y|} yx; the only odd generators are G+ and G-.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import Scalar

HALF = Fraction(1, 2)

_KINDS = {
    "ns2": {"L", "J", "G+", "G-", "C"},
    "virasoro": {"L", "C"},
    "heisenberg": {"a", "d"},
    "affine-sl2": {"E", "F", "H", "K"},
}
_CENTRAL = {"C", "d", "K"}
_HALF_INT_KINDS = {"G+", "G-"}


@dataclass(frozen=True, slots=True)
class ModeSymbol:
    algebra: str
    kind: str
    index: Fraction | None
    _hash: int = None

    def __hash__(self):
        # Fraction hashing is costly and symbols are hot dict keys
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, ModeSymbol):
            return NotImplemented
        return (self.kind == other.kind and self.index == other.index
                and self.algebra == other.algebra)

    def __post_init__(self):
        object.__setattr__(self, "_hash",
                           hash((self.algebra, self.kind, self.index)))
        if self.algebra not in _KINDS:
            raise ValueError("unknown algebra %r" % (self.algebra,))
        if self.kind not in _KINDS[self.algebra]:
            raise ValueError("kind %r not in algebra %r" % (self.kind, self.algebra))
        if self.kind in _CENTRAL:
            if self.index is not None:
                raise ValueError("central element carries no index")
        else:
            idx = self.index
            if idx is None:
                raise ValueError("non-central element needs an index")
            if self.kind in _HALF_INT_KINDS:
                if (idx - HALF).denominator != 1:
                    raise ValueError("G indices lie in Z + 1/2")
            elif idx.denominator != 1:
                raise ValueError("%s indices lie in Z" % self.kind)

    @property
    def parity(self) -> int:
        return 1 if self.kind in _HALF_INT_KINDS else 0

    @property
    def central(self) -> bool:
        return self.kind in _CENTRAL

    def render(self) -> str:
        if self.central:
            return self.kind
        idx = self.index
        if idx.denominator == 1:
            return "%s[%d]" % (self.kind, idx)
        return "%s[%d/%d]" % (self.kind, idx.numerator, idx.denominator)

    def __repr__(self):
        return self.render()


def sym(algebra: str, kind: str, index=None) -> ModeSymbol:
    if index is not None:
        index = Fraction(index)
    return ModeSymbol(algebra, kind, index)


def ns2(kind: str, index=None) -> ModeSymbol:
    return sym("ns2", kind, index)


class LinComb:
    """Finite Scalar-linear combination of ModeSymbols (no formal unit is
    needed here: central terms appear as multiples of C, d or K)."""

    __slots__ = ("terms", "m")

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms: dict[ModeSymbol, Scalar] = {}
        if terms:
            for k, v in terms.items():
                self.add(k, v)

    def add(self, key: ModeSymbol, coef) -> None:
        if isinstance(coef, (int, Fraction)):
            coef = Scalar.from_fraction(coef, self.m)
        cur = self.terms.get(key)
        new = coef if cur is None else cur + coef
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def items(self):
        return self.terms.items()

    def is_zero(self) -> bool:
        return not self.terms

    def scaled(self, c) -> "LinComb":
        out = LinComb(self.m)
        for k, v in self.terms.items():
            out.add(k, v * c)
        return out

    def __add__(self, other: "LinComb") -> "LinComb":
        out = LinComb(self.m, dict(self.terms))
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "LinComb(0)"
        body = " + ".join("(%r)*%s" % (v, k.render()) for k, v in sorted(
            self.terms.items(), key=lambda kv: kv[0].render()))
        return "LinComb(%s)" % body


def bracket(x: ModeSymbol, y: ModeSymbol, m: int) -> LinComb:
    """Super-bracket [x, y] as a LinComb with Scalar coefficients."""
    if x.algebra != y.algebra:
        raise ValueError("mixed-algebra bracket %r, %r" % (x, y))
    out = LinComb(m)
    if x.central or y.central:
        return out
    alg = x.algebra
    if alg in ("ns2", "virasoro"):
        _bracket_ns2(x, y, out, alg)
    elif alg == "heisenberg":
        if x.kind == "a" and y.kind == "a" and x.index + y.index == 0:
            out.add(sym(alg, "d"), x.index)
    else:
        _bracket_affine(x, y, out)
    return out


def _bracket_ns2(x: ModeSymbol, y: ModeSymbol, out: LinComb, alg: str) -> None:
    kx, ky = x.kind, y.kind
    p, q = x.index, y.index
    if kx == "L" and ky == "L":
        if p != q:
            out.add(sym(alg, "L", p + q), p - q)
        if p + q == 0:
            out.add(sym(alg, "C"), Fraction(p**3 - p, 12))
    elif kx == "L" and ky == "J":
        out.add(sym(alg, "J", p + q), -q)
    elif kx == "J" and ky == "L":
        for k, v in bracket(y, x, out.m).items():
            out.add(k, -v)
    elif kx == "J" and ky == "J":
        if p + q == 0:
            out.add(sym(alg, "C"), Fraction(p, 3))
    elif kx == "L" and ky in ("G+", "G-"):
        out.add(sym(alg, ky, p + q), p / 2 - q)
    elif kx in ("G+", "G-") and ky == "L":
        for k, v in bracket(y, x, out.m).items():
            out.add(k, -v)
    elif kx == "J" and ky in ("G+", "G-"):
        out.add(sym(alg, ky, p + q), 1 if ky == "G+" else -1)
    elif kx in ("G+", "G-") and ky == "J":
        for k, v in bracket(y, x, out.m).items():
            out.add(k, -v)
    elif {kx, ky} == {"G+", "G-"}:
        # anticommutator, symmetric in its two arguments; r is the G+ index
        r = p if kx == "G+" else q
        s = q if kx == "G+" else p
        out.add(sym(alg, "L", r + s), 2)
        if r != s:
            out.add(sym(alg, "J", r + s), r - s)
        if r + s == 0:
            out.add(sym(alg, "C"), Fraction(r * r - Fraction(1, 4), 3))
    # G+/G+ and G-/G- anticommute to zero


def _bracket_affine(x: ModeSymbol, y: ModeSymbol, out: LinComb) -> None:
    alg = "affine-sl2"
    kx, ky = x.kind, y.kind
    p, q = x.index, y.index
    if kx == "E" and ky == "F":
        out.add(sym(alg, "H", p + q), 1)
        if p + q == 0:
            out.add(sym(alg, "K"), p)
    elif kx == "F" and ky == "E":
        out.add(sym(alg, "H", p + q), -1)
        if p + q == 0:
            out.add(sym(alg, "K"), -q)
    elif kx == "H" and ky == "E":
        out.add(sym(alg, "E", p + q), 2)
    elif kx == "E" and ky == "H":
        out.add(sym(alg, "E", p + q), -2)
    elif kx == "H" and ky == "F":
        out.add(sym(alg, "F", p + q), -2)
    elif kx == "F" and ky == "H":
        out.add(sym(alg, "F", p + q), 2)
    elif kx == "H" and ky == "H":
        if p + q == 0:
            out.add(sym(alg, "K"), 2 * p)
    # E/E and F/F commute


def grading(x: ModeSymbol) -> tuple[Fraction, int]:
    """(weight-drop, charge-drop), derived mechanically from the bracket
    with L_0 and J_0."""
    if x.central:
        raise ValueError("central element has no grading")
    m = 0
    alg = x.algebra
    if alg in ("ns2", "virasoro"):
        l0, j0 = sym(alg, "L", 0), (sym(alg, "J", 0) if alg == "ns2" else None)
    else:
        # Heisenberg and affine modes: weight-drop is -index by convention
        return (-x.index, 0)
    wt = Fraction(0)
    for k, v in bracket(l0, x, m).items():
        if k == x:
            wt = v.as_fraction()
    charge = 0
    if j0 is not None:
        for k, v in bracket(j0, x, m).items():
            if k == x:
                charge = int(v.as_fraction())
    return (wt, charge)
