"""Verma modules for the N=2 Neveu-Schwarz algebra.

PBW monomials are tuples of negative-index modes in the canonical order
J-modes, L-modes, G+-modes, G--modes, each kind sorted by weakly
decreasing absolute index, fermionic modes appearing at most once.
States are dicts mapping monomials to Scalar coefficients; the empty
monomial is the highest-weight vector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .algebra import HALF, ModeSymbol, bracket, ns2
from .linalg import SubspaceReducer, kernel_basis
from .scalars import Scalar

Monomial = tuple[ModeSymbol, ...]

_KIND_RANK = {"J": 0, "L": 1, "G+": 2, "G-": 3}
_CHARGE = {"J": 0, "L": 0, "G+": 1, "G-": -1}


def _mode_key(x: ModeSymbol) -> tuple[int, Fraction]:
    return (_KIND_RANK[x.kind], x.index)


def monomial_level(mono: Monomial) -> Fraction:
    return -sum((x.index for x in mono), Fraction(0))


def monomial_charge(mono: Monomial) -> int:
    return sum(_CHARGE[x.kind] for x in mono)


def monomial_parity(mono: Monomial) -> int:
    return sum(1 for x in mono if x.kind in ("G+", "G-")) % 2


def _fermion_sets(limit: Fraction):
    """All finite sets of distinct half-odd positive values with sum <= limit,
    as (sorted tuple, sum)."""
    out = [((), Fraction(0))]
    stack = [((), Fraction(0), HALF)]
    while stack:
        chosen, total, nxt = stack.pop()
        v = nxt
        while total + v <= limit:
            new = chosen + (v,)
            out.append((new, total + v))
            stack.append((new, total + v, v + 1))
            v += 1
    return out


def _partitions(n: int):
    """Partitions of n as weakly decreasing tuples of positive parts."""
    if n == 0:
        yield ()
        return
    def rec(rem, mx):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, mx), 0, -1):
            for rest in rec(rem - p, p):
                yield (p,) + rest
    yield from rec(n, n)


def enumerate_basis(level, charge: int) -> list[Monomial]:
    """Canonically ordered PBW monomials of the given grade."""
    return _enumerate_basis(Fraction(level), charge)


@lru_cache(maxsize=None)
def _enumerate_basis(level: Fraction, charge: int) -> list[Monomial]:
    if level < 0:
        return []
    monos: list[Monomial] = []
    for plus, sum_p in _fermion_sets(level):
        for minus, sum_m in _fermion_sets(level - sum_p):
            if len(plus) - len(minus) != charge:
                continue
            rem = level - sum_p - sum_m
            if rem.denominator != 1:
                continue
            rem = int(rem)
            for j_part in range(rem + 1):
                for jp in _partitions(j_part):
                    for lp in _partitions(rem - j_part):
                        mono = tuple(
                            [ns2("J", -n) for n in jp]
                            + [ns2("L", -n) for n in lp]
                            + [ns2("G+", -v) for v in sorted(plus, reverse=True)]
                            + [ns2("G-", -v) for v in sorted(minus, reverse=True)]
                        )
                        monos.append(mono)
    monos.sort(key=lambda mo: (len(mo), tuple((_KIND_RANK[x.kind], -x.index) for x in mo)))
    return monos


class VermaParams:
    """Central charge, lowest conformal weight and U(1) charge as Scalars."""

    __slots__ = ("c", "h", "q", "m")

    def __init__(self, c, h, q, m: int):
        def conv(v):
            return v if isinstance(v, Scalar) else Scalar.from_fraction(v, m)
        self.c = conv(c)
        self.h = conv(h)
        self.q = conv(q)
        self.m = m

    def key(self):
        return (self.c.coords, self.h.coords, self.q.coords, self.m)


class VermaModule:
    """M_ns2(c, h, q) with the PBW normal-ordering action."""

    def __init__(self, params: VermaParams):
        self.params = params
        self.m = params.m
        self._cache: dict[tuple[ModeSymbol, Monomial], dict[Monomial, Scalar]] = {}

    # -- action ----------------------------------------------------------

    def act(self, x: ModeSymbol, state: dict[Monomial, Scalar]) -> dict[Monomial, Scalar]:
        out: dict[Monomial, Scalar] = {}
        for mono, coef in state.items():
            for mo2, c2 in self._act_mono(x, mono).items():
                _accum(out, mo2, coef * c2)
        return out

    def act_monomial(self, ops, state):
        """Apply a product of modes, rightmost factor first."""
        for x in reversed(tuple(ops)):
            state = self.act(x, state)
        return state

    def _act_mono(self, x: ModeSymbol, mono: Monomial) -> dict[Monomial, Scalar]:
        key = (x, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        p = self.params
        one = Scalar.one(self.m)
        if x.central:
            res = {mono: p.c}
        elif not mono:
            if x.index > 0:
                res = {}
            elif x.index == 0:
                if x.kind == "L":
                    res = {} if p.h.is_zero() else {mono: p.h}
                else:  # J
                    res = {} if p.q.is_zero() else {mono: p.q}
            else:
                res = {(x,): one}
        elif x.index < 0 and _mode_key(x) <= _mode_key(mono[0]):
            if x == mono[0] and x.parity:
                res = {}
            else:
                res = {(x,) + mono: one}
        else:
            head, rest = mono[0], mono[1:]
            res: dict[Monomial, Scalar] = {}
            # [x, head] applied to the tail
            for bsym, bcoef in bracket(x, head, self.m).items():
                for mo2, c2 in self._act_mono(bsym, rest).items():
                    _accum(res, mo2, bcoef * c2)
            # +/- head * x applied to the tail
            sign = -1 if (x.parity and head.parity) else 1
            inner = self._act_mono(x, rest)
            for mo2, c2 in inner.items():
                for mo3, c3 in self._act_mono(head, mo2).items():
                    _accum(res, mo3, c2 * c3 * sign if sign < 0 else c2 * c3)
        self._cache[key] = res
        return res

    # -- contravariant form ----------------------------------------------

    def gram_entry(self, u: Monomial, v: Monomial) -> Scalar:
        state: dict[Monomial, Scalar] = {v: Scalar.one(self.m)}
        for x in u:
            state = self.act(omega(x), state)
            if not state:
                break
        return state.get((), Scalar.zero(self.m))

    def gram_matrix(self, level, charge: int):
        basis = enumerate_basis(level, charge)
        n = len(basis)
        zero = Scalar.zero(self.m)
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                e = self.gram_entry(basis[i], basis[j])
                rows[i][j] = e
                rows[j][i] = e
        return basis, rows

    def radical_vectors(self, level, charge: int):
        """Kernel basis of the Gram matrix, as (basis, list of coord vectors)."""
        basis, rows = self.gram_matrix(level, charge)
        return basis, kernel_basis(rows, self.m)

    def singular_vectors(self, level, charge: int) -> list[dict[Monomial, Scalar]]:
        basis, kern = self.radical_vectors(level, charge)
        out = []
        for vec in kern:
            state = {mo: c for mo, c in zip(basis, vec) if not c.is_zero()}
            for x in _positive_modes(level):
                if any(self.act(x, state).values()):
                    raise AssertionError("radical vector not singular: %r" % (state,))
            out.append(state)
        return out


def _positive_modes(level):
    level = Fraction(level)
    out = []
    r = HALF
    while r <= level:
        out.append(ns2("G+", r))
        out.append(ns2("G-", r))
        r += 1
    n = 1
    while n <= level:
        out.append(ns2("L", n))
        out.append(ns2("J", n))
        n += 1
    return out


def omega(x: ModeSymbol) -> ModeSymbol:
    """Anti-involution: L_n -> L_-n, J_n -> J_-n, G+-_r -> G-+_-r (linear)."""
    if x.central:
        return x
    kind = {"L": "L", "J": "J", "G+": "G-", "G-": "G+"}[x.kind]
    return ns2(kind, -x.index)


def _accum(d: dict, k, v) -> None:
    cur = d.get(k)
    new = v if cur is None else cur + v
    if new.is_zero():
        d.pop(k, None)
    else:
        d[k] = new


class QuotientModule:
    """Grade-by-grade quotient of a Verma module by a graded subspace.

    Representatives are supported on the non-pivot monomials of the
    subspace's row echelon form.
    """

    def __init__(self, params: VermaParams):
        self.params = params
        self.m = params.m
        self.verma = VermaModule(params)
        self._reducers: dict[tuple[Fraction, int], SubspaceReducer] = {}

    def _sub_rows(self, level: Fraction, charge: int, basis) -> list[list[Scalar]]:
        raise NotImplementedError

    def _reducer(self, level, charge: int) -> tuple[list[Monomial], SubspaceReducer]:
        level = Fraction(level)
        key = (level, charge)
        basis = enumerate_basis(level, charge)
        red = self._reducers.get(key)
        if red is None:
            rows = self._sub_rows(level, charge, basis)
            red = SubspaceReducer(rows, len(basis), self.m)
            self._reducers[key] = red
        return basis, red

    def dim(self, level, charge: int) -> int:
        basis, red = self._reducer(level, charge)
        return len(basis) - red.rank

    def basis(self, level, charge: int) -> list[Monomial]:
        basis, red = self._reducer(level, charge)
        return [basis[c] for c in red.free]

    def reduce_state(self, state: dict[Monomial, Scalar]) -> dict[Monomial, Scalar]:
        if not state:
            return {}
        groups: dict[tuple[Fraction, int], dict[Monomial, Scalar]] = {}
        for mono, coef in state.items():
            key = (monomial_level(mono), monomial_charge(mono))
            groups.setdefault(key, {})[mono] = coef
        out: dict[Monomial, Scalar] = {}
        zero = Scalar.zero(self.m)
        for (level, charge), part in groups.items():
            basis, red = self._reducer(level, charge)
            vec = [part.get(mo, zero) for mo in basis]
            vec = red.reduce(vec)
            for mo, c in zip(basis, vec):
                if not c.is_zero():
                    _accum(out, mo, c)
        return out

    def act(self, x: ModeSymbol, state: dict[Monomial, Scalar]) -> dict[Monomial, Scalar]:
        return self.reduce_state(self.verma.act(x, state))

    def act_monomial(self, ops, state):
        for x in reversed(tuple(ops)):
            state = self.act(x, state)
        return state

    def vacuum(self) -> dict[Monomial, Scalar]:
        return {(): Scalar.one(self.m)}


# Generating set of the positive subalgebra: 2L(1) = [G+(1/2), G-(1/2)],
# 2L(2) +- J(2) = [G+-(1/2), G-+(3/2)], then L(n+1) from [L(1), L(n)] and
# J(n+1) from [L(1), J(n)] for n >= 2, and G+-(r+1) from [L(1), G+-(r)]
# for r >= 3/2; J(1) is not reachable and is listed explicitly.
_RAISING_GENERATORS = (
    ns2("G+", HALF), ns2("G-", HALF),
    ns2("G+", Fraction(3, 2)), ns2("G-", Fraction(3, 2)),
    ns2("J", 1),
)


class IrreducibleQuotient(QuotientModule):
    """L_ns2(c, h, q): Verma modulo the radical of the contravariant form.

    The radical at a grade is computed inductively: since the radical is
    the maximal proper submodule, a grade-(n, q) vector belongs to it if
    and only if every positive mode maps it into the radical at a lower
    grade, and it suffices to test a generating set of the positive
    subalgebra.  This agrees with the Gram-matrix kernel (cross-checked
    in the test suite) and avoids quadratically many form evaluations.
    """

    def _sub_rows(self, level, charge, basis):
        level = Fraction(level)
        if level == 0 or not basis:
            return []
        one = Scalar.one(self.m)
        zero = Scalar.zero(self.m)
        constraint_rows: dict[tuple[ModeSymbol, Monomial], list[Scalar]] = {}
        for j, mono in enumerate(basis):
            for x in _RAISING_GENERATORS:
                if level - x.index < 0:
                    continue
                img = self.reduce_state(self.verma.act(x, {mono: one}))
                for mo, c in img.items():
                    row = constraint_rows.get((x, mo))
                    if row is None:
                        row = [zero] * len(basis)
                        constraint_rows[(x, mo)] = row
                    row[j] = c
        return kernel_basis(list(constraint_rows.values()), self.m,
                            width=len(basis))


class MatrixModule:
    """L_ns2(c, h, q) realized by inductively built matrices of single
    generator modes between its graded pieces.

    Never touches full Verma grades: each graded piece is spanned by
    single negative modes applied to lower basis vectors, and a linear
    combination vanishes iff the generating positive modes kill it
    (simplicity: a nonzero vector killed by every positive mode would
    generate a proper nonzero submodule).  Basis vectors carry mode-chain
    labels, so states are dicts from label tuples to Scalars exactly as
    in the PBW modules, and agreement with IrreducibleQuotient is
    cross-checked grade by grade in the test suite.
    """

    def __init__(self, params: VermaParams):
        self.params = params
        self.m = params.m
        self._labels: dict[tuple[Fraction, int], list[Monomial]] = {}
        self._grade_of: dict[Monomial, tuple[Fraction, int]] = {}
        # x(-n) applied to a basis label -> coords on target-grade labels
        self._lowering: dict[tuple[ModeSymbol, Monomial], dict[Monomial, Scalar]] = {}
        self._raising: dict[tuple[ModeSymbol, Monomial], dict[Monomial, Scalar]] = {}
        self._labels[(Fraction(0), 0)] = [()]
        self._grade_of[()] = (Fraction(0), 0)
        self._label_index: dict[Monomial, int] = {(): 0}
        self._built = Fraction(0)

    # -- public interface (mirrors QuotientModule) ------------------------

    def vacuum(self) -> dict[Monomial, Scalar]:
        return {(): Scalar.one(self.m)}

    def dim(self, level, charge: int) -> int:
        return len(self.basis(level, charge))

    def basis(self, level, charge: int) -> list[Monomial]:
        level = Fraction(level)
        self._ensure(level)
        return list(self._labels.get((level, charge), ()))

    def reduce_state(self, state: dict[Monomial, Scalar]) -> dict[Monomial, Scalar]:
        """Canonical coordinates of a PBW-monomial state.  Basis labels
        are themselves mode chains, so this is idempotent."""
        out: dict[Monomial, Scalar] = {}
        for mono, coef in state.items():
            for k, c in self.act_monomial(mono, self.vacuum()).items():
                _accum(out, k, c * coef)
        return out

    def act(self, x: ModeSymbol, state: dict[Monomial, Scalar]) -> dict[Monomial, Scalar]:
        out: dict[Monomial, Scalar] = {}
        for label, coef in state.items():
            for mo, c in self._act_label(x, label).items():
                _accum(out, mo, coef * c)
        return out

    def act_monomial(self, ops, state):
        for x in reversed(tuple(ops)):
            state = self.act(x, state)
        return state

    # -- single-mode action ----------------------------------------------

    def _act_label(self, x: ModeSymbol, label: Monomial) -> dict[Monomial, Scalar]:
        if x.central:
            return {label: self.params.c}
        lv, q = self._grade_of[label]
        if x.index == 0:
            if x.kind == "L":
                eig = self.params.h + lv
            else:
                eig = self.params.q + monomial_charge(label)
            return {} if eig.is_zero() else {label: eig}
        if x.index < 0:
            self._ensure(lv - x.index)
            return dict(self._lowering[(x, label)])
        return self._raise_label(x, label)

    def _raise_label(self, x: ModeSymbol, label: Monomial) -> dict[Monomial, Scalar]:
        hit = self._raising.get((x, label))
        if hit is None:
            if not label:
                hit = {}
            else:
                hit = self._candidate_image(x, label[0], label[1:])
            self._raising[(x, label)] = hit
        return dict(hit)

    def _candidate_image(self, y: ModeSymbol, x: ModeSymbol,
                         b: Monomial) -> dict[Monomial, Scalar]:
        """y (positive mode) applied to the formal product x(-n) * b."""
        out: dict[Monomial, Scalar] = {}
        for z, c in bracket(y, x, self.m).items():
            for mo, c2 in self._act_label(z, b).items():
                _accum(out, mo, c * c2)
        sign = -1 if (y.parity and x.parity) else 1
        inner = self._raise_label(y, b) if y.index > 0 else self._act_label(y, b)
        for mo, c in inner.items():
            part = self._act_label(x, mo)
            for mo2, c2 in part.items():
                _accum(out, mo2, c * c2 * sign if sign < 0 else c * c2)
        return out

    # -- grade construction ----------------------------------------------

    def _lowering_modes(self, level: Fraction) -> list[ModeSymbol]:
        out = []
        n = 1
        while n <= level:
            out.append(ns2("J", -n))
            out.append(ns2("L", -n))
            n += 1
        r = HALF
        while r <= level:
            out.append(ns2("G+", -r))
            out.append(ns2("G-", -r))
            r += 1
        return out

    def _ensure(self, level: Fraction) -> None:
        while self._built < level:
            self._build_level(self._built + HALF)
            self._built += HALF

    def _build_level(self, level: Fraction) -> None:
        qmax = isqrt(int(2 * level)) + 1 if level > 0 else 0
        for charge in range(-qmax, qmax + 1):
            self._build_grade(level, charge)

    def _build_grade(self, level: Fraction, charge: int) -> None:
        one = Scalar.one(self.m)
        raising = [y for y in _RAISING_GENERATORS if level - y.index >= 0]
        # echelon entries: (pivot key, normalized image row, basis combo)
        echelon: list[tuple[tuple, dict, dict]] = []
        labels: list[Monomial] = []
        for x in self._lowering_modes(level):
            src = (level + x.index, charge - _CHARGE[x.kind])
            for b in self._labels.get(src, ()):
                images = {y: self._candidate_image(y, x, b) for y in raising}
                row = {}
                for yi, y in enumerate(raising):
                    for mo, c in images[y].items():
                        row[(yi,) + self._sort_key(mo)] = c
                combo: dict[Monomial, Scalar] = {}
                self._eliminate(row, combo, echelon)
                if row:
                    label = (x,) + b
                    self._label_index[label] = len(labels)
                    labels.append(label)
                    self._grade_of[label] = (level, charge)
                    self._lowering[(x, b)] = {label: one}
                    for y in raising:
                        self._raising[(y, label)] = images[y]
                    pivot = min(row)
                    inv = row[pivot].inverse()
                    nrow = {k: v * inv for k, v in row.items()}
                    ncombo = {label: inv}
                    for mo, c in combo.items():
                        ncombo[mo] = c * inv
                    echelon.append((pivot, nrow, ncombo))
                    echelon.sort(key=lambda e: e[0])
                else:
                    self._lowering[(x, b)] = {mo: -c for mo, c in combo.items()}
        self._labels[(level, charge)] = labels

    def _sort_key(self, label: Monomial):
        lv, q = self._grade_of[label]
        return (lv, q, self._label_index[label])

    def _eliminate(self, row: dict, combo: dict, echelon) -> None:
        """Reduce row against the echelon in place, tracking the combo of
        basis vectors subtracted.  The echelon is sorted by pivot and each
        normalized row has its pivot as minimal key, so reducing in pivot
        order only ever introduces keys handled later: one pass suffices."""
        for pivot, erow, ecombo in echelon:
            f = row.get(pivot)
            if f is None or f.is_zero():
                continue
            nf = -f
            for k, v in erow.items():
                _accum(row, k, nf * v)
            for mo, c in ecombo.items():
                _accum(combo, mo, nf * c)


class VacuumAlgebra(QuotientModule):
    """V_ns2(c, 0, 0): Verma modulo the submodule generated by G+-(-1/2)1."""

    def __init__(self, params: VermaParams):
        if not (params.h.is_zero() and params.q.is_zero()):
            raise ValueError("vacuum algebra needs h = q = 0")
        super().__init__(params)

    def _sub_rows(self, level, charge, basis):
        zero = Scalar.zero(self.m)
        index = {mo: i for i, mo in enumerate(basis)}
        rows = []
        for kind, dq in (("G+", 1), ("G-", -1)):
            gen = {(ns2(kind, -HALF),): Scalar.one(self.m)}
            for mono in enumerate_basis(Fraction(level) - HALF, charge - dq):
                state = self.verma.act_monomial(mono, gen)
                if state:
                    row = [zero] * len(basis)
                    for mo, c in state.items():
                        row[index[mo]] = c
                    rows.append(row)
        return rows


def verma_dims(cutoff) -> dict[tuple[Fraction, int], int]:
    """Graded dimensions of any Verma module up to the weight cutoff."""
    out: dict[tuple[Fraction, int], int] = {}
    level = Fraction(0)
    while level <= Fraction(cutoff):
        max_charge = int(2 * level) + 1
        for charge in range(-max_charge, max_charge + 1):
            n = len(enumerate_basis(level, charge))
            if n:
                out[(level, charge)] = n
        level += HALF
    return out


def product_series_dims(cutoff) -> dict[tuple[Fraction, int], int]:
    """Coefficients of prod_n (1+z q^{n-1/2})(1+z^-1 q^{n-1/2})/(1-q^n)^2
    up to the weight cutoff, as an independent combinatorial oracle."""
    cutoff = Fraction(cutoff)
    series: dict[tuple[Fraction, int], Fraction] = {(Fraction(0), 0): Fraction(1)}

    def mult(factor_terms):
        nonlocal series
        new: dict[tuple[Fraction, int], Fraction] = {}
        for (w1, z1), c1 in series.items():
            for (w2, z2), c2 in factor_terms:
                w = w1 + w2
                if w <= cutoff:
                    key = (w, z1 + z2)
                    new[key] = new.get(key, Fraction(0)) + c1 * c2
        series = new

    n = 1
    while Fraction(2 * n - 1, 2) <= cutoff or n <= cutoff:
        half = Fraction(2 * n - 1, 2)
        if half <= cutoff:
            mult([((Fraction(0), 0), Fraction(1)), ((half, 1), Fraction(1))])
            mult([((Fraction(0), 0), Fraction(1)), ((half, -1), Fraction(1))])
        if n <= cutoff:
            geom = [((Fraction(k * n), 0), Fraction(1)) for k in range(int(cutoff // n) + 1)]
            mult(geom)
            mult(geom)
        n += 1
    return {k: int(v) for k, v in series.items() if v != 0}
