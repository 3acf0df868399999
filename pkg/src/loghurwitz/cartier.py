"""Cartier operator and its twist for the relative Frobenius on the line.

A differential is written omega = f dy; a bivariant form is written
psi = f (dx)^v (x) dy = f dy/dx for the chart x = y^p.  Every rational f
decomposes uniquely as sum f_i^p y^i (0 <= i < p); the Cartier operator
extracts f_{p-1} dy, the twisted operator extracts the rational function
f_{p-1}.  Exact forms are the kernel; quasi-exact forms map to nonzero
constants.

The decomposition is computed without partial fractions: f = a/b is
rewritten as (a b^{p-1}) / b^p, the numerator is split by exponent
residue mod p, and coefficientwise p-th roots (unique in GF(p^k)) give
the parts.  This is total on rational functions over a finite field.
"""

from __future__ import annotations

from .ffield import FieldSpec
from .ratfunc import (
    INFINITY,
    Divisor,
    Place,
    Polynomial,
    RationalFunction,
    partial_fractions,
)


class Differential:
    """omega = f dy on the projective line."""

    __slots__ = ("f",)

    def __init__(self, f: RationalFunction):
        self.f = f

    @property
    def spec(self):
        return self.f.spec

    def divisor(self) -> Divisor:
        """Divisor of omega: div(f) shifted by -2 at infinity."""
        d = self.f.divisor()
        return d + Divisor({INFINITY: -2})

    def __add__(self, other):
        return Differential(self.f + other.f)

    def __eq__(self, other):
        return isinstance(other, Differential) and self.f == other.f

    def __repr__(self):
        return f"({self.f}) dy"


class BivariantForm:
    """psi = f (dx)^v (x) dy for the relative Frobenius x = y^p."""

    __slots__ = ("f",)

    def __init__(self, f: RationalFunction):
        self.f = f

    @property
    def spec(self):
        return self.f.spec

    def divisor(self) -> Divisor:
        """Plain divisor of psi: div(f) shifted by 2p-2 at infinity."""
        d = self.f.divisor()
        return d + Divisor({INFINITY: 2 * self.spec.p - 2})

    def __add__(self, other):
        return BivariantForm(self.f + other.f)

    def __eq__(self, other):
        return isinstance(other, BivariantForm) and self.f == other.f

    def __repr__(self):
        return f"({self.f}) dy/dx"


class PPowerDecomposition:
    """parts (f_0, ..., f_{p-1}) with f = sum f_i^p y^i."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)

    def recombine(self) -> RationalFunction:
        spec = self.parts[0].spec
        y = RationalFunction.variable(spec)
        p = spec.p
        out = RationalFunction.constant(spec, 0)
        for i, fi in enumerate(self.parts):
            out = out + (fi**p) * y**i
        return out


def ppower_decompose(f: RationalFunction) -> PPowerDecomposition:
    """Unique decomposition f = sum_{i<p} f_i^p y^i over GF(p^k)(y)."""
    spec = f.spec
    p = spec.p
    a, b = f.num, f.den
    numer = a * b ** (p - 1)
    buckets = [[] for _ in range(p)]
    for e, c in enumerate(numer.coeffs):
        i = e % p
        j = e // p
        bucket = buckets[i]
        while len(bucket) <= j:
            bucket.append(0)
        bucket[j] = spec.pth_root_idx(c)
    parts = []
    for bucket in buckets:
        poly = Polynomial(spec, [spec.element(c) for c in bucket])
        parts.append(RationalFunction(poly, b))
    return PPowerDecomposition(parts)


def cartier(omega: Differential) -> Differential:
    return Differential(ppower_decompose(omega.f).parts[-1])


def twisted_cartier(psi: BivariantForm) -> RationalFunction:
    return ppower_decompose(psi.f).parts[-1]


def is_exact(psi: BivariantForm) -> bool:
    return twisted_cartier(psi).is_zero()


def is_quasi_exact(psi: BivariantForm):
    """Return (flag, witness): flag iff tc(psi) is a nonzero constant."""
    tc = twisted_cartier(psi)
    if tc.is_constant() and not tc.is_zero():
        return True, tc.constant_value()
    return False, None


def differential_of(h: RationalFunction) -> Differential:
    """The exact differential d(h)."""
    return Differential(h.derivative())


def integrate(f: RationalFunction) -> RationalFunction:
    """A rational h with h' = f, if one exists.

    Works through partial fractions; a term c y^i with i = -1 mod p or
    a term a/(y-b)^j with j = 1 mod p has no rational antiderivative and
    raises ValueError.  Requires the denominator to split.
    """
    spec = f.spec
    p = spec.p
    pf = partial_fractions(f)
    y = RationalFunction.variable(spec)
    out = RationalFunction.constant(spec, 0)
    for i, c in enumerate(pf.poly.coeffs):
        if c == 0:
            continue
        if (i + 1) % p == 0:
            raise ValueError(f"term of degree {i} has no rational antiderivative")
        coef = spec.element(c) / spec.from_int(i + 1)
        out = out + RationalFunction.constant(spec, coef) * y ** (i + 1)
    for b, j, a in pf.terms:
        if j % p == 1:
            raise ValueError(f"term of pole order {j} at {b} has no rational antiderivative")
        coef = a / spec.from_int(1 - j)
        out = out + RationalFunction.constant(spec, coef) * (y - b) ** (1 - j)
    return out


def matrix_rank(spec: FieldSpec, rows) -> int:
    """Rank of a matrix given as a list of rows of element indices."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        pivot = None
        for i, r in enumerate(rows):
            if r[col]:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        row = rows.pop(pivot)
        inv = spec.inv_idx(row[col])
        row = [spec.mul_idx(c, inv) for c in row]
        new_rows = []
        for r in rows:
            if r[col]:
                factor = spec.neg_idx(r[col])
                r = [spec.add_idx(c, spec.mul_idx(factor, rc)) for c, rc in zip(r, row)]
            if any(r):
                new_rows.append(r)
        rows = new_rows
        rank += 1
        col += 1
    return rank


class TcMatrix:
    """Matrix of the twisted Cartier operator on global sections.

    Source: H^0 of the relative dualizing sheaf twisted by sum m_i p_i;
    basis y^j * prod (y-q)^{-m_q} for 0 <= j <= deg(source divisor).
    Target: H^0 of O(sum ceil(m_i/p) p_i); analogous monomial basis.
    The map is p^{-1}-semilinear; entries are stored raw and the rank is
    computed after entrywise Frobenius linearization.
    """

    __slots__ = ("spec", "entries", "source_dim", "target_dim", "rank", "semilinear_exponent")

    def __init__(self, spec, entries, source_dim, target_dim):
        self.spec = spec
        self.entries = entries  # target_dim rows x source_dim cols of indices
        self.source_dim = source_dim
        self.target_dim = target_dim
        linearized = [[spec.frobenius_idx(c) for c in row] for row in entries]
        self.rank = matrix_rank(spec, linearized)
        self.semilinear_exponent = -1  # tc(c psi) = c^(1/p) tc(psi)

    @property
    def surjective(self):
        return self.rank == self.target_dim

    @property
    def degenerate(self):
        return self.source_dim == 0


def global_tc_matrix(spec: FieldSpec, marked) -> TcMatrix:
    """Matrix of tc on global sections for marked points with multiplicities.

    `marked` is a sequence of (Place, integer) pairs with distinct places.
    """
    p = spec.p
    places = [q for q, _ in marked]
    if len(set(places)) != len(places):
        raise ValueError("marked places must be distinct")

    src = {q: m for q, m in marked}
    src[INFINITY] = src.get(INFINITY, 0) + 2 * p - 2
    tgt = {q: -(-m // p) for q, m in marked}

    deg_src = sum(src.values())
    deg_tgt = sum(tgt.values())
    source_dim = deg_src + 1 if deg_src >= 0 else 0
    target_dim = deg_tgt + 1 if deg_tgt >= 0 else 0

    if source_dim == 0 or target_dim == 0:
        return TcMatrix(spec, [[0] * source_dim for _ in range(target_dim)], source_dim, target_dim)

    y = RationalFunction.variable(spec)
    f0 = RationalFunction.constant(spec, 1)
    for q, n in src.items():
        if not q.is_infinity and n:
            f0 = f0 * (y - q.value) ** (-n)
    g0_inv = RationalFunction.constant(spec, 1)
    for q, n in tgt.items():
        if not q.is_infinity and n:
            g0_inv = g0_inv * (y - q.value) ** n

    columns = []
    for j in range(source_dim):
        tc = twisted_cartier(BivariantForm(y**j * f0))
        coords = tc * g0_inv
        if not coords.is_polynomial() or (
            not coords.is_zero() and coords.num.degree > deg_tgt
        ):
            raise AssertionError("tc image escapes the target space")
        columns.append([coords.num.coeffs[i] if i < len(coords.num.coeffs) else 0 for i in range(target_dim)])
    entries = [[columns[j][i] for j in range(source_dim)] for i in range(target_dim)]
    return TcMatrix(spec, entries, source_dim, target_dim)
