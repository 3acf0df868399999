"""Exact and quasi-exact loci of marked configurations on the line.

A zero/pole pattern m = (m_1, ..., m_n) with sum 2p-2 attaches to each
configuration of n distinct marked points the bivariant form
psi = prod (y - p_i)^{m_i} dy/dx (the product over the finite markings;
the order at a marking at infinity is then automatic).  The exact locus
is where the twisted Cartier operator kills psi, the quasi-exact locus
is where it gives a nonzero constant.

Tangent spaces are computed over the dual numbers k[eps]/(eps^2): the
last three markings stay pinned, the remaining n-3 move to first order,
and the kernel of a -> tc(first-order term) is measured by linear
algebra on coefficient vectors after the Frobenius substitution that
absorbs the p^{-1}-semilinearity (harmless over a finite field, where
every scalar is a p-th power).
"""

from __future__ import annotations

import itertools

from .cartier import BivariantForm, matrix_rank, twisted_cartier
from .ffield import FieldSpec
from .ratfunc import INFINITY, Place, Polynomial, RationalFunction

EXACT = "exact"
QUASI_EXACT = "quasi_exact"


class ZeroPolePattern:
    """Integer vector m with sum m_i = 2p-2; negative entries are poles."""

    __slots__ = ("p", "m")

    def __init__(self, p: int, m):
        m = tuple(int(v) for v in m)
        if sum(m) != 2 * p - 2:
            raise ValueError(f"pattern {m} does not sum to 2p-2 = {2 * p - 2}")
        if any(v == 0 for v in m):
            raise ValueError("pattern entries must be nonzero")
        self.p = p
        self.m = m

    @property
    def n(self):
        return len(self.m)

    def reduced(self):
        """m'_i = m_i - p*floor(m_i/p)."""
        return tuple(v - self.p * (v // self.p) for v in self.m)

    def I_p(self):
        """Indices (0-based) where p divides m_i."""
        return tuple(i for i, v in enumerate(self.m) if v % self.p == 0)

    def __repr__(self):
        return f"ZeroPolePattern(p={self.p}, m={self.m})"


class MarkingConfig:
    """n pairwise distinct places on the line, at most one at infinity."""

    __slots__ = ("spec", "points")

    def __init__(self, spec: FieldSpec, points):
        points = tuple(points)
        if len(set(points)) != len(points):
            raise ValueError("repeated markings")
        if sum(1 for q in points if q.is_infinity) > 1:
            raise ValueError("at most one marking at infinity")
        self.spec = spec
        self.points = points

    def __eq__(self, other):
        return (
            isinstance(other, MarkingConfig)
            and self.spec == other.spec
            and self.points == other.points
        )

    def __hash__(self):
        return hash((id(self.spec), self.points))

    def __repr__(self):
        return f"MarkingConfig({', '.join(str(q) for q in self.points)})"


# ---------------------------------------------------------------------------
# dual numbers k(y)[eps]/(eps^2)


class DualRational:
    """a + b eps with rational a, b and eps^2 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a: RationalFunction, b: RationalFunction):
        self.a = a
        self.b = b

    @classmethod
    def constant(cls, f: RationalFunction):
        return cls(f, RationalFunction.constant(f.spec, 0))

    def __add__(self, other):
        return DualRational(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return DualRational(self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        return DualRational(self.a * other.a, self.a * other.b + self.b * other.a)

    def inverse(self):
        inv = RationalFunction.constant(self.a.spec, 1) / self.a
        return DualRational(inv, -self.b * inv * inv)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = DualRational.constant(RationalFunction.constant(self.a.spec, 1))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


def _deformed_form(config: MarkingConfig, pattern: ZeroPolePattern, a_vals):
    """(F0, F1) with prod (y - (p_i + a_i eps))^{m_i} = F0 + eps F1."""
    spec = config.spec
    y = DualRational.constant(RationalFunction.variable(spec))
    out = DualRational.constant(RationalFunction.constant(spec, 1))
    for q, mi, ai in zip(config.points, pattern.m, a_vals):
        if q.is_infinity:
            continue
        shift = DualRational(
            RationalFunction.constant(spec, q.value),
            RationalFunction.constant(spec, ai),
        )
        out = out * (y - shift) ** mi
    return out.a, out.b


def _base_form(config: MarkingConfig, pattern: ZeroPolePattern) -> BivariantForm:
    spec = config.spec
    zero = spec.element(0)
    f0, _ = _deformed_form(config, pattern, [zero] * pattern.n)
    return BivariantForm(f0)


# ---------------------------------------------------------------------------
# membership and tangent spaces


def _check_compatible(config: MarkingConfig, pattern: ZeroPolePattern):
    if len(config.points) != pattern.n:
        raise ValueError("configuration and pattern lengths differ")
    if config.spec.p != pattern.p:
        raise ValueError("configuration field and pattern characteristic differ")


def _tc_parts(config: MarkingConfig, pattern: ZeroPolePattern):
    """(T, D): the twisted Cartier image of the attached form is T / D.

    Writing the product over the finite markings as N / D with N, D
    monic polynomials, the numerator N * D^(p-1) of f = N D^(p-1) / D^p
    splits into residue buckets by exponent mod p; the operator keeps
    the bucket p-1, takes coefficientwise p-th roots, and divides by D.
    Working with the two polynomials directly skips every gcd reduction.
    """
    spec = config.spec
    p = spec.p
    num_roots, den_roots = [], []
    for q, mi in zip(config.points, pattern.m):
        if q.is_infinity:
            continue
        if mi > 0:
            num_roots.extend([q.value] * mi)
        else:
            den_roots.extend([q.value] * (-mi))
    N = Polynomial.from_roots(spec, num_roots)
    D = Polynomial.from_roots(spec, den_roots)
    big = (N * D ** (p - 1)).coeffs
    tc_idxs = [spec.pth_root_idx(big[j]) for j in range(p - 1, len(big), p)]
    return Polynomial(spec, [spec.element(i) for i in tc_idxs]), D


def locus_membership(config: MarkingConfig, pattern: ZeroPolePattern, kind: str) -> bool:
    """Whether the configuration lies in the exact or quasi-exact locus."""
    _check_compatible(config, pattern)
    T, D = _tc_parts(config, pattern)
    if kind == EXACT:
        return T.is_zero()
    if kind == QUASI_EXACT:
        # T / D is a nonzero constant exactly when T is a scalar multiple
        # of the (monic) denominator D
        if T.is_zero() or T.degree != D.degree:
            return False
        spec, c = config.spec, T.coeffs[-1]
        return all(spec.mul_idx(d, c) == t for d, t in zip(D.coeffs, T.coeffs))
    raise ValueError(f"unknown kind {kind!r}")


def dimension_formula(pattern: ZeroPolePattern, kind: str) -> int:
    """Closed-form locus dimension; negative values signal emptiness."""
    base = sum(v // pattern.p for v in pattern.m)
    if kind == EXACT:
        return pattern.n - 4 + base
    if kind == QUASI_EXACT:
        return pattern.n - 3 + base
    raise ValueError(f"unknown kind {kind!r}")


def tangent_report(config: MarkingConfig, pattern: ZeroPolePattern, kind: str) -> dict:
    """Kernel data of the first-order deformation map at a locus point.

    The last three markings are pinned; the i-th unit deformation of a
    free marking contributes r_i = tc of the eps-part of the deformed
    product, and the tangent space is the kernel of a -> sum a_i^{1/p} r_i
    (quasi-exact kind: composed with the quotient by the constants).
    """
    _check_compatible(config, pattern)
    if pattern.n < 3:
        raise ValueError("need at least three markings to rigidify the line")
    if not locus_membership(config, pattern, kind):
        raise ValueError("configuration is not in the locus")
    spec = config.spec
    n = pattern.n
    free = n - 3
    if any(q.is_infinity for q in config.points[:free]):
        raise ValueError("the marking at infinity must be among the three pinned ones")

    # the eps-part of the i-th unit deformation is -m_i * f / (y - p_i),
    # so it vanishes exactly when p divides m_i; a nonzero scalar factor
    # does not change the rank computed below
    num_roots, den_roots = [], []
    for q, mi in zip(config.points, pattern.m):
        if q.is_infinity:
            continue
        (num_roots if mi > 0 else den_roots).extend([q.value] * abs(mi))
    base = RationalFunction(
        Polynomial.from_roots(spec, num_roots), Polynomial.from_roots(spec, den_roots)
    )
    yvar = RationalFunction.variable(spec)
    responses = []
    ker_alpha = 0
    for i in range(free):
        if pattern.m[i] % pattern.p == 0:
            ker_alpha += 1
            responses.append(None)
        else:
            f1 = base * RationalFunction.constant(spec, pattern.m[i] % pattern.p) / (
                yvar - config.points[i].value
            )
            responses.append(twisted_cartier(BivariantForm(f1)))

    # coefficient vectors over the common denominator
    # prod (y - p_i)^{max(0, ceil(m_i / p))}, which clears every pole the
    # twisted operator can produce.
    y = RationalFunction.variable(spec)
    clear = RationalFunction.constant(spec, 1)
    p = pattern.p
    m_inf = 0
    for q, mi in zip(config.points, pattern.m):
        if q.is_infinity:
            m_inf = mi
            continue
        t = -(mi // p)  # pole allowance ceil(-m_i / p) of tc at the marking
        if t > 0:
            clear = clear * (y - q.value) ** t
    inf_allowance = max(0, (3 * p - 3 - m_inf) // p)
    width = clear.num.degree + 1 + inf_allowance

    def coeff_row(f: RationalFunction):
        g = f * clear
        assert g.is_polynomial() and (g.is_zero() or g.num.degree < width)
        return [g.num.coeffs[j] if j < len(g.num.coeffs) else 0 for j in range(width)]

    rows = [coeff_row(r) for r in responses if r is not None]
    # absorb the p^{-1}-semilinearity: substituting a_i -> a_i^p makes the
    # map linear without changing the kernel dimension over a finite field
    rank = matrix_rank(spec, rows) if rows else 0
    if kind == EXACT:
        dim = free - rank
    else:
        aug = rows + [coeff_row(RationalFunction.constant(spec, 1))]
        dim = free - (matrix_rank(spec, aug) - 1)
    return {
        "kind": kind,
        "free": free,
        "ker_alpha": ker_alpha,
        "rank": rank,
        "dimension": dim,
    }


def tangent_dimension(config: MarkingConfig, pattern: ZeroPolePattern, kind: str) -> int:
    return tangent_report(config, pattern, kind)["dimension"]


# ---------------------------------------------------------------------------
# exhaustive search


DEFAULT_PINNED = ("0", "1", "inf")


def _default_pinned(spec: FieldSpec):
    return (Place.finite(spec.from_int(0)), Place.finite(spec.from_int(1)), INFINITY)


def locus_search(pattern: ZeroPolePattern, kind: str, spec: FieldSpec, pinned=None):
    """All locus configurations over GF(p^k), the last markings pinned.

    The pinned places (default 0, 1, infinity, truncated for very short
    patterns) occupy the final slots, killing the Moebius symmetry; the
    free slots range lexicographically over the remaining places.
    """
    if spec.p != pattern.p:
        raise ValueError("field characteristic and pattern characteristic differ")
    if spec.q > 2**16:
        raise ValueError("field too large for exhaustive search")
    n = pattern.n
    if pinned is None:
        pinned = _default_pinned(spec)
    pinned = tuple(pinned)[: min(3, n)]
    if len(set(pinned)) != len(pinned):
        raise ValueError("pinned places must be distinct")
    free = n - len(pinned)
    if free < 0:
        raise ValueError("more pinned places than markings")
    places = [Place.finite(e) for e in spec.elements()] + [INFINITY]
    candidates = [q for q in places if q not in pinned]
    out = []
    for combo in itertools.permutations(candidates, free):
        points = combo + pinned
        try:
            config = MarkingConfig(spec, points)
        except ValueError:
            continue
        if locus_membership(config, pattern, kind):
            out.append(config)
    return out
