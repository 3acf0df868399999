"""Artin-Schreier covers y^p - y = g(x) of the projective line.

The right-hand side is stored in normal form: a sum of principal parts
h_i(1/(x - b_i)) over the finite branch points plus a polynomial part
h_inf(x) when infinity is a branch point, with h_i(0) = 0, no term whose
exponent is divisible by p (such terms are absorbed by y -> y + v
substitutions since their coefficients are p-th powers), and no additive
constant.  The conductor at b_i is e_i = (pole order of g at b_i) + 1,
never congruent to 1 mod p; the genus comes from sum e_i = 2h/(p-1) + 2.

The trace form is tau = -1/g'(x) in the (dx)^v (x) dy frame.  Its order
at a ramified point is computed by exact valuation bookkeeping upstairs
derived from the cover equation: the downstairs uniformizer has value p,
y has value = ord_b(g) (balancing y^p against g on the Newton polygon,
valid since ord_b(g) is prime to p in normal form), and d y drops the
value by one.  Orders are reported against logarithmic frames downstairs
and upstairs ("plain"), and with the marked-point correction of one
added ("log"); the two bookkeeping conventions for these orders differ
by p - 1 and both are exposed rather than reconciled.
"""

from __future__ import annotations

from .ffield import FieldSpec
from .mobius import Mobius
from .ratfunc import (
    INFINITY,
    Divisor,
    Place,
    Polynomial,
    RationalFunction,
    partial_fractions,
)


class CoverError(ValueError):
    """Invalid Artin-Schreier cover data."""


class TraceForm:
    """tau = -1/g'(x) with per-ramified-point order bookkeeping."""

    __slots__ = ("coefficient", "orders")

    def __init__(self, coefficient: RationalFunction, orders):
        self.coefficient = coefficient
        self.orders = orders  # Place -> {"plain": int, "log": int}

    def plain_order(self, b: Place) -> int:
        return self.orders[b]["plain"]

    def log_order(self, b: Place) -> int:
        return self.orders[b]["log"]


class ArtinSchreierCover:
    """Degree-p cover y^p - y = g(x) in normal form."""

    __slots__ = ("spec", "branch_points", "parts", "conductors", "genus", "marked_unramified")

    def __init__(self, spec: FieldSpec, branch_parts, marked_unramified=()):
        """branch_parts: mapping Place -> Polynomial h (in u = 1/(x-b) or u = x at infinity)."""
        p = spec.p
        places = sorted(branch_parts, key=lambda q: q.sort_key())
        conductors = []
        for b in places:
            h = branch_parts[b]
            if h.is_zero() or h.degree < 1:
                raise CoverError(f"empty principal part at {b}")
            if h.coefficient(0).idx != 0:
                raise CoverError(f"principal part at {b} must vanish at 0")
            for j in range(len(h.coeffs)):
                if j % p == 0 and j > 0 and h.coeffs[j] != 0:
                    raise CoverError(f"unreduced p-th power term of order {j} at {b}")
            d = h.degree
            if d % p == 0:
                raise CoverError(f"pole order {d} divisible by p at {b}")
            conductors.append(d + 1)
        if not places:
            raise CoverError("no branch points: the cover is disconnected")
        total = sum(conductors)
        num = (p - 1) * (total - 2)
        if num < 0 or num % 2 != 0:
            raise CoverError(f"inconsistent conductor sum {total}")
        marked = tuple(marked_unramified)
        if len(set(marked)) != len(marked):
            raise CoverError("repeated marked points")
        for q in marked:
            if q in branch_parts:
                raise CoverError(f"marked point {q} collides with a branch point")
        self.spec = spec
        self.branch_points = tuple(places)
        self.parts = tuple(branch_parts[b] for b in places)
        self.conductors = tuple(conductors)
        self.genus = num // 2
        self.marked_unramified = marked

    # -- construction ------------------------------------------------------

    @classmethod
    def from_equation(cls, spec: FieldSpec, rhs: RationalFunction, marked_unramified=()):
        """Build the cover from any rational right-hand side.

        Partial fractions split the right-hand side by pole; terms whose
        exponent is divisible by p are replaced by their p-th root at the
        reduced exponent (an Artin-Schreier substitution), iterating to a
        fixed point; additive constants are dropped.
        """
        p = spec.p
        pf = partial_fractions(rhs)
        per_point = {}
        for b, j, a in pf.terms:
            per_point.setdefault(Place.finite(b), {})[j] = a
        poly_terms = {}
        for j in range(1, len(pf.poly.coeffs)):
            c = pf.poly.coefficient(j)
            if c.idx != 0:
                poly_terms[j] = c
        if poly_terms:
            per_point[INFINITY] = poly_terms

        branch_parts = {}
        for b, terms in per_point.items():
            terms = dict(terms)
            while True:
                reducible = [j for j, a in terms.items() if j % p == 0 and a.idx != 0]
                if not reducible:
                    break
                for j in reducible:
                    a = terms.pop(j)
                    r = j // p
                    prev = terms.get(r)
                    new = a.pth_root() if prev is None else prev + a.pth_root()
                    if new.idx == 0:
                        terms.pop(r, None)
                    else:
                        terms[r] = new
            terms = {j: a for j, a in terms.items() if a.idx != 0}
            if not terms:
                continue
            size = max(terms) + 1
            coeffs = [spec.element(0)] * size
            for j, a in terms.items():
                coeffs[j] = a
            branch_parts[b] = Polynomial(spec, coeffs)
        return cls(spec, branch_parts, marked_unramified)

    # -- normal form -------------------------------------------------------

    def normal_form(self) -> RationalFunction:
        """The reduced right-hand side g(x) as a rational function."""
        spec = self.spec
        x = RationalFunction.variable(spec)
        out = RationalFunction.constant(spec, 0)
        for b, h in zip(self.branch_points, self.parts):
            u = x if b.is_infinity else 1 / (x - b.value)
            term = RationalFunction.constant(spec, 0)
            for j in range(len(h.coeffs) - 1, 0, -1):
                term = (term + h.coefficient(j)) * u
            out = out + term
        return out

    def part_at(self, b: Place) -> Polynomial:
        return self.parts[self.branch_points.index(b)]

    def __eq__(self, other):
        return (
            isinstance(other, ArtinSchreierCover)
            and self.spec == other.spec
            and self.branch_points == other.branch_points
            and self.parts == other.parts
            and self.marked_unramified == other.marked_unramified
        )

    def __repr__(self):
        return f"ArtinSchreierCover(y^{self.spec.p} - y = {self.normal_form()})"

    # -- invariants --------------------------------------------------------

    def ramification_divisor(self) -> Divisor:
        """R(f) = sum e_i (p-1) at the unique point above each branch point.

        Upstairs points are labeled by their branch point image (the cover
        is totally ramified there).
        """
        p = self.spec.p
        return Divisor({b: e * (p - 1) for b, e in zip(self.branch_points, self.conductors)})

    def trace_form(self) -> TraceForm:
        g = self.normal_form()
        gp = g.derivative()
        if gp.is_zero():
            raise AssertionError("g' = 0 cannot happen in normal form")
        coeff = RationalFunction.constant(self.spec, -1) / gp
        p = self.spec.p
        orders = {}
        for b in self.branch_points:
            ord_g = g.order_at(b)
            ord_gp = gp.order_at(b)
            # value of dx/dz upstairs: 0 at a finite point (z = x - b),
            # -2p at infinity (z = 1/x, dx/dz = -1/z^2).
            v_dxdz = -2 * p if b.is_infinity else 0
            plain = -p * ord_gp - v_dxdz - p + ord_g
            orders[b] = {"plain": plain, "log": plain + 1}
        return TraceForm(coeff, orders)

    def moduli_dimension(self) -> int:
        return moduli_dimension(
            self.spec.p, self.genus, self.conductors, len(self.marked_unramified)
        )


def moduli_dimension(p: int, h: int, e, n: int) -> int:
    """Dimension 2h/(p-1) + n - 1 - sum floor((e_i - 1)/p) of the cover moduli."""
    e = tuple(e)
    for ei in e:
        if ei % p == 1:
            raise CoverError(f"conductor {ei} is 1 mod p")
    if sum(e) * (p - 1) != 2 * h + 2 * (p - 1):
        raise CoverError(f"conductors {e} inconsistent with genus {h}")
    twoh = 2 * h
    if twoh % (p - 1) != 0:
        raise CoverError("2h not divisible by p-1")
    dim = twoh // (p - 1) + n - 1 - sum((ei - 1) // p for ei in e)
    # equivalent closed form n + m - 3 + sum (e_i - 1 - floor((e_i-1)/p))
    m = len(e)
    alt = n + m - 3 + sum(ei - 1 - (ei - 1) // p for ei in e)
    assert alt == dim
    return dim


def isomorphic(c1: ArtinSchreierCover, c2: ArtinSchreierCover) -> bool:
    """Whether a Moebius map matching the special configurations carries c1 to c2.

    Special points (branch then marked, in stored order) rigidify the
    line; fewer than three of them is rejected as unrigidified.
    """
    if c1.spec != c2.spec:
        raise CoverError("covers live over different fields")
    spec = c1.spec
    s1 = list(c1.branch_points) + list(c1.marked_unramified)
    s2 = list(c2.branch_points) + list(c2.marked_unramified)
    if len(s1) < 3 or len(s2) < 3:
        raise CoverError("unrigidified: fewer than three special points")
    if len(s1) != len(s2):
        return False
    try:
        phi = Mobius.from_triples(spec, tuple(s1[:3]), tuple(s2[:3]))
    except ValueError:
        return False
    if any(phi.apply_place(a) != b for a, b in zip(s1, s2)):
        return False
    moved = c1.normal_form().compose(phi.inverse().as_rational())
    marked2 = tuple(phi.apply_place(q) for q in c1.marked_unramified)
    for u in range(1, spec.p):
        candidate = ArtinSchreierCover.from_equation(
            spec, moved * spec.from_int(u).inverse(), marked2
        )
        if candidate == c2:
            return True
    return False
