"""Univariate polynomials and rational functions over GF(p^k).

Polynomials are coefficient vectors (low degree first) with no trailing
zeros; the zero polynomial has an empty vector and degree NEG_INF.
Rational functions are kept in canonical reduced form: gcd(num, den) = 1
and den monic.  Places on the projective line are either finite field
elements or the distinguished point at infinity, with the convention
(y - infinity) = y^(-1); order_at(infinity) is deg(den) - deg(num).

Roots are located by exhaustive evaluation over the field, which is
exact and fast at the supported field sizes (order <= 2^16).
"""

from __future__ import annotations

from .ffield import FieldElement, FieldSpec


class NegInf:
    """Degree of the zero polynomial: a sentinel below every integer."""

    def __lt__(self, other):
        return not isinstance(other, NegInf)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, NegInf)

    def __eq__(self, other):
        return isinstance(other, NegInf)

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __hash__(self):
        return hash("NegInf")

    def __repr__(self):
        return "-inf"


NEG_INF = NegInf()


class Polynomial:
    """Polynomial over a FieldSpec; coeffs[i] is the coefficient of y^i."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        idxs = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise ValueError("mismatched FieldSpec in coefficients")
                idxs.append(c.idx)
            else:
                idxs.append(spec.from_int(c).idx)
        while idxs and idxs[-1] == 0:
            idxs.pop()
        self.spec = spec
        self.coeffs = tuple(idxs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, spec, c):
        return cls(spec, [c])

    @classmethod
    def variable(cls, spec):
        return cls(spec, [0, 1])

    @classmethod
    def from_roots(cls, spec, roots):
        out = cls.constant(spec, 1)
        y = cls.variable(spec)
        for r in roots:
            out = out * (y - cls.constant(spec, r))
        return out

    # -- basics ------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.spec.element(self.coeffs[-1])

    def coefficient(self, i: int) -> FieldElement:
        idx = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return self.spec.element(idx)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.spec.inv_idx(self.coeffs[-1])
        mul = self.spec.mul_idx
        return Polynomial(self.spec, [self.spec.element(mul(c, inv)) for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.spec != self.spec:
                raise ValueError("mismatched FieldSpec")
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial.constant(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        spec = self.spec
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = spec.add_idx(out[i], c)
        return Polynomial(spec, [spec.element(c) for c in out])

    __radd__ = __add__

    def __neg__(self):
        spec = self.spec
        return Polynomial(spec, [spec.element(spec.neg_idx(c)) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        spec = self.spec
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(spec, [])
        out = [0] * (len(a) + len(b) - 1)
        mul, add = spec.mul_idx, spec.add_idx
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = add(out[i + j], mul(ca, cb))
        return Polynomial(spec, [spec.element(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of Polynomial; use RationalFunction")
        result = Polynomial.constant(self.spec, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Polynomial"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        spec = self.spec
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = spec.inv_idx(other.coeffs[-1])
        quot = [0] * max(len(rem) - db, 0)
        mul, add, neg = spec.mul_idx, spec.add_idx, spec.neg_idx
        while len(rem) - 1 >= db and rem:
            lead = rem[-1]
            if lead:
                c = mul(lead, inv_lead)
                shift = len(rem) - 1 - db
                quot[shift] = c
                for i, cb in enumerate(other.coeffs):
                    rem[shift + i] = add(rem[shift + i], neg(mul(c, cb)))
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        mk = lambda cs: Polynomial(spec, [spec.element(c) for c in cs])
        return mk(quot), mk(rem)

    def __divmod__(self, other):
        return self.divmod(other)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Polynomial":
        spec = self.spec
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(spec.element(spec.mul_idx(self.coeffs[i], spec.from_int(i).idx)))
        return Polynomial(spec, out)

    def __call__(self, point):
        """Evaluate at a field element (Horner)."""
        if isinstance(point, int):
            point = self.spec.from_int(point)
        spec = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = spec.add_idx(spec.mul_idx(acc, point.idx), c)
        return spec.element(acc)

    def shift(self, b) -> "Polynomial":
        """Return the polynomial q with q(t) = self(b + t)."""
        if isinstance(b, int):
            b = self.spec.from_int(b)
        # Horner in (b + t): acc = acc*(b + t) + c
        acc = Polynomial(self.spec, [])
        bt = Polynomial(self.spec, [b, 1])
        for c in reversed(self.coeffs):
            acc = acc * bt + Polynomial.constant(self.spec, self.spec.element(c))
        return acc

    def roots(self):
        """All roots in the field with multiplicities, by exhaustive scan.

        Returns (list of (root, multiplicity), cofactor) where cofactor is
        the part of the polynomial without roots in the field.
        """
        spec = self.spec
        if self.is_zero():
            raise ValueError("roots of the zero polynomial")
        rem = self
        found = []
        y = Polynomial.variable(spec)
        for i in range(spec.q):
            if rem.degree == 0:
                break
            a = spec.element(i)
            if rem(a).idx == 0:
                mult = 0
                lin = y - Polynomial.constant(spec, a)
                while True:
                    q, r = rem.divmod(lin)
                    if r.is_zero():
                        rem = q
                        mult += 1
                    else:
                        break
                found.append((a, mult))
        return found, rem

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = str(self.spec.element(c))
            if i == 0:
                terms.append(cs)
                continue
            mon = "y" if i == 1 else f"y^{i}"
            if c == 1:
                terms.append(mon)
            elif "+" in cs:
                terms.append(f"({cs})*{mon}")
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Polynomial({self!s})"


class Place:
    """A point of the projective line: finite(a) or infinity."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value  # FieldElement or None for infinity

    @classmethod
    def finite(cls, a: FieldElement) -> "Place":
        return cls(a)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        return isinstance(other, Place) and self.value == other.value

    def __hash__(self):
        return hash(("Place", None if self.value is None else self.value))

    def sort_key(self):
        if self.is_infinity:
            return (1, 0)
        return (0, self.value.idx)

    def __str__(self):
        return "inf" if self.is_infinity else str(self.value)

    def __repr__(self):
        return f"Place({self!s})"


INFINITY = Place.infinity()


class Divisor:
    """Finite formal sum of places with integer coefficients."""

    __slots__ = ("orders",)

    def __init__(self, orders=None):
        self.orders = {}
        if orders:
            for place, n in dict(orders).items():
                if n:
                    self.orders[place] = n

    def order(self, place: Place) -> int:
        return self.orders.get(place, 0)

    def degree(self) -> int:
        return sum(self.orders.values())

    def __add__(self, other):
        out = dict(self.orders)
        for place, n in other.orders.items():
            out[place] = out.get(place, 0) + n
        return Divisor(out)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.orders == other.orders

    def items(self):
        return sorted(self.orders.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.orders:
            return "0"
        return " + ".join(f"{n}*[{place}]" for place, n in self.items())

    def __repr__(self):
        return f"Divisor({self!s})"


class RationalFunction:
    """Reduced fraction num/den of polynomials; den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = None):
        if den is None:
            den = Polynomial.constant(num.spec, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num // g
            den = den // g
        if not den.is_zero() and den.coeffs and den.coeffs[-1] != 1:
            lead = den.leading()
            inv = lead.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @property
    def spec(self):
        return self.num.spec

    @classmethod
    def constant(cls, spec, c):
        return cls(Polynomial.constant(spec, c))

    @classmethod
    def variable(cls, spec):
        return cls(Polynomial.variable(spec))

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coefficient(0)

    def is_polynomial(self):
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement, Polynomial)):
            other = RationalFunction(Polynomial.constant(self.spec, other) if not isinstance(other, Polynomial) else other)
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.spec != self.spec:
                raise ValueError("mismatched FieldSpec")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction.constant(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, point):
        if isinstance(point, int):
            point = self.spec.from_int(point)
        dv = self.den(point)
        if dv.idx == 0:
            raise ZeroDivisionError(f"pole at {point}")
        return self.num(point) / dv

    def compose(self, g: "RationalFunction") -> "RationalFunction":
        """Substitution self(g) for a rational argument g."""
        spec = self.spec

        def poly_at(poly):
            acc = RationalFunction.constant(spec, 0)
            for c in reversed(poly.coeffs):
                acc = acc * g + RationalFunction.constant(spec, spec.element(c))
            return acc

        den = poly_at(self.den)
        if den.is_zero():
            raise ZeroDivisionError("composition lands in the pole locus")
        return poly_at(self.num) / den

    def order_at(self, q: Place) -> int:
        """Zero order (positive) or pole order (negative) at the place q."""
        if self.is_zero():
            raise ValueError("the zero function has no order")
        if q.is_infinity:
            return self.den.degree - self.num.degree
        a = q.value
        lin = Polynomial(self.spec, [-a, 1])

        def mult(poly):
            m = 0
            while True:
                quo, rem = poly.divmod(lin)
                if rem.is_zero():
                    poly = quo
                    m += 1
                else:
                    return m

        if self.num(a).idx != 0:
            if self.den(a).idx != 0:
                return 0
            return -mult(self.den)
        return mult(self.num)

    def divisor(self) -> Divisor:
        """Full divisor over the field, including the place at infinity.

        Raises ValueError if numerator or denominator has an irreducible
        factor of degree > 1 over the field.
        """
        if self.is_zero():
            raise ValueError("the zero function has no divisor")
        out = {}
        for poly, sign in ((self.num, 1), (self.den, -1)):
            if poly.degree == 0:
                continue
            found, rem = poly.roots()
            if rem.degree > 0:
                raise ValueError(f"factor does not split over {self.spec!r}: {rem}")
            for root, m in found:
                place = Place.finite(root)
                out[place] = out.get(place, 0) + sign * m
        inf_order = self.den.degree - self.num.degree
        if inf_order:
            out[INFINITY] = inf_order
        return Divisor(out)

    def __str__(self):
        ns = str(self.num)
        if self.den.degree == 0:
            return ns
        if self.num.degree > 0 and len(self.num.coeffs) - len([c for c in self.num.coeffs if c == 0]) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self!s})"


class PartialFractions:
    """Exact decomposition f = poly + sum of a/(y-b)^j terms."""

    __slots__ = ("poly", "terms")

    def __init__(self, poly: Polynomial, terms):
        self.poly = poly
        # terms: list of (b: FieldElement, j: int, a: FieldElement), a != 0
        self.terms = sorted(terms, key=lambda t: (t[0].idx, t[1]))

    def recombine(self) -> RationalFunction:
        spec = self.poly.spec
        out = RationalFunction(self.poly)
        y = RationalFunction.variable(spec)
        for b, j, a in self.terms:
            out = out + RationalFunction.constant(spec, a) / (y - b) ** j
        return out


def partial_fractions(f: RationalFunction) -> PartialFractions:
    """Partial fraction decomposition; requires the denominator to split."""
    spec = f.spec
    poly_part, rest = f.num.divmod(f.den)
    if rest.is_zero() or f.den.degree == 0:
        return PartialFractions(poly_part, [])
    found, cofactor = f.den.roots()
    if cofactor.degree > 0:
        raise ValueError(f"denominator factor does not split over {spec!r}: {cofactor}")
    terms = []
    y = Polynomial.variable(spec)
    for b, e in found:
        lin = y - Polynomial.constant(spec, b)
        g = f.den // (lin**e)
        # Taylor expansion of rest/g at y = b up to order e-1, in char-free form:
        # substitute y = b + t and invert the unit g(b+t) as a power series.
        num_t = rest.shift(b)
        g_t = g.shift(b)
        inv = _series_inverse(g_t, e, spec)
        prod = _series_mul(num_t, inv, e, spec)
        for j in range(e):
            c = prod.coefficient(j)
            if c.idx != 0:
                terms.append((b, e - j, c))
    return PartialFractions(poly_part, terms)


def _series_mul(a: Polynomial, b: Polynomial, prec: int, spec) -> Polynomial:
    out = [0] * prec
    mul, add = spec.mul_idx, spec.add_idx
    for i, ca in enumerate(a.coeffs[:prec]):
        if ca:
            for j, cb in enumerate(b.coeffs[: prec - i]):
                if cb:
                    out[i + j] = add(out[i + j], mul(ca, cb))
    return Polynomial(spec, [spec.element(c) for c in out])


def _series_inverse(a: Polynomial, prec: int, spec) -> Polynomial:
    """Power series inverse of a unit (a(0) != 0) to the given precision."""
    c0 = a.coefficient(0)
    if c0.idx == 0:
        raise ZeroDivisionError("series inverse of a non-unit")
    inv0 = c0.inverse()
    out = [inv0.idx] + [0] * (prec - 1)
    mul, add, neg = spec.mul_idx, spec.add_idx, spec.neg_idx
    for n in range(1, prec):
        acc = 0
        for i in range(1, n + 1):
            ai = a.coeffs[i] if i < len(a.coeffs) else 0
            if ai:
                acc = add(acc, mul(ai, out[n - i]))
        out[n] = neg(mul(acc, inv0.idx))
    return Polynomial(spec, [spec.element(c) for c in out])
