"""Moebius transformations of the projective line over GF(p^k)."""

from __future__ import annotations

from .ffield import FieldSpec
from .ratfunc import INFINITY, Place, Polynomial, RationalFunction


class Mobius:
    """x -> (a x + b) / (c x + d) with ad - bc != 0."""

    __slots__ = ("spec", "a", "b", "c", "d")

    def __init__(self, spec: FieldSpec, a, b, c, d):
        coerce = lambda v: spec.from_int(v) if isinstance(v, int) else v
        a, b, c, d = map(coerce, (a, b, c, d))
        if (a * d - b * c).idx == 0:
            raise ValueError("singular Moebius matrix")
        self.spec = spec
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, spec):
        return cls(spec, 1, 0, 0, 1)

    def inverse(self) -> "Mobius":
        return Mobius(self.spec, self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        """Composition self after other."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return Mobius(self.spec, a, b, c, d)

    def as_rational(self) -> RationalFunction:
        spec = self.spec
        return RationalFunction(
            Polynomial(spec, [self.b, self.a]), Polynomial(spec, [self.d, self.c])
        )

    def apply_place(self, q: Place) -> Place:
        if q.is_infinity:
            if self.c.idx == 0:
                return INFINITY
            return Place.finite(self.a / self.c)
        den = self.c * q.value + self.d
        if den.idx == 0:
            return INFINITY
        return Place.finite((self.a * q.value + self.b) / den)

    @classmethod
    def to_standard(cls, spec, q0: Place, q1: Place, qinf: Place) -> "Mobius":
        """The unique map sending (q0, q1, qinf) to (0, 1, infinity)."""
        if len({q0, q1, qinf}) != 3:
            raise ValueError("points must be pairwise distinct")
        # cross ratio (x - q0)(q1 - qinf) / ((x - qinf)(q1 - q0)), degenerating
        # cleanly when one of the three points is infinity.
        one = spec.from_int(1)
        zero = spec.from_int(0)
        if qinf.is_infinity:
            d = one
            c = zero
            scale = (q1.value - q0.value).inverse()
            return cls(spec, scale, -q0.value * scale, c, d)
        if q0.is_infinity:
            # (q1 - qinf)/(x - qinf)
            num = q1.value - qinf.value
            return cls(spec, zero, num, one, -qinf.value)
        if q1.is_infinity:
            return cls(spec, one, -q0.value, one, -qinf.value)
        k = (q1.value - qinf.value) / (q1.value - q0.value)
        return cls(spec, k, -q0.value * k, one, -qinf.value)

    @classmethod
    def from_triples(cls, spec, src, dst) -> "Mobius":
        """The unique map sending the source triple to the target triple."""
        return cls.to_standard(spec, *dst).inverse() @ cls.to_standard(spec, *src)

    def __repr__(self):
        return f"Mobius(({self.a})x + ({self.b})) / (({self.c})x + ({self.d}))"
