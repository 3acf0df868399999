"""Exact arithmetic in GF(p^k).

Elements are represented by their integer index sum(c_i * p^i) where
(c_0, ..., c_{k-1}) is the coefficient vector with respect to the power
basis of a generator w.  The modulus is the lexicographically smallest
irreducible monic polynomial of degree k over GF(p), coefficients
compared low-to-high, so element indices are reproducible across runs.

Multiplication, inversion and powering go through discrete log tables
with respect to a fixed primitive element; addition uses XOR for p = 2
and a precomputed table otherwise.  Fields of order up to 2^16 are
supported, which is the intended desk scale.
"""

from __future__ import annotations

import functools

MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _gfp_mul(a, b, p, mod):
    """Multiply coefficient lists over GF(p) modulo the list `mod`."""
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                res[i + j] = (res[i + j] + ca * cb) % p
    return _gfp_rem(res, p, mod)


def _gfp_rem(a, p, mod):
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * mod[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_powmod(base, exp, p, mod):
    result = [1]
    base = _gfp_rem(base, p, mod)
    while exp:
        if exp & 1:
            result = _gfp_mul(result, base, p, mod)
        base = _gfp_mul(base, base, p, mod)
        exp >>= 1
    return result


def _gfp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a = _gfp_polyrem(a, b, p)
        a, b = b, a
    return a


def _gfp_polyrem(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        lead = a[-1]
        if lead:
            c = (lead * inv_lead) % p
            shift = len(a) - len(b)
            for i in range(len(b)):
                a[shift + i] = (a[shift + i] - c * b[i]) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _gfp_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c % p
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _is_irreducible(mod, p, k):
    """Rabin irreducibility test for the monic coefficient list `mod`."""
    x = _gfp_rem([0, 1], p, mod)
    xq = _gfp_powmod([0, 1], p**k, p, mod)
    if _gfp_sub(xq, x, p):
        return False
    for r in _prime_factors(k):
        xd = _gfp_powmod([0, 1], p ** (k // r), p, mod)
        diff = _gfp_sub(xd, x, p)
        g = _gfp_gcd(mod, diff, p) if diff else list(mod)
        if len(g) != 1:
            return False
    return True


def _smallest_modulus(p, k):
    """Lex smallest (low-to-high coefficients) irreducible monic degree-k polynomial."""
    for idx in range(p**k):
        coeffs = []
        n = idx
        for _ in range(k):
            coeffs.append(n % p)
            n //= p
        mod = coeffs + [1]
        if _is_irreducible(mod, p, k):
            return mod
    raise AssertionError("no irreducible polynomial found")


class FieldSpec:
    """The field GF(p^k) with deterministic modulus and cached arithmetic tables."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree k = {k} must be >= 1")
        q = p**k
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds supported maximum {MAX_ORDER}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = tuple(_smallest_modulus(p, k))
        self._build_tables()
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)

    def _digits(self, idx):
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(idx % p)
            idx //= p
        return out

    def _index(self, coeffs):
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + (c % self.p)
        return idx

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        mod = list(self.modulus)

        def mul_idx(a, b):
            ca = self._digits(a)
            cb = self._digits(b)
            while ca and ca[-1] == 0:
                ca.pop()
            while cb and cb[-1] == 0:
                cb.pop()
            return self._index(_gfp_mul(ca, cb, p, mod) + [0] * k)

        # Discrete log tables with respect to the smallest primitive element.
        factors = _prime_factors(q - 1)
        gen = None
        for cand in range(2 if q > 2 else 1, q):
            ok = True
            for r in factors:
                acc = 1
                e = (q - 1) // r
                base = cand
                while e:
                    if e & 1:
                        acc = mul_idx(acc, base)
                    base = mul_idx(base, base)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        assert gen is not None
        exp = [1] * (q - 1)
        log = [0] * q
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = mul_idx(cur, gen)
        self.generator_index = gen
        self._exp = exp
        self._log = log

        # Addition: XOR in characteristic 2, otherwise a flat table at desk scale.
        if p == 2:
            self._add = None
            self._neg = None
        else:
            add = [0] * (q * q)
            neg = [0] * q
            digit_cache = [self._digits(i) for i in range(q)]
            for a in range(q):
                da = digit_cache[a]
                neg[a] = self._index([(-c) % p for c in da])
                row = a * q
                for b in range(a, q):
                    db = digit_cache[b]
                    s = self._index([(x + y) % p for x, y in zip(da, db)])
                    add[row + b] = s
                    add[b * q + a] = s
            self._add = add
            self._neg = neg

    # -- index-level arithmetic -------------------------------------------

    def add_idx(self, a, b):
        if self.p == 2:
            return a ^ b
        return self._add[a * self.q + b]

    def neg_idx(self, a):
        if self.p == 2:
            return a
        return self._neg[a]

    def mul_idx(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv_idx(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_idx(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero field element")
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius_idx(self, a):
        return self.pow_idx(a, self.p)

    def pth_root_idx(self, a):
        return self.pow_idx(a, self.p ** (self.k - 1))

    # -- element constructors ---------------------------------------------

    def element(self, idx: int) -> "FieldElement":
        if not 0 <= idx < self.q:
            raise ValueError(f"element index {idx} out of range for GF({self.p}^{self.k})")
        return FieldElement(self, idx)

    def from_int(self, n: int) -> "FieldElement":
        """Image of the integer n under the natural map Z -> GF(p^k)."""
        return FieldElement(self, n % self.p)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> FieldSpec:
    """Cached FieldSpec factory."""
    return FieldSpec(p, k)


def parse_field(designator: str) -> FieldSpec:
    """Parse a designator like "2^4" or "5" into a FieldSpec."""
    text = designator.strip()
    if "^" in text:
        ps, ks = text.split("^", 1)
    else:
        ps, ks = text, "1"
    try:
        p, k = int(ps), int(ks)
    except ValueError as exc:
        raise ValueError(f"malformed field designator {designator!r}") from exc
    return field(p, k)


class FieldElement:
    """Immutable element of GF(p^k), identified by its integer index."""

    __slots__ = ("spec", "idx")

    def __init__(self, spec: FieldSpec, idx: int):
        self.spec = spec
        self.idx = idx

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("mismatched FieldSpec")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add_idx(self.idx, other.idx))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_idx(self.idx))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add_idx(self.idx, self.spec.neg_idx(other.idx)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul_idx(self.idx, other.idx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul_idx(self.idx, self.spec.inv_idx(other.idx)))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow_idx(self.idx, n))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv_idx(self.idx))

    def frobenius(self):
        return FieldElement(self.spec, self.spec.frobenius_idx(self.idx))

    def pth_root(self):
        return FieldElement(self.spec, self.spec.pth_root_idx(self.idx))

    def __bool__(self):
        return self.idx != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.spec.from_int(other)
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.idx == other.idx
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.idx))

    def coeffs(self):
        return tuple(self.spec._digits(self.idx))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.spec._digits(self.idx)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("w" if c == 1 else f"{c}*w")
            else:
                terms.append(f"w^{i}" if c == 1 else f"{c}*w^{i}")
        return "+".join(reversed(terms)) if terms else "0"

    def __repr__(self):
        return f"{self!s} in {self.spec!r}"


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()


def pth_root(a: FieldElement) -> FieldElement:
    return a.pth_root()
