"""Dense univariate polynomials over Q with an integer fast path.

Coefficients are stored lowest degree first.  A polynomial whose coefficients
are all integers keeps them as ``int``; otherwise they are ``Fraction``.
Integer products go through Kronecker substitution so that squaring the
degree-2^k parameter polynomials stays cheap.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

_SCHOOLBOOK_CUTOFF = 24


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"unsupported coefficient {c!r}")


def _trim(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _pack(cs: Sequence[int], k: int) -> int:
    """Evaluate an integer coefficient list at 2**k (k a multiple of 8)."""
    nb = k // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nb, "little") for c in cs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nb, "little") for c in cs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, k: int, count: int) -> list[int]:
    """Inverse of ``_pack`` for balanced digits |d| < 2**(k-1)."""
    nb = k // 8
    half = 1 << (k - 1)
    bias = int.from_bytes((half.to_bytes(nb, "little")) * count, "little")
    raw = (value + bias).to_bytes(nb * count + 1, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - half for i in range(count)]


def _school_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _kron_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if min(len(a), len(b)) < _SCHOOLBOOK_CUTOFF:
        return _school_mul(a, b)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bits = (ma * mb * min(len(a), len(b))).bit_length() + 2
    k = -(-bits // 8) * 8
    prod = _pack(a, k) * _pack(b, k)
    return _unpack(prod, k, len(a) + len(b) - 1)


class Poly:
    """Immutable dense polynomial in one variable X."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim([_norm(c) for c in coeffs]))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # basic properties -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "X") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic -------------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        if self.is_integral() and other.is_integral():
            return Poly(_kron_mul(self.coeffs, other.coeffs))
        da, na = self.as_integer_scaled()
        db, nb = other.as_integer_scaled()
        prod = _kron_mul(na, nb)
        den = da * db
        return Poly([Fraction(c, den) for c in prod])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def square(self) -> "Poly":
        return self * self

    def as_integer_scaled(self) -> tuple[int, list[int]]:
        """Return (d, ints) with self == ints / d and d > 0."""
        d = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        if d == 1:
            return 1, list(self.coeffs)
        return d, [int(c * d) for c in self.coeffs]

    def content(self) -> int:
        """Gcd of the integer coefficients (integral polynomials only)."""
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "Poly":
        """Integer primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        _, ints = self.as_integer_scaled()
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Poly([c // g for c in ints])

    def monic(self) -> "Poly":
        lc = self.lc
        if lc == 1:
            return self
        return Poly([Fraction(c) / lc for c in self.coeffs])

    # evaluation -----------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of self(x) for rational x."""
        x = Fraction(x)
        if not self.coeffs:
            return 0
        p, q = x.numerator, x.denominator
        _, ints = self.as_integer_scaled()
        d = len(ints) - 1
        acc = ints[d]
        qp = 1
        for i in range(d - 1, -1, -1):
            qp *= q
            acc = acc * p + ints[i] * qp
        return (acc > 0) - (acc < 0)

    def sign_at_infinity(self, positive: bool = True) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.lc > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, t) -> "Poly":
        """Return p(X + t)."""
        t = _norm(t)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += t * cs[j + 1]
        return Poly(cs)

    def scale_var(self, s) -> "Poly":
        """Return p(s*X)."""
        s = _norm(s)
        out, pw = [], 1
        for c in self.coeffs:
            out.append(c * pw)
            pw *= s
        return Poly(out)

    def reverse(self) -> "Poly":
        return Poly(reversed(self.coeffs))

    # division ---------------------------------------------------------------
    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        integral = other.is_integral() and self.is_integral() and lcb in (1, -1)
        q = [0] * max(len(r) - db, 0)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if c == 0:
                continue
            if integral:
                f = c * lcb  # lcb is a unit
            else:
                f = Fraction(c) / lcb
            q[i] = f
            for j, b in enumerate(other.coeffs):
                r[i + j] -= f * b
        return Poly(q), Poly(r[:db] if db > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other: "Poly") -> "Poly | None":
        """Quotient if ``other`` divides ``self`` over Q, else None."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly()
        if other.degree > self.degree:
            return None
        if self.is_integral() and other.is_integral() and min(len(self), len(other)) >= _SCHOOLBOOK_CUTOFF:
            q = _kron_exact_div(self.coeffs, other.coeffs)
            if q is not None:
                return q
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    def divides(self, other: "Poly") -> bool:
        """True if self | other over Q."""
        return other.exact_div(self) is not None

    def prem(self, other: "Poly") -> "Poly":
        """Pseudo-remainder lc(other)^(deg a - deg b + 1) * a mod b, over Z."""
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        lcb = b[-1]
        if len(a) - 1 < db:
            return self
        e = len(a) - 1 - db + 1
        while len(a) - 1 >= db and a:
            c = a[-1]
            a = [x * lcb for x in a]
            shift = len(a) - 1 - db
            for j, y in enumerate(b):
                a[shift + j] -= c * y
            a.pop()
            e -= 1
            while a and a[-1] == 0:
                a.pop()
        if e > 0 and a:
            m = lcb ** e
            a = [x * m for x in a]
        return Poly(a)


def _kron_exact_div(a: Sequence[int], b: Sequence[int]) -> "Poly | None":
    norm_a = max(abs(x) for x in a)
    bits = norm_a.bit_length() + len(a) + 4
    k = -(-bits // 8) * 8
    va, vb = _pack(a, k), _pack(b, k)
    qv, rv = divmod(va, vb)
    if rv != 0:
        # integer value division is exact whenever b | a over Z[X]
        return None
    try:
        q = Poly(_unpack(qv, k, len(a) - len(b) + 1))
    except OverflowError:
        return None
    if q * Poly(b) == Poly(a):
        return q
    return None


X = Poly.x()


# gcd and square-free parts ---------------------------------------------------

_MOD_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783)


def _mod_poly(cs: Sequence[int], p: int) -> list[int]:
    out = [c % p for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _mod_gcd_degree(a: list[int], b: list[int], p: int) -> int:
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        a = a[:]
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % p
            shift = len(a) - 1 - db
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - f * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _coprime_mod_p(a: Poly, b: Poly) -> bool:
    """True when a mod p and b mod p are coprime for a prime keeping degrees."""
    for p in _MOD_PRIMES:
        if a.lc % p and b.lc % p:
            ma, mb = _mod_poly(a.coeffs, p), _mod_poly(b.coeffs, p)
            return _mod_gcd_degree(ma, mb, p) == 0
    return False


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive integer gcd with positive leading coefficient."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    if b.degree == 0:
        return Poly([1])
    if _coprime_mod_p(a, b):
        return Poly([1])
    while not b.is_zero():
        r = a.prem(b)
        a, b = b, (r.primitive() if not r.is_zero() else r)
        if b.degree == 0:
            return Poly([1])
    return a.primitive()


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p') normalised to a primitive integer polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    p = p.primitive()
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p
    q = p.exact_div(g)
    return q.primitive()


def is_squarefree(p: Poly) -> bool:
    p = p.primitive()
    if p.degree <= 1:
        return p.degree >= 0
    return poly_gcd(p, p.derivative()).degree == 0
