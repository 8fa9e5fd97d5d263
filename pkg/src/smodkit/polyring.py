"""Univariate polynomials with integer coefficients.

``Poly`` is an immutable value type: dense coefficient tuple, index ``i`` is
the coefficient of ``x**i``, trailing zeros trimmed.  Ordering follows the
lexicographic order on Z[x]: ``p < q`` iff the leading coefficient of
``q - p`` is positive.
"""

from __future__ import annotations

import math
import re
from functools import total_ordering
from typing import Iterable, Union

IntLike = Union[int, "Poly"]


class PolyError(ValueError):
    pass


class BothZero(PolyError):
    pass


class ZeroPolynomial(PolyError):
    pass


class PolyParseError(PolyError):
    pass


def _trim(coeffs: Iterable[int]) -> tuple:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@total_ordering
class Poly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))
        object.__setattr__(self, "_hash", hash(self.coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def coerce(cls, v: IntLike) -> "Poly":
        if isinstance(v, Poly):
            return v
        if isinstance(v, int):
            return cls((v,))
        raise TypeError(f"cannot coerce {type(v).__name__} to Poly")

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> float:
        """Degree; the zero polynomial has degree ``-math.inf``."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: IntLike) -> "Poly":
        if isinstance(other, int):
            other = Poly((other,))
        elif not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other: IntLike) -> "Poly":
        if isinstance(other, int):
            other = Poly((other,))
        elif not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: IntLike) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other: IntLike) -> "Poly":
        if isinstance(other, int):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, w in enumerate(b):
                    out[i + j] += u * w
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod_exact(self, d: IntLike) -> tuple["Poly", bool]:
        """Divide by ``d`` over Z[x].  Returns ``(quotient, exact)``.

        ``exact`` is False when ``d`` does not divide ``self`` in Z[x]; the
        quotient is then meaningless.
        """
        d = Poly.coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return ZERO, True
        r = list(self.coeffs)
        dc = d.coeffs
        dl = len(dc) - 1
        lead = dc[-1]
        if len(r) - 1 < dl:
            return ZERO, False
        q = [0] * (len(r) - dl)
        for k in range(len(r) - 1, dl - 1, -1):
            c = r[k]
            if c == 0:
                continue
            t, rem = divmod(c, lead)
            if rem:
                return ZERO, False
            q[k - dl] = t
            for i, dv in enumerate(dc):
                r[k - dl + i] -= t * dv
        if any(r):
            return ZERO, False
        return Poly(q), True

    def exact_div(self, d: IntLike) -> "Poly":
        q, ok = self.divmod_exact(d)
        if not ok:
            raise ArithmeticError(f"{d} does not divide {self}")
        return q

    def __call__(self, a: int) -> int:
        return self.eval(a)

    def eval(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    # -- ordering -----------------------------------------------------------
    def sign(self) -> int:
        lead = self.leading
        return (lead > 0) - (lead < 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __lt__(self, other: IntLike) -> bool:
        if isinstance(other, int):
            other = Poly((other,))
        elif not isinstance(other, Poly):
            return NotImplemented
        return (other - self).sign() > 0

    def __hash__(self) -> int:
        return self._hash

    def __abs__(self) -> "Poly":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def sort_key(self) -> tuple:
        """Tuple key whose natural order is the lexicographic order on Z[x]."""
        if not self.coeffs:
            return (0,)
        n = len(self.coeffs)
        return (n if self.coeffs[-1] > 0 else -n,) + tuple(reversed(self.coeffs))

    # -- text ----------------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


ZERO = Poly(())
ONE = Poly((1,))
X = Poly((0, 1))


def add(p: IntLike, q: IntLike) -> Poly:
    return Poly.coerce(p) + q


def sub(p: IntLike, q: IntLike) -> Poly:
    return Poly.coerce(p) - q


def mul(p: IntLike, q: IntLike) -> Poly:
    return Poly.coerce(p) * q


def neg(p: IntLike) -> Poly:
    return -Poly.coerce(p)


def evaluate(p: IntLike, a: int) -> int:
    return Poly.coerce(p).eval(a)


def lex_compare(p: IntLike, q: IntLike) -> int:
    """-1, 0 or 1 as ``p`` is below, equal to or above ``q``."""
    return (Poly.coerce(p) - q).sign()


def poly_abs(p: IntLike) -> Poly:
    return abs(Poly.coerce(p))


def _int_gcd_content(p: Poly) -> tuple[int, Poly]:
    c = p.content()
    return c, Poly(v // c for v in p.coeffs)


def _pseudo_rem(a: Poly, b: Poly) -> Poly:
    # lead(b)**k * a = q*b + r with deg r < deg b
    r = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.leading
    while len(r) - 1 >= db and any(r):
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [v * lb for v in r]
        for i, bv in enumerate(b.coeffs):
            r[i + shift] -= lr * bv
        while r and r[-1] == 0:
            r.pop()
    return Poly(r)


def gcd(p: IntLike, q: IntLike) -> Poly:
    """Greatest common divisor in Z[x], normalised to a positive leading coefficient."""
    p, q = Poly.coerce(p), Poly.coerce(q)
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if p.is_zero():
        return abs(q)
    if q.is_zero():
        return abs(p)
    cp, pp = _int_gcd_content(p)
    cq, qq = _int_gcd_content(q)
    c = math.gcd(cp, cq)
    a, b = (pp, qq) if pp.degree >= qq.degree else (qq, pp)
    # primitive Euclidean remainder sequence
    while not b.is_zero():
        r = _pseudo_rem(a, b)
        if r.is_zero():
            a = b
            break
        _, r = _int_gcd_content(r)
        a, b = b, r
    g = abs(a) * c
    return g


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def integer_roots(p: IntLike) -> set[int]:
    """All integers ``a`` with ``p(a) == 0``."""
    p = Poly.coerce(p)
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    coeffs = p.coeffs
    k = 0
    while coeffs[k] == 0:
        k += 1
    roots = {0} if k else set()
    reduced = Poly(coeffs[k:])
    c0 = reduced.constant_term()
    for d in _divisors(c0):
        for a in (d, -d):
            if reduced.eval(a) == 0:
                roots.add(a)
    return roots


# -- text form ---------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(\d*)(?:\*?(x)(?:\^(\d+))?)?")


def parse_poly(text: str) -> Poly:
    """Parse ``"2x+1"``, ``"-x"``, ``"x^2-3"``, ``"4*x"`` and plain integers."""
    if isinstance(text, int):
        return Poly((text,))
    s = str(text).replace(" ", "")
    if not s:
        raise PolyParseError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"cannot parse {text!r} at offset {pos}")
        sign, digits, var, power = m.groups()
        if not first and not sign:
            raise PolyParseError(f"missing operator in {text!r} at offset {pos}")
        if not digits and not var:
            raise PolyParseError(f"dangling sign in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = (int(power) if power else 1) if var else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    top = max(coeffs) if coeffs else 0
    return Poly(coeffs.get(i, 0) for i in range(top + 1))


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("x" if e == 1 else f"x^{e}")
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


# -- Kronecker substitution ----------------------------------------------------

def kronecker_encode(p: IntLike, base: int) -> int:
    """Evaluate at ``base``; injective on polynomials with |coeff| < base/2."""
    return Poly.coerce(p).eval(base)


def kronecker_decode(n: int, base: int) -> Poly:
    """Inverse of :func:`kronecker_encode` using balanced base-``base`` digits."""
    digits = []
    half = base // 2
    while n:
        r = n % base
        if r > half:
            r -= base
        digits.append(r)
        n = (n - r) // base
    return Poly(digits)
