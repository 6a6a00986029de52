"""One-variable Laurent polynomials with exact integer or mod-p coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping


@dataclass(frozen=True)
class LaurentPoly:
    """``sum(coeffs[i] * t**(low + i))``, trimmed so both end coefficients are nonzero.

    With ``modulus`` set, coefficients live in ``0..p-1``.
    """

    low: int = 0
    coeffs: tuple[int, ...] = ()
    modulus: int | None = None

    def __post_init__(self):
        cs = list(self.coeffs)
        if self.modulus is not None:
            cs = [c % self.modulus for c in cs]
        low = self.low
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        j = len(cs)
        while j > i and cs[j - 1] == 0:
            j -= 1
        cs = cs[i:j]
        low = low + i if cs else 0
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "low", low)

    # -- constructors --

    @classmethod
    def zero(cls, modulus: int | None = None) -> "LaurentPoly":
        return cls(0, (), modulus)

    @classmethod
    def const(cls, c: int, modulus: int | None = None) -> "LaurentPoly":
        return cls(0, (c,), modulus)

    @classmethod
    def monomial(cls, k: int, c: int = 1, modulus: int | None = None) -> "LaurentPoly":
        return cls(k, (c,), modulus)

    @classmethod
    def from_dict(cls, d: Mapping[int, int], modulus: int | None = None) -> "LaurentPoly":
        if not d:
            return cls.zero(modulus)
        lo, hi = min(d), max(d)
        cs = [0] * (hi - lo + 1)
        for k, v in d.items():
            cs[k - lo] += v
        return cls(lo, tuple(cs), modulus)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0, modulus: int | None = None) -> "LaurentPoly":
        return cls(low, tuple(coeffs), modulus)

    # -- basic properties --

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        """Width ``high - low``; -1 for zero."""
        return len(self.coeffs) - 1

    def to_dict(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def is_unit(self) -> bool:
        if len(self.coeffs) != 1:
            return False
        if self.modulus is None:
            return abs(self.coeffs[0]) == 1
        return True

    # -- arithmetic --

    def _mod(self, other: "LaurentPoly") -> int | None:
        if self.modulus != other.modulus:
            raise ValueError("mixing coefficient rings")
        return self.modulus

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._mod(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        cs = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            cs[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            cs[other.low - lo + i] += c
        return LaurentPoly(lo, tuple(cs), m)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.low, tuple(-c for c in self.coeffs), self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self._mod(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero(m)
        a, b = self.coeffs, other.coeffs
        cs = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    cs[i + j] += x * y
        return LaurentPoly(self.low + other.low, tuple(cs), m)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.low + k, self.coeffs, self.modulus) if self.coeffs else self

    def __call__(self, x):
        return sum(c * x ** (self.low + i) for i, c in enumerate(self.coeffs))

    def at_one(self) -> int:
        s = sum(self.coeffs)
        return s % self.modulus if self.modulus else s

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def reduce(self, p: int) -> "LaurentPoly":
        if self.modulus is not None and self.modulus != p:
            raise ValueError("already reduced modulo a different prime")
        return LaurentPoly(self.low, self.coeffs, p)

    def canonical(self) -> "LaurentPoly":
        """Representative up to units: lowest exponent 0 and leading coefficient
        positive (integers) or equal to 1 (mod p)."""
        if not self.coeffs:
            return self
        cs = self.coeffs
        if self.modulus is None:
            if cs[-1] < 0:
                cs = tuple(-c for c in cs)
        else:
            inv = pow(cs[-1], -1, self.modulus)
            cs = tuple(c * inv for c in cs)
        return LaurentPoly(0, cs, self.modulus)

    def associate(self, other: "LaurentPoly") -> bool:
        return self.canonical() == other.canonical()

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        q, r = _divmod(self, other)
        if r.coeffs:
            raise ArithmeticError("inexact Laurent division")
        return q

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            k = self.low + i
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "t"
            else:
                mono = f"t^{k}"
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        if self.modulus:
            out += f" (mod {self.modulus})"
        return out

    def to_json(self) -> dict:
        return {"low": self.low, "coeffs": list(self.coeffs), "modulus": self.modulus}


def _divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    # division of the underlying polynomials (both shifted to low exponent 0)
    if not b.coeffs:
        raise ZeroDivisionError("division by zero polynomial")
    m = a._mod(b)
    if not a.coeffs:
        return a, a
    num = list(a.coeffs)
    den = b.coeffs
    lead = den[-1]
    inv = pow(lead, -1, m) if m else None
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c == 0:
            continue
        if m:
            f = (c * inv) % m
        else:
            if c % lead:
                raise ArithmeticError("inexact Laurent division")
            f = c // lead
        q[i] = f
        for j, d in enumerate(den):
            num[i + j] -= f * d
        if m:
            for j in range(len(den)):
                num[i + j] %= m
    rem = LaurentPoly(a.low, tuple(num), m)
    quo = LaurentPoly(a.low - b.low, tuple(q), m)
    return quo, rem


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to units, returned in canonical form."""
    m = a._mod(b)
    if not a.coeffs:
        return b.canonical()
    if not b.coeffs:
        return a.canonical()
    if m:
        x, y = a.shift(-a.low), b.shift(-b.low)
        while y.coeffs:
            _, r = _field_divmod(x, y)
            x, y = y, r.shift(-r.low) if r.coeffs else r
        return x.canonical()
    c = gcd(a.content(), b.content())
    x = _primitive(a.shift(-a.low))
    y = _primitive(b.shift(-b.low))
    if len(x.coeffs) < len(y.coeffs):
        x, y = y, x
    while y.coeffs and len(y.coeffs) > 1:
        r = _pseudo_rem(x, y)
        x, y = y, (_primitive(r.shift(-r.low)) if r.coeffs else r)
    if y.coeffs:  # y is a nonzero constant: primitive parts are coprime
        g = LaurentPoly.const(1)
    else:
        g = x
    return (g * c).canonical()


def _primitive(a: LaurentPoly) -> LaurentPoly:
    c = a.content()
    if c <= 1:
        return a
    return LaurentPoly(a.low, tuple(x // c for x in a.coeffs))


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    num = list(a.coeffs)
    den = b.coeffs
    lead = den[-1]
    while len(num) >= len(den) and any(num):
        c = num[-1]
        shift = len(num) - len(den)
        num = [x * lead for x in num]
        for j, d in enumerate(den):
            num[shift + j] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return LaurentPoly(0, tuple(num))


def _field_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    return _divmod(a, b)


def gcd_all(polys: Iterable[LaurentPoly], modulus: int | None = None) -> LaurentPoly:
    g = LaurentPoly.zero(modulus)
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_unit():
            break
    return g
