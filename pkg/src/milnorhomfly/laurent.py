"""Sparse exact Laurent polynomials and derivative evaluation at ``t = 1``.

Two flavours are provided: :class:`Laurent2` in the variables ``t, z`` and
:class:`Laurent1` in ``t`` alone.  Both store only nonzero integer
coefficients and are immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
import re

__all__ = [
    "Laurent1",
    "Laurent2",
    "LogUndefined",
    "deriv_at_one",
    "log_deriv_at_one",
    "format_rational",
]


class LogUndefined(ValueError):
    """Raised when a logarithmic derivative is requested for p with p(1) != 1."""


def _pruned(items):
    return {k: v for k, v in items if v}


class _Sparse:
    """Shared machinery for sparse commutative polynomials with integer keys."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self._terms = {self._key(k): int(v) for k, v in terms.items() if v}
        self._hash = None

    @classmethod
    def _wrap(cls, d):
        # trusted constructor: d is already pruned and keyed correctly
        obj = object.__new__(cls)
        obj._terms = d
        obj._hash = None
        return obj

    @staticmethod
    def _key(k):
        return k

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, int):
            return self.constant(other)
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._terms)
        for k, v in other._terms.items():
            d[k] = d.get(k, 0) + v
        return self._wrap(_pruned(d.items()))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self._wrap({})
            return self._wrap({k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        d = {}
        add = self._add_keys
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = add(k1, k2)
                d[k] = d.get(k, 0) + v1 * v2
        return self._wrap(_pruned(d.items()))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((k, v),) = self._terms.items()
            if abs(v) != 1:
                raise ValueError("monomial coefficient must be a unit")
            inv = self._wrap({self._neg_key(k): v})
            return inv ** (-e)
        result = self.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


def _monomial_str(c, factors):
    body = "*".join(f for f in factors if f)
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _var(name, e):
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}" if e > 0 else f"{name}^({e})"


def _join(parts):
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class Laurent1(_Sparse):
    """Laurent polynomial in ``t`` with integer coefficients.

    >>> p = Laurent1({2: 2, 4: -1})
    >>> p(1)
    1
    """

    __slots__ = ()

    @staticmethod
    def _key(k):
        return int(k)

    @staticmethod
    def _add_keys(a, b):
        return a + b

    @staticmethod
    def _neg_key(a):
        return -a

    @classmethod
    def constant(cls, c):
        return cls._wrap({0: c} if c else {})

    @classmethod
    def t(cls, e=1):
        return cls._wrap({e: 1})

    def coeff(self, e):
        return self._terms.get(e, 0)

    def __call__(self, value):
        """Evaluate at an integer or Fraction ``value`` (exact)."""
        total = 0
        for e, c in self._terms.items():
            if e < 0:
                total += c * Fraction(1) / Fraction(value) ** (-e)
            else:
                total += c * value ** e
        if isinstance(total, Fraction) and total.denominator == 1:
            return total.numerator
        return total

    def min_degree(self):
        return min(self._terms) if self._terms else None

    def max_degree(self):
        return max(self._terms) if self._terms else None

    def __str__(self):
        parts = [_monomial_str(c, [_var("t", e)]) for e, c in sorted(self._terms.items())]
        return _join(parts)

    def to_json(self):
        return [{"t": e, "c": str(c)} for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, rows):
        return cls({int(r["t"]): int(r["c"]) for r in rows})


class Laurent2(_Sparse):
    """Laurent polynomial in ``t`` and ``z``; keys are ``(t_exp, z_exp)``."""

    __slots__ = ()

    @staticmethod
    def _key(k):
        a, b = k
        return (int(a), int(b))

    @staticmethod
    def _add_keys(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def _neg_key(a):
        return (-a[0], -a[1])

    @classmethod
    def constant(cls, c):
        return cls._wrap({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c=1, t=0, z=0):
        return cls._wrap({(t, z): c} if c else {})

    def coeff(self, t, z):
        return self._terms.get((t, z), 0)

    def z_coefficient(self, k):
        """The coefficient of ``z^k`` as a :class:`Laurent1`."""
        return Laurent1._wrap({a: c for (a, b), c in self._terms.items() if b == k})

    def z_degrees(self):
        return sorted({b for (_, b) in self._terms})

    def shift(self, c=1, t=0, z=0):
        """Return ``c * t^t * z^z * self`` without a general multiplication."""
        if c == 0:
            return self._wrap({})
        return self._wrap({(a + t, b + z): v * c for (a, b), v in self._terms.items()})

    def mirror(self):
        """Substitute ``t -> -1/t``; a mirror image has this polynomial."""
        return self._wrap({(-a, b): (v if a % 2 == 0 else -v) for (a, b), v in self._terms.items()})

    def __str__(self):
        parts = [
            _monomial_str(c, [_var("t", a), _var("z", b)])
            for (a, b), c in sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]
        return _join(parts)

    def to_json(self):
        return [
            {"t": a, "z": b, "c": str(c)}
            for (a, b), c in sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]

    @classmethod
    def from_json(cls, rows):
        return cls({(int(r["t"]), int(r["z"])): int(r["c"]) for r in rows})

    @classmethod
    def parse(cls, text):
        """Parse strings such as ``"2*t^2 - t^4 + t^2*z^2"`` (test convenience)."""
        text = text.replace(" ", "").replace("(", "").replace(")", "")
        if text in ("", "0"):
            return cls()
        terms = {}
        for token in re.findall(r"[+-]?[^+-]+", _protect(text)):
            sign, body = (token[0], token[1:]) if token[0] in "+-" else ("+", token)
            body = body.replace("~", "-")
            coef, a, b = 1, 0, 0
            for f in body.split("*"):
                if f in ("t", "z") or f.startswith(("t^", "z^")):
                    e = int(f[2:]) if "^" in f else 1
                    if f[0] == "t":
                        a += e
                    else:
                        b += e
                else:
                    coef *= int(f)
            if sign == "-":
                coef = -coef
            terms[(a, b)] = terms.get((a, b), 0) + coef
        return cls(terms)


def _protect(text):
    # mark minus signs inside exponents so they are not read as term separators
    return re.sub(r"\^-", "^~", text)


def deriv_at_one(p: Laurent1, l: int) -> int:
    """``l``-th derivative of ``p`` at ``t = 1`` (sum of falling factorials).

    >>> deriv_at_one(Laurent1({2: 2, 4: -1}), 3)
    -24
    """
    total = 0
    for a, c in p.items():
        f = 1
        for r in range(l):
            f *= a - r
        total += c * f
    return total


def _shifted_series(p: Laurent1, l: int):
    # coefficients of p(1+u) up to u^l; generalized binomials handle negative powers
    out = [0] * (l + 1)
    for a, c in p.items():
        for r in range(l + 1):
            if a >= 0:
                b = comb(a, r)
            else:
                b = (-1) ** r * comb(-a + r - 1, r)
            out[r] += c * b
    return out


def log_deriv_at_one(p: Laurent1, l: int) -> Fraction:
    """``l``-th derivative of ``log p`` at ``t = 1``, computed exactly.

    The expansion p(1+u) = 1 + v(u) is composed with log(1+v) truncated at
    degree ``l``.

    >>> log_deriv_at_one(Laurent1({2: 2, 4: -1}), 3)
    Fraction(-24, 1)
    """
    s = _shifted_series(p, l)
    if s[0] != 1:
        raise LogUndefined(f"p(1) = {s[0]}, expected 1")
    if l == 0:
        return Fraction(0)
    v = [0] + s[1:]
    log = [Fraction(0)] * (l + 1)
    power = [1] + [0] * l  # v^0
    for j in range(1, l + 1):
        nxt = [0] * (l + 1)
        for i, a in enumerate(power):
            if a:
                for k in range(1, l + 1 - i):
                    nxt[i + k] += a * v[k]
        power = nxt
        coef = Fraction((-1) ** (j + 1), j)
        for i in range(l + 1):
            if power[i]:
                log[i] += coef * power[i]
    return log[l] * factorial(l)


def format_rational(x) -> str:
    """Render an int or Fraction as ``"p"`` or ``"p/q"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
