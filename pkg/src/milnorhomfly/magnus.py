"""Truncated noncommutative power series in ``X_1..X_n`` (Magnus expansions).

A series may carry a *support*: a set of words closed under taking
contiguous subwords.  Words outside such a set span a two-sided ideal, so
computing modulo it is exact on every word that is kept.  The Milnor engine
uses this to skip words with repeated letters, or everything except the
handful of words one invariant actually needs.
"""

from __future__ import annotations

from itertools import permutations, product

__all__ = [
    "MagnusSeries",
    "NotInvertible",
    "magnus_generator",
    "magnus_inverse",
    "magnus_mul",
    "factor_closure",
    "nonrepeated_words",
    "all_words",
]


class NotInvertible(ValueError):
    """Raised when inverting a series whose constant term is not 1."""


def all_words(n, d):
    """All words over 1..n of length at most d, shortest first."""
    out = []
    for length in range(d + 1):
        out.extend(product(range(1, n + 1), repeat=length))
    return frozenset(out)


def nonrepeated_words(n, d):
    """Words over 1..n of length at most d with no repeated letter."""
    out = []
    for length in range(min(d, n) + 1):
        out.extend(permutations(range(1, n + 1), length))
    return frozenset(out)


def factor_closure(words):
    """Smallest set of words containing ``words`` and closed under subwords.

    The empty word is always included.
    """
    out = {()}
    for w in words:
        w = tuple(w)
        for i in range(len(w) + 1):
            for j in range(i, len(w) + 1):
                out.add(w[i:j])
    return frozenset(out)


class MagnusSeries:
    """Element of ``Z<<X_1..X_n>>`` truncated at degree ``degree``.

    ``terms`` maps words (tuples of 1-based letters) to nonzero integers.
    All stored words lie in ``support`` when one is given.
    """

    __slots__ = ("n", "degree", "support", "_terms")

    def __init__(self, n, degree, terms=None, support=None):
        self.n = int(n)
        self.degree = int(degree)
        self.support = support
        t = {}
        for w, c in (terms or {}).items():
            w = tuple(int(x) for x in w)
            if not c or len(w) > self.degree:
                continue
            if any(x < 1 or x > self.n for x in w):
                raise ValueError(f"letter out of range in {w}")
            if support is not None and w not in support:
                continue
            t[w] = int(c)
        self._terms = t

    @classmethod
    def _wrap(cls, n, degree, terms, support):
        obj = object.__new__(cls)
        obj.n, obj.degree, obj.support, obj._terms = n, degree, support, terms
        return obj

    @classmethod
    def one(cls, n, degree, support=None):
        return cls._wrap(n, degree, {(): 1}, support)

    @property
    def terms(self):
        return dict(self._terms)

    def coeff(self, word):
        return self._terms.get(tuple(word), 0)

    def items(self):
        return self._terms.items()

    def constant_term(self):
        return self._terms.get((), 0)

    def __eq__(self, other):
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.n, self.degree, self._terms) == (other.n, other.degree, other._terms)

    def __hash__(self):
        return hash((self.n, self.degree, frozenset(self._terms.items())))

    def _check(self, other):
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("series over different alphabets or degrees")
        if self.support is not other.support and self.support != other.support:
            raise ValueError("series with different supports")

    def __add__(self, other):
        self._check(other)
        d = dict(self._terms)
        for w, c in other._terms.items():
            d[w] = d.get(w, 0) + c
        return self._wrap(self.n, self.degree, {w: c for w, c in d.items() if c}, self.support)

    def __neg__(self):
        return self._wrap(self.n, self.degree, {w: -c for w, c in self._terms.items()}, self.support)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return magnus_mul(self, other)

    def __repr__(self):
        return f"MagnusSeries(n={self.n}, degree={self.degree}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "".join(f"X{x}" for x in w)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _mul_terms(a, b, degree, support):
    # pairwise product when sparse, otherwise gather by target word
    if support is not None and len(a) * len(b) > len(support) * (degree + 1):
        out = {}
        for w in support:
            s = 0
            for k in range(len(w) + 1):
                x = a.get(w[:k])
                if x:
                    y = b.get(w[k:])
                    if y:
                        s += x * y
            if s:
                out[w] = s
        return out
    out = {}
    for u, x in a.items():
        room = degree - len(u)
        for v, y in b.items():
            if len(v) > room:
                continue
            w = u + v
            if support is not None and w not in support:
                continue
            out[w] = out.get(w, 0) + x * y
    return {w: c for w, c in out.items() if c}


def magnus_mul(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    """Truncated product ``a * b``.

    >>> x1, x2 = magnus_generator(1, 2, 2), magnus_generator(2, 2, 2)
    >>> str(magnus_mul(x1, x2))
    '1 + X1 + X2 + X1X2'
    """
    a._check(b)
    return MagnusSeries._wrap(a.n, a.degree, _mul_terms(a._terms, b._terms, a.degree, a.support), a.support)


def _inverse_terms(a, degree, support):
    if a.get(()) != 1:
        raise NotInvertible(f"constant term is {a.get((), 0)}, expected 1")
    neg = {w: -c for w, c in a.items() if w}
    result = {(): 1}
    term = {(): 1}
    for _ in range(degree):
        term = _mul_terms(term, neg, degree, support)
        if not term:
            break
        for w, c in term.items():
            result[w] = result.get(w, 0) + c
    return {w: c for w, c in result.items() if c}


def magnus_inverse(a: MagnusSeries) -> MagnusSeries:
    """Multiplicative inverse via the geometric series ``sum (1 - a)^k``."""
    return MagnusSeries._wrap(a.n, a.degree, _inverse_terms(a._terms, a.degree, a.support), a.support)


def magnus_generator(i, n, d, exponent=1, support=None) -> MagnusSeries:
    """Magnus image of ``x_i^exponent``: ``1 + X_i`` or ``1 - X_i + X_i^2 - ...``."""
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    terms = {(): 1}
    if exponent == 1:
        terms[(i,)] = 1
    elif exponent == -1:
        for k in range(1, d + 1):
            terms[(i,) * k] = (-1) ** k
    else:
        raise ValueError("exponent must be +1 or -1")
    return MagnusSeries(n, d, terms, support)
