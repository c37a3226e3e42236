"""Milnor invariants of pure string links via the Artin action.

Reading a pure braid word bottom to top, each generator acts on the free
group of the bottom meridians.  The image of ``x_j`` under the whole word is
``C_j x_j C_j^-1``; the conjugator ``C_j``, corrected by a power of ``x_j``
so that its ``x_j`` exponent sum vanishes, is the 0-framed longitude of
strand ``j``.  Everything is carried out in the Magnus ring, never in the
free group itself.

Convention: ``mu(w, i_1 ... i_{m-1} i_m)`` is the coefficient of
``X_{i_1} ... X_{i_{m-1}}`` in the expansion of the longitude of strand
``i_m``.  With it ``mu(A_12, 12) = 1`` and the Borromean commutator
``[A_12, A_23]`` has ``mu(123) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd

from .magnus import (
    MagnusSeries,
    _mul_terms,
    all_words,
    factor_closure,
    nonrepeated_words,
)
from .words import IndexSequence, StringLinkWord

__all__ = [
    "MilnorResult",
    "NotPure",
    "RepeatedIndex",
    "artin_longitudes",
    "mu",
    "mu_table",
    "linking_matrix",
    "delta",
    "delta_sequences",
    "milnor_result",
    "standard_form",
]


class NotPure(ValueError):
    """The word permutes its strands, so longitudes are undefined."""


class RepeatedIndex(ValueError):
    """A Milnor index sequence with a repeated entry."""


@dataclass(frozen=True)
class MilnorResult:
    """Integer ``mu`` of a string-link representative, with its indeterminacy ``delta``."""

    mu: int
    delta: int
    residue: int

    def to_json(self):
        return {"mu": str(self.mu), "delta": str(self.delta), "residue": str(self.residue)}


def _power_terms(p, e, degree, support):
    # expansion of x_p^e = (1 + X_p)^e, truncated
    out = {}
    for k in range(degree + 1):
        c = comb(e, k) if e >= 0 else (-1) ** k * comb(-e + k - 1, k)
        w = (p,) * k
        if c and (support is None or w in support):
            out[w] = c
    return out


def _longitude_terms(w: StringLinkWord, degree, support):
    n = w.n
    one = {(): 1}
    C = {j: one for j in range(1, n + 1)}
    Ci = {j: one for j in range(1, n + 1)}
    pi = {j: j for j in range(1, n + 1)}
    gen_cache = {}

    def gen(p, e):
        key = (p, e)
        if key not in gen_cache:
            gen_cache[key] = _power_terms(p, e, degree, support)
        return gen_cache[key]

    def image(k, e):
        # Magnus image of phi(x_k)^e = C_k x_{pi k}^e C_k^-1
        return _mul_terms(_mul_terms(C[k], gen(pi[k], e), degree, support), Ci[k], degree, support)

    for g in w.braid():
        i = abs(g)
        if g > 0:
            # x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
            a, ai = image(i, 1), image(i, -1)
            newC_i = _mul_terms(a, C[i + 1], degree, support)
            newCi_i = _mul_terms(Ci[i + 1], ai, degree, support)
            C[i], C[i + 1] = newC_i, C[i]
            Ci[i], Ci[i + 1] = newCi_i, Ci[i]
            pi[i], pi[i + 1] = pi[i + 1], pi[i]
        else:
            # x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
            b, bi = image(i + 1, -1), image(i + 1, 1)
            newC = _mul_terms(b, C[i], degree, support)
            newCi = _mul_terms(Ci[i], bi, degree, support)
            C[i], C[i + 1] = C[i + 1], newC
            Ci[i], Ci[i + 1] = Ci[i + 1], newCi
            pi[i], pi[i + 1] = pi[i + 1], pi[i]
    if any(pi[j] != j for j in pi):
        raise NotPure(f"word permutes strands: {w}")
    out = {}
    selfexp = _self_exponents(w)
    for j in range(1, n + 1):
        e = selfexp[j]
        out[j] = _mul_terms(C[j], _power_terms(j, -e, degree, support), degree, support)
    return out


def _self_exponents(w):
    # abelianised conjugators: exponent of x_j in C_j for every strand j
    n = w.n
    ab = {j: [0] * (n + 1) for j in range(1, n + 1)}
    pi = {j: j for j in range(1, n + 1)}
    for g in w.braid():
        i = abs(g)
        if g > 0:
            new = list(ab[i + 1])
            new[pi[i]] += 1
            ab[i], ab[i + 1] = new, ab[i]
        else:
            new = list(ab[i])
            new[pi[i + 1]] -= 1
            ab[i], ab[i + 1] = ab[i + 1], new
        pi[i], pi[i + 1] = pi[i + 1], pi[i]
    return {j: ab[j][j] for j in ab}


def artin_longitudes(w: StringLinkWord, d: int, *, support=None) -> list:
    """Magnus expansions (to degree ``d``) of the 0-framed longitudes, one per strand.

    ``support`` optionally restricts the computation to a set of words closed
    under subwords, e.g. :func:`nonrepeated_words`; coefficients on those
    words are unaffected.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if support is None:
        support = all_words(w.n, d)
    else:
        support = frozenset(s for s in support if len(s) <= d)
    terms = _longitude_terms(w, d, support)
    return [MagnusSeries._wrap(w.n, d, terms[j], support) for j in range(1, w.n + 1)]


def _check_sequence(I, n):
    I = tuple(int(x) for x in I)
    if len(set(I)) != len(I):
        raise RepeatedIndex(f"repeated index in {I}")
    if any(not 1 <= x <= n for x in I):
        raise ValueError(f"index out of range in {I}")
    return IndexSequence(I)


def _mu_many(w: StringLinkWord, seqs):
    """Values of ``mu`` on several sequences with one pass over the word."""
    seqs = [_check_sequence(I, w.n) for I in seqs]
    if not seqs:
        return {}
    targets = [tuple(I[:-1]) for I in seqs]
    support = factor_closure(targets)
    degree = max(1, max(len(t) for t in targets))
    L = _longitude_terms(w, degree, support)
    return {I: L[I[-1]].get(tuple(I[:-1]), 0) for I in seqs}


def mu(w: StringLinkWord, I) -> int:
    """Milnor invariant of the string link ``w`` for a non-repeated sequence.

    >>> from .words import parse_word
    >>> mu(parse_word("A12", 2), "12")
    1
    """
    if isinstance(I, str):
        I = IndexSequence(I)
    I = _check_sequence(I, w.n)
    if len(I) < 2:
        raise ValueError("Milnor invariants need sequences of length at least 2")
    return _mu_many(w, [I])[I]


def mu_table(w: StringLinkWord, max_len: int) -> dict:
    """All non-repeated ``mu`` of lengths ``2..max_len``, keyed by sequence."""
    max_len = min(max_len, w.n)
    if max_len < 2:
        return {}
    support = nonrepeated_words(w.n, max_len - 1)
    L = _longitude_terms(w, max_len - 1, support)
    out = {}
    for word in sorted(support, key=lambda u: (len(u), u)):
        if not word:
            continue
        for last in range(1, w.n + 1):
            if last not in word:
                I = IndexSequence(word + (last,))
                out[I] = L[last].get(word, 0)
    return out


def linking_matrix(w: StringLinkWord) -> list:
    """Symmetric matrix of pairwise linking numbers ``mu(ij)``."""
    n = w.n
    seqs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    vals = _mu_many(w, seqs) if n > 1 else {}
    m = [[0] * n for _ in range(n)]
    for (i, j), v in vals.items():
        m[i - 1][j - 1] = v
    return m


def delta_sequences(I) -> list:
    """Sequences obtained from ``I`` by deleting at least one entry and rotating."""
    I = IndexSequence(I)
    out = []
    seen = set()
    for r in range(2, len(I)):
        for J in combinations(I, r):
            for s in range(r):
                K = IndexSequence(J[s:] + J[:s])
                if K not in seen:
                    seen.add(K)
                    out.append(K)
    return out


def delta(w: StringLinkWord, I) -> int:
    """gcd of ``|mu(J)|`` over :func:`delta_sequences` of ``I``; 0 when all vanish."""
    if isinstance(I, str):
        I = IndexSequence(I)
    I = _check_sequence(I, w.n)
    vals = _mu_many(w, delta_sequences(I))
    g = 0
    for v in vals.values():
        g = gcd(g, v)
    return g


def milnor_result(w: StringLinkWord, I) -> MilnorResult:
    if isinstance(I, str):
        I = IndexSequence(I)
    I = _check_sequence(I, w.n)
    seqs = delta_sequences(I)
    vals = _mu_many(w, seqs + [I])
    g = 0
    for J in seqs:
        g = gcd(g, vals[J])
    m = vals[I]
    return MilnorResult(m, g, m % g if g else m)


def standard_form(w: StringLinkWord, max_len: int) -> list:
    """Exponents ``x_M`` of the link-homotopy normal form ``prod V_M^{x_M}``.

    For ``i = 1..max_len`` and ``M`` in the length ``i + 1`` generator family,
    in lexicographic order, ``x_M`` is ``mu(w, M)`` minus ``mu`` of the partial
    product built from the shorter families.
    """
    from .models import build_V, enumerate_Mk

    n = w.n
    if not 1 <= max_len <= n - 1:
        raise ValueError(f"max_len must lie in 1..{n - 1}")
    out = []
    partial = StringLinkWord.trivial(n)
    for i in range(1, max_len + 1):
        family = enumerate_Mk(i, n)
        target = _mu_many(w, family)
        have = _mu_many(partial, family) if i > 1 else {M: 0 for M in family}
        layer = StringLinkWord.trivial(n)
        for M in family:
            x = target[M] - have[M]
            out.append((M, x))
            if x:
                layer = layer * (build_V(M, 1 if x > 0 else -1, n) ** abs(x))
        partial = partial * layer
    return out
