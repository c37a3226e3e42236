"""Generator string links and the model knots and links built from them.

``V_M`` is realised as an iterated commutator of band generators,

    V_{m0 m1} = A_{m0 m1},    V_{m0 ... mj} = [V_{m0 ... m(j-1)}, A_{m(j-1) mj}],

with ``[a, b] = a b a^-1 b^-1`` (``a`` lowest).  Its first nonvanishing Milnor
invariant is ``mu(M) = 1``.
"""

from __future__ import annotations

from itertools import combinations, permutations
import random

from .diagram import PlanarDiagram, TangleBuilder, fusion_closure, trace_closure
from .words import IndexSequence, StringLinkWord, band

__all__ = [
    "enumerate_Mk",
    "build_V",
    "commutator",
    "model_word_K_M",
    "model_word_K_MM",
    "model_K_M",
    "model_K_MM",
    "model_K_mn",
    "model_L_n",
    "random_link",
]


def enumerate_Mk(k: int, n: int) -> list:
    """Sequences ``m_0 ... m_k`` over 1..n with ``m_0 < m_l < m_k`` for ``0 < l < k``.

    >>> [str(M) for M in enumerate_Mk(3, 4)]
    ['1234', '1324']
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}")
    out = []
    for chosen in combinations(range(1, n + 1), k + 1):
        lo, hi, mid = chosen[0], chosen[-1], chosen[1:-1]
        for p in permutations(mid):
            out.append(IndexSequence((lo,) + p + (hi,)))
    return sorted(out, key=tuple)


def commutator(a: StringLinkWord, b: StringLinkWord) -> StringLinkWord:
    """``a b a^-1 b^-1`` in stacking order."""
    return a * b * a.inverse() * b.inverse()


def build_V(M, e: int = 1, n: int | None = None) -> StringLinkWord:
    """Iterated-commutator string link ``V_M^e`` on ``n`` strands (default ``max(M)``)."""
    M = IndexSequence(M)
    if len(M) < 2:
        raise ValueError("V_M needs |M| >= 2")
    if e not in (1, -1):
        raise ValueError("e must be +1 or -1")
    n = max(M) if n is None else n
    word = StringLinkWord(n, (band(M[0], M[1]),))
    for j in range(2, len(M)):
        word = commutator(word, StringLinkWord(n, (band(M[j - 1], M[j]),)))
    return word if e == 1 else word.inverse()


def _full(n):
    return IndexSequence(range(1, n + 1))


def model_word_K_M(M, x: int, n: int) -> StringLinkWord:
    return build_V(M, 1, n) ** x


def model_word_K_MM(M, Mp, x: int, y: int, n: int) -> StringLinkWord:
    M, Mp = IndexSequence(M), IndexSequence(Mp)
    if set(M) & set(Mp):
        raise ValueError(f"{M} and {Mp} share indices")
    return (build_V(M, 1, n) ** x) * (build_V(Mp, 1, n) ** y)


def model_K_M(M, x: int, n: int) -> PlanarDiagram:
    """Fusion knot of ``V_M^x`` over all ``n`` strands."""
    return fusion_closure(model_word_K_M(M, x, n), _full(n))


def model_K_MM(M, Mp, x: int, y: int, n: int) -> PlanarDiagram:
    """Fusion knot of ``V_M^x`` stacked below ``V_{M'}^y`` over all ``n`` strands."""
    return fusion_closure(model_word_K_MM(M, Mp, x, y, n), _full(n))


def model_K_mn(m: int, n: int) -> PlanarDiagram:
    """Genus-one knot with two antiparallel twist regions of ``2m`` and ``2n`` crossings.

    Built as a 4-plat: two cups, ``2|m|`` crossings between the middle
    positions, ``2|n|`` crossings between the left positions, and nested caps.
    Its ``P_0`` is ``t^{2m} + t^{2n} - t^{2m+2n}``; ``K(1, 1)`` is the positive
    trefoil and ``K(1, -1)`` the figure-eight knot.  Crossing 0 lies in the
    ``m`` region: switching it gives ``K(m - sign(m), n)`` and smoothing it
    leaves a two-component link of unknots with linking number ``n``.
    """
    B = TangleBuilder()
    B.cup(0)
    B.cup(2)
    for _ in range(2 * abs(m)):
        B.cross(1, "se" if m > 0 else "sw")
    for _ in range(2 * abs(n)):
        B.cross(0, "se" if n > 0 else "sw")
    B.cap(1)
    B.cap(0)
    return B.diagram()


def model_L_n(n: int) -> PlanarDiagram:
    """Closure of ``A_12^n``: two unknots with linking number ``n``."""
    return trace_closure(StringLinkWord(2, (band(1, 2, 1 if n >= 0 else -1),) * abs(n)))


def random_link(n: int, k: int, length: int, seed: int, *, raw_bands: bool | None = None) -> StringLinkWord:
    """Reproducible random pure word whose Milnor invariants of length ``<= k`` vanish.

    The generator is Python's :class:`random.Random` (Mersenne Twister
    MT19937) seeded with ``seed``.  With ``raw_bands`` (the default when
    ``k == 1``) the word is a product of 1..length band letters
    ``A_ij^{+-1}``.  Otherwise it stacks factors ``V_M^{+-1}`` with ``M`` a
    random non-repeated sequence of length ``k + 1``, keeping at most
    ``length`` band letters in total.
    """
    if not (n == 2 * k + 2 or (n == 4 and k == 1)):
        raise ValueError("random_link needs n = 2k + 2")
    if raw_bands is None:
        raw_bands = k == 1
    if raw_bands and k != 1:
        raise ValueError("raw band letters only satisfy the hypothesis for k = 1")
    rng = random.Random(seed)
    if length <= 0:
        return StringLinkWord.trivial(n)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if raw_bands:
        count = rng.randint(1, length)
        letters = []
        for _ in range(count):
            i, j = rng.choice(pairs)
            letters.append(band(i, j, rng.choice((1, -1))))
        return StringLinkWord(n, tuple(letters))
    word = StringLinkWord.trivial(n)
    tries = 0
    while tries < 4 * length + 8:
        tries += 1
        M = IndexSequence(rng.sample(range(1, n + 1), k + 1))
        f = build_V(M, rng.choice((1, -1)), n)
        if word.band_count() + f.band_count() > length:
            if word.band_count():
                break
            continue
        word = word * f
    return word
