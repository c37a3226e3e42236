"""String links as words in braid and band generators, plus index sequences.

Letters are read bottom to top: the first letter of a word sits lowest, and
``u * v`` stacks ``v`` above ``u``.  Band letters are expanded into Artin
braid generators on demand.  The generator ``s_i`` (1-based) is the positive
crossing in which the strand at position ``i`` passes over the strand at
position ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
import re
from typing import Iterable, NamedTuple

__all__ = [
    "Letter",
    "StringLinkWord",
    "ParseError",
    "StrandIndexError",
    "InvalidSubsequence",
    "IndexSequence",
    "parse_word",
    "parse_sequence",
    "subsequences",
    "band",
    "braid_letter",
    "restrict_braid",
    "permutation_braid",
    "relabel",
]


class ParseError(ValueError):
    """Malformed word or sequence text; ``position`` is a character offset."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class StrandIndexError(IndexError):
    """A strand or generator index outside the allowed range."""


class InvalidSubsequence(ValueError):
    """An index sequence with repeated or out-of-range entries."""


class Letter(NamedTuple):
    """One generator: ``kind`` is ``"s"`` (braid) or ``"A"`` (band); ``j`` is 0 for braids."""

    kind: str
    i: int
    j: int
    exp: int

    def inverse(self):
        return self._replace(exp=-self.exp)

    def text(self):
        head = f"s{self.i}" if self.kind == "s" else f"A{_pair(self.i, self.j)}"
        return head if self.exp == 1 else f"{head}^-1"

    def braid(self):
        """Signed Artin generators of this letter, bottom to top."""
        if self.kind == "s":
            return (self.i * self.exp,)
        i, j = self.i, self.j
        go = tuple(range(i, j - 1))
        back = tuple(-p for p in reversed(go))
        c = j - 1
        return go + (c * self.exp, c * self.exp) + back


def _pair(i, j):
    return f"{i}{j}" if i < 10 and j < 10 else f"{i},{j}"


def band(i, j, exp=1):
    """Band letter ``A_ij^exp``; the pair is unordered so ``band(3, 1)`` is ``A_13``."""
    if i == j:
        raise ValueError("band generator needs two distinct strands")
    if exp not in (1, -1):
        raise ValueError("letter exponent must be +1 or -1")
    return Letter("A", min(i, j), max(i, j), exp)


def braid_letter(i, exp=1):
    if exp not in (1, -1):
        raise ValueError("letter exponent must be +1 or -1")
    return Letter("s", i, 0, exp)


@dataclass(frozen=True)
class StringLinkWord:
    """A string link on ``n`` strands given as a word of generators.

    Band generator ``A_ij`` sends strand ``i`` to the right in front of the
    strands between, clasps it with strand ``j`` by a full twist, and brings
    it back.  Its contribution to the linking number of ``i`` and ``j`` is
    the exponent.
    """

    n: int
    letters: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise StrandIndexError("a string link needs at least one strand")
        letters = tuple(self.letters)
        for L in letters:
            if L.kind == "s":
                if not 1 <= L.i < self.n:
                    raise StrandIndexError(f"s{L.i} out of range for {self.n} strands")
            elif L.kind == "A":
                if not 1 <= L.i < L.j <= self.n:
                    raise StrandIndexError(f"A{_pair(L.i, L.j)} out of range for {self.n} strands")
            else:
                raise ValueError(f"unknown letter kind {L.kind!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def trivial(cls, n):
        return cls(n, ())

    @classmethod
    def from_braid(cls, n, gens: Iterable[int]):
        return cls(n, tuple(braid_letter(abs(g), 1 if g > 0 else -1) for g in gens))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "StringLinkWord"):
        """Stack ``other`` above ``self``."""
        if self.n != other.n:
            raise ValueError("cannot stack string links with different strand counts")
        return StringLinkWord(self.n, self.letters + other.letters)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return StringLinkWord(self.n, self.letters * e)

    def inverse(self):
        return StringLinkWord(self.n, tuple(L.inverse() for L in reversed(self.letters)))

    def braid(self):
        """The word as signed Artin generators (tuple of nonzero ints)."""
        out = []
        for L in self.letters:
            out.extend(L.braid())
        return tuple(out)

    def band_count(self):
        return sum(1 for L in self.letters if L.kind == "A")

    def top_positions(self):
        """``top[s - 1]`` is the top position reached by the strand starting at ``s``."""
        pos = list(range(1, self.n + 1))  # pos[p-1] = strand at position p
        for g in self.braid():
            p = abs(g)
            pos[p - 1], pos[p] = pos[p], pos[p - 1]
        top = [0] * self.n
        for p, s in enumerate(pos, start=1):
            top[s - 1] = p
        return tuple(top)

    def is_pure(self):
        return self.top_positions() == tuple(range(1, self.n + 1))

    def text(self):
        return " ".join(L.text() for L in self.letters)

    def __str__(self):
        return self.text() or "(trivial)"


_TOKEN = re.compile(r"^(?:(s)(\d+)|A(\d+)(?:,(\d+))?)(?:\^([+-]?\d+))?$")


def parse_word(text: str, n: int) -> StringLinkWord:
    """Parse tokens such as ``s3``, ``s3^-1``, ``A13^2`` or ``A2,11``.

    Powers expand into repeated letters.  No cancellation is performed.

    >>> len(parse_word("A13^2 A24^3", 4))
    5
    """
    letters = []
    for m in re.finditer(r"\S+", text):
        tok, at = m.group(), m.start()
        tm = _TOKEN.match(tok)
        if not tm:
            raise ParseError(f"malformed token {tok!r}", at)
        exp = int(tm.group(5)) if tm.group(5) else 1
        sign = 1 if exp >= 0 else -1
        if tm.group(1):
            i = int(tm.group(2))
            if not 1 <= i < n:
                raise StrandIndexError(f"s{i} out of range for {n} strands")
            letters.extend([braid_letter(i, sign)] * abs(exp))
            continue
        digits = tm.group(3)
        if tm.group(4) is not None:
            i, j = int(digits), int(tm.group(4))
        elif len(digits) == 2:
            i, j = int(digits[0]), int(digits[1])
        else:
            raise ParseError(f"ambiguous band token {tok!r}; write A<i>,<j>", at)
        if i == j:
            raise ParseError(f"band token {tok!r} joins a strand to itself", at)
        if not (1 <= i <= n and 1 <= j <= n):
            raise StrandIndexError(f"A{_pair(i, j)} out of range for {n} strands")
        letters.extend([band(i, j, sign)] * abs(exp))
    return StringLinkWord(n, tuple(letters))


class IndexSequence(tuple):
    """A sequence of distinct positive integers, e.g. ``IndexSequence("1324")``."""

    def __new__(cls, entries=()):
        if isinstance(entries, str):
            return parse_sequence(entries)
        entries = tuple(int(x) for x in entries)
        if len(set(entries)) != len(entries):
            raise InvalidSubsequence(f"repeated index in {entries}")
        if any(x < 1 for x in entries):
            raise InvalidSubsequence(f"indices must be positive: {entries}")
        return super().__new__(cls, entries)

    def __str__(self):
        if not self:
            return "()"
        if all(x < 10 for x in self):
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self):
        return f"IndexSequence({str(self)!r})"

    def is_subsequence_of(self, other):
        it = iter(other)
        return all(x in it for x in self)

    def is_successive(self):
        """True when the entries form a run ``j, j+1, ..., j+r``."""
        return all(b == a + 1 for a, b in zip(self, self[1:]))

    def in_Mk(self):
        """Membership in the family with ``m_0 < m_l < m_k`` for interior ``l``."""
        if len(self) < 2:
            return False
        lo, hi = self[0], self[-1]
        return lo < hi and all(lo < m < hi for m in self[1:-1])

    def rotations(self):
        return [IndexSequence(self[s:] + self[:s]) for s in range(len(self))]


def parse_sequence(text: str) -> IndexSequence:
    """Parse ``"1234"`` (single digits) or ``"1,2,10"``."""
    text = text.strip()
    if not text or text in ("()", "-"):
        return IndexSequence(())
    if "," in text:
        parts = text.split(",")
    else:
        parts = list(text)
    try:
        return IndexSequence(int(p) for p in parts)
    except ValueError as exc:
        if isinstance(exc, InvalidSubsequence):
            raise
        raise ParseError(f"malformed index sequence {text!r}") from None


def subsequences(I) -> list:
    """All ``2^|I|`` order-preserving subsequences with signs ``(-1)^|J|``.

    >>> [(str(J), s) for J, s in subsequences(IndexSequence("12"))]
    [('()', 1), ('1', -1), ('2', -1), ('12', 1)]
    """
    I = IndexSequence(I)
    out = []
    for r in range(len(I) + 1):
        for J in combinations(I, r):
            out.append((IndexSequence(J), (-1) ** r))
    return out


def restrict_braid(gens, n, keep) -> tuple:
    """Delete the strands outside ``keep``; crossings touching deleted strands vanish.

    Strands are named by their starting position.  Retained strands are
    renumbered 1..len(keep) in increasing order.
    """
    keep = set(keep)
    pos = list(range(1, n + 1))
    out = []
    for g in gens:
        p = abs(g)
        a, b = pos[p - 1], pos[p]
        if a in keep and b in keep:
            q = 1 + sum(1 for s in pos[: p - 1] if s in keep)
            out.append(q if g > 0 else -q)
        pos[p - 1], pos[p] = b, a
    return tuple(out)


def permutation_braid(targets) -> tuple:
    """Positive permutation braid sending bottom position ``p`` to top ``targets[p-1]``.

    Each pair of strands crosses at most once (bubble sort, left strand over).
    """
    labels = list(targets)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise InvalidSubsequence(f"{targets} is not a permutation")
    gens = []
    changed = True
    while changed:
        changed = False
        for p in range(len(labels) - 1):
            if labels[p] > labels[p + 1]:
                labels[p], labels[p + 1] = labels[p + 1], labels[p]
                gens.append(p + 1)
                changed = True
    return tuple(gens)


def relabel(w: StringLinkWord, I) -> StringLinkWord:
    """Conjugate ``w`` by a permutation braid so that new strand ``j`` is old strand ``I[j-1]``.

    ``I`` must be a permutation of 1..n.  The closure is the same link with
    its components renumbered.
    """
    I = IndexSequence(I)
    n = w.n
    if sorted(I) != list(range(1, n + 1)):
        raise InvalidSubsequence(f"{I} is not a permutation of 1..{n}")
    targets = [0] * n
    for j, i in enumerate(I, start=1):
        targets[i - 1] = j
    gamma = StringLinkWord.from_braid(n, permutation_braid(targets))
    return gamma.inverse() * w * gamma
