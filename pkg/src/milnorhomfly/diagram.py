"""Oriented planar diagrams as PD codes, and the closures built from words.

A crossing is a 4-tuple of arc labels listed counterclockwise starting from
the incoming under-arc, together with an explicit sign.  With the incoming
under-arc pointing north, the over-strand runs west to east at a positive
crossing and east to west at a negative one.  Crossingless closed loops are
only counted (``free_loops``).  Open diagrams (string links) additionally
list their strand ``endpoints``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import json

from .words import (
    IndexSequence,
    InvalidSubsequence,
    StringLinkWord,
    restrict_braid,
)

__all__ = [
    "PlanarDiagram",
    "InvalidDiagram",
    "NotAKnot",
    "TangleBuilder",
    "braid_closure",
    "word_to_diagram",
    "trace_closure",
    "fusion_braid",
    "fusion_closure",
    "connected_sum",
    "unknot",
    "unlink",
]


class InvalidDiagram(ValueError):
    """A PD code that violates the labelling or orientation rules."""


class NotAKnot(ValueError):
    """An operation that needs a one-component diagram got a link."""


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _roles(x, s):
    # (under_in, under_out, over_in, over_out) slot indices of a crossing tuple
    return (0, 2, 3, 1) if s > 0 else (0, 2, 1, 3)


@dataclass(frozen=True)
class PlanarDiagram:
    """Immutable PD code with signs.

    >>> D = trace_closure(StringLinkWord.from_braid(2, [1, 1]))
    >>> D.n_components, D.linking_number()
    (2, 1)
    """

    crossings: tuple = ()
    signs: tuple = ()
    free_loops: int = 0
    endpoints: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(a) for a in x) for x in self.crossings))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "endpoints", tuple(tuple(int(a) for a in e) for e in self.endpoints))
        self.validate()

    # -- structure ---------------------------------------------------------
    def validate(self):
        if len(self.signs) != len(self.crossings):
            raise InvalidDiagram("one sign per crossing is required")
        if self.free_loops < 0:
            raise InvalidDiagram("free_loops must be nonnegative")
        heads, tails = {}, {}
        for k, (x, s) in enumerate(zip(self.crossings, self.signs)):
            if len(x) != 4:
                raise InvalidDiagram(f"crossing {k} does not have four arcs")
            if s not in (1, -1):
                raise InvalidDiagram(f"crossing {k} has sign {s}")
            ui, uo, oi, oo = _roles(x, s)
            for slot, table in ((ui, heads), (oi, heads), (uo, tails), (oo, tails)):
                a = x[slot]
                if a in table:
                    raise InvalidDiagram(f"arc {a} enters or leaves two crossings")
                table[a] = (k, slot)
        for b, t in self.endpoints:
            if b == t:
                if b in heads or b in tails:
                    raise InvalidDiagram(f"crossingless strand label {b} reused")
                continue
            if b in tails or t in heads:
                raise InvalidDiagram(f"endpoint arcs {b}, {t} have the wrong orientation")
            tails[b] = ("bottom", b)
            heads[t] = ("top", t)
        if set(heads) != set(tails):
            bad = sorted(set(heads) ^ set(tails))
            raise InvalidDiagram(f"arcs {bad[:5]} do not appear exactly twice with consistent orientation")

    @cached_property
    def _heads(self):
        # label -> (crossing, slot) where the arc ends (enters a crossing)
        out = {}
        for k, (x, s) in enumerate(zip(self.crossings, self.signs)):
            ui, _, oi, _ = _roles(x, s)
            out[x[ui]] = (k, ui)
            out[x[oi]] = (k, oi)
        return out

    def _exit_label(self, k, slot):
        return self.crossings[k][(slot + 2) % 4]

    @cached_property
    def _components(self):
        # lists of arc labels in traversal order; open strands first
        comps = []
        seen = set()
        for b, t in self.endpoints:
            arc, path = b, [b]
            seen.add(b)
            while arc != t:
                arc = self._exit_label(*self._heads[arc])
                path.append(arc)
                seen.add(arc)
            comps.append(path)
        for start in sorted(self._heads):
            if start in seen:
                continue
            path, arc = [], start
            while arc not in seen:
                seen.add(arc)
                path.append(arc)
                arc = self._exit_label(*self._heads[arc])
            comps.append(path)
        return comps

    @cached_property
    def _component_of(self):
        return {a: c for c, path in enumerate(self._components) for a in path}

    @property
    def n_components(self):
        return len(self._components) + self.free_loops

    @property
    def n_crossings(self):
        return len(self.crossings)

    def is_closed(self):
        return not self.endpoints

    def components(self):
        """Arc labels of each component in traversal order (free loops excluded)."""
        return [list(p) for p in self._components]

    def strand_components(self, k):
        """Component indices of the (under, over) strands at crossing ``k``."""
        x, s = self.crossings[k], self.signs[k]
        ui, _, oi, _ = _roles(x, s)
        return self._component_of[x[ui]], self._component_of[x[oi]]

    def gauss_code(self):
        """Per closed component, the sequence of ``(crossing, passes_over)`` visits."""
        if self.endpoints:
            raise InvalidDiagram("Gauss code requested for an open diagram")
        code = []
        for path in self._components:
            seq = []
            for a in path:
                k, slot = self._heads[a]
                ui = 0
                seq.append((k, slot != ui))
            code.append(tuple(seq))
        return code

    def writhe(self):
        return sum(self.signs)

    def linking_matrix(self):
        r = len(self._components) + self.free_loops
        m = [[0] * r for _ in range(r)]
        for k, s in enumerate(self.signs):
            p, q = self.strand_components(k)
            if p != q:
                m[p][q] += s
                m[q][p] += s
        for i in range(r):
            for j in range(r):
                if m[i][j] % 2:
                    raise InvalidDiagram("odd crossing count between two components")
                m[i][j] //= 2
        return m

    def linking_number(self):
        """Total linking number: sum of pairwise linking numbers."""
        m = self.linking_matrix()
        return sum(m[i][j] for i in range(len(m)) for j in range(i + 1, len(m)))

    # -- local modifications --------------------------------------------------
    def switch(self, k):
        """The diagram with crossing ``k`` changed (over and under exchanged)."""
        a, b, c, d = self.crossings[k]
        new = (d, a, b, c) if self.signs[k] > 0 else (b, c, d, a)
        xs = list(self.crossings)
        ss = list(self.signs)
        xs[k], ss[k] = new, -ss[k]
        return PlanarDiagram(tuple(xs), tuple(ss), self.free_loops, self.endpoints)

    def with_sign(self, k, sign):
        return self if self.signs[k] == sign else self.switch(k)

    def smooth(self, k):
        """The oriented smoothing at crossing ``k``."""
        a, b, c, d = self.crossings[k]
        uf = _UnionFind()
        if self.signs[k] > 0:
            uf.union(a, b)
            uf.union(d, c)
        else:
            uf.union(a, d)
            uf.union(b, c)
        xs = [tuple(uf.find(y) for y in x) for i, x in enumerate(self.crossings) if i != k]
        ss = [s for i, s in enumerate(self.signs) if i != k]
        ends = tuple((uf.find(p), uf.find(q)) for p, q in self.endpoints)
        used = {y for x in xs for y in x} | {y for e in ends for y in e}
        loops = len({uf.find(y) for y in (a, b, c, d)} - used)
        return PlanarDiagram(tuple(xs), tuple(ss), self.free_loops + loops, ends).relabeled()

    def mirror(self):
        """Mirror image: every crossing switched."""
        D = self
        for k in range(self.n_crossings):
            D = D.switch(k)
        return D

    def sublink(self, keep):
        """Diagram of the components with indices in ``keep`` (others erased)."""
        keep = set(keep)
        ncomp = len(self._components)
        uf = _UnionFind()
        xs, ss = [], []
        for k, (x, s) in enumerate(zip(self.crossings, self.signs)):
            p, q = self.strand_components(k)
            ui, uo, oi, oo = _roles(x, s)
            if p in keep and q in keep:
                xs.append(x)
                ss.append(s)
            elif p in keep:
                uf.union(x[ui], x[uo])
            elif q in keep:
                uf.union(x[oi], x[oo])
        xs = [tuple(uf.find(y) for y in x) for x in xs]
        used = {y for x in xs for y in x}
        loops = 0
        ends = []
        for c in range(ncomp):
            if c not in keep:
                continue
            path = self._components[c]
            if c < len(self.endpoints):
                b, t = self.endpoints[c]
                ends.append((uf.find(b), uf.find(t)))
            elif not any(uf.find(a) in used for a in path):
                loops += 1
        loops += sum(1 for c in range(ncomp, ncomp + self.free_loops) if c in keep)
        return PlanarDiagram(tuple(xs), tuple(ss), loops, tuple(ends)).relabeled()

    def relabeled(self):
        """Same diagram with arcs renumbered 1, 2, ... along the components."""
        new = {}
        for path in self._components:
            for a in path:
                new[a] = len(new) + 1
        xs = tuple(tuple(new[y] for y in x) for x in self.crossings)
        ends = tuple((new[b], new[t]) for b, t in self.endpoints)
        return PlanarDiagram(xs, self.signs, self.free_loops, ends)

    # -- serialisation ------------------------------------------------------
    def to_json(self):
        out = {
            "n_components": self.n_components,
            "crossings": [list(x) for x in self.crossings],
            "signs": list(self.signs),
            "free_loops": self.free_loops,
        }
        if self.endpoints:
            out["endpoints"] = [list(e) for e in self.endpoints]
        return out

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            D = cls(
                tuple(tuple(x) for x in data["crossings"]),
                tuple(data["signs"]),
                int(data.get("free_loops", 0)),
                tuple(tuple(e) for e in data.get("endpoints", ())),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidDiagram(f"malformed diagram JSON: {exc}") from None
        if "n_components" in data and int(data["n_components"]) != D.n_components:
            raise InvalidDiagram(
                f"n_components is {data['n_components']} but the crossings give {D.n_components}"
            )
        return D


class TangleBuilder:
    """Assemble a planar diagram slice by slice, from the bottom up.

    Positions are numbered from 0 at the left.  ``cup`` opens a new arc at
    two adjacent positions, ``cap`` closes two adjacent positions, and
    ``cross`` crosses two adjacent positions with either the strand from the
    lower left (``over="sw"``) or the one from the lower right (``over="se"``)
    on top.
    """

    def __init__(self, strands=0):
        self._uf = _UnionFind()
        self._next = 0
        self.positions = [self._new() for _ in range(strands)]
        self.bottom = list(self.positions)
        self._cross = []

    def _new(self):
        self._next += 1
        self._uf.find(self._next)
        return self._next

    def cup(self, p):
        a = self._new()
        self.positions[p:p] = [a, a]
        return self

    def cap(self, p):
        a, b = self.positions[p], self.positions[p + 1]
        self._uf.union(a, b)
        del self.positions[p : p + 2]
        return self

    def cross(self, p, over="sw"):
        if over not in ("sw", "se"):
            raise ValueError("over must be 'sw' or 'se'")
        sw, se = self.positions[p], self.positions[p + 1]
        ne, nw = self._new(), self._new()
        self._cross.append(((sw, se, ne, nw), over))
        self.positions[p], self.positions[p + 1] = nw, ne
        return self

    def braid(self, gens, offset=0):
        """Artin generators: ``g > 0`` puts the left strand over."""
        for g in gens:
            self.cross(abs(g) - 1 + offset, "sw" if g > 0 else "se")
        return self

    def diagram(self) -> PlanarDiagram:
        """Orient and label the result.

        Open strands run upward.  Each closed component is oriented so that
        the earliest-built crossing on it is entered from below.
        """
        find = self._uf.find
        slots = [tuple(find(a) for a in x) for x, _ in self._cross]
        overs = [o for _, o in self._cross]
        occ = {}
        for k, x in enumerate(slots):
            for s, a in enumerate(x):
                occ.setdefault(a, []).append((k, s))
        bottoms = [find(a) for a in self.bottom]
        tops = [find(a) for a in self.positions]
        if len(bottoms) != len(tops):
            raise InvalidDiagram("open strands must run from bottom to top")
        incoming = {}
        labels = {}

        def walk(k, s):
            # enter crossing k at slot s; return the arc where the path stops
            while (k, s) not in incoming:
                incoming[(k, s)] = True
                out = (s + 2) % 4
                incoming[(k, out)] = False
                a = slots[k][out]
                labels.setdefault(a, len(labels) + 1)
                nxt = [o for o in occ[a] if o != (k, out)]
                if not nxt:
                    return a
                k, s = nxt[0]
            return None

        ends = []
        for b in bottoms:
            labels.setdefault(b, len(labels) + 1)
            t = walk(*occ[b][0]) if b in occ else b
            ends.append((b, t))
        if sorted(t for _, t in ends) != sorted(tops):
            raise InvalidDiagram("open strands do not end at the top")
        for k in range(len(slots)):
            for bottom_slot in (0, 1):
                if (k, bottom_slot) not in incoming:
                    entry = slots[k][bottom_slot]
                    walk(k, bottom_slot)
                    labels.setdefault(entry, len(labels) + 1)
        xs, ss = [], []
        for k, x in enumerate(slots):
            over_pair, under_pair = ((0, 2), (1, 3)) if overs[k] == "sw" else ((1, 3), (0, 2))
            u = under_pair[0] if incoming[(k, under_pair[0])] else under_pair[1]
            oin = over_pair[0] if incoming[(k, over_pair[0])] else over_pair[1]
            xs.append(tuple(labels[x[(u + r) % 4]] for r in range(4)))
            ss.append(1 if oin == (u + 3) % 4 else -1)
        classes = {find(a) for a in range(1, self._next + 1)}
        loops = len(classes - set(occ) - set(bottoms))
        ends = tuple((labels[b], labels[t]) for b, t in ends)
        return PlanarDiagram(tuple(xs), tuple(ss), loops, ends).relabeled()


def braid_closure(gens, n) -> PlanarDiagram:
    """Closure of a braid on ``n`` strands, return arcs on the right."""
    B = TangleBuilder()
    for k in range(n):
        B.cup(k)
    B.braid(gens)
    for k in range(n - 1, -1, -1):
        B.cap(k)
    return B.diagram()


def word_to_diagram(w: StringLinkWord) -> PlanarDiagram:
    """Open diagram of the string link, every strand oriented upward."""
    B = TangleBuilder(w.n)
    B.braid(w.braid())
    return B.diagram()


def trace_closure(w: StringLinkWord) -> PlanarDiagram:
    """The usual closure: top of position ``p`` joined to bottom of position ``p``."""
    return braid_closure(w.braid(), w.n)


def _check_retained(J, n):
    try:
        J = IndexSequence(J)
    except InvalidSubsequence:
        raise
    if any(j > n for j in J):
        raise InvalidSubsequence(f"{J} has indices beyond {n}")
    if list(J) != sorted(J):
        raise InvalidSubsequence(f"{J} is not increasing")
    return J


def fusion_braid(w: StringLinkWord, J) -> tuple:
    """Braid ``(gens, m)`` whose closure is the fusion knot on the strands ``J``.

    The strands outside ``J`` are erased.  Above the remaining ``m`` strands
    a cyclic braid carries the top of retained strand ``a`` to the bottom of
    strand ``a + 1`` and the top of the last one, passing in front of the
    rest, to the bottom of the first.
    """
    J = _check_retained(J, w.n)
    m = len(J)
    gens = restrict_braid(w.braid(), w.n, J)
    cyc = tuple(-p for p in range(m - 1, 0, -1))
    return gens + cyc, m


def fusion_closure(w: StringLinkWord, J) -> PlanarDiagram:
    """The knot obtained by fusing the strands ``J`` of ``w``; ``J = ()`` gives the unknot."""
    gens, m = fusion_braid(w, J)
    if m == 0:
        return unknot()
    return braid_closure(gens, m)


def unknot() -> PlanarDiagram:
    return PlanarDiagram((), (), 1)


def unlink(r) -> PlanarDiagram:
    return PlanarDiagram((), (), r)


def connected_sum(D1: PlanarDiagram, D2: PlanarDiagram) -> PlanarDiagram:
    """Connected sum of two knot diagrams, spliced at their lowest-labelled arcs."""
    for D in (D1, D2):
        if D.n_components != 1 or not D.is_closed():
            raise NotAKnot(f"connected sum needs knots, got {D.n_components} components")
    if not D1.crossings:
        return D2
    if not D2.crossings:
        return D1
    shift = max(max(x) for x in D1.crossings)
    x2 = [tuple(a + shift for a in x) for x in D2.crossings]
    e = min(a for x in D1.crossings for a in x)
    f = min(a for x in x2 for a in x)
    k1, slot1 = D1._heads[e]
    D2s = PlanarDiagram(tuple(x2), D2.signs)
    k2, slot2 = D2s._heads[f]
    x1 = [list(x) for x in D1.crossings]
    x2 = [list(x) for x in x2]
    x1[k1][slot1] = f
    x2[k2][slot2] = e
    return PlanarDiagram(
        tuple(map(tuple, x1 + x2)), D1.signs + D2.signs
    ).relabeled()
