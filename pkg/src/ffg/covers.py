"""Covering downsets and uniformities on a single frame (the symmetric
case of the paircover machinery)."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .caps import DEFAULT_CAPS, Caps
from .errors import (NoStarRefinement, NoStrongRefinement, NotAdmissible,
                     NotCovering, NotDirected, SizeCap)
from .order import FiniteFrame


def _normalize_antichain(frame: FiniteFrame, items: Iterable[int]) -> tuple[int, ...]:
    items = set(items)
    out = [a for a in items
           if not any(b != a and frame.le(a, b) for b in items)]
    return tuple(sorted(out))


class CoverDownset:
    """A downset of the frame given by its antichain of maximal elements."""

    __slots__ = ("frame", "gens")

    def __init__(self, frame: FiniteFrame, gens: Iterable[int]):
        self.frame = frame
        self.gens = _normalize_antichain(frame, gens)

    def contains(self, x: int) -> bool:
        return any(self.frame.le(x, g) for g in self.gens)

    def members(self) -> list[int]:
        return [x for x in range(self.frame.n) if self.contains(x)]

    def le(self, other: "CoverDownset") -> bool:
        return all(other.contains(g) for g in self.gens)

    def is_covering(self) -> bool:
        return self.frame.join_all(self.gens) == self.frame.top

    def is_strong(self) -> bool:
        """Generated by nonzero elements."""
        return all(g != self.frame.bottom for g in self.gens)

    def strongify(self) -> "CoverDownset":
        return CoverDownset(self.frame, [g for g in self.gens if g != self.frame.bottom])

    def star(self, x: int) -> int:
        """st(x, C): join of the members meeting x; generators suffice."""
        frame = self.frame
        return frame.join_all(g for g in self.gens
                              if frame.meet(g, x) != frame.bottom)

    def star_cover(self) -> "CoverDownset":
        return CoverDownset(self.frame, [self.star(g) for g in self.gens])

    def is_transitive(self) -> bool:
        return self.star_cover().gens == self.gens

    def is_partition_generated(self) -> bool:
        frame = self.frame
        return (self.is_covering()
                and all(g != frame.bottom for g in self.gens)
                and all(frame.meet(a, b) == frame.bottom
                        for a, b in combinations(self.gens, 2)))

    def __eq__(self, other):
        return (isinstance(other, CoverDownset) and self.frame == other.frame
                and self.gens == other.gens)

    def __hash__(self):
        return hash((self.frame, self.gens))

    def __repr__(self):
        return f"CoverDownset({self.gens})"


def make_cover(frame: FiniteFrame, items: Iterable[int]) -> CoverDownset:
    c = CoverDownset(frame, items)
    if not c.is_covering():
        raise NotCovering(frame.join_all(c.gens))
    return c


def minimal_covers(base: Sequence[CoverDownset]) -> list[CoverDownset]:
    out = []
    for c in base:
        if not any(d.le(c) and d.gens != c.gens for d in base):
            out.append(c)
    seen = set()
    uniq = []
    for c in out:
        if c.gens not in seen:
            seen.add(c.gens)
            uniq.append(c)
    return uniq


class Uniformity:
    """A uniformity on a frame presented by a finite base of covering
    downsets; D is uniform iff some base member lies below it."""

    __slots__ = ("frame", "base", "_min")

    def __init__(self, frame: FiniteFrame, base: Sequence[CoverDownset]):
        self.frame = frame
        self.base = tuple(sorted(set(base), key=lambda c: c.gens))
        self._min = None

    def minimum(self) -> CoverDownset | None:
        """The finest base member if one exists (it does for all the bases
        this package builds); enables O(1) refinement queries."""
        if self._min is None:
            for c in self.base:
                if all(c.le(d) for d in self.base):
                    self._min = c
                    break
            else:
                self._min = False
        return self._min or None

    def is_uniform(self, c: CoverDownset) -> bool:
        m = self.minimum()
        if m is not None:
            return m.le(c)
        return any(d.le(c) for d in self.base)

    def uniformly_below(self, x: int, y: int) -> bool:
        """Exists a uniform cover whose star at x stays below y; the
        finest member realises the smallest star."""
        m = self.minimum()
        if m is not None:
            return self.frame.le(m.star(x), y)
        return any(self.frame.le(c.star(x), y) for c in self.base)

    def __eq__(self, other):
        return (isinstance(other, Uniformity) and self.frame == other.frame
                and self.base == other.base)

    def __hash__(self):
        return hash((self.frame, self.base))

    def __repr__(self):
        return f"Uniformity(n={self.frame.n}, base={len(self.base)})"


def validate_uniformity(frame: FiniteFrame, base: Sequence[CoverDownset]) -> Uniformity:
    """Check the symmetric-case axioms: covering members, a directed base,
    strong refinements, star refinements and admissibility."""
    uni = Uniformity(frame, base)
    base = uni.base
    if not base:
        raise NotDirected(("empty base",))
    for c in base:
        if not c.is_covering():
            raise NotCovering(frame.join_all(c.gens))
    for i, c in enumerate(base):
        for d in base[i + 1:]:
            if not any(w.le(c) and w.le(d) for w in base):
                raise NotDirected((c.gens, d.gens))
    for c in base:
        if not any(w.is_strong() and w.le(c) for w in base):
            raise NoStrongRefinement(c.gens)
    for c in base:
        if not any(w.star_cover().le(c) for w in base):
            raise NoStarRefinement(c.gens)
    for x in range(frame.n):
        below = [y for y in range(frame.n) if uni.uniformly_below(y, x)]
        if frame.join_all(below) != x:
            raise NotAdmissible(0, x, frame.join_all(below))
    return uni


def uniformity_filters_equal(u1: Uniformity, u2: Uniformity) -> bool:
    return (all(u2.is_uniform(c) for c in u1.base)
            and all(u1.is_uniform(c) for c in u2.base))


# ---------------------------------------------------------------------------
# enumeration helpers shared by the completion deciders
# ---------------------------------------------------------------------------

def covering_antichains(frame: FiniteFrame,
                        caps: Caps = DEFAULT_CAPS) -> list[tuple[int, ...]]:
    """All antichains of the frame whose join is the top (each presents
    one covering downset)."""
    out: list[tuple[int, ...]] = []
    n = frame.n

    def extend(start: int, chosen: tuple[int, ...]):
        if frame.join_all(chosen) == frame.top and chosen:
            out.append(chosen)
            if len(out) > caps.antichain_enum:
                raise SizeCap("antichain_enum", caps.antichain_enum,
                              "covering antichain enumeration")
        for x in range(start, n):
            if all(not frame.le(x, c) and not frame.le(c, x) for c in chosen):
                extend(x + 1, chosen + (x,))

    extend(0, ())
    if frame.n == 1:
        # the empty downset covers the trivial frame
        out.append(())
    return out


def frame_partitions(frame: FiniteFrame) -> list[tuple[int, ...]]:
    """All partitions of the frame: pairwise-disjoint families of nonzero
    elements joining to 1.

    In Birkhoff form these are exactly the set partitions of the
    join-irreducible poset whose blocks are downsets.
    """
    k = frame.jposet.n
    if k == 0:
        return [()]
    downs = set(frame.elements)
    out = []

    def rec(i: int, blocks: list[int]):
        if i == k:
            if all(b in downs for b in blocks):
                out.append(tuple(sorted(frame.index[b] for b in blocks)))
            return
        for t in range(len(blocks)):
            blocks[t] |= 1 << i
            rec(i + 1, blocks)
            blocks[t] &= ~(1 << i)
        blocks.append(1 << i)
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return sorted(set(out))
