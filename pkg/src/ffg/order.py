"""Finite posets and finite frames in Birkhoff form.

A finite frame is exactly a finite distributive lattice, and every such
lattice is the downset lattice of its poset of join-irreducibles.  We keep
that presentation canonical: elements are bitmasks over the join-irreducible
poset, so binary meet is ``&``, binary join is ``|`` and the order is mask
inclusion.  Hand-built lattices are converted on ingestion.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import (NotALattice, NotAntisymmetric, NotDistributive,
                     NotReflexive, NotTransitive, SizeCap)


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> list[int]:
    out = []
    j = 0
    while x:
        if x & 1:
            out.append(j)
        x >>= 1
        j += 1
    return out


def mask_sort_key(mask: int, width: int):
    """Canonical element order: popcount first, then lexicographic on the
    bit-vector (b0, b1, ...)."""
    return (popcount(mask), tuple((mask >> j) & 1 for j in range(width)))


class Poset:
    """A finite partial order on ``range(n)``.

    ``up[i]`` is the bitmask of ``{j : i <= j}`` (including ``i``);
    ``down[i]`` the dual.  Instances are immutable and value-hashable.
    """

    __slots__ = ("n", "up", "down", "_key")

    def __init__(self, up: Sequence[int], _trusted: bool = False):
        self.n = len(up)
        self.up = tuple(up)
        self.down = tuple(
            sum((1 << i) for i in range(self.n) if (self.up[i] >> j) & 1)
            for j in range(self.n))
        self._key = None
        if not _trusted:
            validate_poset(self.matrix())  # raises on bad input

    def le(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def matrix(self) -> list[list[bool]]:
        return [[bool((self.up[i] >> j) & 1) for j in range(self.n)]
                for i in range(self.n)]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with j covering i."""
        out = []
        for i in range(self.n):
            for j in bits(self.up[i] & ~(1 << i)):
                between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
                if between == 0:
                    out.append((i, j))
        return out

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset with element i renamed perm[i]."""
        n = self.n
        up = [0] * n
        for i in range(n):
            m = 0
            for j in bits(self.up[i]):
                m |= 1 << perm[j]
            up[perm[i]] = m
        return Poset(up, _trusted=True)

    def canonical_key(self) -> bytes:
        if self._key is None:
            self._key = poset_canonical_key(self)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Poset) and self.up == other.up

    def __hash__(self):
        return hash(self.up)

    def __repr__(self):
        return f"Poset(n={self.n})"


def validate_poset(relation) -> Poset:
    """Build a :class:`Poset` from an n x n boolean matrix, or raise."""
    rows = [list(r) for r in relation]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("relation matrix must be square")
    up = [sum((1 << j) for j in range(n) if rows[i][j]) for i in range(n)]
    for i in range(n):
        if not (up[i] >> i) & 1:
            raise NotReflexive(i)
    for i in range(n):
        for j in bits(up[i]):
            if j != i and (up[j] >> i) & 1:
                raise NotAntisymmetric(i, j)
    for i in range(n):
        for j in bits(up[i]):
            if up[j] & ~up[i]:
                k = bits(up[j] & ~up[i])[0]
                raise NotTransitive(i, j, k)
    return Poset(up, _trusted=True)


def antichain_poset(n: int) -> Poset:
    return Poset([1 << i for i in range(n)], _trusted=True)


def chain_poset(n: int) -> Poset:
    full = (1 << n) - 1
    return Poset([full & ~((1 << i) - 1) for i in range(n)], _trusted=True)


# ---------------------------------------------------------------------------
# canonical forms for posets
# ---------------------------------------------------------------------------

def _packed_keys(poset: Poset, perms: np.ndarray) -> np.ndarray:
    """Packed relation key of ``poset`` under each permutation, vectorised.

    perms[p][i] is the new name of element i.
    """
    n = poset.n
    mat = np.array(poset.matrix(), dtype=bool)
    inv = np.argsort(perms, axis=1)  # inv[p][k] = old element named k
    permuted = mat[inv[:, :, None], inv[:, None, :]]
    weights = (np.uint64(1) << np.arange(n * n, dtype=np.uint64))
    flat = permuted.reshape(len(perms), n * n).astype(np.uint64)
    return flat @ weights


def poset_canonical_key(poset: Poset, caps: Caps = DEFAULT_CAPS) -> bytes:
    """A key equal for two posets iff they are isomorphic."""
    n = poset.n
    if n == 0:
        return b"P0"
    if n > caps.canonical_elements:
        raise SizeCap("canonical_elements", caps.canonical_elements,
                      f"poset has {n} elements")
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    keys = _packed_keys(poset, perms)
    return b"P%d:%x" % (n, int(keys.min()))


def poset_canonical_perms(poset: Poset, caps: Caps = DEFAULT_CAPS) -> list[tuple[int, ...]]:
    """All relabelings that realise the canonical key (canonical form plus
    its automorphisms); used to canonicalise decorated structures."""
    n = poset.n
    if n == 0:
        return [()]
    if n > caps.canonical_elements:
        raise SizeCap("canonical_elements", caps.canonical_elements,
                      f"poset has {n} elements")
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    keys = _packed_keys(poset, perms)
    best = keys.min()
    return [tuple(map(int, p)) for p in perms[keys == best]]


def posets_isomorphic_bruteforce(p: Poset, q: Poset) -> bool:
    """Oracle: direct permutation search, independent of canonical keys."""
    if p.n != q.n:
        return False
    mp, mq = p.matrix(), q.matrix()
    for perm in permutations(range(p.n)):
        if all(mp[i][j] == mq[perm[i]][perm[j]]
               for i in range(p.n) for j in range(p.n)):
            return True
    return False


# ---------------------------------------------------------------------------
# finite frames
# ---------------------------------------------------------------------------

class FiniteFrame:
    """A finite distributive lattice as the downset lattice of ``jposet``.

    ``elements`` holds every downset of ``jposet`` as a bitmask, in the
    canonical (popcount, lex) order, so element 0 is the bottom and the
    last element is the top.
    """

    __slots__ = ("jposet", "elements", "index", "_key", "_jirr")

    def __init__(self, jposet: Poset, elements: Sequence[int]):
        self.jposet = jposet
        self.elements = tuple(elements)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self._key = None
        self._jirr = None

    # -- basic structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def meet(self, a: int, b: int) -> int:
        return self.index[self.elements[a] & self.elements[b]]

    def join(self, a: int, b: int) -> int:
        return self.index[self.elements[a] | self.elements[b]]

    def le(self, a: int, b: int) -> bool:
        return self.elements[a] & ~self.elements[b] == 0

    def join_all(self, items: Iterable[int]) -> int:
        m = 0
        for a in items:
            m |= self.elements[a]
        return self.index[m]

    def meet_all(self, items: Iterable[int]) -> int:
        m = self.elements[self.top]
        for a in items:
            m &= self.elements[a]
        return self.index[m]

    def below(self, a: int) -> list[int]:
        ma = self.elements[a]
        return [i for i, m in enumerate(self.elements) if m & ~ma == 0]

    def heyting(self, a: int, b: int) -> int:
        """Largest c with c /\\ a <= b (the Heyting implication a -> b)."""
        ma, mb = self.elements[a], self.elements[b]
        acc = 0
        for m in self.elements:
            if (m & ma) & ~mb == 0:
                acc |= m
        return self.index[acc]

    def pseudocomplement(self, a: int) -> int:
        return self.heyting(a, self.bottom)

    def complement(self, a: int) -> int | None:
        """The complement of ``a`` if it exists (unique by distributivity)."""
        c = self.pseudocomplement(a)
        return c if self.join(a, c) == self.top else None

    def lower_covers(self, a: int) -> list[int]:
        strictly_below = [i for i in range(self.n) if i != a and self.le(i, a)]
        out = []
        for i in strictly_below:
            if not any(j != i and self.le(i, j) for j in strictly_below):
                out.append(i)
        return out

    def covers(self) -> list[tuple[int, int]]:
        """All covering pairs (a, b) with b covering a."""
        out = []
        for b in range(self.n):
            for a in self.lower_covers(b):
                out.append((a, b))
        return out

    def join_irreducibles(self) -> tuple[int, ...]:
        """Elements with exactly one lower cover, in element order."""
        if self._jirr is None:
            self._jirr = tuple(a for a in range(self.n)
                               if len(self.lower_covers(a)) == 1)
        return self._jirr

    def atoms(self) -> list[int]:
        return [a for a in range(self.n) if self.lower_covers(a) == [0]]

    def canonical_key(self) -> bytes:
        """Equal for two frames iff their join-irreducible posets are
        isomorphic, i.e. iff the frames are isomorphic (Birkhoff)."""
        if self._key is None:
            self._key = b"F" + self.jposet.canonical_key()
        return self._key

    def __eq__(self, other):
        return (isinstance(other, FiniteFrame)
                and self.jposet == other.jposet
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.jposet, self.elements))

    def __repr__(self):
        return f"FiniteFrame(|J|={self.jposet.n}, n={self.n})"


def downset_frame(p: Poset, caps: Caps = DEFAULT_CAPS) -> FiniteFrame:
    """The frame of all downsets of ``p``."""
    n = p.n
    # Kahn order: every predecessor of an element appears earlier.
    order = sorted(range(n), key=lambda i: (popcount(p.down[i]), i))
    ideals = [0]
    for e in order:
        need = p.down[e] & ~(1 << e)
        new = [m | (1 << e) for m in ideals if need & ~m == 0]
        ideals.extend(new)
        if len(ideals) > caps.frame_elements:
            raise SizeCap("frame_elements", caps.frame_elements,
                          "downset count exceeds cap")
    ideals.sort(key=lambda m: mask_sort_key(m, n))
    return FiniteFrame(p, ideals)


ONE = downset_frame(Poset([], _trusted=True))
TWO = downset_frame(antichain_poset(1))


def lattice_from_tables(n_elems: int, meet, join,
                        caps: Caps = DEFAULT_CAPS) -> tuple[FiniteFrame, list[int]]:
    """Validate meet/join tables and convert to canonical Birkhoff form.

    Returns ``(frame, to_frame)`` where ``to_frame[i]`` is the frame index
    of input element ``i``.  Raises :class:`NotALattice` or
    :class:`NotDistributive` with a witness.
    """
    rng = range(n_elems)
    if n_elems == 0:
        raise NotALattice("empty carrier", ())
    for i in rng:
        if meet[i][i] != i:
            raise NotALattice("meet not idempotent", (i,))
        if join[i][i] != i:
            raise NotALattice("join not idempotent", (i,))
    for i in rng:
        for j in rng:
            if meet[i][j] != meet[j][i]:
                raise NotALattice("meet not commutative", (i, j))
            if join[i][j] != join[j][i]:
                raise NotALattice("join not commutative", (i, j))
            if meet[i][join[i][j]] != i or join[i][meet[i][j]] != i:
                raise NotALattice("absorption fails", (i, j))
    for i in rng:
        for j in rng:
            for k in rng:
                if meet[meet[i][j]][k] != meet[i][meet[j][k]]:
                    raise NotALattice("meet not associative", (i, j, k))
                if join[join[i][j]][k] != join[i][join[j][k]]:
                    raise NotALattice("join not associative", (i, j, k))
    for i in rng:
        for j in rng:
            for k in rng:
                if meet[i][join[j][k]] != join[meet[i][j]][meet[i][k]]:
                    raise NotDistributive((i, j, k))

    def le(i, j):
        return meet[i][j] == i

    bot = 0
    top = 0
    for i in rng:
        bot = meet[bot][i]
        top = join[top][i]
    # join-irreducibles: exactly one lower cover
    jirr = []
    for a in rng:
        below = [i for i in rng if i != a and le(i, a)]
        covers = [i for i in below if not any(j != i and le(i, j) for j in below)]
        if len(covers) == 1:
            jirr.append(a)
    # induced poset on join-irreducibles
    k = len(jirr)
    up = [sum((1 << b) for b in range(k) if le(jirr[a], jirr[b])) for a in range(k)]
    jp = Poset(up, _trusted=True)
    frame = downset_frame(jp, caps)
    # x corresponds to the downset of join-irreducibles below it
    to_frame = []
    for x in rng:
        m = sum((1 << a) for a in range(k) if le(jirr[a], x))
        if m not in frame.index:
            raise NotALattice("join-irreducibles do not present the lattice", (x,))
        to_frame.append(frame.index[m])
    if len(set(to_frame)) != n_elems or frame.n != n_elems:
        raise NotALattice("carrier does not match its Birkhoff presentation",
                          (n_elems, frame.n))
    # operations must agree through the translation
    for i in rng:
        for j in rng:
            if frame.meet(to_frame[i], to_frame[j]) != to_frame[meet[i][j]]:
                raise NotALattice("meet disagrees with Birkhoff form", (i, j))
            if frame.join(to_frame[i], to_frame[j]) != to_frame[join[i][j]]:
                raise NotALattice("join disagrees with Birkhoff form", (i, j))
    return frame, to_frame


def frame_from_poset_of(frame: FiniteFrame) -> Poset:
    """The induced order on ``frame``'s join-irreducibles (Birkhoff round
    trip; isomorphic to ``frame.jposet``)."""
    jirr = frame.join_irreducibles()
    k = len(jirr)
    up = [sum((1 << b) for b in range(k) if frame.le(jirr[a], jirr[b]))
          for a in range(k)]
    return Poset(up, _trusted=True)
