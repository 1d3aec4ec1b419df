"""Frame and lattice congruences on finite frames.

Congruences are stored as class-id partitions of the carrier.  Three
independent routes are kept deliberately separate so they can check each
other:

* the fast congruence frame (subsets of join-irreducibles),
* the exhaustive partition oracle (``_kernels.partition_scan``),
* the lattice-congruence frame built by weak-projectivity closure over
  covering pairs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .caps import DEFAULT_CAPS, Caps
from .errors import SizeCap, TheoremViolation
from .morphisms import FrameHom, is_dense, is_injective, is_surjective, validate_hom
from .order import FiniteFrame, antichain_poset, downset_frame, lattice_from_tables


def _canon_classes(raw: Sequence[int]) -> tuple[int, ...]:
    """Relabel class ids by first occurrence."""
    seen: dict[int, int] = {}
    out = []
    for c in raw:
        if c not in seen:
            seen[c] = len(seen)
        out.append(seen[c])
    return tuple(out)


class _PartitionBase:
    __slots__ = ("frame", "class_of", "_classes")

    def __init__(self, frame: FiniteFrame, class_of: Sequence[int]):
        self.frame = frame
        self.class_of = _canon_classes(class_of)
        self._classes = None

    def classes(self) -> list[tuple[int, ...]]:
        if self._classes is None:
            k = max(self.class_of) + 1 if self.class_of else 0
            cls = [[] for _ in range(k)]
            for x, c in enumerate(self.class_of):
                cls[c].append(x)
            self._classes = [tuple(c) for c in cls]
        return self._classes

    def relates(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        for cls in self.classes():
            for i in range(len(cls)):
                for j in range(i + 1, len(cls)):
                    out.append((cls[i], cls[j]))
        return out

    def is_diagonal(self) -> bool:
        return len(set(self.class_of)) == self.frame.n

    def refines(self, other) -> bool:
        """self <= other as relations (self's classes inside other's)."""
        rep = {}
        for x, c in enumerate(self.class_of):
            if c in rep and other.class_of[rep[c]] != other.class_of[x]:
                return False
            rep.setdefault(c, x)
        return True

    def __eq__(self, other):
        return (type(self) is type(other) and self.frame == other.frame
                and self.class_of == other.class_of)

    def __hash__(self):
        return hash((type(self).__name__, self.frame, self.class_of))

    def __repr__(self):
        return f"{type(self).__name__}({self.classes()})"


class FrameCongruence(_PartitionBase):
    """A partition of the carrier compatible with meets and joins, whose
    classes are intervals."""


class LatticeCongruence(_PartitionBase):
    """Same data as :class:`FrameCongruence` under a distinct type tag: a
    partition compatible with binary meet and join only.  On a finite
    carrier the two notions coincide; the tag records intent."""


def check_compatible(frame: FiniteFrame, class_of: Sequence[int]) -> bool:
    n = frame.n
    for cls_members in _group(class_of):
        base = cls_members[0]
        for other in cls_members[1:]:
            for c in range(n):
                if class_of[frame.meet(base, c)] != class_of[frame.meet(other, c)]:
                    return False
                if class_of[frame.join(base, c)] != class_of[frame.join(other, c)]:
                    return False
    return True


def check_interval_classes(frame: FiniteFrame, class_of: Sequence[int]) -> bool:
    for cls in _group(class_of):
        lo = frame.meet_all(cls)
        hi = frame.join_all(cls)
        if class_of[lo] != class_of[cls[0]] or class_of[hi] != class_of[cls[0]]:
            return False
        expected = {x for x in range(frame.n) if frame.le(lo, x) and frame.le(x, hi)}
        if expected != set(cls):
            return False
    return True


def _group(class_of: Sequence[int]) -> list[list[int]]:
    k = max(class_of) + 1 if class_of else 0
    cls = [[] for _ in range(k)]
    for x, c in enumerate(class_of):
        cls[c].append(x)
    return cls


def frame_congruence(frame: FiniteFrame, class_of: Sequence[int]) -> FrameCongruence:
    """Validate a partition as a frame congruence."""
    theta = FrameCongruence(frame, class_of)
    if not check_compatible(frame, theta.class_of):
        raise ValueError("partition is not meet/join compatible")
    if not check_interval_classes(frame, theta.class_of):
        raise ValueError("congruence classes are not intervals")
    return theta


def diagonal_congruence(frame: FiniteFrame) -> FrameCongruence:
    return FrameCongruence(frame, range(frame.n))


def all_congruence(frame: FiniteFrame) -> FrameCongruence:
    return FrameCongruence(frame, [0] * frame.n)


def closed_congruence(frame: FiniteFrame, a: int) -> FrameCongruence:
    """x ~ y iff x \\/ a = y \\/ a."""
    return frame_congruence(frame, [frame.join(x, a) for x in range(frame.n)])


def open_congruence(frame: FiniteFrame, a: int) -> FrameCongruence:
    """x ~ y iff x /\\ a = y /\\ a."""
    return frame_congruence(frame, [frame.meet(x, a) for x in range(frame.n)])


def intersect_congruences(t1: FrameCongruence, t2: FrameCongruence) -> FrameCongruence:
    keys = {}
    out = []
    for x in range(t1.frame.n):
        k = (t1.class_of[x], t2.class_of[x])
        out.append(keys.setdefault(k, len(keys)))
    return FrameCongruence(t1.frame, out)


def principal_congruence(frame: FiniteFrame, a: int, b: int) -> FrameCongruence:
    """The congruence generated by the single pair (a, b); equals
    closed(a \\/ b) meet open(a /\\ b), cross-checked against the
    generic closure."""
    theta = intersect_congruences(closed_congruence(frame, frame.join(a, b)),
                                  open_congruence(frame, frame.meet(a, b)))
    other = congruence_closure(frame, [(a, b)])
    if theta.class_of != other.class_of:
        raise TheoremViolation(
            f"principal congruence routes disagree at pair ({a}, {b})")
    return theta


# ---------------------------------------------------------------------------
# generic congruence closure (saturation)
# ---------------------------------------------------------------------------

class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def congruence_closure(frame: FiniteFrame,
                       pairs: Iterable[tuple[int, int]]) -> FrameCongruence:
    """Least frame congruence containing ``pairs``.

    Saturation: equivalence closure alternated with meet/join translate
    closure until a fixpoint; on a finite carrier binary translates
    suffice."""
    n = frame.n
    uf = _UnionFind(n)
    work = [(a, b) for a, b in pairs if uf.union(a, b)]
    while work:
        a, b = work.pop()
        for c in range(n):
            for u, v in ((frame.meet(a, c), frame.meet(b, c)),
                         (frame.join(a, c), frame.join(b, c))):
                if uf.union(u, v):
                    work.append((u, v))
    return FrameCongruence(frame, [uf.find(x) for x in range(n)])


def lattice_congruence_closure(frame: FiniteFrame,
                               pairs: Iterable[tuple[int, int]]) -> LatticeCongruence:
    theta = congruence_closure(frame, pairs)
    return LatticeCongruence(frame, theta.class_of)


def chain_closure(frame: FiniteFrame, cong: LatticeCongruence,
                  verify: bool = True) -> FrameCongruence:
    """Pairs (a, b) linked by an increasing chain x0 <= a,b <= xk whose
    consecutive steps lie in ``cong``.

    Finite carriers only ever need finite chains (limit stages never
    fire).  The result is checked against the generic closure of
    ``cong``'s pairs unless ``verify=False``.
    """
    if not isinstance(cong, LatticeCongruence):
        raise TypeError("chain_closure requires a LatticeCongruence")
    n = frame.n
    # reach[x] = bitmask of chain endpoints above x
    reach = []
    for x0 in range(n):
        seen = 1 << x0
        stack = [x0]
        while stack:
            u = stack.pop()
            for v in range(n):
                if not (seen >> v) & 1 and frame.le(u, v) and cong.relates(u, v):
                    seen |= 1 << v
                    stack.append(v)
        reach.append(seen)
    upmask = [sum((1 << v) for v in range(n) if frame.le(w, v)) for w in range(n)]
    uf = _UnionFind(n)
    for a in range(n):
        for b in range(a + 1, n):
            lo = frame.meet(a, b)
            hi = frame.join(a, b)
            if any(reach[x0] & upmask[hi] for x0 in frame.below(lo)):
                uf.union(a, b)
    result = FrameCongruence(frame, [uf.find(x) for x in range(n)])
    if verify:
        other = congruence_closure(frame, cong.pairs())
        if result.class_of != other.class_of:
            raise TheoremViolation("chain closure disagrees with saturation closure")
    return result


# ---------------------------------------------------------------------------
# the congruence frame (fast subset route + oracle)
# ---------------------------------------------------------------------------

class CongruenceFrame:
    """The frame of all frame congruences on ``source``.

    ``frame`` is Boolean on ``k = |J(source)|`` generators; element ``i``
    realises ``congruences[i]``.  Element masks live over the same
    join-irreducible index space as ``source``'s elements, which makes the
    embedding ``a -> closed congruence at a`` the mask-identity map.
    """

    __slots__ = ("source", "frame", "nabla", "congruences", "_lookup")

    def __init__(self, source: FiniteFrame, frame: FiniteFrame,
                 nabla: FrameHom, congruences: tuple[FrameCongruence, ...]):
        self.source = source
        self.frame = frame
        self.nabla = nabla
        self.congruences = congruences
        self._lookup = {c.class_of: i for i, c in enumerate(congruences)}

    def index_of(self, theta: FrameCongruence) -> int:
        return self._lookup[theta.class_of]

    def nabla_index(self, a: int) -> int:
        return self.nabla.map[a]

    def delta_index(self, a: int) -> int:
        full = (1 << self.source.jposet.n) - 1
        return self.frame.index[full & ~self.source.elements[a]]

    def closed_part(self) -> tuple[int, ...]:
        return tuple(sorted(self.nabla.map))

    def open_elements(self) -> tuple[int, ...]:
        return tuple(sorted({self.delta_index(a) for a in range(self.source.n)}))


def _theta_from_collapse_mask(frame: FiniteFrame, keep: int) -> FrameCongruence:
    """Congruence identifying elements that agree on the ``keep`` bits."""
    seen: dict[int, int] = {}
    out = []
    for m in frame.elements:
        k = m & keep
        out.append(seen.setdefault(k, len(seen)))
    return FrameCongruence(frame, out)


def congruence_frame(source: FiniteFrame, caps: Caps = DEFAULT_CAPS,
                     oracle: bool | None = None) -> CongruenceFrame:
    """All frame congruences of ``source``, as a frame plus the embedding.

    Fast route: congruences are exactly the "agree outside Q" partitions
    for subsets Q of join-irreducibles, so the congruence frame is Boolean
    with 2^|J| elements.  Below the oracle cap the result is always
    cross-validated against the exhaustive partition oracle.
    """
    k = source.jposet.n
    if 2 ** k > caps.frame_elements:
        raise SizeCap("frame_elements", caps.frame_elements,
                      f"congruence frame would have 2^{k} elements")
    cframe = downset_frame(antichain_poset(k), caps)
    full = (1 << k) - 1
    congruences = tuple(_theta_from_collapse_mask(source, full & ~m)
                        for m in cframe.elements)
    nabla = FrameHom(source, cframe,
                     [cframe.index[source.elements[a]] for a in range(source.n)])
    result = CongruenceFrame(source, cframe, nabla, congruences)
    if oracle is None:
        oracle = source.n <= caps.congruence_oracle_elements
    if oracle:
        brute = enumerate_congruences_bruteforce(source, caps)
        if {c.class_of for c in congruences} != {c.class_of for c in brute}:
            raise TheoremViolation(
                "fast congruence frame disagrees with the partition oracle")
    return result


def enumerate_congruences_bruteforce(source: FiniteFrame,
                                     caps: Caps = DEFAULT_CAPS) -> list[FrameCongruence]:
    """Exhaustive oracle: scan all partitions of the carrier for meet/join
    compatibility.  Independent of the fast subset construction."""
    n = source.n
    if n > caps.congruence_oracle_elements:
        raise SizeCap("congruence_oracle_elements", caps.congruence_oracle_elements,
                      f"carrier has {n} elements")
    meet = np.array([[source.meet(i, j) for j in range(n)] for i in range(n)])
    join = np.array([[source.join(i, j) for j in range(n)] for i in range(n)])
    rows = _kernels.partition_scan(meet, join)
    return [FrameCongruence(source, [int(c) for c in row]) for row in rows]


# ---------------------------------------------------------------------------
# the lattice-congruence frame (independent covering-pair route)
# ---------------------------------------------------------------------------

class ClatFrame:
    """The frame of all lattice congruences on ``source``, built by
    weak-projectivity closure over covering pairs.  Shares no code with
    :func:`congruence_frame`'s construction."""

    __slots__ = ("source", "frame", "congruences", "_lookup")

    def __init__(self, source: FiniteFrame, frame: FiniteFrame,
                 congruences: tuple[LatticeCongruence, ...]):
        self.source = source
        self.frame = frame
        self.congruences = congruences
        self._lookup = {c.class_of: i for i, c in enumerate(congruences)}

    def index_of(self, cong: LatticeCongruence) -> int:
        return self._lookup[cong.class_of]

    def nabla_index(self, a: int) -> int:
        src = self.source
        cls = [src.join(x, a) for x in range(src.n)]
        return self._lookup[_canon_classes(cls)]

    def delta_index(self, a: int) -> int:
        src = self.source
        cls = [src.meet(x, a) for x in range(src.n)]
        return self._lookup[_canon_classes(cls)]


def _principal_by_projectivity(frame: FiniteFrame, a: int, b: int) -> tuple[int, ...]:
    """Class array of the congruence generated by the covering pair
    (a, b), via closure of prime quotients under meet/join translation."""
    n = frame.n
    forced = {(a, b)}
    queue = [(a, b)]
    while queue:
        u, v = queue.pop()
        for z in range(n):
            for p, q in ((frame.meet(u, z), frame.meet(v, z)),
                         (frame.join(u, z), frame.join(v, z))):
                if p != q:
                    if p > q:
                        p, q = q, p
                    if (p, q) not in forced:
                        forced.add((p, q))
                        queue.append((p, q))
    uf = _UnionFind(n)
    for p, q in forced:
        uf.union(p, q)
    return _canon_classes([uf.find(x) for x in range(n)])


def _join_partitions(n: int, c1: Sequence[int], c2: Sequence[int]) -> tuple[int, ...]:
    """Join of two congruences: transitive closure of the union."""
    uf = _UnionFind(n)
    rep1: dict[int, int] = {}
    rep2: dict[int, int] = {}
    for x in range(n):
        if c1[x] in rep1:
            uf.union(rep1[c1[x]], x)
        rep1.setdefault(c1[x], x)
        if c2[x] in rep2:
            uf.union(rep2[c2[x]], x)
        rep2.setdefault(c2[x], x)
    return _canon_classes([uf.find(x) for x in range(n)])


def clat_frame(source: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> ClatFrame:
    """All lattice congruences of ``source`` ordered by inclusion.

    Every congruence of a finite lattice is a join of congruences
    generated by covering pairs, so the carrier is the join-closure of
    the principal covering congruences.  Each partition produced is
    verified to be compatible; failures would signal a real bug.
    """
    n = source.n
    principals = []
    seen = set()
    for a, b in source.covers():
        cls = _principal_by_projectivity(source, a, b)
        if cls not in seen:
            seen.add(cls)
            principals.append(cls)
    diag = tuple(range(n))
    family = {diag}
    frontier = [diag]
    while frontier:
        nxt = []
        for cls in frontier:
            for p in principals:
                j = _join_partitions(n, cls, p)
                if j not in family:
                    if len(family) >= caps.frame_elements:
                        raise SizeCap("frame_elements", caps.frame_elements,
                                      "lattice congruence count exceeds cap")
                    family.add(j)
                    nxt.append(j)
        frontier = nxt
    congs = sorted(family)
    for cls in congs:
        if not check_compatible(source, cls):
            raise TheoremViolation("covering-pair closure produced an "
                                   "incompatible partition")
    # order by inclusion; build tables extensionally
    k = len(congs)
    pos = {c: i for i, c in enumerate(congs)}
    meets = [[0] * k for _ in range(k)]
    joins = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            keyed: dict[tuple[int, int], int] = {}
            inter = _canon_classes([keyed.setdefault((congs[i][x], congs[j][x]),
                                                     len(keyed))
                                    for x in range(n)])
            meets[i][j] = pos[inter]
            joins[i][j] = pos[_join_partitions(n, congs[i], congs[j])]
    frame, to_frame = lattice_from_tables(k, meets, joins, caps)
    aligned: list[LatticeCongruence | None] = [None] * k
    for i, cls in enumerate(congs):
        aligned[to_frame[i]] = LatticeCongruence(source, cls)
    return ClatFrame(source, frame, tuple(aligned))


# ---------------------------------------------------------------------------
# the map g and the congruence functor
# ---------------------------------------------------------------------------

class GResult:
    __slots__ = ("hom", "clat", "cframe")

    def __init__(self, hom: FrameHom, clat: ClatFrame, cframe: CongruenceFrame):
        self.hom = hom
        self.clat = clat
        self.cframe = cframe

    def kernel(self) -> FrameCongruence:
        return FrameCongruence(self.clat.frame, self.hom.map)


def g_map(source: FiniteFrame, clat: ClatFrame | None = None,
          cframe: CongruenceFrame | None = None,
          caps: Caps = DEFAULT_CAPS) -> GResult:
    """The frame map sending a lattice congruence to the frame congruence
    it generates, realised through the chain construction.

    Validated as a dense surjective frame homomorphism; on a finite
    carrier it is moreover an isomorphism (the two congruence notions
    coincide), which callers may assert separately.
    """
    clat = clat or clat_frame(source, caps)
    cframe = cframe or congruence_frame(source, caps)
    mapping = []
    for cong in clat.congruences:
        theta = chain_closure(source, cong, verify=False)
        mapping.append(cframe.index_of(theta))
    hom = validate_hom(clat.frame, cframe.frame, mapping)
    if not is_dense(hom):
        raise TheoremViolation("g is not dense")
    if not is_surjective(hom):
        raise TheoremViolation("g is not surjective")
    return GResult(hom, clat, cframe)


def congruence_functor(f: FrameHom, theta: FrameCongruence) -> FrameCongruence:
    """Image congruence: the congruence on the codomain generated by the
    pairwise image of ``theta``."""
    if theta.frame != f.dom:
        raise ValueError("congruence must live on the domain of the map")
    pairs = [(f.map[a], f.map[b]) for a, b in theta.pairs()]
    return congruence_closure(f.cod, pairs)


def is_fit(source: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff every frame congruence is a join of open congruences."""
    cf = congruence_frame(source, caps, oracle=False)
    opens = [cf.delta_index(a) for a in range(source.n)]
    for i in range(cf.frame.n):
        below = [o for o in opens if cf.frame.le(o, i)]
        if cf.frame.join_all(below) != i:
            return False
    return True
