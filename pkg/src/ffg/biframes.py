"""Biframes: a frame with two designated generating subframes.

Includes the regularity ladder, strict zero-dimensionality, Skula
biframes of finite T0 spaces, congruence biframes, and the coreflection
onto congruence biframes.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .caps import DEFAULT_CAPS, Caps
from .congruence import CongruenceFrame, congruence_frame
from .errors import (NotATopology, NotGenerating, NotStrictlyZeroDimensional,
                     NotSubframe, NotT0, TheoremViolation)
from .morphisms import (FrameHom, is_dense, is_subframe, is_surjective,
                        subframe_as_frame, subframe_generated, validate_hom)
from .order import FiniteFrame, lattice_from_tables, poset_canonical_perms


class Biframe:
    """A total frame plus two subframes that together generate it."""

    __slots__ = ("total", "part1", "part2", "_key")

    def __init__(self, total: FiniteFrame, part1: Sequence[int], part2: Sequence[int]):
        self.total = total
        self.part1 = tuple(sorted(part1))
        self.part2 = tuple(sorted(part2))
        self._key = None

    def part(self, i: int) -> tuple[int, ...]:
        if i == 1:
            return self.part1
        if i == 2:
            return self.part2
        raise ValueError("part index must be 1 or 2")

    def canonical_key(self) -> bytes:
        """Equal for two biframes iff some total-frame isomorphism carries
        parts to parts."""
        if self._key is None:
            frame = self.total
            k = frame.jposet.n
            best = None
            for perm in poset_canonical_perms(frame.jposet):
                def pmask(m: int) -> int:
                    out = 0
                    for j in range(k):
                        if (m >> j) & 1:
                            out |= 1 << perm[j]
                    return out

                cand = (tuple(sorted(pmask(frame.elements[a]) for a in self.part1)),
                        tuple(sorted(pmask(frame.elements[a]) for a in self.part2)))
                if best is None or cand < best:
                    best = cand
            self._key = frame.canonical_key() + b"|%r" % (best,)
        return self._key

    def __eq__(self, other):
        return (isinstance(other, Biframe) and self.total == other.total
                and self.part1 == other.part1 and self.part2 == other.part2)

    def __hash__(self):
        return hash((self.total, self.part1, self.part2))

    def __repr__(self):
        return (f"Biframe(n={self.total.n}, |part1|={len(self.part1)}, "
                f"|part2|={len(self.part2)})")


def make_biframe(total: FiniteFrame, part1: Iterable[int],
                 part2: Iterable[int]) -> Biframe:
    bf = Biframe(total, part1, part2)
    for i, part in ((1, bf.part1), (2, bf.part2)):
        if not is_subframe(total, part):
            raise NotSubframe(i)
    if set(subframe_generated(total, bf.part1 + bf.part2)) != set(range(total.n)):
        raise NotGenerating()
    return bf


def symmetric_biframe(frame: FiniteFrame) -> Biframe:
    r = range(frame.n)
    return Biframe(frame, r, r)


class BiframeHom:
    """A frame homomorphism between totals that preserves both parts."""

    __slots__ = ("dom", "cod", "hom")

    def __init__(self, dom: Biframe, cod: Biframe, hom: FrameHom):
        self.dom = dom
        self.cod = cod
        self.hom = hom

    def __call__(self, a: int) -> int:
        return self.hom.map[a]

    @property
    def map(self):
        return self.hom.map

    def part_map(self, i: int) -> dict[int, int]:
        return {a: self.hom.map[a] for a in self.dom.part(i)}

    def is_dense(self) -> bool:
        return is_dense(self.hom)

    def is_surjective(self) -> bool:
        """Both part restrictions surjective (hence the total map too)."""
        for i in (1, 2):
            if {self.hom.map[a] for a in self.dom.part(i)} != set(self.cod.part(i)):
                return False
        return True

    def __repr__(self):
        return f"BiframeHom({self.dom!r} -> {self.cod!r})"


def validate_biframe_hom(dom: Biframe, cod: Biframe, mapping: Sequence[int]) -> BiframeHom:
    hom = validate_hom(dom.total, cod.total, mapping)
    for i in (1, 2):
        for a in dom.part(i):
            if mapping[a] not in set(cod.part(i)):
                raise NotSubframe(i, f"image of part-{i} element {a} leaves part {i}")
    return BiframeHom(dom, cod, hom)


# ---------------------------------------------------------------------------
# pseudocomplements and the regularity ladder
# ---------------------------------------------------------------------------

def bipseudocomplement(bf: Biframe, i: int, x: int) -> int:
    """x^bullet = \\/{y in the other part : x /\\ y = 0}."""
    other = bf.part(2 if i == 1 else 1)
    frame = bf.total
    acc = 0
    for y in other:
        if frame.meet(x, y) == frame.bottom:
            acc |= frame.elements[y]
    return frame.index[acc]


def rather_below(bf: Biframe, i: int) -> frozenset[tuple[int, int]]:
    """x below y iff x^bullet \\/ y = 1, within part i."""
    frame = bf.total
    part = bf.part(i)
    out = set()
    for x in part:
        xb = bipseudocomplement(bf, i, x)
        for y in part:
            if frame.join(xb, y) == frame.top:
                out.add((x, y))
    return frozenset(out)


def interpolative_core(rel: Iterable[tuple]) -> frozenset:
    """Largest R' inside the relation with R' contained in R' o R'
    (greatest fixpoint; terminates by finiteness and monotonicity)."""
    r = set(rel)
    while True:
        keep = set()
        for a, c in r:
            if any((a, b) in r and (b, c) in r for b in {p[1] for p in r if p[0] == a}):
                keep.add((a, c))
        if keep == r:
            return frozenset(r)
        r = keep


def is_regular(bf: Biframe) -> bool:
    frame = bf.total
    for i in (1, 2):
        rb = rather_below(bf, i)
        for x in bf.part(i):
            if frame.join_all(y for (y, z) in rb if z == x) != x:
                return False
    return True


def is_completely_regular(bf: Biframe) -> bool:
    frame = bf.total
    for i in (1, 2):
        rb = interpolative_core(rather_below(bf, i))
        for x in bf.part(i):
            if frame.join_all(y for (y, z) in rb if z == x) != x:
                return False
    return True


def is_zero_dimensional(bf: Biframe) -> bool:
    """Each part is generated by its elements x with x \\/ x^bullet = 1."""
    frame = bf.total
    for i in (1, 2):
        part = set(bf.part(i))
        gens = [x for x in part
                if frame.join(x, bipseudocomplement(bf, i, x)) == frame.top]
        if set(subframe_generated(frame, gens)) != part:
            return False
    return True


def part_complement(bf: Biframe, a: int) -> int | None:
    """Complement of a part-1 element in the total, if it lies in part 2."""
    c = bf.total.complement(a)
    if c is None or c not in set(bf.part2):
        return None
    return c


def is_strictly_zero_dimensional(bf: Biframe) -> bool:
    comps = []
    part2 = set(bf.part2)
    for a in bf.part1:
        c = bf.total.complement(a)
        if c is None or c not in part2:
            return False
        comps.append(c)
    return set(subframe_generated(bf.total, comps)) == part2


def complement_map(bf: Biframe) -> dict[int, int]:
    """part-1 element -> its complement (requires strict zero-dimensionality)."""
    out = {}
    part2 = set(bf.part2)
    for a in bf.part1:
        c = bf.total.complement(a)
        if c is None or c not in part2:
            raise NotStrictlyZeroDimensional(f"part-1 element {a} lacks a part-2 complement")
        out[a] = c
    return out


def is_compact(bf: Biframe) -> bool:
    """Every cover of the total has a finite subcover.

    A cover of a finite carrier is a finite set, so it is its own finite
    subcover; the check is the finiteness of the carrier."""
    return bf.total.n == len(bf.total.elements)


# ---------------------------------------------------------------------------
# finite T0 spaces: open-set frames and Skula biframes
# ---------------------------------------------------------------------------

class FiniteSpace:
    """A finite space given extensionally: points 0..n-1, opens as point
    bitmasks."""

    __slots__ = ("points", "opens")

    def __init__(self, points: int, opens: Iterable[int]):
        self.points = points
        self.opens = tuple(sorted(set(opens)))

    def __eq__(self, other):
        return (isinstance(other, FiniteSpace) and self.points == other.points
                and self.opens == other.opens)

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        return f"FiniteSpace(points={self.points}, opens={len(self.opens)})"


def validate_space(space: FiniteSpace, require_t0: bool = True) -> FiniteSpace:
    full = (1 << space.points) - 1
    opens = set(space.opens)
    if 0 not in opens:
        raise NotATopology("missing the empty set")
    if full not in opens:
        raise NotATopology("missing the whole space")
    for u in opens:
        if u & ~full:
            raise NotATopology(f"open {u:#x} is not a point set")
        for v in opens:
            if (u | v) not in opens:
                raise NotATopology(f"union of {u:#x} and {v:#x} missing")
            if (u & v) not in opens:
                raise NotATopology(f"intersection of {u:#x} and {v:#x} missing")
    if require_t0:
        for x in range(space.points):
            for y in range(x + 1, space.points):
                if all(((u >> x) & 1) == ((u >> y) & 1) for u in opens):
                    raise NotT0(x, y)
    return space


def open_set_frame(space: FiniteSpace,
                   caps: Caps = DEFAULT_CAPS) -> tuple[FiniteFrame, dict[int, int]]:
    """The frame of opens, built extensionally from set-operation tables.

    Returns the frame and the map from open bitmask to frame element.
    """
    validate_space(space, require_t0=False)
    opens = list(space.opens)
    pos = {u: i for i, u in enumerate(opens)}
    k = len(opens)
    meet = [[pos[opens[i] & opens[j]] for j in range(k)] for i in range(k)]
    join = [[pos[opens[i] | opens[j]] for j in range(k)] for i in range(k)]
    frame, to_frame = lattice_from_tables(k, meet, join, caps)
    return frame, {u: to_frame[pos[u]] for u in opens}


def skula_biframe(space: FiniteSpace, caps: Caps = DEFAULT_CAPS) -> Biframe:
    """The biframe of a finite T0 space over its Skula topology.

    The Skula topology of a finite space is discrete, so the total is the
    full powerset lattice; part 1 holds the opens and part 2 is generated
    by their complements.
    """
    validate_space(space, require_t0=True)
    full = (1 << space.points) - 1
    subsets = list(range(full + 1))
    meet = [[a & b for b in subsets] for a in subsets]
    join = [[a | b for b in subsets] for a in subsets]
    total, to_total = lattice_from_tables(len(subsets), meet, join, caps)
    part1 = [to_total[u] for u in space.opens]
    part2 = subframe_generated(total, [to_total[full & ~u] for u in space.opens])
    bf = make_biframe(total, part1, part2)
    if not is_strictly_zero_dimensional(bf):
        raise TheoremViolation("Skula biframe is not strictly zero-dimensional")
    return bf


# ---------------------------------------------------------------------------
# congruence biframes and the coreflection onto them
# ---------------------------------------------------------------------------

class CongruenceBiframe:
    """The strictly zero-dimensional biframe on the congruence frame of a
    frame: first part the closed congruences, second part generated by
    the open ones."""

    __slots__ = ("source", "cf", "biframe")

    def __init__(self, source: FiniteFrame, cf: CongruenceFrame, biframe: Biframe):
        self.source = source
        self.cf = cf
        self.biframe = biframe


def congruence_biframe(source: FiniteFrame, caps: Caps = DEFAULT_CAPS,
                       oracle: bool | None = None) -> CongruenceBiframe:
    cf = congruence_frame(source, caps, oracle=oracle)
    part1 = [cf.nabla_index(a) for a in range(source.n)]
    part2 = subframe_generated(cf.frame, [cf.delta_index(a) for a in range(source.n)])
    bf = make_biframe(cf.frame, part1, part2)
    if not is_strictly_zero_dimensional(bf):
        raise TheoremViolation("congruence biframe is not strictly zero-dimensional")
    return CongruenceBiframe(source, cf, bf)


def coreflection_chi(bf: Biframe, caps: Caps = DEFAULT_CAPS) -> BiframeHom:
    """The coreflection map from the congruence biframe of the first part
    onto a strictly zero-dimensional biframe: closed congruences land on
    their part-1 elements, open congruences on the complements.

    Verified to be a dense surjective biframe homomorphism.
    """
    if not is_strictly_zero_dimensional(bf):
        raise NotStrictlyZeroDimensional()
    total = bf.total
    comp = complement_map(bf)
    f1, embed = subframe_as_frame(total, bf.part1)
    cb = congruence_biframe(f1, caps)
    k = f1.jposet.n
    # atom j of the congruence frame corresponds to the prime interval
    # below the j-th join-irreducible of f1
    t = []
    for j in range(k):
        dj = f1.index[f1.jposet.down[j]]
        dj_minus = f1.index[f1.jposet.down[j] & ~(1 << j)]
        upper = embed[dj]
        lower = embed[dj_minus]
        t.append(total.meet(upper, comp[lower]))
    mapping = []
    for m in cb.cf.frame.elements:
        acc = total.bottom
        for j in range(k):
            if (m >> j) & 1:
                acc = total.join(acc, t[j])
        mapping.append(acc)
    chi = validate_biframe_hom(cb.biframe, bf, mapping)
    for a in range(f1.n):
        if mapping[cb.cf.nabla_index(a)] != embed[a]:
            raise TheoremViolation("coreflection does not restrict to the "
                                   "first-part embedding")
        if mapping[cb.cf.delta_index(a)] != comp[embed[a]]:
            raise TheoremViolation("coreflection does not send open "
                                   "congruences to complements")
    if not chi.is_dense() or not chi.is_surjective():
        raise TheoremViolation("coreflection is not a dense surjection")
    return chi
