"""Paircovers and quasi-uniformities on biframes.

A paircover is a downset of part1 x part2 with total join 1, held by its
antichain of maximal generating pairs.  Quasi-uniformities are finite
bases with filter semantics; the Fletcher construction supplies the
Pervin and well-monotone quasi-uniformities on strictly zero-dimensional
biframes.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .biframes import Biframe, BiframeHom, bipseudocomplement, complement_map, rather_below
from .caps import DEFAULT_CAPS, Caps
from .covers import CoverDownset, Uniformity, validate_uniformity
from .errors import (FfgError, NoStarRefinement, NoStrongRefinement,
                     NotAdmissible, NotCovering, NotDirected, NotFletcher,
                     SizeCap, TheoremViolation)


def _normalize_pairs(bf: Biframe, pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    le = bf.total.le
    pairs = set(pairs)
    out = []
    for (x, y) in pairs:
        dominated = any((x2, y2) != (x, y) and le(x, x2) and le(y, y2)
                        for (x2, y2) in pairs)
        if not dominated:
            out.append((x, y))
    return tuple(sorted(out))


class PairDownset:
    """A downset of part1 x part2, not necessarily covering."""

    __slots__ = ("biframe", "gens")

    def __init__(self, biframe: Biframe, gens: Iterable[tuple[int, int]]):
        self.biframe = biframe
        self.gens = _normalize_pairs(biframe, gens)

    # -- downset algebra ------------------------------------------------------

    def contains(self, x: int, y: int) -> bool:
        le = self.biframe.total.le
        return any(le(x, u) and le(y, v) for (u, v) in self.gens)

    def le(self, other: "PairDownset") -> bool:
        return all(other.contains(x, y) for (x, y) in self.gens)

    def intersect(self, other: "PairDownset") -> "PairDownset":
        frame = self.biframe.total
        pairs = [(frame.meet(x1, x2), frame.meet(y1, y2))
                 for (x1, y1) in self.gens for (x2, y2) in other.gens]
        return PairDownset(self.biframe, pairs)

    def join_value(self) -> int:
        frame = self.biframe.total
        return frame.join_all(frame.meet(x, y) for (x, y) in self.gens)

    def is_covering(self) -> bool:
        return self.join_value() == self.biframe.total.top

    def is_strong(self) -> bool:
        """Generated as a downset by pairs with nonzero meet; on the
        normalized antichain this means every generator has one."""
        bottom = self.biframe.total.bottom
        frame = self.biframe.total
        return all(frame.meet(x, y) != bottom for (x, y) in self.gens)

    def strongify(self) -> "PairDownset":
        frame = self.biframe.total
        keep = [(x, y) for (x, y) in self.gens
                if frame.meet(x, y) != frame.bottom]
        return PairDownset(self.biframe, keep)

    # -- stars ----------------------------------------------------------------

    def star(self, i: int, x: int) -> int:
        """st_i(x, U): join of i-th components of generators whose other
        component meets x (downset closure cannot enlarge the join)."""
        frame = self.biframe.total
        acc = frame.bottom
        for (u1, u2) in self.gens:
            other = u2 if i == 1 else u1
            if frame.meet(x, other) != frame.bottom:
                acc = frame.join(acc, u1 if i == 1 else u2)
        return acc

    def star_cover(self) -> "PairDownset":
        return PairDownset(self.biframe,
                           [(self.star(1, u1), self.star(2, u2))
                            for (u1, u2) in self.gens])

    def is_transitive(self) -> bool:
        return self.star_cover().gens == self.gens

    def __eq__(self, other):
        return (isinstance(other, PairDownset) and self.biframe == other.biframe
                and self.gens == other.gens)

    def __hash__(self):
        return hash((self.biframe, self.gens))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.gens)})"


class Paircover(PairDownset):
    """A covering pair downset."""


def make_paircover(bf: Biframe, pairs: Iterable[tuple[int, int]]) -> Paircover:
    part1, part2 = set(bf.part1), set(bf.part2)
    for (x, y) in pairs:
        if x not in part1 or y not in part2:
            raise ValueError(f"pair ({x}, {y}) is not in part1 x part2")
    pc = Paircover(bf, pairs)
    if not pc.is_covering():
        raise NotCovering(pc.join_value())
    return pc


def as_paircover(pd: PairDownset) -> Paircover:
    return make_paircover(pd.biframe, pd.gens)


def is_strong(u: PairDownset) -> bool:
    return u.is_strong()


def strongify(u: PairDownset) -> PairDownset:
    return u.strongify()


def star(bf: Biframe, i: int, x: int, u: PairDownset) -> int:
    return u.star(i, x)


def star_cover(u: Paircover) -> Paircover:
    return as_paircover(u.star_cover())


def is_transitive(u: PairDownset) -> bool:
    return u.is_transitive()


# ---------------------------------------------------------------------------
# quasi-uniformities
# ---------------------------------------------------------------------------

class QuasiUniformity:
    """A filter of paircovers given by a finite base: U is uniform iff
    some base member lies below it."""

    __slots__ = ("biframe", "base", "_min")

    def __init__(self, biframe: Biframe, base: Sequence[Paircover]):
        self.biframe = biframe
        self.base = tuple(sorted(set(base), key=lambda u: u.gens))
        self._min = None

    def minimum(self) -> Paircover | None:
        """The finest base member when one exists; all bases built here
        have one, making refinement queries constant-time."""
        if self._min is None:
            for u in self.base:
                if all(u.le(v) for v in self.base):
                    self._min = u
                    break
            else:
                self._min = False
        return self._min or None

    def _set_minimum(self, u: Paircover) -> None:
        if not all(u.le(v) for v in self.base):
            raise ValueError("claimed minimum does not refine the base")
        self._min = u

    def is_uniform(self, u: PairDownset) -> bool:
        m = self.minimum()
        if m is not None:
            return m.le(u)
        return any(v.le(u) for v in self.base)

    def uniformly_below(self, i: int, x: int, y: int) -> bool:
        """x uniformly below y: some uniform paircover's star at x stays
        below y.  Stars are monotone in the paircover, so the finest base
        member decides."""
        frame = self.biframe.total
        m = self.minimum()
        if m is not None:
            return frame.le(m.star(i, x), y)
        return any(frame.le(u.star(i, x), y) for u in self.base)

    def __eq__(self, other):
        return (isinstance(other, QuasiUniformity)
                and self.biframe == other.biframe and self.base == other.base)

    def __hash__(self):
        return hash((self.biframe, self.base))

    def __repr__(self):
        return f"QuasiUniformity(base={len(self.base)})"


def uniformly_below(qu: QuasiUniformity, i: int, x: int, y: int) -> bool:
    return qu.uniformly_below(i, x, y)


def validate_quasi_uniformity(bf: Biframe, base: Sequence[Paircover],
                              minimum: Paircover | None = None) -> QuasiUniformity:
    """Check the quasi-uniformity axioms exhaustively over the base:
    refinement directedness, strong refinements, star refinements, and
    admissibility of both parts.

    A known finest member can be passed to shortcut the quadratic scans;
    it is verified before being trusted.
    """
    if not base:
        raise NotDirected(("empty base",))
    qu = QuasiUniformity(bf, base)
    base = qu.base
    frame = bf.total
    for u in base:
        if not u.is_covering():
            raise NotCovering(u.join_value())
    if minimum is not None:
        qu._set_minimum(minimum)
    m = qu.minimum()
    if m is None:
        for i, u in enumerate(base):
            for v in base[i + 1:]:
                if not any(w.le(u) and w.le(v) for w in base):
                    raise NotDirected((u.gens, v.gens))
    if m is not None and m.is_strong():
        pass  # the minimum witnesses a strong refinement below every member
    else:
        for u in base:
            if not any(w.is_strong() and w.le(u) for w in base):
                raise NoStrongRefinement(u.gens)
    if m is not None and m.star_cover().le(m):
        pass  # a transitive minimum star-refines every member
    else:
        stars = {u.gens: u.star_cover() for u in base}
        for u in base:
            if not any(stars[w.gens].le(u) for w in base):
                raise NoStarRefinement(u.gens)
    for i in (1, 2):
        for x in bf.part(i):
            below = [y for y in bf.part(i) if qu.uniformly_below(i, y, x)]
            j = frame.join_all(below)
            if j != x:
                raise NotAdmissible(i, x, j)
    return qu


def all_paircovers(bf: Biframe) -> list[Paircover]:
    """Every paircover on a small biframe (used for filter census tests).

    Enumerates antichains of part1 x part2 and keeps the covering ones.
    """
    frame = bf.total
    pairs = [(x, y) for x in bf.part1 for y in bf.part2]

    def dominates(p, q):
        return frame.le(q[0], p[0]) and frame.le(q[1], p[1])

    out: list[Paircover] = []

    def extend(start: int, chosen: tuple):
        pd = PairDownset(bf, chosen)
        if pd.is_covering() and pd.gens == tuple(sorted(chosen)):
            out.append(Paircover(bf, chosen))
        for t in range(start, len(pairs)):
            p = pairs[t]
            if all(not dominates(p, q) and not dominates(q, p) for q in chosen):
                extend(t + 1, chosen + (p,))

    extend(0, ())
    if frame.n == 1:
        out.append(Paircover(bf, ()))
    seen = set()
    uniq = []
    for u in out:
        if u.gens not in seen:
            seen.add(u.gens)
            uniq.append(u)
    return sorted(uniq, key=lambda u: u.gens)


def filter_members(qu: QuasiUniformity) -> list[Paircover]:
    """All paircovers in the filter (small biframes only)."""
    return [u for u in all_paircovers(qu.biframe) if qu.is_uniform(u)]


def filters_equal(qu1: QuasiUniformity, qu2: QuasiUniformity) -> bool:
    """Mutual refinement of bases = equality as filters."""
    return (all(qu2.is_uniform(u) for u in qu1.base)
            and all(qu1.is_uniform(u) for u in qu2.base))


# ---------------------------------------------------------------------------
# quasi-proximities (strong inclusions)
# ---------------------------------------------------------------------------

class ProximityCheck:
    __slots__ = ("ok", "axiom", "witness")

    def __init__(self, ok: bool, axiom: int | None = None, witness=None):
        self.ok = ok
        self.axiom = axiom
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ProximityCheck(ok)"
        return f"ProximityCheck(axiom={self.axiom}, witness={self.witness})"


def quasi_proximity_of(qu: QuasiUniformity) -> tuple[frozenset, frozenset]:
    """The pair of uniformly-below relations on the parts."""
    bf = qu.biframe
    rels = []
    for i in (1, 2):
        part = bf.part(i)
        rels.append(frozenset((x, y) for x in part for y in part
                              if qu.uniformly_below(i, x, y)))
    return rels[0], rels[1]


def validate_quasi_proximity(bf: Biframe, rel1: frozenset, rel2: frozenset) -> ProximityCheck:
    """Check the six strong-inclusion axioms in order; returns the first
    violated axiom with witnesses.

    Axiom 5 is taken contravariantly (a below b forces b-pseudocomplement
    below a-pseudocomplement in the other part), the orientation the
    covariant reading fails on already for 0 below 1.
    """
    frame = bf.total
    rels = {1: rel1, 2: rel2}
    for i in (1, 2):
        rel = rels[i]
        part = bf.part(i)
        # 1. compatibility with the order on both sides
        for (b, c) in rel:
            for a in part:
                if not frame.le(a, b):
                    continue
                for d in part:
                    if frame.le(c, d) and (a, d) not in rel:
                        return ProximityCheck(False, 1, (i, a, b, c, d))
        # 2. sublattice of part x part
        for (a, b) in rel:
            for (c, d) in rel:
                if (frame.meet(a, c), frame.meet(b, d)) not in rel:
                    return ProximityCheck(False, 2, (i, (a, b), (c, d), "meet"))
                if (frame.join(a, c), frame.join(b, d)) not in rel:
                    return ProximityCheck(False, 2, (i, (a, b), (c, d), "join"))
        # 3. contained in rather-below
        rb = rather_below(bf, i)
        for (a, b) in rel:
            if (a, b) not in rb:
                return ProximityCheck(False, 3, (i, a, b))
        # 4. interpolation
        for (a, c) in rel:
            if not any((a, b) in rel and (b, c) in rel for b in part):
                return ProximityCheck(False, 4, (i, a, c))
        # 5. pseudocomplements swap parts (contravariantly)
        j = 2 if i == 1 else 1
        for (a, b) in rel:
            pa = bipseudocomplement(bf, i, a)
            pb = bipseudocomplement(bf, i, b)
            if (pb, pa) not in rels[j]:
                return ProximityCheck(False, 5, (i, a, b))
        # 6. admissibility
        for x in part:
            if frame.join_all(y for (y, z) in rel if z == x) != x:
                return ProximityCheck(False, 6, (i, x))
    return ProximityCheck(True)


# ---------------------------------------------------------------------------
# symmetrisation and total boundedness
# ---------------------------------------------------------------------------

def symmetrisation(qu: QuasiUniformity) -> Uniformity:
    """The uniformity on the total frame generated by the covers of
    generator meets.  Validity is a theorem, so any axiom failure aborts;
    transitive strong members must land on partition-generated covers."""
    bf = qu.biframe
    frame = bf.total
    covers = []
    for u in qu.base:
        c = CoverDownset(frame, [frame.meet(x, y) for (x, y) in u.gens])
        if u.is_strong() and u.is_transitive():
            if not c.is_transitive() or not c.strongify().is_partition_generated():
                raise TheoremViolation(
                    "symmetrisation of a transitive strong paircover is not "
                    "partition-generated")
        covers.append(c)
    try:
        return validate_uniformity(frame, covers)
    except FfgError as exc:
        raise TheoremViolation(f"symmetrisation failed validation: {exc}") from exc


def is_totally_bounded(qu: QuasiUniformity) -> bool:
    """Every uniform paircover has a finite sub-paircover; checked on the
    base, whose members are finitely generated by construction."""
    return all(len(u.gens) < float("inf") and u.is_covering() for u in qu.base)


def totally_bounded_coreflection(qu: QuasiUniformity) -> QuasiUniformity:
    """Re-base on finite sub-paircovers and re-validate; the generator
    antichains are already finite, so this is the identity here."""
    base = [make_paircover(qu.biframe, u.gens) for u in qu.base]
    return validate_quasi_uniformity(qu.biframe, base)


# ---------------------------------------------------------------------------
# the Fletcher construction
# ---------------------------------------------------------------------------

def fletcher_paircover(bf: Biframe, subset: Iterable[int],
                       caps: Caps = DEFAULT_CAPS,
                       crosscheck: str = "auto") -> tuple[Paircover, Paircover]:
    """The paircover induced by a subset A of part1 and its strong
    modification.

    Membership form: (x, y) is in C_A iff for every a in A, x <= a or
    y <= a-complement.  The closed form over subsets B of A is computed
    and asserted equal whenever 2^|A| fits the cap (always, under
    ``crosscheck='require'``, which otherwise raises SizeCap).
    """
    comp = complement_map(bf)  # raises NotStrictlyZeroDimensional
    frame = bf.total
    a_set = tuple(sorted(set(subset)))
    for a in a_set:
        if a not in comp:
            raise ValueError(f"element {a} is not in part1")
    # per-x maximal second component: meet of complements of the
    # constraints x fails
    pairs = []
    for x in bf.part1:
        acc = frame.top
        for a in a_set:
            if not frame.le(x, a):
                acc = frame.meet(acc, comp[a])
        pairs.append((x, acc))
    c_a = PairDownset(bf, pairs)
    if crosscheck != "skip":
        if 2 ** len(a_set) <= caps.fletcher_subsets:
            closed = []
            k = len(a_set)
            for bmask in range(1 << k):
                chosen = [a_set[t] for t in range(k) if (bmask >> t) & 1]
                rest = [a_set[t] for t in range(k) if not (bmask >> t) & 1]
                left = frame.meet_all(chosen)
                right = comp[frame.join_all(rest)] if rest else frame.top
                closed.append((left, right))
            if PairDownset(bf, closed).gens != c_a.gens:
                raise TheoremViolation(
                    "Fletcher membership form and closed form disagree")
        elif crosscheck == "require":
            raise SizeCap("fletcher_subsets", caps.fletcher_subsets,
                          f"|A| = {len(a_set)}")
    if not c_a.is_covering():
        raise NotFletcher(c_a.join_value())
    strong = c_a.strongify()
    return as_paircover(c_a), as_paircover(strong)


def chains_within(frame, elements) -> list[tuple[int, ...]]:
    """All chains from 0 to 1 inside a subset of a frame.  Finite chains
    are automatically join-closed once they contain the empty join 0."""
    part = sorted(set(elements) | {frame.bottom, frame.top},
                  key=lambda a: (frame.elements[a].bit_count(), a))
    bot, top = frame.bottom, frame.top
    chains: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...]):
        if chain[-1] == top:
            chains.append(chain)
            return
        for a in part:
            if a != chain[-1] and frame.le(chain[-1], a):
                extend(chain + (a,))

    extend((bot,))
    return chains


def join_closed_chains(bf: Biframe) -> list[tuple[int, ...]]:
    """All join-closed chains of part1 containing 0 and 1."""
    return chains_within(bf.total, bf.part1)


def successor_paircover(bf: Biframe, chain: Sequence[int]) -> Paircover:
    """The successor-form paircover of a join-closed chain: pairs of each
    element's successor with its complement."""
    comp = complement_map(bf)
    pairs = [(chain[t + 1], comp[chain[t]]) for t in range(len(chain) - 1)]
    return make_paircover(bf, pairs)


def pervin_qu(bf: Biframe, caps: Caps = DEFAULT_CAPS) -> QuasiUniformity:
    """The finest totally bounded quasi-uniformity: strong Fletcher
    paircovers of the finite covers of part1, reduced to the refinement-
    minimal members.

    Larger subsets induce finer paircovers, so the reduction is the
    single paircover of the whole first part; when the cover family is
    small enough this is verified by enumerating it.
    """
    _, finest = fletcher_paircover(bf, bf.part1, caps, crosscheck="auto")
    if 2 ** len(bf.part1) <= 256:
        part = list(bf.part1)
        frame = bf.total
        for mask in range(1 << len(part)):
            a_set = [part[t] for t in range(len(part)) if (mask >> t) & 1]
            if frame.join_all(a_set) != frame.top:
                continue
            _, strong = fletcher_paircover(bf, a_set, caps, crosscheck="skip")
            if not finest.le(strong):
                raise TheoremViolation("full-part Fletcher paircover is not "
                                       "the finest cover member")
    return validate_quasi_uniformity(bf, [finest], minimum=finest)


def well_monotone_qu(bf: Biframe, caps: Caps = DEFAULT_CAPS,
                     lemma_check: bool = True) -> QuasiUniformity:
    """The well-monotone quasi-uniformity: successor-form paircovers over
    all join-closed chains of part1.

    With ``lemma_check`` each successor paircover is asserted equal to the
    strong Fletcher paircover of its chain, and the strongified
    intersection of the family equal to the full-part Fletcher paircover.
    The chain family alone is not refinement-directed, so the base is
    completed with that full-part paircover, which realises all finite
    intersections in the generated filter.
    """
    members: list[Paircover] = []
    running: PairDownset | None = None
    for chain in join_closed_chains(bf):
        succ = successor_paircover(bf, chain)
        if lemma_check:
            _, strong = fletcher_paircover(bf, chain, caps, crosscheck="auto")
            if succ.gens != strong.gens:
                raise TheoremViolation(
                    f"successor form disagrees with the Fletcher paircover on chain {chain}")
            running = succ if running is None else running.intersect(succ)
        members.append(succ)
    _, finest = fletcher_paircover(bf, bf.part1, caps,
                                   crosscheck="auto" if lemma_check else "skip")
    if lemma_check and running is not None \
            and running.strongify().gens != finest.gens:
        raise TheoremViolation("strongified intersection of the chain family "
                               "is not the full-part Fletcher paircover")
    members.append(finest)
    return validate_quasi_uniformity(bf, members, minimum=finest)


# ---------------------------------------------------------------------------
# image quasi-uniformities
# ---------------------------------------------------------------------------

def quotient_qu(q: BiframeHom, qu: QuasiUniformity) -> QuasiUniformity:
    """The quasi-uniformity generated on the codomain by the images of the
    base paircovers under a surjective biframe homomorphism.

    A non-dense quotient can take a strong paircover to a non-strong one
    (collapsing a generator meet to 0), so the strongification of each
    image is added alongside it; this is exactly the strong-refinement
    saturation of the image filter and changes nothing when the images
    are already strong.
    """
    if not q.is_surjective():
        raise ValueError("quotient_qu requires a surjective biframe homomorphism")
    if qu.biframe != q.dom:
        raise ValueError("quasi-uniformity must live on the domain")
    base: list[Paircover] = []
    minimum = None
    qmin = qu.minimum()
    for u in qu.base:
        image = Paircover(q.cod, [(q(x), q(y)) for (x, y) in u.gens])
        if not image.is_covering():
            raise TheoremViolation("image of a paircover fails to cover")
        base.append(image)
        keep = image
        if not image.is_strong():
            keep = as_paircover(image.strongify())
            base.append(keep)
        if qmin is not None and u.gens == qmin.gens:
            # images are monotone, so the image of the finest member is
            # the finest image; its strongification leads the new base
            minimum = keep
    return validate_quasi_uniformity(q.cod, base, minimum=minimum)
