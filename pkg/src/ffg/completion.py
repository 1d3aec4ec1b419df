"""Completeness, ultraparacompactness, bicompletion and the universal
compactification of congruence biframes."""

from __future__ import annotations

from typing import Sequence

from .biframes import (Biframe, BiframeHom, CongruenceBiframe, congruence_biframe,
                       is_compact, is_completely_regular, is_regular,
                       is_strictly_zero_dimensional, is_zero_dimensional,
                       make_biframe, rather_below, subframe_as_frame,
                       symmetric_biframe, validate_biframe_hom)
from .caps import DEFAULT_CAPS, Caps
from .congruence import (ClatFrame, CongruenceFrame, FrameCongruence, GResult,
                         LatticeCongruence, clat_frame, congruence_closure,
                         congruence_frame, g_map, open_congruence,
                         principal_congruence)
from .covers import (CoverDownset, Uniformity, covering_antichains,
                     frame_partitions, minimal_covers, validate_uniformity)
from .errors import (EquivalenceViolation, FfgError, NotCompletelyRegular,
                     NotZeroDimensional, SizeCap, TheoremViolation)
from .morphisms import FrameHom, is_dense, is_surjective, quotient_by_congruence, subframe_generated
from .order import FiniteFrame
from .paircovers import (Paircover, PairDownset, QuasiUniformity, as_paircover,
                         chains_within, filters_equal, quotient_qu,
                         validate_quasi_uniformity)


# ---------------------------------------------------------------------------
# completeness of uniform frames
# ---------------------------------------------------------------------------

def _saturate(frame: FiniteFrame, uni: Uniformity, start: set[int]) -> set[int]:
    """Close a downset under: add a whenever some uniform cover traps
    everything below a inside the set.  The finest base member is the
    easiest witness, so minimal members suffice."""
    witnesses = minimal_covers(uni.base)
    current = set(start)
    changed = True
    while changed:
        changed = False
        for a in range(frame.n):
            if a in current:
                continue
            below_a = frame.below(a)
            for u in witnesses:
                if all(x in current for x in below_a if u.contains(x)):
                    current.add(a)
                    changed = True
                    break
    return current


def is_complete_uniform(frame: FiniteFrame, uni: Uniformity,
                        caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff every covering downset saturates to the whole frame.

    Candidates are enumerated as downward closures of antichains; exact
    whenever the enumeration fits the cap, else SizeCap carries the
    partial verdict.
    """
    try:
        antichains = covering_antichains(frame, caps)
    except SizeCap as exc:
        exc.partial = True  # all candidates inspected so far saturated
        raise
    everything = set(range(frame.n))
    for ac in antichains:
        d = CoverDownset(frame, ac)
        closure = {x for x in range(frame.n) if d.contains(x)}
        if _saturate(frame, uni, closure) != everything:
            return False
    return True


def is_ultraparacompact(frame: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> bool:
    """Every cover is refined by a partition; it suffices to refine the
    covers that are antichains."""
    partitions = frame_partitions(frame)
    for cover in covering_antichains(frame, caps):
        refined = any(all(any(frame.le(p, c) for c in cover) for p in part)
                      for part in partitions)
        if not refined:
            return False
    return True


def fine_uniformity(frame: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> Uniformity:
    """The largest uniformity: all strong covering downsets."""
    if not is_completely_regular(symmetric_biframe(frame)):
        raise NotCompletelyRegular()
    base = [CoverDownset(frame, ac) for ac in covering_antichains(frame, caps)]
    base = [c for c in base if c.is_strong()]
    return validate_uniformity(frame, base)


def fine_transitive_uniformity(frame: FiniteFrame,
                               caps: Caps = DEFAULT_CAPS) -> Uniformity:
    """The uniformity generated by all partitions."""
    if not is_zero_dimensional(symmetric_biframe(frame)):
        raise NotZeroDimensional()
    base = [CoverDownset(frame, p) for p in frame_partitions(frame)]
    return validate_uniformity(frame, base)


def _is_transitive_uniformity(uni: Uniformity) -> bool:
    """Has a base of transitive members (equivalently, of partition
    covers, since the members are strong)."""
    return all(any(d.is_transitive() and d.le(c) for d in uni.base)
               for c in uni.base)


def check_ultraparacompact_equivalences(frame: FiniteFrame,
                                        caps: Caps = DEFAULT_CAPS) -> tuple[bool, bool, bool, bool]:
    """Evaluate the four ultraparacompactness conditions on a completely
    regular frame and assert they agree.

    1. every cover refined by a partition;
    2. the fine uniformity is complete and transitive;
    3. zero-dimensional and complete in the fine transitive uniformity;
    4. admits a complete transitive uniformity.
    """
    sym = symmetric_biframe(frame)
    if not is_completely_regular(sym):
        raise NotCompletelyRegular()
    b1 = is_ultraparacompact(frame, caps)
    fine = fine_uniformity(frame, caps)
    b2 = is_complete_uniform(frame, fine, caps) and _is_transitive_uniformity(fine)
    if is_zero_dimensional(sym):
        ftrans = fine_transitive_uniformity(frame, caps)
        b3 = is_complete_uniform(frame, ftrans, caps)
    else:
        ftrans = None
        b3 = False
    b4 = False
    candidates: list[list[CoverDownset]] = [[CoverDownset(frame, p)]
                                            for p in frame_partitions(frame)]
    if ftrans is not None:
        candidates.append(list(ftrans.base))
    for base in candidates:
        try:
            uni = validate_uniformity(frame, base)
        except FfgError:
            continue
        if _is_transitive_uniformity(uni) and is_complete_uniform(frame, uni, caps):
            b4 = True
            break
    values = (b1, b2, b3, b4)
    if len(set(values)) != 1:
        raise EquivalenceViolation(values)
    return values


# ---------------------------------------------------------------------------
# ideal-lattice oracle
# ---------------------------------------------------------------------------

def ideal_frame(frame: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> FiniteFrame:
    """The frame of ideals (join-closed downsets containing 0), built
    extensionally as an independent oracle."""
    ideals: list[frozenset[int]] = []
    for ac in _all_antichains(frame):
        d = frozenset(x for x in range(frame.n)
                      if any(frame.le(x, g) for g in ac)) | {frame.bottom}
        if all(frame.join(a, b) in d for a in d for b in d):
            ideals.append(d)
    ideals = sorted(set(ideals), key=sorted)
    pos = {d: i for i, d in enumerate(ideals)}
    k = len(ideals)

    def meet_of(a, b):
        return pos[ideals[a] & ideals[b]]

    def join_of(a, b):
        u = ideals[a] | ideals[b]
        return pos[min((d for d in ideals if u <= d), key=len)]

    meets = [[meet_of(a, b) for b in range(k)] for a in range(k)]
    joins = [[join_of(a, b) for b in range(k)] for a in range(k)]
    from .order import lattice_from_tables
    f, _ = lattice_from_tables(k, meets, joins, caps)
    return f


def _all_antichains(frame: FiniteFrame) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def extend(start: int, chosen: tuple[int, ...]):
        out.append(chosen)
        for x in range(start, frame.n):
            if all(not frame.le(x, c) and not frame.le(c, x) for c in chosen):
                extend(x + 1, chosen + (x,))

    extend(0, ())
    return out


# ---------------------------------------------------------------------------
# the universal compactification of a congruence biframe
# ---------------------------------------------------------------------------

class GCompactification:
    __slots__ = ("source", "g", "hom", "clat_biframe", "congruence_biframe")

    def __init__(self, source, g: GResult, hom: BiframeHom,
                 clat_bf: Biframe, cc: CongruenceBiframe):
        self.source = source
        self.g = g
        self.hom = hom
        self.clat_biframe = clat_bf
        self.congruence_biframe = cc


def universal_compactification_g(source: FiniteFrame,
                                 caps: Caps = DEFAULT_CAPS) -> GCompactification:
    """Build the map from the lattice-congruence biframe onto the
    congruence biframe and verify everything the compactification needs:
    part preservation, density, surjectivity, compactness and
    zero-dimensionality of the compact side, the ideal-lattice shape of
    its first part, and that the induced strong inclusion is the
    rather-below pair."""
    cl = clat_frame(source, caps)
    cf = congruence_frame(source, caps, oracle=None)
    g = g_map(source, cl, cf, caps)
    part1 = subframe_generated(cl.frame, [cl.nabla_index(a) for a in range(source.n)])
    part2 = subframe_generated(cl.frame, [cl.delta_index(a) for a in range(source.n)])
    clat_bf = make_biframe(cl.frame, part1, part2)
    cc = congruence_biframe(source, caps, oracle=False)
    hom = validate_biframe_hom(clat_bf, cc.biframe, g.hom.map)
    if not hom.is_dense() or not hom.is_surjective():
        raise TheoremViolation("g is not a dense biframe surjection")
    if not (is_compact(clat_bf) and is_zero_dimensional(clat_bf)):
        raise TheoremViolation("the lattice-congruence biframe is not compact "
                               "zero-dimensional")
    if not (is_compact(cc.biframe) and is_zero_dimensional(cc.biframe)):
        raise TheoremViolation("the congruence biframe is not compact "
                               "zero-dimensional")
    p1_frame, _ = subframe_as_frame(cl.frame, part1)
    if p1_frame.canonical_key() != ideal_frame(source, caps).canonical_key():
        raise TheoremViolation("first part of the lattice-congruence biframe "
                               "is not the ideal lattice")
    for i in (1, 2):
        induced = frozenset((g.hom.map[x], g.hom.map[y])
                            for (x, y) in rather_below(clat_bf, i))
        if induced != rather_below(cc.biframe, i):
            raise TheoremViolation("induced strong inclusion differs from "
                                   "rather-below")
    if len(set(g.hom.map)) != cl.frame.n:
        raise TheoremViolation("g is not injective on a finite carrier")
    return GCompactification(source, g, hom, clat_bf, cc)


# ---------------------------------------------------------------------------
# bicompletion via the Samuel compactification
# ---------------------------------------------------------------------------

def identity_biframe_hom(bf: Biframe) -> BiframeHom:
    return validate_biframe_hom(bf, bf, tuple(range(bf.total.n)))


class BicompletionResult:
    __slots__ = ("biframe", "qu", "gamma", "nu", "theta", "k_values")

    def __init__(self, biframe: Biframe, qu: QuasiUniformity, gamma: BiframeHom,
                 nu: BiframeHom, theta: FrameCongruence, k_values: tuple[int, ...]):
        self.biframe = biframe
        self.qu = qu
        self.gamma = gamma
        self.nu = nu
        self.theta = theta
        self.k_values = k_values


def _part_right_adjoint(rho: BiframeHom, i: int) -> dict[int, int]:
    """Right adjoint of the part-i restriction of a biframe surjection."""
    dom_part = rho.dom.part(i)
    frame = rho.dom.total
    out = {}
    for u in rho.cod.part(i):
        out[u] = frame.join_all(x for x in dom_part
                                if rho.cod.total.le(rho(x), u))
    return out


def bicompletion(bf: Biframe, qu: QuasiUniformity,
                 rho: BiframeHom | None = None,
                 caps: Caps = DEFAULT_CAPS) -> BicompletionResult:
    """Bicompletion as a quotient of a compactification.

    ``rho`` is a dense surjection from a compact regular biframe onto
    ``bf`` (default: the identity, which on a finite biframe is its own
    Samuel compactification).  The kernel congruence collects the open
    congruences at the joins of the pulled-back paircovers; the quotient
    carries the transported base, and factoring ``rho`` through the
    quotient yields the bicompletion map, which at finite scale must be
    an isomorphism.
    """
    if qu.biframe != bf:
        raise ValueError("quasi-uniformity must live on the biframe")
    if rho is None:
        rho = identity_biframe_hom(bf)
    if rho.cod != bf:
        raise ValueError("rho must land on the biframe")
    if not rho.is_dense() or not rho.is_surjective():
        raise ValueError("rho must be a dense biframe surjection")
    if not (is_compact(rho.dom) and is_regular(rho.dom)):
        raise ValueError("rho must come from a compact regular biframe")
    compact = rho.dom
    total_c = compact.total
    adj1 = _part_right_adjoint(rho, 1)
    adj2 = _part_right_adjoint(rho, 2)
    k_downsets: list[PairDownset] = []
    k_values: list[int] = []
    theta_pairs: list[tuple[int, int]] = []
    for u in qu.base:
        ku = PairDownset(compact, [(adj1[x], adj2[y]) for (x, y) in u.gens])
        k_downsets.append(ku)
        kv = ku.join_value()
        k_values.append(kv)
        theta_pairs.extend(open_congruence(total_c, kv).pairs())
    theta = congruence_closure(total_c, theta_pairs)
    q_frame, q_hom = quotient_by_congruence(total_c, theta)
    q_part1 = sorted({q_hom.map[a] for a in compact.part1})
    q_part2 = sorted({q_hom.map[a] for a in compact.part2})
    q_bf = make_biframe(q_frame, q_part1, q_part2)
    nu = validate_biframe_hom(compact, q_bf, q_hom.map)
    if not nu.is_dense() or not nu.is_surjective():
        raise TheoremViolation("quotient map of the bicompletion is not a "
                               "dense surjection")
    base: list[Paircover] = []
    for ku in k_downsets:
        image = Paircover(q_bf, [(nu(x), nu(y)) for (x, y) in ku.gens])
        base.append(as_paircover(image))
        if not image.is_strong():
            base.append(as_paircover(image.strongify()))
    transported = validate_quasi_uniformity(q_bf, base)
    # factor rho through nu
    gamma_map = [None] * q_frame.n
    for x in range(total_c.n):
        tgt = rho(x)
        slot = nu(x)
        if gamma_map[slot] is None:
            gamma_map[slot] = tgt
        elif gamma_map[slot] != tgt:
            raise TheoremViolation("kernel congruence is not contained in "
                                   "the kernel of rho")
    gamma = validate_biframe_hom(q_bf, bf, gamma_map)
    if not gamma.is_dense() or not gamma.is_surjective():
        raise TheoremViolation("bicompletion map is not a dense surjection")
    if len(set(gamma.map)) != q_frame.n:
        raise TheoremViolation("bicompletion map of a finite quasi-uniform "
                               "biframe is not an isomorphism")
    if not filters_equal(quotient_qu(gamma, transported), qu):
        raise TheoremViolation("bicompletion map is not a quasi-uniform "
                               "surjection")
    return BicompletionResult(q_bf, transported, gamma, nu, theta, tuple(k_values))


# ---------------------------------------------------------------------------
# the kernel check behind the main completeness theorem
# ---------------------------------------------------------------------------

def theorem_kernel_check(source: FiniteFrame, caps: Caps = DEFAULT_CAPS) -> bool:
    """Inside the congruence frame of the lattice-congruence frame, the
    kernel of g must lie below the congruence K generated by identifying
    each chain's successor join with 1.

    Per chain, the meet of the successor's closed congruence with the
    open congruence is checked equal to the principal congruence of the
    step, mirroring the containment argument; on finite carriers the
    kernel is moreover the diagonal.
    """
    cl = clat_frame(source, caps)
    cf = congruence_frame(source, caps, oracle=None)
    g = g_map(source, cl, cf, caps)
    m_frame = cl.frame
    k_pairs: list[tuple[int, int]] = []
    for chain in chains_within(source, range(source.n)):
        w = m_frame.bottom
        for t in range(len(chain) - 1):
            a, succ = chain[t], chain[t + 1]
            step = m_frame.meet(cl.nabla_index(succ), cl.delta_index(a))
            princ = principal_congruence(source, a, succ)
            if cl.index_of(LatticeCongruence(source, princ.class_of)) != step:
                raise TheoremViolation(
                    "closed-meet-open differs from the principal congruence "
                    f"at chain step ({a}, {succ})")
            w = m_frame.join(w, step)
        if not all(m_frame.le(m_frame.meet(cl.nabla_index(chain[t + 1]),
                                           cl.delta_index(chain[t])), w)
                   for t in range(len(chain) - 1)):
            raise TheoremViolation("chain generator does not contain its "
                                   "principal congruences")
        k_pairs.extend(open_congruence(m_frame, w).pairs())
    k_cong = congruence_closure(m_frame, k_pairs)
    ker = FrameCongruence(m_frame, g.hom.map)
    if not ker.is_diagonal():
        raise TheoremViolation("kernel of g is not the diagonal on a finite "
                               "carrier")
    return ker.refines(k_cong)
