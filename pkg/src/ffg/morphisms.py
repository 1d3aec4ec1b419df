"""Frame homomorphisms, adjoints, quotients and subframes."""

from __future__ import annotations

from typing import Sequence

from .errors import JoinViolation, MeetViolation
from .order import FiniteFrame, lattice_from_tables


class FrameHom:
    """A map between finite frames preserving finite meets and all joins.

    On finite carriers preservation of all joins reduces to binary joins
    plus the empty join (0), and dually for meets; ``validate_hom`` checks
    exactly that.
    """

    __slots__ = ("dom", "cod", "map")

    def __init__(self, dom: FiniteFrame, cod: FiniteFrame, mapping: Sequence[int]):
        self.dom = dom
        self.cod = cod
        self.map = tuple(mapping)

    def __call__(self, a: int) -> int:
        return self.map[a]

    def compose(self, inner: "FrameHom") -> "FrameHom":
        """self after inner."""
        return FrameHom(inner.dom, self.cod, [self.map[x] for x in inner.map])

    def __eq__(self, other):
        return (isinstance(other, FrameHom) and self.dom == other.dom
                and self.cod == other.cod and self.map == other.map)

    def __hash__(self):
        return hash((self.dom, self.cod, self.map))

    def __repr__(self):
        return f"FrameHom({self.dom!r} -> {self.cod!r})"


def validate_hom(dom: FiniteFrame, cod: FiniteFrame, mapping: Sequence[int]) -> FrameHom:
    mapping = tuple(mapping)
    if len(mapping) != dom.n:
        raise ValueError("map must be total on the domain")
    if mapping[dom.bottom] != cod.bottom:
        raise JoinViolation(("0",))
    if mapping[dom.top] != cod.top:
        raise MeetViolation(("1",))
    for a in range(dom.n):
        for b in range(a, dom.n):
            if mapping[dom.meet(a, b)] != cod.meet(mapping[a], mapping[b]):
                raise MeetViolation((a, b))
            if mapping[dom.join(a, b)] != cod.join(mapping[a], mapping[b]):
                raise JoinViolation((a, b))
    return FrameHom(dom, cod, mapping)


def identity_hom(frame: FiniteFrame) -> FrameHom:
    return FrameHom(frame, frame, range(frame.n))


def right_adjoint(f: FrameHom) -> tuple[int, ...]:
    """The right adjoint f_* as a table: f_*(y) = \\/{x : f(x) <= y}."""
    out = []
    for y in range(f.cod.n):
        m = 0
        for x in range(f.dom.n):
            if f.cod.le(f.map[x], y):
                m |= f.dom.elements[x]
        out.append(f.dom.index[m])
    return tuple(out)


def is_dense(f: FrameHom) -> bool:
    return all(x == f.dom.bottom
               for x in range(f.dom.n) if f.map[x] == f.cod.bottom)


def is_surjective(f: FrameHom) -> bool:
    return len(set(f.map)) == f.cod.n


def is_injective(f: FrameHom) -> bool:
    return len(set(f.map)) == f.dom.n


def subframe_generated(frame: FiniteFrame, subset) -> tuple[int, ...]:
    """Smallest subset containing ``subset`` plus 0 and 1, closed under
    binary meet and join.  Finiteness makes this closure under all meets
    and joins."""
    closed = set(subset)
    closed.add(frame.bottom)
    closed.add(frame.top)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in closed:
                for c in (frame.meet(a, b), frame.join(a, b)):
                    if c not in closed:
                        new.append(c)
        for c in new:
            closed.add(c)
        frontier = new
    return tuple(sorted(closed))


def is_subframe(frame: FiniteFrame, subset) -> bool:
    s = set(subset)
    if frame.bottom not in s or frame.top not in s:
        return False
    return all(frame.meet(a, b) in s and frame.join(a, b) in s
               for a in s for b in s)


def subframe_as_frame(frame: FiniteFrame, subset) -> tuple[FiniteFrame, tuple[int, ...]]:
    """Present a subframe as its own canonical FiniteFrame.

    Returns ``(sub, embed)`` with ``embed[i]`` the element of ``frame``
    realising element ``i`` of ``sub``.
    """
    members = sorted(subset)
    pos = {m: i for i, m in enumerate(members)}
    k = len(members)
    meet = [[pos[frame.meet(members[i], members[j])] for j in range(k)] for i in range(k)]
    join = [[pos[frame.join(members[i], members[j])] for j in range(k)] for i in range(k)]
    sub, to_sub = lattice_from_tables(k, meet, join)
    embed = [0] * sub.n
    for i, m in enumerate(members):
        embed[to_sub[i]] = m
    return sub, tuple(embed)


def quotient_by_congruence(frame: FiniteFrame, theta) -> tuple[FiniteFrame, FrameHom]:
    """Quotient of ``frame`` by a frame congruence.

    Class representatives are the largest class members (classes are
    intervals), so the projection's right adjoint embeds representatives
    identically.  Returns the canonical quotient frame and the projection.
    """
    classes = theta.classes()
    reps = [frame.join_all(cls) for cls in classes]
    pos = {r: i for i, r in enumerate(reps)}
    k = len(reps)
    rep_of = [reps[theta.class_of[x]] for x in range(frame.n)]
    meet = [[pos[rep_of[frame.meet(reps[i], reps[j])]] for j in range(k)] for i in range(k)]
    join = [[pos[rep_of[frame.join(reps[i], reps[j])]] for j in range(k)] for i in range(k)]
    q, to_q = lattice_from_tables(k, meet, join)
    mapping = [to_q[pos[rep_of[x]]] for x in range(frame.n)]
    return q, FrameHom(frame, q, mapping)
