"""Exception taxonomy.

Validation errors carry their witnessing data as attributes so suite
reports can serialise them.
"""

from __future__ import annotations


class FfgError(Exception):
    """Base class for all package errors."""


class SizeCap(FfgError):
    """An enumeration exceeded a configured cap."""

    def __init__(self, cap_name: str, cap_value: int, detail: str = "", partial=None):
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.partial = partial
        msg = f"size cap exceeded: {cap_name} = {cap_value}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


# ---- posets and lattices ---------------------------------------------------

class NotReflexive(FfgError):
    def __init__(self, i: int):
        self.witness = (i,)
        super().__init__(f"relation is not reflexive at element {i}")


class NotAntisymmetric(FfgError):
    def __init__(self, i: int, j: int):
        self.witness = (i, j)
        super().__init__(f"relation is not antisymmetric: {i} <= {j} and {j} <= {i}")


class NotTransitive(FfgError):
    def __init__(self, i: int, j: int, k: int):
        self.witness = (i, k)
        self.via = j
        super().__init__(f"relation is not transitive: {i} <= {j} <= {k} but not {i} <= {k}")


class NotALattice(FfgError):
    def __init__(self, reason: str, witness):
        self.witness = witness
        super().__init__(f"not a lattice: {reason} at {witness}")


class NotDistributive(FfgError):
    def __init__(self, triple):
        self.witness = triple
        super().__init__(f"not distributive: witness triple {triple}")


# ---- homomorphisms ---------------------------------------------------------

class MeetViolation(FfgError):
    def __init__(self, pair):
        self.witness = pair
        super().__init__(f"map does not preserve the meet of {pair}")


class JoinViolation(FfgError):
    def __init__(self, pair):
        self.witness = pair
        super().__init__(f"map does not preserve the join of {pair}")


# ---- biframes and spaces ---------------------------------------------------

class NotSubframe(FfgError):
    def __init__(self, part: int, detail: str = ""):
        self.part = part
        super().__init__(f"part {part} is not a subframe" + (f": {detail}" if detail else ""))


class NotGenerating(FfgError):
    def __init__(self):
        super().__init__("the two parts do not generate the total frame")


class NotATopology(FfgError):
    def __init__(self, detail: str):
        super().__init__(f"not a topology: {detail}")


class NotT0(FfgError):
    def __init__(self, x: int, y: int):
        self.witness = (x, y)
        super().__init__(f"points {x} and {y} have identical open neighbourhoods")


class NotStrictlyZeroDimensional(FfgError):
    def __init__(self, detail: str = ""):
        super().__init__("biframe is not strictly zero-dimensional"
                         + (f": {detail}" if detail else ""))


class NotCompletelyRegular(FfgError):
    def __init__(self, detail: str = ""):
        super().__init__("frame is not completely regular"
                         + (f": {detail}" if detail else ""))


class NotZeroDimensional(FfgError):
    def __init__(self, detail: str = ""):
        super().__init__("frame is not zero-dimensional"
                         + (f": {detail}" if detail else ""))


# ---- paircovers and quasi-uniformities --------------------------------------

class NotCovering(FfgError):
    def __init__(self, join_value):
        self.join_value = join_value
        super().__init__(f"pairs do not cover: total join is element {join_value}, not 1")


class NotFletcher(FfgError):
    def __init__(self, join_value):
        self.join_value = join_value
        super().__init__(f"subset is not a Fletcher cover: induced join is {join_value}")


class NotDirected(FfgError):
    def __init__(self, pair):
        self.witness = pair
        super().__init__(f"base is not refinement-directed at members {pair}")


class NoStrongRefinement(FfgError):
    def __init__(self, member):
        self.witness = member
        super().__init__(f"no strong base refinement below member {member}")


class NoStarRefinement(FfgError):
    def __init__(self, member):
        self.witness = member
        super().__init__(f"no star refinement below member {member}")


class NotAdmissible(FfgError):
    def __init__(self, part: int, x: int, join_value: int):
        self.witness = (part, x, join_value)
        super().__init__(
            f"not admissible: element {x} of part {part} is not the join of the "
            f"elements uniformly below it (join is {join_value})")


# ---- theorem machinery -----------------------------------------------------

class EquivalenceViolation(FfgError):
    """The four ultraparacompactness conditions disagree (theorem failure)."""

    def __init__(self, values):
        self.values = values
        super().__init__(f"ultraparacompactness equivalences disagree: {values}")


class TheoremViolation(FfgError):
    """A property the theory guarantees failed; indicates a real bug."""


# ---- workbench --------------------------------------------------------------

class UnknownSuite(FfgError):
    def __init__(self, name: str, known):
        super().__init__(f"unknown suite {name!r}; known: {', '.join(sorted(known))}")


class UnknownFormat(FfgError):
    def __init__(self, fmt: str):
        super().__init__(f"unknown export format {fmt!r}")
