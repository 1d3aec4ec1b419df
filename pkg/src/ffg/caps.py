"""Size caps for the exhaustive sweeps.

Every enumeration in the package is bounded by one of these caps so a bad
input degrades into a `SizeCap` error instead of an unbounded search.  The
defaults can be overridden at runtime through the ``FFG_SIZE_CAPS``
environment variable, which holds a JSON object whose keys are field names
of :class:`Caps`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "FFG_SIZE_CAPS"


@dataclass(frozen=True)
class Caps:
    # maximum number of elements a frame carrier may have
    frame_elements: int = 2**16
    # largest poset size `ffg enumerate --kind poset` will stream
    poset_enum_max: int = 6
    # largest point count for T0 space enumeration
    space_enum_max: int = 4
    # 2^|A| bound for the closed-form Fletcher cross-check
    fletcher_subsets: int = 2**12
    # candidate covering-downset bound for the completeness decider
    antichain_enum: int = 200_000
    # carrier bound for the exhaustive partition oracle (Bell numbers)
    congruence_oracle_elements: int = 8
    # largest join-irreducible poset canonicalised by permutation scan
    canonical_elements: int = 9

    def describe(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def caps_from_env(base: Caps | None = None) -> Caps:
    """Return `base` (default caps) with any ``FFG_SIZE_CAPS`` overrides."""
    caps = base or Caps()
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return caps
    overrides = json.loads(raw)
    known = {f.name for f in fields(Caps)}
    bad = set(overrides) - known
    if bad:
        raise ValueError(f"unknown cap names in {ENV_VAR}: {sorted(bad)}")
    return replace(caps, **overrides)


DEFAULT_CAPS = caps_from_env()
