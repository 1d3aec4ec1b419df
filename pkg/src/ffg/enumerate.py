"""Instance enumeration: posets up to isomorphism, finite T0 spaces up to
homeomorphism, and the frames they generate."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from . import _kernels
from .biframes import FiniteSpace
from .caps import DEFAULT_CAPS, Caps
from .errors import SizeCap
from .order import FiniteFrame, Poset, downset_frame

# unlabeled poset counts (OEIS A000112); finite T0 spaces match them
UNLABELED_POSET_COUNTS = (1, 1, 2, 5, 16, 63, 318)


def unpack_poset(packed: int, n: int) -> Poset:
    up = []
    for i in range(n):
        m = 1 << i
        for j in range(n):
            if (packed >> (i * n + j)) & 1:
                m |= 1 << j
        up.append(m)
    return Poset(up, _trusted=True)


def _canonical_keys_batch(packed: np.ndarray, n: int) -> np.ndarray:
    """Minimal packed relation over all relabelings, per input row."""
    if n == 0:
        return np.zeros(len(packed), np.uint64)
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    inv = np.argsort(perms, axis=1)
    shifts = np.arange(n * n, dtype=np.uint64)
    weights = np.uint64(1) << (
        (perms[:, :, None] * n + perms[:, None, :]).astype(np.uint64))
    out = np.empty(len(packed), np.uint64)
    chunk = max(1, 2_000_000 // max(1, len(perms) * n * n))
    for lo in range(0, len(packed), chunk):
        block = packed[lo:lo + chunk]
        mats = ((block[:, None] >> shifts) & np.uint64(1)).astype(bool)
        mats = mats.reshape(len(block), n, n)
        # relabelled[b, p] has entry (perm[i], perm[j]) set iff mats[b, i, j]
        keys = np.zeros((len(block), len(perms)), np.uint64)
        for i in range(n):
            for j in range(n):
                col = mats[:, i, j]
                keys[col] |= weights[None, :, i, j]
        out[lo:lo + chunk] = keys.min(axis=1)
    return out


def enumerate_posets(n: int, caps: Caps = DEFAULT_CAPS) -> list[Poset]:
    """One representative per isomorphism class, in deterministic
    (canonical-key) order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > caps.poset_enum_max:
        raise SizeCap("poset_enum_max", caps.poset_enum_max, f"n = {n}")
    packed = _kernels.labeled_posets(n)
    keys = _canonical_keys_batch(packed, n)
    reps: dict[int, int] = {}
    for p, k in zip(packed.tolist(), keys.tolist()):
        if k not in reps:
            reps[k] = p
    return [unpack_poset(reps[k], n) for k in sorted(reps)]


def enumerate_posets_upto(max_n: int, caps: Caps = DEFAULT_CAPS,
                          min_n: int = 1) -> list[Poset]:
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(enumerate_posets(n, caps))
    return out


def poset_counts_oracle(n: int) -> tuple[int, int]:
    """(labeled, unlabeled) poset counts from the independent raw-relation
    scan plus isomorphism collapse; n <= 5."""
    packed = _kernels.poset_oracle_scan(n)
    keys = _canonical_keys_batch(packed, n)
    return len(packed), len(set(keys.tolist()))


def frames_upto(max_poset: int, caps: Caps = DEFAULT_CAPS,
                min_n: int = 1) -> list[FiniteFrame]:
    """Downset frames of all posets with min_n..max_poset elements."""
    return [downset_frame(p, caps) for p in enumerate_posets_upto(max_poset, caps, min_n)]


# ---------------------------------------------------------------------------
# finite T0 spaces
# ---------------------------------------------------------------------------

def _space_canonical_key(n: int, opens: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(n)):
        relabeled = []
        for u in opens:
            m = 0
            for x in range(n):
                if (u >> x) & 1:
                    m |= 1 << perm[x]
            relabeled.append(m)
        cand = tuple(sorted(relabeled))
        if best is None or cand < best:
            best = cand
    return best


def enumerate_t0_spaces(n: int, caps: Caps = DEFAULT_CAPS) -> list[FiniteSpace]:
    """One representative per homeomorphism class of T0 topologies on n
    points, in deterministic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > caps.space_enum_max:
        raise SizeCap("space_enum_max", caps.space_enum_max, f"n = {n}")
    fams = _kernels.topology_scan(n)
    reps: dict[tuple[int, ...], tuple[int, ...]] = {}
    for fam in fams.tolist():
        opens = tuple(s for s in range(1 << n) if (fam >> s) & 1)
        # T0: distinct points have distinct open neighbourhood sets
        t0 = all(any(((u >> x) & 1) != ((u >> y) & 1) for u in opens)
                 for x in range(n) for y in range(x + 1, n))
        if not t0:
            continue
        key = _space_canonical_key(n, opens)
        if key not in reps:
            reps[key] = opens
    return [FiniteSpace(n, reps[k]) for k in sorted(reps)]


def spaces_upto(max_n: int, caps: Caps = DEFAULT_CAPS,
                min_n: int = 0) -> list[FiniteSpace]:
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(enumerate_t0_spaces(n, caps))
    return out
