"""Hot enumeration kernels.

The exhaustive sweeps spend almost all their time in four scans: labeled
poset generation, the raw-relation poset oracle, the topology family scan
and the partition (congruence) oracle.  Each kernel has a numba ``@njit``
implementation and a pure Python/numpy fallback with identical output,
selected once at import time by the ``FFG_NUMBA`` environment variable
(set it to ``0`` to force the fallback).  ``benchmarks/bench_kernels.py``
compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("FFG_NUMBA", "1").strip().lower()
_WANT_NUMBA = _FLAG not in ("0", "false", "off", "no")

if _WANT_NUMBA:
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USING_NUMBA = False
else:
    USING_NUMBA = False

if not USING_NUMBA:
    def njit(*args, **kwargs):  # no-op decorator for the fallback path
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


# How many labeled posets exist on n elements (OEIS A001035); used to size
# output buffers exactly.
LABELED_POSET_COUNTS = (1, 1, 3, 19, 219, 4231, 130023, 6129859)


def bell_number(n: int) -> int:
    """Partitions of an n-element set (Bell triangle)."""
    if n <= 1:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1]


# ---------------------------------------------------------------------------
# kernel 1: labeled poset enumeration (3 states per unordered pair)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _labeled_posets_jit(n, out):  # pragma: no cover - exercised via dispatch
    m = n * (n - 1) // 2
    pi = np.empty(m, np.int64)
    pj = np.empty(m, np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            pi[k] = i
            pj[k] = j
            k += 1
    state = np.zeros(m, np.int64)
    lt = np.zeros((n, n), np.bool_)
    count = 0
    while True:
        for i in range(n):
            for j in range(n):
                lt[i, j] = False
        for t in range(m):
            if state[t] == 1:
                lt[pi[t], pj[t]] = True
            elif state[t] == 2:
                lt[pj[t], pi[t]] = True
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(n):
                if lt[i, j]:
                    for k2 in range(n):
                        if lt[j, k2] and not lt[i, k2]:
                            ok = False
                            break
                if not ok:
                    break
        if ok:
            packed = np.uint64(0)
            for i in range(n):
                for j in range(n):
                    if lt[i, j]:
                        packed |= np.uint64(1) << np.uint64(i * n + j)
            out[count] = packed
            count += 1
        pos = m - 1
        while pos >= 0 and state[pos] == 2:
            state[pos] = 0
            pos -= 1
        if pos < 0:
            break
        state[pos] += 1
    return count


def _labeled_posets_py(n, out):
    m = n * (n - 1) // 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    state = [0] * m
    count = 0
    while True:
        lt = [[False] * n for _ in range(n)]
        for t in range(m):
            if state[t] == 1:
                lt[pairs[t][0]][pairs[t][1]] = True
            elif state[t] == 2:
                lt[pairs[t][1]][pairs[t][0]] = True
        ok = True
        for i in range(n):
            for j in range(n):
                if lt[i][j]:
                    row_j = lt[j]
                    row_i = lt[i]
                    for k2 in range(n):
                        if row_j[k2] and not row_i[k2]:
                            ok = False
                            break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            packed = 0
            for i in range(n):
                for j in range(n):
                    if lt[i][j]:
                        packed |= 1 << (i * n + j)
            out[count] = packed
            count += 1
        pos = m - 1
        while pos >= 0 and state[pos] == 2:
            state[pos] = 0
            pos -= 1
        if pos < 0:
            break
        state[pos] += 1
    return count


def labeled_posets(n: int, use_numba: bool | None = None) -> np.ndarray:
    """All strict orders on ``range(n)``, packed as uint64 bit matrices.

    Bit ``i*n + j`` is set iff ``i < j`` strictly.  n <= 7.
    """
    if n == 0:
        return np.zeros(1, np.uint64)
    if n * n > 64:
        raise ValueError("labeled_posets supports n <= 8")
    out = np.empty(LABELED_POSET_COUNTS[n], np.uint64)
    fast = USING_NUMBA if use_numba is None else (use_numba and USING_NUMBA)
    fn = _labeled_posets_jit if fast else _labeled_posets_py
    count = fn(n, out)
    return out[:count]


# ---------------------------------------------------------------------------
# kernel 2: raw-relation oracle scan (independent labeled enumeration)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _poset_oracle_jit(n, out):  # pragma: no cover - exercised via dispatch
    m = n * (n - 1)
    oi = np.empty(m, np.int64)
    oj = np.empty(m, np.int64)
    k = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                oi[k] = i
                oj[k] = j
                k += 1
    lt = np.zeros((n, n), np.bool_)
    count = 0
    for mask in range(1 << m):
        for i in range(n):
            for j in range(n):
                lt[i, j] = False
        for t in range(m):
            if (mask >> t) & 1:
                lt[oi[t], oj[t]] = True
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if lt[i, j] and lt[j, i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for i in range(n):
                if not ok:
                    break
                for j in range(n):
                    if lt[i, j]:
                        for k2 in range(n):
                            if lt[j, k2] and not lt[i, k2]:
                                ok = False
                                break
                    if not ok:
                        break
        if ok:
            packed = np.uint64(0)
            for i in range(n):
                for j in range(n):
                    if lt[i, j]:
                        packed |= np.uint64(1) << np.uint64(i * n + j)
            out[count] = packed
            count += 1
    return count


def _poset_oracle_py(n, out):
    m = n * (n - 1)
    opairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for mask in range(1 << m):
        lt = [[False] * n for _ in range(n)]
        for t in range(m):
            if (mask >> t) & 1:
                lt[opairs[t][0]][opairs[t][1]] = True
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if lt[i][j] and lt[j][i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for i in range(n):
                for j in range(n):
                    if lt[i][j]:
                        row_j = lt[j]
                        row_i = lt[i]
                        for k2 in range(n):
                            if row_j[k2] and not row_i[k2]:
                                ok = False
                                break
                    if not ok:
                        break
                if not ok:
                    break
        if ok:
            packed = 0
            for i in range(n):
                for j in range(n):
                    if lt[i][j]:
                        packed |= 1 << (i * n + j)
            out[count] = packed
            count += 1
    return count


def poset_oracle_scan(n: int, use_numba: bool | None = None) -> np.ndarray:
    """Labeled posets found by scanning all 2^(n(n-1)) raw strict relations.

    Independent of :func:`labeled_posets` (different generation); n <= 5.
    """
    if n == 0:
        return np.zeros(1, np.uint64)
    if n > 5:
        raise ValueError("poset_oracle_scan supports n <= 5")
    out = np.empty(LABELED_POSET_COUNTS[n], np.uint64)
    fast = USING_NUMBA if use_numba is None else (use_numba and USING_NUMBA)
    fn = _poset_oracle_jit if fast else _poset_oracle_py
    count = fn(n, out)
    return out[:count]


# ---------------------------------------------------------------------------
# kernel 3: topology family scan
# ---------------------------------------------------------------------------

@njit(cache=True)
def _topology_scan_jit(n, out):  # pragma: no cover - exercised via dispatch
    full = (1 << n) - 1
    nmid = (1 << n) - 2
    members = np.empty(1 << n, np.int64)
    count = 0
    for middle in range(1 << nmid):
        fam = np.uint32(1) | (np.uint32(middle) << np.uint32(1)) \
            | (np.uint32(1) << np.uint32(full))
        sz = 0
        for s in range(full + 1):
            if (fam >> np.uint32(s)) & np.uint32(1):
                members[sz] = s
                sz += 1
        ok = True
        for a in range(sz):
            if not ok:
                break
            for b in range(a + 1, sz):
                u = members[a] | members[b]
                w = members[a] & members[b]
                if not (fam >> np.uint32(u)) & np.uint32(1):
                    ok = False
                    break
                if not (fam >> np.uint32(w)) & np.uint32(1):
                    ok = False
                    break
        if ok:
            out[count] = fam
            count += 1
    return count


def _topology_scan_py(n, out):
    full = (1 << n) - 1
    nmid = (1 << n) - 2
    count = 0
    for middle in range(1 << nmid):
        fam = 1 | (middle << 1) | (1 << full)
        members = [s for s in range(full + 1) if (fam >> s) & 1]
        ok = True
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if not (fam >> (members[a] | members[b])) & 1:
                    ok = False
                    break
                if not (fam >> (members[a] & members[b])) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out[count] = fam
            count += 1
    return count


def topology_scan(n: int, use_numba: bool | None = None) -> np.ndarray:
    """All topologies on n points, each packed as a bitmask over subset ids.

    Subset id equals the subset's point bitmask; n <= 4 so a family fits
    in a uint32.
    """
    if n == 0:
        return np.array([1], np.uint32)  # the empty space: family {∅}
    if n > 4:
        raise ValueError("topology_scan supports n <= 4")
    out = np.empty(1 << ((1 << n) - 2), np.uint32)
    fast = USING_NUMBA if use_numba is None else (use_numba and USING_NUMBA)
    fn = _topology_scan_jit if fast else _topology_scan_py
    count = fn(n, out)
    return out[:count]


# ---------------------------------------------------------------------------
# kernel 4: partition oracle (congruence enumeration by brute force)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _partition_scan_jit(meet, join, out):  # pragma: no cover - via dispatch
    n = meet.shape[0]
    a = np.zeros(n, np.int8)
    count = 0
    while True:
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(i + 1, n):
                if a[i] == a[j]:
                    for c in range(n):
                        if a[meet[i, c]] != a[meet[j, c]]:
                            ok = False
                            break
                        if a[join[i, c]] != a[join[j, c]]:
                            ok = False
                            break
                    if not ok:
                        break
        if ok:
            for i in range(n):
                out[count, i] = a[i]
            count += 1
        # next restricted growth string: rightmost slot still below its bound
        pos = n - 1
        while pos > 0:
            mx = a[0]
            for t in range(1, pos):
                if a[t] > mx:
                    mx = a[t]
            if a[pos] <= mx:
                break
            pos -= 1
        if pos == 0:
            break
        a[pos] += 1
        for k in range(pos + 1, n):
            a[k] = 0
    return count


def _partition_scan_py(meet, join, out):
    n = meet.shape[0]
    a = [0] * n
    count = 0

    def bmax(k):
        return max(a[:k]) + 1

    while True:
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if a[i] == a[j]:
                    for c in range(n):
                        if a[meet[i][c]] != a[meet[j][c]] or a[join[i][c]] != a[join[j][c]]:
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                break
        if ok:
            for i in range(n):
                out[count, i] = a[i]
            count += 1
        pos = n - 1
        while pos > 0 and a[pos] == bmax(pos):
            pos -= 1
        if pos == 0:
            break
        a[pos] += 1
        for k in range(pos + 1, n):
            a[k] = 0
    return count


def partition_scan(meet: np.ndarray, join: np.ndarray,
                   use_numba: bool | None = None) -> np.ndarray:
    """Class arrays of all partitions compatible with the given meet/join
    tables (the exhaustive congruence oracle)."""
    n = meet.shape[0]
    if n == 0:
        return np.zeros((1, 0), np.int8)
    out = np.empty((bell_number(n), n), np.int8)
    meet = np.ascontiguousarray(meet, np.int64)
    join = np.ascontiguousarray(join, np.int64)
    fast = USING_NUMBA if use_numba is None else (use_numba and USING_NUMBA)
    fn = _partition_scan_jit if fast else _partition_scan_py
    count = fn(meet, join, out)
    return out[:count]
