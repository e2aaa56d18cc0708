"""Compiled depth-first search for coinciding pairs (C, D) with 0 in C.

Positions are scanned upward. Since 0 is in C and not in D, every x > 0
pairs with 0 on the C side, so once the elements below x are fixed,
[x in C] must equal R_D(x) - R_C(x) computed from the smaller elements.
Only membership in D needs branching.

Two cuts keep the tree small:

window  sums in (pos, 2 pos + 2] can only still gain from pairs (known
        element, future element <= M); each deficit must fit that count
        and the number of free slots.
moment  equal profiles force equal power sums sum(c^j) for small j (all j
        with 2^j != 2k below the first one that equals 2k); the remaining
        slots must be able to close the current difference.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# stats slots
NODES, WINDOW_CUTS, MOMENT_CUTS = 0, 1, 2


@njit(cache=True)
def _window_ok(pos, M, k, C, nC, D, nD, cC, cD):
    hi = min(2 * pos + 2, 2 * M)
    free_c = k - nC
    free_d = k - nD
    for n in range(pos + 1, hi + 1):
        diff = cD[n] - cC[n]
        if diff > 0:
            if diff > free_c:
                return False
            cnt = 0
            for i in range(nC):
                y = n - C[i]
                if y > pos and y <= M:
                    cnt += 1
            if diff > cnt:
                return False
        elif diff < 0:
            if -diff > free_d:
                return False
            cnt = 0
            for i in range(nD):
                y = n - D[i]
                if y > pos and y <= M:
                    cnt += 1
            if -diff > cnt:
                return False
    return True


@njit(cache=True)
def _moments_ok(pos, M, k, nC, nD, mC, mD, js, pref):
    a = k - nC
    b = k - nD
    if pos + a > M or pos + b > M:
        return False
    for t in range(js.shape[0]):
        j = js[t]
        lo_a = pref[j, pos + a] - pref[j, pos]
        hi_a = pref[j, M] - pref[j, M - a]
        lo_b = pref[j, pos + b] - pref[j, pos]
        hi_b = pref[j, M] - pref[j, M - b]
        delta = mD[t] - mC[t]
        if delta < lo_a - hi_b or delta > hi_a - lo_b:
            return False
    return True


@njit(cache=True)
def _feasible(pos, M, k, C, nC, D, nD, cC, cD, mC, mD, js, pref, stats):
    if not _window_ok(pos, M, k, C, nC, D, nD, cC, cD):
        stats[WINDOW_CUTS] += 1
        return False
    if not _moments_ok(pos, M, k, nC, nD, mC, mD, js, pref):
        stats[MOMENT_CUTS] += 1
        return False
    return True


@njit(cache=True)
def _tail_equal(lo, hi, cC, cD):
    for n in range(lo, hi + 1):
        if cC[n] != cD[n]:
            return False
    return True


@njit(cache=True)
def _record(k, C, D, out_C, out_D, found):
    if found < out_C.shape[0]:
        out_C[found, :k] = C[:k]
        out_D[found, :k] = D[:k]
    return found + 1


@njit(cache=True)
def _dfs(x, M, k, C, nC, D, nD, cC, cD, mC, mD, js, pref, fixed_upto, fixed, out_C, out_D, found, stats):
    stats[NODES] += 1
    nJ = js.shape[0]
    added = 0
    pos = x
    while True:
        if pos > M:
            if nC == k and nD == k and _tail_equal(M + 1, 2 * M, cC, cD):
                found = _record(k, C, D, out_C, out_D, found)
            break
        # forced C membership
        delta = cD[pos] - cC[pos]
        if delta == 1:
            if nC == k:
                break
            for i in range(nC):
                cC[C[i] + pos] += 1
            C[nC] = pos
            for t in range(nJ):
                mC[t] += pos ** js[t]
            nC += 1
            added += 1
        elif delta != 0:
            break
        if nD == k:
            if nC == k:
                if _tail_equal(pos + 1, 2 * M, cC, cD):
                    found = _record(k, C, D, out_C, out_D, found)
                break
            if not _moments_ok(pos, M, k, nC, nD, mC, mD, js, pref):
                stats[MOMENT_CUTS] += 1
                break
            pos += 1
            continue
        take = True
        skip = True
        if pos <= fixed_upto:
            take = fixed[pos]
            skip = not take
        if take:
            for i in range(nD):
                cD[D[i] + pos] += 1
            D[nD] = pos
            for t in range(nJ):
                mD[t] += pos ** js[t]
            nD += 1
            if _feasible(pos, M, k, C, nC, D, nD, cC, cD, mC, mD, js, pref, stats):
                found = _dfs(pos + 1, M, k, C, nC, D, nD, cC, cD, mC, mD, js, pref,
                             fixed_upto, fixed, out_C, out_D, found, stats)
            nD -= 1
            for t in range(nJ):
                mD[t] -= pos ** js[t]
            for i in range(nD):
                cD[D[i] + pos] -= 1
        if not skip:
            break
        if not _feasible(pos, M, k, C, nC, D, nD, cC, cD, mC, mD, js, pref, stats):
            break
        pos += 1
    # undo forced C additions
    for _ in range(added):
        nC -= 1
        y = C[nC]
        for t in range(nJ):
            mC[t] -= y ** js[t]
        for i in range(nC):
            cC[C[i] + y] -= 1
    return found


def moment_degrees(k: int, max_degree: int = 3) -> np.ndarray:
    out = []
    for j in range(1, max_degree + 1):
        if 2**j == 2 * k:
            break
        out.append(j)
    return np.array(out, dtype=np.int64)


def run_prefix(M: int, k: int, d_prefix=()) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All pairs of k-sets in [0, M] whose D starts with `d_prefix`.

    Returns (C rows, D rows, stats) with stats = [nodes, window cuts, moment cuts].
    """
    js = moment_degrees(k)
    top = int(js.max()) if js.size else 0
    pref = np.zeros((top + 1, M + 1), dtype=np.int64)
    ys = np.arange(M + 1, dtype=np.int64)
    for j in range(top + 1):
        pref[j] = np.cumsum(ys**j)
    fixed_upto = max(d_prefix) if d_prefix else 0
    fixed = np.zeros(M + 2, dtype=np.bool_)
    for d in d_prefix:
        fixed[d] = True
    cap = 1 << 12
    while True:
        out_C = np.zeros((cap, k), dtype=np.int64)
        out_D = np.zeros((cap, k), dtype=np.int64)
        C = np.zeros(k + 1, dtype=np.int64)
        D = np.zeros(k + 1, dtype=np.int64)
        cC = np.zeros(2 * M + 2, dtype=np.int64)
        cD = np.zeros(2 * M + 2, dtype=np.int64)
        mC = np.zeros(js.size, dtype=np.int64)
        mD = np.zeros(js.size, dtype=np.int64)
        stats = np.zeros(3, dtype=np.int64)
        found = _dfs(1, M, k, C, 1, D, 0, cC, cD, mC, mD, js, pref,
                     fixed_upto, fixed, out_C, out_D, 0, stats)
        if found <= cap:
            return out_C[:found], out_D[:found], stats
        cap = found
