"""Compiled inner loops for the greedy engine.

For a fixed first endpoint u, the potential drop of adding (u, v) splits over targets t:
an active pair (s, t) with value d and a = value(s, u) + 1 loses
    d          if a + y < beta
    d - a - y  if beta <= a + y < d
    0          otherwise
where y = value(v, t). Summed over s this is a piecewise linear function of y, built with two
difference arrays and then scattered to every v by its value y. One row costs about
(#contributing (s, t) pairs) + (#(v, t) pairs within range) instead of |A| per candidate.
"""
import numba
import numpy as np


@numba.njit(cache=True)
def build_index(D, R, beta, L):
    n = D.shape[0]
    # ancestors v of t bucketed by D[v, t] for D[v, t] <= L
    off = np.zeros((n, L + 2), np.int64)
    for v in range(n):
        for t in range(n):
            if R[v, t] and D[v, t] <= L:
                off[t, D[v, t] + 1] += 1
    base = 0
    for t in range(n):
        off[t, 0] += base
        for y in range(1, L + 2):
            off[t, y] += off[t, y - 1]
        base = off[t, L + 1]
    buck = np.empty(base, np.int32)
    pos = off[:, :L + 1].copy()
    for v in range(n):
        for t in range(n):
            if R[v, t] and D[v, t] <= L:
                y = D[v, t]
                buck[pos[t, y]] = v
                pos[t, y] += 1
    # active targets per source, by decreasing distance
    tcnt = np.zeros(n + 1, np.int64)
    for s in range(n):
        c = 0
        for t in range(n):
            if R[s, t] and D[s, t] >= beta:
                c += 1
        tcnt[s + 1] = tcnt[s] + c
    tgt = np.empty(tcnt[n], np.int32)
    hist = np.zeros(L + 2, np.int64)
    for s in range(n):
        hist[:] = 0
        for t in range(n):
            if R[s, t] and D[s, t] >= beta:
                hist[L - D[s, t] + 1] += 1
        for y in range(1, L + 2):
            hist[y] += hist[y - 1]
        for t in range(n):
            if R[s, t] and D[s, t] >= beta:
                k = L - D[s, t]
                tgt[tcnt[s] + hist[k]] = t
                hist[k] += 1
    return off, buck, tcnt, tgt


@numba.njit(cache=True)
def _add_pair(c0, c1, t, d, a, beta):
    hi = d - a - 1
    flat_hi = beta - a - 1
    if flat_hi > hi:
        flat_hi = hi
    if flat_hi >= 0:
        c0[t, 0] += d
        c0[t, flat_hi + 1] -= d
    lo = beta - a
    if lo < 0:
        lo = 0
    if lo <= hi:
        c0[t, lo] += d - a
        c0[t, hi + 1] -= d - a
        c1[t, lo] -= 1
        c1[t, hi + 1] += 1
    return hi


@numba.njit(cache=True)
def shortcut_row(D, R, beta, L, u, off, buck, tcnt, tgt, out, c0, c1, hmax, touched):
    n = D.shape[0]
    for v in range(n):
        out[v] = 0
    nt = 0
    for y in range(L - 1):
        a = y + 1
        for j in range(off[u, y], off[u, y + 1]):
            s = buck[j]
            for i in range(tcnt[s], tcnt[s + 1]):
                t = tgt[i]
                d = D[s, t]
                if d <= a:
                    break
                if not R[u, t]:
                    continue
                hi = d - a - 1
                if hmax[t] < 0:
                    touched[nt] = t
                    nt += 1
                if hi > hmax[t]:
                    hmax[t] = hi
                # inlined _add_pair; a call here costs ~3x in this loop
                flat_hi = beta - a - 1
                if flat_hi > hi:
                    flat_hi = hi
                if flat_hi >= 0:
                    c0[t, 0] += d
                    c0[t, flat_hi + 1] -= d
                lo = beta - a
                if lo < 0:
                    lo = 0
                if lo <= hi:
                    c0[t, lo] += d - a
                    c0[t, hi + 1] -= d - a
                    c1[t, lo] -= 1
                    c1[t, hi + 1] += 1
    for k in range(nt):
        t = touched[k]
        acc0 = 0
        acc1 = 0
        for y in range(hmax[t] + 1):
            acc0 += c0[t, y]
            acc1 += c1[t, y]
            val = acc0 + acc1 * y
            if val != 0:
                for j in range(off[t, y], off[t, y + 1]):
                    v = buck[j]
                    if R[u, v]:
                        out[v] += val
        for y in range(hmax[t] + 2):
            c0[t, y] = 0
            c1[t, y] = 0
        hmax[t] = -1
    return out


@numba.njit(cache=True)
def shortcut_best(D, R, beta, L, off, buck, tcnt, tgt):
    """Max-Δ edge, smallest (u, v) among ties; returns (-1, -1, 0) if nothing helps."""
    n = D.shape[0]
    out = np.zeros(n, np.int64)
    c0 = np.zeros((n, L + 2), np.int64)
    c1 = np.zeros((n, L + 2), np.int64)
    hmax = -np.ones(n, np.int64)
    touched = np.empty(n, np.int64)
    best = 0
    bu = -1
    bv = -1
    for u in range(n):
        shortcut_row(D, R, beta, L, u, off, buck, tcnt, tgt, out, c0, c1, hmax, touched)
        for v in range(n):
            if out[v] > best and D[u, v] >= 2:
                best = out[v]
                bu = u
                bv = v
    return bu, bv, best


@numba.njit(cache=True)
def hopset_row(W, Hp, R, beta, u, out, c0, c1, F):
    """Δ(u, v) for all v in hopset mode. Only pairs with u and v on a common shortest path count."""
    n = W.shape[0]
    for v in range(n):
        out[v] = 0
    for t in range(n):
        if t == u or not R[u, t]:
            continue
        hmax = -1
        for s in range(n):
            if s == t or not R[s, u] or not R[s, t]:
                continue
            d = Hp[s, t]
            if d < beta or W[s, u] + W[u, t] != W[s, t]:
                continue
            a = Hp[s, u] + 1
            if a >= d:
                continue
            if hmax < 0:
                for y in range(n + 2):
                    c0[0, y] = 0
                    c1[0, y] = 0
            hi = _add_pair(c0, c1, 0, d, a, beta)
            if hi > hmax:
                hmax = hi
        if hmax < 0:
            continue
        acc0 = 0
        acc1 = 0
        for y in range(hmax + 1):
            acc0 += c0[0, y]
            acc1 += c1[0, y]
            F[y] = acc0 + acc1 * y
        for v in range(n):
            if R[u, v] and R[v, t]:
                y = Hp[v, t]
                if y <= hmax and W[u, v] + W[v, t] == W[u, t]:
                    out[v] += F[y]
    return out


@numba.njit(cache=True)
def hopset_best(W, Hp, R, beta):
    n = W.shape[0]
    out = np.zeros(n, np.int64)
    c0 = np.zeros((1, n + 3), np.int64)
    c1 = np.zeros((1, n + 3), np.int64)
    F = np.zeros(n + 3, np.int64)
    best = 0
    bu = -1
    bv = -1
    for u in range(n):
        hopset_row(W, Hp, R, beta, u, out, c0, c1, F)
        for v in range(n):
            if out[v] > best and Hp[u, v] >= 2:
                best = out[v]
                bu = u
                bv = v
    return bu, bv, best


@numba.njit(cache=True)
def hopset_update(W, Hp, R, u, v):
    n = W.shape[0]
    for s in range(n):
        if not R[s, u]:
            continue
        for t in range(n):
            if not R[v, t]:
                continue
            if W[s, u] + W[u, v] + W[v, t] == W[s, t]:
                x = Hp[s, u] + 1 + Hp[v, t]
                if x < Hp[s, t]:
                    Hp[s, t] = x
