import numpy as np
from numba import njit

from ._common import UNREACHABLE

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)
_ZERO = np.uint64(0)


@njit(inline="always")
def _popcount(x):
    # all operands uint64: mixing in int64 literals would promote to float
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True, nogil=True)
def strict_step(pred, pred_new, sizes, src, dst, n):
    W = pred.shape[1]
    inserted = 0
    for a in range(src.shape[0]):
        u = src[a]
        v = dst[a]
        for w in range(W):
            x = pred[u, w] & ~pred[v, w] & ~pred_new[v, w]
            if x != _ZERO:
                pred_new[v, w] |= x
                inserted += _popcount(x)
    newly_complete = 0
    for a in range(dst.shape[0]):
        v = dst[a]
        added = 0
        for w in range(W):
            x = pred_new[v, w]
            if x != _ZERO:
                pred[v, w] |= x
                pred_new[v, w] = _ZERO
                added += _popcount(x)
        if added:
            sizes[v] += added
            if sizes[v] == n:
                newly_complete += 1
    return inserted, newly_complete


@njit(cache=True, nogil=True)
def static_closure(n, src, dst):
    e = src.shape[0]
    start = np.zeros(n + 1, np.int64)
    for a in range(e):
        start[src[a] + 1] += 1
    for i in range(n):
        start[i + 1] += start[i]
    fill = start[:n].copy()
    adj = np.empty(e, np.int64)
    for a in range(e):
        adj[fill[src[a]]] = dst[a]
        fill[src[a]] += 1

    mark = np.full(n, -1, np.int64)
    stack = np.empty(n, np.int64)
    cap = max(e, 16)
    out_src = np.empty(cap, np.int64)
    out_dst = np.empty(cap, np.int64)
    count = 0
    touches = 0
    for s in range(n):
        if start[s] == start[s + 1]:
            continue
        mark[s] = s
        top = 0
        stack[top] = s
        top += 1
        while top:
            top -= 1
            x = stack[top]
            for j in range(start[x], start[x + 1]):
                touches += 1
                y = adj[j]
                if mark[y] != s:
                    mark[y] = s
                    stack[top] = y
                    top += 1
                    if count == cap:
                        cap *= 2
                        grown_src = np.empty(cap, np.int64)
                        grown_dst = np.empty(cap, np.int64)
                        grown_src[:count] = out_src[:count]
                        grown_dst[:count] = out_dst[:count]
                        out_src = grown_src
                        out_dst = grown_dst
                    out_src[count] = s
                    out_dst[count] = y
                    count += 1
    return out_src[:count].copy(), out_dst[:count].copy(), touches


@njit(cache=True, nogil=True)
def _sweep(n, offsets, src, dst, source, strict, arrival, head, nxt, stack):
    arrival[:] = UNREACHABLE
    arrival[source] = 0
    reached = 1
    k = offsets.shape[0] - 1
    for t in range(1, k + 1):
        if reached == n:
            break
        lo = offsets[t - 1]
        hi = offsets[t]
        if strict:
            for a in range(lo, hi):
                if arrival[src[a]] < t and arrival[dst[a]] == UNREACHABLE:
                    arrival[dst[a]] = t
                    reached += 1
            continue
        top = 0
        for a in range(lo, hi):
            u = src[a]
            nxt[a - lo] = head[u]
            head[u] = a
            if arrival[u] <= t:
                stack[top] = u
                top += 1
        while top:
            top -= 1
            x = stack[top]
            a = head[x]
            while a != -1:
                y = dst[a]
                if arrival[y] == UNREACHABLE:
                    arrival[y] = t
                    reached += 1
                    stack[top] = y
                    top += 1
                a = nxt[a - lo]
        for a in range(lo, hi):
            head[src[a]] = -1
    return arrival


@njit(cache=True)
def _scratch(n, offsets):
    width = 0
    for t in range(offsets.shape[0] - 1):
        width = max(width, offsets[t + 1] - offsets[t])
    return np.full(n, -1, np.int64), np.empty(max(width, 1), np.int64), np.empty(width + n, np.int64)


@njit(cache=True, nogil=True)
def earliest_arrival(n, offsets, src, dst, source, strict):
    head, nxt, stack = _scratch(n, offsets)
    arrival = np.empty(n, np.int64)
    return _sweep(n, offsets, src, dst, source, strict, arrival, head, nxt, stack)


@njit(cache=True, nogil=True)
def baseline_reach(n, offsets, src, dst, strict):
    head, nxt, stack = _scratch(n, offsets)
    arrival = np.empty(n, np.int64)
    reach = np.zeros((n, n), np.bool_)
    for s in range(n):
        _sweep(n, offsets, src, dst, s, strict, arrival, head, nxt, stack)
        for v in range(n):
            reach[s, v] = arrival[v] != UNREACHABLE
    return reach
