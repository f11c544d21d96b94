from collections import deque

import numpy as np

from ._common import UNREACHABLE


def strict_step(pred, pred_new, sizes, src, dst, n):
    if src.shape[0] == 0:
        return 0, 0
    # sources are read before any commit, so arc order cannot leak
    gathered = pred[src] & ~pred[dst]
    np.bitwise_or.at(pred_new, dst, gathered)
    touched = np.unique(dst)
    new = pred_new[touched]
    added = np.bitwise_count(new).sum(axis=1, dtype=np.int64)
    pred[touched] |= new
    pred_new[touched] = 0
    sizes[touched] += added
    newly_complete = np.count_nonzero((sizes[touched] == n) & (added > 0))
    return int(added.sum()), int(newly_complete)


def static_closure(n, src, dst):
    adj = [[] for _ in range(n)]
    for u, v in zip(src.tolist(), dst.tolist()):
        adj[u].append(v)
    out_src, out_dst = [], []
    touches = 0
    for s in range(n):
        if not adj[s]:
            continue
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                touches += 1
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    out_src.append(s)
                    out_dst.append(y)
    return np.asarray(out_src, np.int64), np.asarray(out_dst, np.int64), touches


def earliest_arrival(n, offsets, src, dst, source, strict):
    arrival = np.full(n, UNREACHABLE, np.int64)
    arrival[source] = 0
    for t in range(1, len(offsets)):
        lo, hi = offsets[t - 1], offsets[t]
        if lo == hi:
            continue
        s, d = src[lo:hi], dst[lo:hi]
        if strict:
            hit = (arrival[s] < t) & (arrival[d] == UNREACHABLE)
            arrival[d[hit]] = t
            continue
        while True:
            hit = (arrival[s] <= t) & (arrival[d] == UNREACHABLE)
            if not hit.any():
                break
            arrival[d[hit]] = t
    return arrival


def baseline_reach(n, offsets, src, dst, strict):
    reach = np.zeros((n, n), dtype=bool)
    for s in range(n):
        reach[s] = earliest_arrival(n, offsets, src, dst, s, strict) != UNREACHABLE
    return reach
