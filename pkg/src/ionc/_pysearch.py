"""Pure-Python search kernel (fallback for the compiled ``_csearch``).

Both kernels walk the same tree: free ordered pairs are decided in row-major
order, OUT before IN, so leaves come out in ascending adjacency-bitstring
order.  A node is kept only while

* the IN edges are acyclic,
* no forbidden latent-directed relation or causal connection already holds
  over the IN edges (these can only grow as edges are added), and
* every required directed relation and common-cause witness is still
  attainable over IN plus the undecided pairs.

The optimistic edge set also drops "dead" pairs (see ``_mark_dead``).  At a
leaf the two edge sets coincide, so the checks amount to exact projection
equality against every input.
"""
from __future__ import annotations

import time

from .graph import iter_bits

EXHAUSTED, CAPPED, TIMED_OUT = 0, 1, 2

CHECK_EVERY = 256


def _latent_dirs(adj, obs, lat):
    dl = {}
    for z in iter_bits(lat):
        seen = frontier = 1 << z
        acc = 0
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= adj[u]
            acc |= nxt & obs
            frontier = nxt & lat & ~seen
            seen |= frontier
        dl[z] = acc
    return dl


def _dir_from(adj, x, obs, lat, dl):
    d = adj[x] & obs
    for l in iter_bits(adj[x] & lat):
        d |= dl[l]
    return d


def lower_ok(prob, adj) -> bool:
    for t in prob.tables:
        obs, lat = t.obs, t.lat
        dl = _latent_dirs(adj, obs, lat)
        if t.absn_src:
            absn = t.absn
            for d in dl.values():
                for x in iter_bits(d & t.absn_src):
                    if absn[x] & d:
                        return False
        fdir = t.fdir
        for x in iter_bits(t.fdir_src):
            if _dir_from(adj, x, obs, lat, dl) & fdir[x]:
                return False
    return True


def upper_ok(prob, adj) -> bool:
    for t in prob.tables:
        if not (t.req_src or t.bid_src):
            continue
        obs, lat = t.obs, t.lat
        dl = _latent_dirs(adj, obs, lat)
        req = t.req
        for x in iter_bits(t.req_src):
            if _dir_from(adj, x, obs, lat, dl) & req[x] != req[x]:
                return False
        if t.bid_src:
            cc = {}
            for d in dl.values():
                for x in iter_bits(d & t.bid_src):
                    cc[x] = cc.get(x, 0) | d
            bid = t.bid
            for x in iter_bits(t.bid_src):
                if cc.get(x, 0) & bid[x] != bid[x]:
                    return False
    return True


def _reaches(adj, src, dst):
    seen = frontier = 1 << src
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        if nxt >> dst & 1:
            return True
        frontier = nxt & ~seen
        seen |= frontier
    return False


def _mark_dead(prob, k, rows, dead):
    """Extend ``dead`` with undecided pairs whose addition would close a cycle
    or break a lower-bound constraint.  Both conditions are monotone in the
    edge set, so a dead pair stays dead further down the tree."""
    suf = prob.suffix[k]
    dead = list(dead)
    rows = list(rows)
    for i in range(prob.n):
        for j in iter_bits(suf[i] & ~dead[i]):
            bit = 1 << j
            if _reaches(rows, j, i):
                dead[i] |= bit
                continue
            rows[i] |= bit
            if not lower_ok(prob, rows):
                dead[i] |= bit
            rows[i] &= ~bit
    return tuple(dead)


def _upper_with(prob, k, rows, dead):
    suf = prob.suffix[k]
    return upper_ok(prob, [r | (s & ~d) for r, s, d in zip(rows, suf, dead)])


def search(prob, start_k, start_rows, stop_k, cap, deadline, prune):
    """Depth-first enumeration of the subtree rooted at ``(start_k, start_rows)``.

    The root's IN edges are assumed to satisfy the lower-bound constraints.
    Returns ``(solutions, frontier, explored, flag)``; ``frontier`` holds the
    surviving nodes at depth ``stop_k`` when that is reached before a leaf.
    With ``prune`` off, every pair is branched on and constraints are only
    checked at leaves.
    """
    n = prob.n
    P = len(prob.pairs)
    pairs = prob.pairs
    sols = []
    frontier = []
    explored = 0
    flag = EXHAUSTED

    rows = tuple(start_rows)
    if prune:
        dead = _mark_dead(prob, start_k, rows, (0,) * n)
        if not _upper_with(prob, start_k, rows, dead):
            return sols, frontier, explored, flag
    else:
        dead = (0,) * n
        if start_k == P and not (lower_ok(prob, rows) and upper_ok(prob, rows)):
            return sols, frontier, explored, flag

    # every stacked node has already passed its checks
    stack = [(start_k, rows, dead)]
    while stack:
        k, rows, dead = stack.pop()
        explored += 1
        if deadline and explored % CHECK_EVERY == 0 and time.monotonic() > deadline:
            flag = TIMED_OUT
            break
        if k == P:
            sols.append(rows)
            if len(sols) >= cap:
                flag = CAPPED
                break
            continue
        if k == stop_k:
            frontier.append((k, rows))
            continue
        x, y = pairs[k]
        children = []
        if not prune:
            if not _reaches(rows, y, x):
                grown = rows[:x] + (rows[x] | 1 << y,) + rows[x + 1:]
                if k + 1 < P or (lower_ok(prob, grown) and upper_ok(prob, grown)):
                    children.append((k + 1, grown, dead))
            if k + 1 < P or (lower_ok(prob, rows) and upper_ok(prob, rows)):
                children.append((k + 1, rows, dead))
        elif dead[x] >> y & 1:
            # IN is impossible and OUT leaves the upper bound unchanged
            children.append((k + 1, rows, dead))
        else:
            grown = rows[:x] + (rows[x] | 1 << y,) + rows[x + 1:]
            gdead = _mark_dead(prob, k + 1, grown, dead)
            if _upper_with(prob, k + 1, grown, gdead):
                children.append((k + 1, grown, gdead))
            if _upper_with(prob, k + 1, rows, dead):
                children.append((k + 1, rows, dead))
        # IN is pushed first so OUT is explored first
        stack.extend(children)
    return sols, frontier, explored, flag
