# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled search kernel; walks exactly the same tree as ``_pysearch.search``.

Graphs are limited to 64 nodes (one machine word per adjacency row).
The depth-first walk runs without the GIL so subtrees can be searched from
several threads at once.
"""
import numpy as np

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, calloc, free
from libcpp.vector cimport vector
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

ctypedef uint64_t u64

cdef extern from *:
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

cdef enum:
    CHECK_EVERY = 256

cdef struct Ctx:
    int n
    int P
    int T
    int stop_k
    int prune
    int flag
    long long cap
    long long explored
    double deadline
    int *px
    int *py
    u64 *suffix
    u64 *obs
    u64 *lat
    u64 *fdir
    u64 *req
    u64 *bid
    u64 *absn
    u64 *fdir_src
    u64 *req_src
    u64 *bid_src
    u64 *absn_src
    u64 *dl
    u64 *cc
    u64 *upper
    u64 *work
    vector[u64] *sols
    vector[u64] *front


cdef inline double now() nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef inline void latent_dirs(const u64 *adj, u64 obs, u64 lat, u64 *dl) nogil:
    cdef u64 m = lat, seen, frontier, nxt, f, acc
    cdef int z
    while m:
        z = ctz64(m)
        m &= m - 1
        seen = (<u64>1) << z
        frontier = seen
        acc = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                nxt |= adj[ctz64(f)]
                f &= f - 1
            acc |= nxt & obs
            frontier = nxt & lat & ~seen
            seen |= frontier
        dl[z] = acc


cdef inline u64 dir_from(const u64 *adj, int x, u64 obs, u64 lat, const u64 *dl) nogil:
    cdef u64 d = adj[x] & obs
    cdef u64 l = adj[x] & lat
    while l:
        d |= dl[ctz64(l)]
        l &= l - 1
    return d


cdef int lower_ok(Ctx *c, const u64 *adj) nogil:
    cdef int t, x, n = c.n
    cdef u64 obs, lat, m, d, xs
    cdef u64 *dl = c.dl
    for t in range(c.T):
        obs = c.obs[t]
        lat = c.lat[t]
        latent_dirs(adj, obs, lat, dl)
        if c.absn_src[t]:
            m = lat
            while m:
                d = dl[ctz64(m)]
                m &= m - 1
                xs = d & c.absn_src[t]
                while xs:
                    x = ctz64(xs)
                    xs &= xs - 1
                    if c.absn[t * n + x] & d:
                        return 0
        xs = c.fdir_src[t]
        while xs:
            x = ctz64(xs)
            xs &= xs - 1
            if dir_from(adj, x, obs, lat, dl) & c.fdir[t * n + x]:
                return 0
    return 1


cdef int upper_ok(Ctx *c, const u64 *adj) nogil:
    cdef int t, x, i, n = c.n
    cdef u64 obs, lat, m, d, xs, r
    cdef u64 *dl = c.dl
    cdef u64 *cc = c.cc
    for t in range(c.T):
        if not (c.req_src[t] | c.bid_src[t]):
            continue
        obs = c.obs[t]
        lat = c.lat[t]
        latent_dirs(adj, obs, lat, dl)
        xs = c.req_src[t]
        while xs:
            x = ctz64(xs)
            xs &= xs - 1
            r = c.req[t * n + x]
            if dir_from(adj, x, obs, lat, dl) & r != r:
                return 0
        if c.bid_src[t]:
            for i in range(n):
                cc[i] = 0
            m = lat
            while m:
                d = dl[ctz64(m)]
                m &= m - 1
                xs = d & c.bid_src[t]
                while xs:
                    x = ctz64(xs)
                    xs &= xs - 1
                    cc[x] |= d
            xs = c.bid_src[t]
            while xs:
                x = ctz64(xs)
                xs &= xs - 1
                r = c.bid[t * n + x]
                if cc[x] & r != r:
                    return 0
    return 1


cdef inline int reaches(const u64 *adj, int src, int dst) nogil:
    cdef u64 seen = (<u64>1) << src, frontier = seen, nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= adj[ctz64(f)]
            f &= f - 1
        if (nxt >> dst) & 1:
            return 1
        frontier = nxt & ~seen
        seen |= frontier
    return 0


cdef int node_ok(Ctx *c, int k, const u64 *rows) nogil:
    # unpruned mode only: every check happens at the leaf
    if k == c.P:
        if not lower_ok(c, rows):
            return 0
        if not upper_ok(c, rows):
            return 0
    return 1


cdef int upper_with(Ctx *c, int k, const u64 *rows, const u64 *dead) nogil:
    cdef int i, n = c.n
    cdef const u64 *suf = c.suffix + k * n
    for i in range(n):
        c.upper[i] = rows[i] | (suf[i] & ~dead[i])
    return upper_ok(c, c.upper)


cdef void mark_dead(Ctx *c, int k, u64 *rows, u64 *dead) nogil:
    # an undecided pair is dead once adding it would close a cycle or break a
    # lower-bound constraint; both only get worse as edges are added
    cdef int i, j, n = c.n
    cdef const u64 *suf = c.suffix + k * n
    cdef u64 m, bit
    for i in range(n):
        m = suf[i] & ~dead[i]
        while m:
            j = ctz64(m)
            m &= m - 1
            bit = (<u64>1) << j
            if reaches(rows, j, i):
                dead[i] |= bit
                continue
            rows[i] |= bit
            if not lower_ok(c, rows):
                dead[i] |= bit
            rows[i] &= ~bit


cdef void dfs(Ctx *c, int k, u64 *rows, u64 *dead) nogil:
    # rows/dead point at this depth's slots in c.work; the next slots follow
    cdef int i, n = c.n, x, y
    cdef u64 *child
    cdef u64 *cdead
    c.explored += 1
    if c.deadline > 0 and c.explored % CHECK_EVERY == 0 and now() > c.deadline:
        c.flag = 2
    if c.flag:
        return
    if k == c.P:
        for i in range(n):
            c.sols.push_back(rows[i])
        if <long long>(c.sols.size() // n) >= c.cap:
            c.flag = 1
        return
    if k == c.stop_k:
        c.front.push_back(<u64>k)
        for i in range(n):
            c.front.push_back(rows[i])
        return
    x = c.px[k]
    y = c.py[k]
    child = dead + n
    cdead = child + n
    if not c.prune:
        for i in range(n):
            child[i] = rows[i]
        if node_ok(c, k + 1, child):
            dfs(c, k + 1, child, cdead)
        if c.flag:
            return
        if not reaches(rows, y, x):
            for i in range(n):
                child[i] = rows[i]
            child[x] |= (<u64>1) << y
            if node_ok(c, k + 1, child):
                dfs(c, k + 1, child, cdead)
        return
    for i in range(n):
        child[i] = rows[i]
        cdead[i] = dead[i]
    if (dead[x] >> y) & 1:
        # IN is impossible and the upper bound is unchanged by OUT
        dfs(c, k + 1, child, cdead)
        return
    if upper_with(c, k + 1, child, cdead):
        dfs(c, k + 1, child, cdead)
    if c.flag:
        return
    for i in range(n):
        child[i] = rows[i]
        cdead[i] = dead[i]
    child[x] |= (<u64>1) << y
    mark_dead(c, k + 1, child, cdead)
    if upper_with(c, k + 1, child, cdead):
        dfs(c, k + 1, child, cdead)


cdef u64 *_as_buf(values, Py_ssize_t size) except NULL:
    cdef u64 *buf = <u64 *>calloc(size if size > 0 else 1, sizeof(u64))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(size):
        buf[i] = <u64>values[i]
    return buf


def search(prob, int start_k, start_rows, int stop_k, long long cap, double deadline, bint prune):
    """See ``ionc._pysearch.search``; same arguments and return shape, except
    solutions come back as a ``(m, n)`` uint64 array."""
    cdef Ctx c
    cdef int n = prob.n, P = len(prob.pairs), T = len(prob.tables), i, t
    cdef vector[u64] sols, front
    cdef u64 *rows
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 nodes")
    c.n = n
    c.P = P
    c.T = T
    c.stop_k = stop_k
    c.prune = prune
    c.flag = 0
    c.cap = cap
    c.explored = 0
    c.deadline = deadline
    c.sols = &sols
    c.front = &front
    c.px = <int *>malloc((P + 1) * sizeof(int))
    c.py = <int *>malloc((P + 1) * sizeof(int))
    for i in range(P):
        c.px[i] = prob.pairs[i][0]
        c.py[i] = prob.pairs[i][1]
    c.suffix = _as_buf([r for s in prob.suffix for r in s], (P + 1) * n)
    tabs = prob.tables
    c.obs = _as_buf([tb.obs for tb in tabs], T)
    c.lat = _as_buf([tb.lat for tb in tabs], T)
    c.fdir = _as_buf([v for tb in tabs for v in tb.fdir], T * n)
    c.req = _as_buf([v for tb in tabs for v in tb.req], T * n)
    c.bid = _as_buf([v for tb in tabs for v in tb.bid], T * n)
    c.absn = _as_buf([v for tb in tabs for v in tb.absn], T * n)
    c.fdir_src = _as_buf([tb.fdir_src for tb in tabs], T)
    c.req_src = _as_buf([tb.req_src for tb in tabs], T)
    c.bid_src = _as_buf([tb.bid_src for tb in tabs], T)
    c.absn_src = _as_buf([tb.absn_src for tb in tabs], T)
    c.dl = <u64 *>calloc(64, sizeof(u64))
    c.cc = <u64 *>calloc(64, sizeof(u64))
    c.upper = <u64 *>calloc(64, sizeof(u64))
    c.work = <u64 *>calloc(2 * (P - start_k + 2) * n + 1, sizeof(u64))
    try:
        rows = c.work
        for i in range(n):
            rows[i] = <u64>start_rows[i]
        with nogil:
            if prune:
                # start_rows is assumed lower-consistent; dead starts empty
                mark_dead(&c, start_k, rows, rows + n)
                if upper_with(&c, start_k, rows, rows + n):
                    dfs(&c, start_k, rows, rows + n)
            else:
                if node_ok(&c, start_k, rows):
                    dfs(&c, start_k, rows, rows + n)
    finally:
        free(c.px); free(c.py); free(c.suffix)
        free(c.obs); free(c.lat); free(c.fdir); free(c.req); free(c.bid); free(c.absn)
        free(c.fdir_src); free(c.req_src); free(c.bid_src); free(c.absn_src)
        free(c.dl); free(c.cc); free(c.upper); free(c.work)

    m = sols.size() // n if n else 0
    out = np.empty((m, n), dtype=np.uint64)
    cdef u64[:, ::1] view = out
    cdef Py_ssize_t j, r
    for r in range(m):
        for j in range(n):
            view[r, j] = sols[r * n + j]
    frontier = []
    cdef Py_ssize_t stride = n + 1
    for r in range(front.size() // stride if stride else 0):
        frontier.append((int(front[r * stride]), tuple(int(front[r * stride + 1 + j]) for j in range(n))))
    return out, frontier, c.explored, c.flag
