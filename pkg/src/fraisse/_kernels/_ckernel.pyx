# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled parent-array tree kernels; same contract as ``_pykernel``."""


cdef inline int _depth(int[:] par, int v) noexcept nogil:
    cdef int d = 0
    v = par[v]
    while v >= 0:
        d += 1
        v = par[v]
    return d


cdef inline int _meet(int[:] par, int a, int b) noexcept nogil:
    cdef int da = _depth(par, a)
    cdef int db = _depth(par, b)
    while da > db:
        a = par[a]
        da -= 1
    while db > da:
        b = par[b]
        db -= 1
    while a != b:
        a = par[a]
        b = par[b]
    return a


cdef inline int _outlier(int[:] par, int p, int q, int r) noexcept nogil:
    cdef int pq = _meet(par, p, q)
    cdef int pr = _meet(par, p, r)
    if pq == pr:
        return 0
    if pq == _meet(par, q, r):
        return 1
    return 2


def depth(int[:] par, int v):
    return _depth(par, v)


def meet(int[:] par, int a, int b):
    return _meet(par, a, b)


def outlier(int[:] par, int p, int q, int r):
    return _outlier(par, p, q, r)


cdef bint _check_extension(int[:] par, int[:] col, int node, int[:] others,
                           int[:] exp_col, int[:] exp_out, int k) noexcept nogil:
    cdef int t, s, ot
    for t in range(k):
        if col[_meet(par, node, others[t])] != exp_col[t]:
            return False
    for t in range(k):
        ot = others[t]
        for s in range(t + 1, k):
            if _outlier(par, node, ot, others[s]) != exp_out[t * k + s]:
                return False
    return True


cdef bint _triples_allowed(int[:] par, int[:] col, int node, int[:] leaves, int m,
                           int[:] eps, int stride) noexcept nogil:
    cdef int t, s, u, v, nu, nv, top, low
    for t in range(m):
        u = leaves[t]
        if u == node:
            continue
        for s in range(t + 1, m):
            v = leaves[s]
            if v == node:
                continue
            nu = _meet(par, node, u)
            nv = _meet(par, node, v)
            if nu == nv:
                top = nu
                low = _meet(par, u, v)
            elif _depth(par, nu) > _depth(par, nv):
                top = nv
                low = nu
            else:
                top = nu
                low = nv
            if not eps[col[top] * stride + col[low]]:
                return False
    return True


def check_extension(int[:] par, int[:] col, int node, int[:] others,
                    int[:] exp_col, int[:] exp_out, int k):
    return _check_extension(par, col, node, others, exp_col, exp_out, k)


def triples_allowed(int[:] par, int[:] col, int node, int[:] leaves, int m,
                    int[:] eps, int stride):
    return _triples_allowed(par, col, node, leaves, m, eps, stride)
