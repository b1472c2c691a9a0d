"""Pure-Python versions of the parent-array tree kernels.

Trees are encoded by a parent array ``par`` (``-1`` at the root) and a color
array ``col``.  Nodes are addressed by integer index.
"""


def depth(par, v):
    d = 0
    v = par[v]
    while v >= 0:
        d += 1
        v = par[v]
    return d


def meet(par, a, b):
    da = depth(par, a)
    db = depth(par, b)
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


def outlier(par, p, q, r):
    """0, 1 or 2: which of p, q, r sits outside the deepest pairwise meet."""
    pq = meet(par, p, q)
    pr = meet(par, p, r)
    if pq == pr:
        return 0
    qr = meet(par, q, r)
    if pq == qr:
        return 1
    return 2


def check_extension(par, col, node, others, exp_col, exp_out, k):
    """Do pairs and triples through ``node`` match the expected tables?

    ``exp_col[t]`` is the meet color of ``(node, others[t])`` and
    ``exp_out[t * k + s]`` (``t < s``) the outlier code of
    ``(node, others[t], others[s])``.
    """
    for t in range(k):
        if col[meet(par, node, others[t])] != exp_col[t]:
            return False
    for t in range(k):
        ot = others[t]
        for s in range(t + 1, k):
            if outlier(par, node, ot, others[s]) != exp_out[t * k + s]:
                return False
    return True


def triples_allowed(par, col, node, leaves, m, eps, stride):
    """Every three-leaf restriction through ``node`` has ``eps[top * stride + low]`` set."""
    for t in range(m):
        u = leaves[t]
        if u == node:
            continue
        for s in range(t + 1, m):
            v = leaves[s]
            if v == node:
                continue
            nu = meet(par, node, u)
            nv = meet(par, node, v)
            if nu == nv:
                top, low = nu, meet(par, u, v)
            elif depth(par, nu) > depth(par, nv):
                top, low = nv, nu
            else:
                top, low = nu, nv
            if not eps[col[top] * stride + col[low]]:
                return False
    return True
