"""Inner loops of the combinatorial engines.

Every function here takes and returns flat numpy arrays only, so the same body
runs compiled (numba) or interpreted (see ``_accel``).  Callers in
``matching`` own validation and the conversion from richer inputs.
"""
import numpy as np

from ._accel import njit


@njit
def hopcroft_karp(n_left, n_right, indptr, indices, match_l, match_r):
    """Grow ``match_l``/``match_r`` in place to a maximum matching.

    The graph is in CSR form: the neighbours of left vertex ``u`` are
    ``indices[indptr[u]:indptr[u + 1]]``.  Unmatched entries hold -1.  Any
    valid matching may be passed in as a warm start.  Returns the final size.
    """
    inf = n_left + n_right + 2
    dist = np.empty(n_left, np.int64)
    queue = np.empty(n_left, np.int64)
    stack = np.empty(n_left + 1, np.int64)
    it = np.empty(n_left, np.int64)

    size = 0
    for u in range(n_left):
        if match_l[u] != -1:
            size += 1

    while True:
        head = 0
        tail = 0
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = inf
        found = False
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = match_r[indices[k]]
                if w == -1:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if not found:
            break

        for u in range(n_left):
            it[u] = indptr[u]
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            top = 0
            stack[0] = root
            while top >= 0:
                u = stack[top]
                moved = False
                while it[u] < indptr[u + 1]:
                    v = indices[it[u]]
                    w = match_r[v]
                    if w == -1:
                        for k in range(top, -1, -1):
                            uu = stack[k]
                            vv = indices[it[uu]]
                            match_l[uu] = vv
                            match_r[vv] = uu
                        size += 1
                        top = -1
                        moved = True
                        break
                    if dist[w] == dist[u] + 1:
                        top += 1
                        stack[top] = w
                        moved = True
                        break
                    it[u] += 1
                if not moved:
                    # dead end: never revisit u in this phase
                    dist[u] = inf
                    top -= 1
                    if top >= 0:
                        it[stack[top]] += 1
    return size


@njit
def hungarian(cost):
    """Minimum-cost perfect assignment of a square float matrix.

    Shortest augmenting path with row/column potentials, O(n^3).  Returns
    ``assign`` with ``assign[row] = col``.
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, np.int64)
    way = np.zeros(n + 1, np.int64)
    minv = np.empty(n + 1)
    used = np.empty(n + 1, np.bool_)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv[:] = np.inf
        used[:] = False
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = np.inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = np.full(n, -1, np.int64)
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign


@njit
def dinic_unit(n_nodes, tails, heads, source, sink):
    """Maximum flow with unit capacity on every arc (Dinic).

    Returns ``(value, flow)`` where ``flow[k]`` is 1 when arc
    ``tails[k] -> heads[k]`` carries a unit.
    """
    n_arcs = tails.shape[0]
    n_edges = 2 * n_arcs
    deg = np.zeros(n_nodes + 1, np.int64)
    for k in range(n_arcs):
        deg[tails[k] + 1] += 1
        deg[heads[k] + 1] += 1
    start = np.cumsum(deg)
    fill = start[:-1].copy()
    adj = np.empty(n_edges, np.int64)
    to = np.empty(n_edges, np.int64)
    cap = np.zeros(n_edges, np.int64)
    for k in range(n_arcs):
        e = 2 * k
        to[e] = heads[k]
        to[e + 1] = tails[k]
        cap[e] = 1
        adj[fill[tails[k]]] = e
        fill[tails[k]] += 1
        adj[fill[heads[k]]] = e + 1
        fill[heads[k]] += 1

    level = np.empty(n_nodes, np.int64)
    queue = np.empty(n_nodes, np.int64)
    it = np.empty(n_nodes, np.int64)
    nodes = np.empty(n_nodes + 1, np.int64)
    edges = np.empty(n_nodes + 1, np.int64)
    value = 0
    while True:
        level[:] = -1
        level[source] = 0
        head = 0
        tail = 1
        queue[0] = source
        while head < tail:
            x = queue[head]
            head += 1
            for a in range(start[x], start[x + 1]):
                e = adj[a]
                y = to[e]
                if cap[e] > 0 and level[y] < 0:
                    level[y] = level[x] + 1
                    queue[tail] = y
                    tail += 1
        if level[sink] < 0:
            break
        for x in range(n_nodes):
            it[x] = start[x]
        while True:
            top = 0
            nodes[0] = source
            while nodes[top] != sink:
                x = nodes[top]
                moved = False
                while it[x] < start[x + 1]:
                    e = adj[it[x]]
                    y = to[e]
                    if cap[e] > 0 and level[y] == level[x] + 1:
                        edges[top] = e
                        top += 1
                        nodes[top] = y
                        moved = True
                        break
                    it[x] += 1
                if not moved:
                    if top == 0:
                        break
                    level[x] = -1
                    top -= 1
                    it[nodes[top]] += 1
            if nodes[top] != sink:
                break
            for k in range(top):
                e = edges[k]
                cap[e] -= 1
                cap[e ^ 1] += 1
            value += 1

    flow = np.empty(n_arcs, np.int64)
    for k in range(n_arcs):
        flow[k] = 1 - cap[2 * k]
    return value, flow
