"""Compiled kernels and their interpreted bodies must agree exactly."""
import itertools

import numpy as np
import pytest

from pdcenter import kernels

KERNEL_PATHS = ["compiled", "python"]


def pick(fn, path):
    return fn if path == "compiled" else fn.py_func


def brute_matching_size(adj, n_left, n_right):
    best = 0
    for k in range(n_left, 0, -1):
        for rows in itertools.combinations(range(n_left), k):
            for cols in itertools.permutations(range(n_right), k):
                if all(adj[r, c] for r, c in zip(rows, cols)):
                    return k
    return best


def csr(adj):
    indptr = np.concatenate([[0], np.cumsum(adj.sum(axis=1))]).astype(np.int64)
    return indptr, np.nonzero(adj)[1].astype(np.int64)


@pytest.mark.parametrize("path", KERNEL_PATHS)
def test_hopcroft_karp_against_enumeration(path, rng):
    hk = pick(kernels.hopcroft_karp, path)
    for _ in range(60):
        nl, nr = rng.integers(1, 5, 2)
        adj = rng.random((nl, nr)) < 0.4
        indptr, indices = csr(adj)
        ml, mr = np.full(nl, -1, np.int64), np.full(nr, -1, np.int64)
        size = hk(nl, nr, indptr, indices, ml, mr)
        assert size == brute_matching_size(adj, nl, nr)
        matched = ml[ml >= 0]
        assert len(set(matched.tolist())) == len(matched) == size
        for u, v in enumerate(ml):
            if v >= 0:
                assert adj[u, v] and mr[v] == u


@pytest.mark.parametrize("path", KERNEL_PATHS)
def test_hopcroft_karp_warm_start_keeps_size(path, rng):
    hk = pick(kernels.hopcroft_karp, path)
    adj = rng.random((30, 30)) < 0.1
    indptr, indices = csr(adj)
    ml, mr = np.full(30, -1, np.int64), np.full(30, -1, np.int64)
    first = hk(30, 30, indptr, indices, ml, mr)
    again = hk(30, 30, indptr, indices, ml, mr)
    assert again == first


@pytest.mark.parametrize("path", KERNEL_PATHS)
def test_hungarian_against_enumeration(path, rng):
    hu = pick(kernels.hungarian, path)
    for _ in range(80):
        n = int(rng.integers(1, 6))
        c = rng.integers(0, 5, (n, n)).astype(float) if rng.random() < 0.5 else rng.random((n, n))
        assign = hu(c)
        assert sorted(assign.tolist()) == list(range(n))
        best = min(sum(c[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n)))
        assert c[np.arange(n), assign].sum() == pytest.approx(best, abs=1e-12)


def test_hungarian_paths_agree_on_larger_input(rng):
    c = rng.random((40, 40))
    a, b = kernels.hungarian(c), kernels.hungarian.py_func(c)
    assert c[np.arange(40), a].sum() == pytest.approx(c[np.arange(40), b].sum(), abs=1e-12)


@pytest.mark.parametrize("path", KERNEL_PATHS)
def test_dinic_matches_bipartite_matching(path, rng):
    """Unit flow through source -> left -> right -> sink equals the matching size."""
    dinic = pick(kernels.dinic_unit, path)
    for _ in range(40):
        nl, nr = rng.integers(1, 6, 2)
        adj = rng.random((nl, nr)) < 0.35
        arcs = [(0, 1 + u) for u in range(nl)]
        arcs += [(1 + u, 1 + nl + v) for u, v in zip(*np.nonzero(adj))]
        arcs += [(1 + nl + v, 1 + nl + nr) for v in range(nr)]
        arcs = np.array(arcs, np.int64)
        value, flow = dinic(1 + nl + nr + 1, arcs[:, 0].copy(), arcs[:, 1].copy(), 0, 1 + nl + nr)
        assert value == brute_matching_size(adj, nl, nr)
        # conservation at every inner node
        bal = np.zeros(nl + nr + 2, np.int64)
        np.add.at(bal, arcs[:, 0], -flow)
        np.add.at(bal, arcs[:, 1], flow)
        assert np.all(bal[1:-1] == 0)
        assert bal[-1] == value


@pytest.mark.parametrize("path", KERNEL_PATHS)
def test_dinic_parallel_paths(path):
    dinic = pick(kernels.dinic_unit, path)
    # three disjoint two-arc paths plus a cross arc
    tails = np.array([0, 0, 0, 1, 2, 3, 1], np.int64)
    heads = np.array([1, 2, 3, 4, 4, 4, 2], np.int64)
    value, _ = dinic(5, tails, heads, 0, 4)
    assert value == 3


def test_env_flag_selects_the_python_path():
    import os
    import subprocess
    import sys

    code = (
        "import pdcenter, numpy as np\n"
        "from pdcenter.distances import bottleneck_distance\n"
        "assert not pdcenter.NUMBA_ENABLED\n"
        "print(bottleneck_distance([(0, 2), (1, 5)], [(0, 10)]))\n"
    )
    env = dict(os.environ, PDCENTER_DISABLE_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    from pdcenter.distances import bottleneck_distance

    assert float(r.stdout) == bottleneck_distance([(0, 2), (1, 5)], [(0, 10)])
