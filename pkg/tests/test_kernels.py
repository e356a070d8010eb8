import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bolmag import kernels as K
from bolmag._accel import JIT_ENABLED, use_backend

needs_numba = pytest.mark.skipif(not JIT_ENABLED, reason="numba disabled")


def brute_first_failure(code, m, a):
    """Plain nested loops in the documented (x, y, z) order."""
    n = len(m)
    zs = range(n) if K.ARITY[code] == 3 else [0]
    for x, y in itertools.product(range(n), repeat=2):
        for z in zs:
            lhs, rhs = K._sides(code, a, m, x, y, z)
            if lhs != rhs:
                return (x, y, z)[: K.ARITY[code]], int(lhs), int(rhs)
    return None


@st.composite
def tables(draw, max_order=5, neutral=False):
    n = draw(st.integers(1, max_order))
    cells = draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    t = np.array(cells, dtype=np.int64).reshape(n, n)
    if neutral:
        t[0, :] = np.arange(n)
        t[:, 0] = np.arange(n)
    return t


@settings(max_examples=150, deadline=None)
@given(tables(), st.sampled_from([K.BOL, K.ASSOC, K.FLEX, K.RALT, K.LALT, K.COMM]))
def test_first_failure_matches_brute_force(t, code):
    expected = brute_first_failure(code, t, t)
    with use_backend("numpy"):
        assert K.first_failure(code, t) == expected
    if JIT_ENABLED:
        with use_backend("numba"):
            assert K.first_failure(code, t) == expected


@settings(max_examples=60, deadline=None)
@given(tables(max_order=4), tables(max_order=4))
def test_distributivity_codes_match_brute_force(a, m):
    n = min(len(a), len(m))
    a, m = a[:n, :n] % n, m[:n, :n] % n
    for code in (K.LDIST, K.RDIST):
        expected = brute_first_failure(code, m, a)
        with use_backend("numpy"):
            assert K.first_failure(code, m, a) == expected
        if JIT_ENABLED:
            with use_backend("numba"):
                assert K.first_failure(code, m, a) == expected


def brute_canonical(t, e):
    n = len(t)
    others = [x for x in range(n) if x != e]
    best = None
    for perm in itertools.permutations(range(1, n)):
        pi = np.empty(n, np.int64)
        pi[e] = 0
        pi[others] = perm
        rel = np.empty_like(t)
        rel[np.ix_(pi, pi)] = pi[t]
        flat = tuple(rel.ravel())
        if best is None or flat < best:
            best = flat
    return np.array(best).reshape(n, n)


@settings(max_examples=80, deadline=None)
@given(tables(max_order=5, neutral=True))
def test_canonical_labeling_is_brute_force_minimum(t):
    expected = brute_canonical(t, 0)
    for name in ("numpy", "numba") if JIT_ENABLED else ("numpy",):
        with use_backend(name):
            best, pi = K.canonical_labeling(t, 0)
        assert np.array_equal(best, expected)
        rel = np.empty_like(t)
        rel[np.ix_(pi, pi)] = pi[t]
        assert np.array_equal(rel, best)


def test_cells_to_table_inverts_dfs_order():
    values = np.arange(9) % 4
    t = K.cells_to_table(4, values)
    assert t[0].tolist() == [0, 1, 2, 3]
    assert t[:, 0].tolist() == [0, 1, 2, 3]
    assert t[1:, 1:].ravel().tolist() == values.tolist()


def test_split_dfs_matches_unsplit():
    n = 4
    whole, found = K.magma_dfs(n, False, [], 9)
    pre, prefixes = K.magma_dfs(n, False, [], 2)
    total_nodes = int(pre[1])
    rows = []
    for p in prefixes:
        st_, f = K.magma_dfs(n, False, p, 9)
        total_nodes += int(st_[1])
        rows += [tuple(r) for r in f]
    assert total_nodes == whole[1]
    assert rows == [tuple(r) for r in found]


def test_dfs_buffer_growth():
    stats, out = K.magma_dfs(4, False, [], 9, cap=1)
    assert stats[0] == 195 and len(out) == 195


@needs_numba
def test_magma_batch_backends_agree(rng):
    n = 4
    tabs = np.empty((3000, n, n), np.int64)
    tabs[:, 0, :] = np.arange(n)
    tabs[:, :, 0] = np.arange(n)
    tabs[:, 1:, 1:] = rng.integers(0, n, size=(3000, n - 1, n - 1))
    # seed a few real hits
    _, found = K.magma_dfs(n, False, [], 9)
    tabs[:20] = [K.cells_to_table(n, r) for r in found[:20]]
    for loop, iso, target in itertools.product((False, True), (False, True), (0, 1)):
        with use_backend("numba"):
            a = K.magma_batch(tabs, loop, iso, target)
        with use_backend("numpy"):
            b = K.magma_batch(tabs, loop, iso, target)
        assert np.array_equal(a, b)


@needs_numba
@pytest.mark.parametrize("moduli", [[2], [4], [2, 2], [3]])
def test_ring_batch_backends_agree(moduli):
    allowed = K.allowed_constants(moduli)
    counts = [len(a) for a in allowed]
    values = np.zeros((len(allowed), max(counts)), np.int64)
    for q, a in enumerate(allowed):
        values[q, : len(a)] = a
    digits = np.array(list(itertools.product(*[range(c) for c in counts])), np.int64)
    for sra, target in itertools.product((False, True), (0, 1, 2, 3)):
        with use_backend("numba"):
            a = K.ring_batch(moduli, digits, values, sra, target)
        with use_backend("numpy"):
            b = K.ring_batch(moduli, digits, values, sra, target)
        assert np.array_equal(a, b)


def test_allowed_constants_respect_gcd():
    allowed = K.allowed_constants([2, 4])
    coords = K.group_coords([2, 4])
    # pair (0,1): gcd 2, so 2*c = 0 forces the Z4 coordinate into {0, 2}
    assert sorted(coords[allowed[1]][:, 1].tolist()) == [0, 0, 2, 2]
    assert len(allowed[3]) == 8


def test_fallback_path_without_numba():
    """The env flag swaps every kernel for its numpy/Python body."""
    code = (
        "from bolmag import _accel, kernels as K\n"
        "from bolmag.search import SearchSpec, enumerate_structures\n"
        "assert not _accel.JIT_ENABLED and _accel.backend() == 'numpy'\n"
        "assert not hasattr(K._magma_dfs, 'py_func')\n"
        "r = enumerate_structures(SearchSpec('bol-magma', 4, iso_reduce=True))\n"
        "print(r.emitted, r.explored)\n"
        "r = enumerate_structures(SearchSpec('sra-ring', additive_group=(2, 2)))\n"
        "print(r.emitted)\n"
    )
    env = dict(os.environ, BOLMAG_DISABLE_NUMBA="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=600)
    assert res.returncode == 0, res.stderr
    assert res.stdout.split() == ["42", "1540", "28"]
