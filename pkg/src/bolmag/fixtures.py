"""Named structures: residue rings, zero rings, the Zorn ring and the groups of order at most 8."""

import itertools
import re

import numpy as np

from .magma import CayleyTable
from .ring import residue_ring, zero_ring, zorn_gf2


def cyclic(n):
    x = np.arange(n)
    return CayleyTable(np.add.outer(x, x) % n)


def abelian(moduli):
    from .kernels import ring_add_table
    return CayleyTable(ring_add_table(moduli))


def _perm_group(gens):
    """Closure of permutation generators, identity first, elements sorted by tuple."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    order = sorted(elems)
    index = {p: k for k, p in enumerate(order)}
    # x*y: apply x, then y
    table = [[index[tuple(y[i] for i in x)] for y in order] for x in order]
    return CayleyTable(table)


def dihedral(k):
    """Symmetries of a k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return _perm_group([rot, ref])


def quaternion():
    """Q8 as {+-1, +-i, +-j, +-k}, index = 2*unit + sign."""
    units = ["1", "i", "j", "k"]
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]
    index = {e: k for k, e in enumerate(elems)}
    table = np.empty((8, 8), np.int64)
    for (s1, u1), (s2, u2) in itertools.product(elems, repeat=2):
        s, u = prod[(u1, u2)]
        table[index[(s1, u1)], index[(s2, u2)]] = index[(s * s1 * s2, u)]
    return CayleyTable(table)


def small_groups():
    """One table per isomorphism class of groups of order 1..8."""
    return {
        "c1": cyclic(1), "c2": cyclic(2), "c3": cyclic(3), "c4": cyclic(4), "klein4": abelian([2, 2]),
        "c5": cyclic(5), "c6": cyclic(6), "s3": dihedral(3), "c7": cyclic(7), "c8": cyclic(8),
        "c4xc2": abelian([4, 2]), "c2xc2xc2": abelian([2, 2, 2]), "d4": dihedral(4), "q8": quaternion(),
    }


def fixture_names():
    return sorted(small_groups()) + ["z<n>", "zero-<m1>x<m2>...", "zorn_gf2"]


def build_fixture(name):
    """Structure for a fixture name; raises KeyError for unknown names."""
    groups = small_groups()
    if name in groups:
        return groups[name]
    if name == "zorn_gf2":
        return zorn_gf2()
    m = re.fullmatch(r"z(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return residue_ring(int(m.group(1)))
    m = re.fullmatch(r"zero-(\d+(?:x\d+)*)", name)
    if m:
        moduli = [int(v) for v in m.group(1).split("x")]
        if min(moduli) >= 1:
            return zero_ring(moduli)
    raise KeyError(name)
