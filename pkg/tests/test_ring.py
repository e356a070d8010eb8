import itertools

import numpy as np
import pytest

from bolmag import magma as mg
from bolmag import ring as rg
from bolmag.errors import InvalidRing, NotAlternative, NotStronglyRightAlternative, NoUnity
from bolmag.fixtures import cyclic
from bolmag.ring import FinRing, residue_ring, zero_ring, zorn_gf2

ZORN_UNITS = 120
ZORN_ASSOC_WITNESS = ((1, 2, 4), 64, 0)


@pytest.fixture(scope="module")
def zorn():
    return zorn_gf2()


def zorn_mul_tuple(p, q):
    """Vector-matrix product written out componentwise over GF(2)."""
    a, u, v, d = p
    a2, u2, v2, d2 = q

    def dot(x, y):
        return sum(i * j for i, j in zip(x, y)) % 2

    def cross(x, y):
        return ((x[1] * y[2] + x[2] * y[1]) % 2, (x[2] * y[0] + x[0] * y[2]) % 2, (x[0] * y[1] + x[1] * y[0]) % 2)

    na = (a * a2 + dot(u, v2)) % 2
    nu = tuple((a * u2[i] + d2 * u[i] + cross(v, v2)[i]) % 2 for i in range(3))
    nv = tuple((a2 * v[i] + d * v2[i] + cross(u, u2)[i]) % 2 for i in range(3))
    nd = (d * d2 + dot(v, u2)) % 2
    return na, nu, nv, nd


# --- validation ----------------------------------------------------------

def test_residue_rings_valid():
    for n in range(1, 13):
        r = residue_ring(n)
        assert all(rep.holds for rep in rg.validate_ring(r))
    r1 = residue_ring(1)
    assert r1.zero == r1.one == 0


def test_perturbed_multiplication_fails_distributivity():
    mul = np.multiply.outer(np.arange(4), np.arange(4)) % 4
    mul[2, 3] = 1
    r = FinRing(np.add.outer(np.arange(4), np.arange(4)) % 4, mul)
    reps = {rep.property: rep for rep in rg.validate_ring(r)}
    rep = reps["left-distributive"]
    assert not rep.holds
    x, y, z = rep.witness
    add = r.add
    assert mul[x, add[y, z]] == rep.lhs != rep.rhs == add[mul[x, y], mul[x, z]]
    with pytest.raises(InvalidRing):
        rg.check_right_alternative(r)


def test_zero_ring():
    r = zero_ring(np.add.outer(np.arange(3), np.arange(3)) % 3)
    assert (r.mul == 0).all() and r.one is None
    assert all(rep.holds for rep in rg.validate_ring(r))
    assert zero_ring([2, 2]).order == 4


def test_ring_from_constants_rejects_bad_constants():
    with pytest.raises(ValueError):
        rg.ring_from_constants([2, 4], [0, 1, 0, 0])


def test_alternative_laws_on_residue_rings():
    for n in (2, 6, 12):
        r = residue_ring(n)
        assert rg.check_right_alternative(r).holds and rg.check_left_alternative(r).holds
        assert rg.check_strongly_right_alternative(r).holds


def test_right_alternative_failures_recheck():
    fails = 0
    for consts in itertools.product(range(4), repeat=4):
        r = rg.ring_from_constants([2, 2], consts)
        for check, name in ((rg.check_right_alternative, "right-alternative"),
                            (rg.check_left_alternative, "left-alternative")):
            rep = check(r)
            if not rep.holds:
                fails += 1
                lhs, rhs = mg.evaluate_identity(name, r.mul, rep.witness)
                assert (lhs, rhs) == (rep.lhs, rep.rhs) and lhs != rhs
    assert fails > 0


def test_sra_embeds_failing_sub_report():
    seen = set()
    for consts in itertools.product(range(4), repeat=4):
        r = rg.ring_from_constants([2, 2], consts)
        rep = rg.check_strongly_right_alternative(r)
        if not rep.holds:
            seen.add(rep.sub.property)
            assert rep.witness == rep.sub.witness
    assert "right-alternative" in seen


# --- units and circle ----------------------------------------------------

def test_units_examples():
    assert rg.units(residue_ring(6)).members == (1, 5)
    assert rg.units(residue_ring(4)).members == (1, 3)
    with pytest.raises(NoUnity):
        rg.units(zero_ring([3]))


def test_circle_magma():
    r = residue_ring(4)
    c = rg.circle_magma(r)
    assert c.neutral == 0
    assert c.mul(2, 2) == 0
    for x, y in itertools.product(range(4), repeat=2):
        assert c.mul(x, y) == (x + y + x * y) % 4
    z = zero_ring([2, 3])
    assert np.array_equal(rg.circle_magma(z).table, z.add)


def test_quasiregular_examples():
    s = rg.quasiregular_set(residue_ring(4))
    assert s.members == (0, 2) and s.inv == {0: 0, 2: 2}
    z = zero_ring([5])
    s = rg.quasiregular_set(z)
    assert s.members == tuple(range(5))
    assert all(s.inv[x] == (-x) % 5 for x in range(5))


def test_quasiregular_matches_shifted_units():
    for n in range(1, 13):
        r = residue_ring(n)
        q = rg.quasiregular_set(r)
        u = rg.units(r)
        expected = tuple(x for x in range(n) if (1 + x) % n in u)
        assert q.members == expected
        for x in q.members:
            assert q.inv[x] == (u.inv[(1 + x) % n] - 1) % n


def test_loops_of_residue_rings():
    assert rg.unit_bol_loop(residue_ring(6)) == cyclic(2)
    assert rg.quasiregular_bol_loop(residue_ring(4)) == cyclic(2)


def test_non_sra_rings_refused():
    r = next(rg.ring_from_constants([2, 2], c) for c in itertools.product(range(4), repeat=4)
             if not rg.check_right_alternative(rg.ring_from_constants([2, 2], c)).holds)
    with pytest.raises(NotStronglyRightAlternative):
        rg.quasiregular_bol_loop(r)
    with pytest.raises(NotAlternative):
        rg.moufang_corollary_check(r)


def test_moufang_corollary_on_small_rings():
    for n in range(1, 13):
        assert all(rep.holds for rep in rg.moufang_corollary_check(residue_ring(n)))
    reps = rg.moufang_corollary_check(zero_ring([2, 2]))
    assert all(rep.holds for rep in reps)
    assert not any(rep.property.startswith("unit-loop") for rep in reps)


# --- Zorn ----------------------------------------------------------------

def test_zorn_encoding_roundtrip():
    for i in range(256):
        a, u, v, d = rg.zorn_decode(i)
        assert rg.zorn_encode(a, u, v, d) == i
    assert rg.zorn_encode(1, (0, 0, 0), (0, 0, 0), 1) == 129


def test_zorn_table_matches_componentwise_product(zorn, rng):
    pairs = rng.integers(0, 256, (2000, 2))
    for x, y in pairs:
        p, q = rg.zorn_decode(int(x)), rg.zorn_decode(int(y))
        assert zorn.mul[x, y] == rg.zorn_encode(*zorn_mul_tuple(p, q))


def test_zorn_fixture(zorn):
    assert zorn.order == 256 and zorn.one == 129
    assert all(rep.holds for rep in rg.validate_ring(zorn))
    assert rg.check_right_alternative(zorn).holds
    assert rg.check_left_alternative(zorn).holds
    rep = rg.check_associative(zorn)
    assert not rep.holds
    assert (rep.witness, rep.lhs, rep.rhs) == ZORN_ASSOC_WITNESS


def test_zorn_unit_count_matches_norm(zorn):
    # a matrix is invertible iff its norm a d - u.v is nonzero
    norm_one = 0
    for i in range(256):
        a, u, v, d = rg.zorn_decode(i)
        norm_one += (a * d + sum(p * q for p, q in zip(u, v))) % 2
    assert norm_one == ZORN_UNITS
    assert len(rg.units(zorn)) == ZORN_UNITS
