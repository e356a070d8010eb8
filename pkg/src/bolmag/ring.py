"""Finite nonassociative rings as paired addition and multiplication tables."""

import numpy as np

from . import kernels
from .errors import (InvalidRing, NoUnity, NotAlternative, NotStronglyRightAlternative,
                     TheoremViolation)
from .magma import (CayleyTable, PropertyReport, check_flexible, check_identity, check_moufang,
                    check_right_bol, invertible_set, is_loop, jloop, _neutral_of)

_AUTO = object()


class FinRing:
    """A ring on ``0..n-1``; ``add[x, y] = x + y`` and ``mul[x, y] = x * y``.

    ``one`` is detected from the multiplication table unless declared.
    Construction only checks shapes and index ranges; use ``validate_ring``
    for the axioms.
    """

    __slots__ = ("add", "mul", "zero", "one", "_cache")

    def __init__(self, add, mul, zero=0, one=_AUTO):
        add = np.array(add, dtype=np.int64)
        mul = np.array(mul, dtype=np.int64)
        if add.shape != mul.shape or add.ndim != 2 or add.shape[0] != add.shape[1]:
            raise ValueError("add and mul must be square tables of the same order")
        n = add.shape[0]
        for name, tab in (("add", add), ("mul", mul)):
            if n == 0 or tab.min() < 0 or tab.max() >= n:
                raise ValueError(f"{name} table has entries outside 0..{n - 1}")
            tab.setflags(write=False)
        if not 0 <= zero < n:
            raise ValueError(f"zero {zero} outside 0..{n - 1}")
        found = _neutral_of(mul)
        if one is not _AUTO and one != found:
            raise ValueError(f"declared one {one} but the multiplicative neutral is {found}")
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "zero", int(zero))
        object.__setattr__(self, "one", found)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("FinRing is immutable")

    @property
    def order(self):
        return self.add.shape[0]

    @property
    def mul_table(self):
        return self.cached("mul-table", lambda: CayleyTable(self.mul))

    def neg(self, x):
        return int(np.flatnonzero(self.add[x] == self.zero)[0])

    def cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def __eq__(self, other):
        return (isinstance(other, FinRing) and self.zero == other.zero
                and np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return hash((self.zero, self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self):
        return f"FinRing(order={self.order}, zero={self.zero}, one={self.one})"


def _from_failure(name, res):
    if res is None:
        return PropertyReport(name, True)
    witness, lhs, rhs = res
    return PropertyReport(name, False, witness, lhs, rhs)


def validate_ring(r):
    def run():
        n, zero = r.order, r.zero
        ident = np.arange(n)
        reports = [
            _from_failure("additive-associative", kernels.first_failure(kernels.ASSOC, r.add)),
            _from_failure("additive-commutative", kernels.first_failure(kernels.COMM, r.add)),
        ]
        bad = np.flatnonzero((r.add[zero] != ident) | (r.add[:, zero] != ident))
        if bad.size:
            x = int(bad[0])
            reports.append(PropertyReport("additive-identity", False, (x,), int(r.add[zero, x]), x))
        else:
            reports.append(PropertyReport("additive-identity", True))
        bad = np.flatnonzero(~(r.add == zero).any(axis=1))
        reports.append(PropertyReport("additive-inverses", True) if not bad.size else
                       PropertyReport("additive-inverses", False, (int(bad[0]),),
                                      detail="no additive inverse"))
        reports.append(_from_failure("left-distributive",
                                     kernels.first_failure(kernels.LDIST, r.mul, r.add)))
        reports.append(_from_failure("right-distributive",
                                     kernels.first_failure(kernels.RDIST, r.mul, r.add)))
        bad = np.flatnonzero((r.mul[zero] != zero) | (r.mul[:, zero] != zero))
        if bad.size:
            x = int(bad[0])
            lhs = int(r.mul[zero, x]) if r.mul[zero, x] != zero else int(r.mul[x, zero])
            reports.append(PropertyReport("zero-annihilates", False, (x,), lhs, zero))
        else:
            reports.append(PropertyReport("zero-annihilates", True))
        if r.one is not None:
            # one is detected from mul, so this holds by construction; kept for the report
            reports.append(PropertyReport("unity", True))
        return reports

    return r.cached("validate", run)


def require_valid(r):
    reports = validate_ring(r)
    if not all(rep.holds for rep in reports):
        raise InvalidRing(reports)


def check_right_alternative(r):
    require_valid(r)
    return check_identity(r.mul_table, "right-alternative")


def check_left_alternative(r):
    require_valid(r)
    return check_identity(r.mul_table, "left-alternative")


def check_associative(r):
    require_valid(r)
    return check_identity(r.mul_table, "associative")


def check_strongly_right_alternative(r):
    for sub in (check_right_alternative(r), check_right_bol(r.mul_table)):
        if not sub.holds:
            return PropertyReport("strongly-right-alternative", False, sub.witness, sub.lhs, sub.rhs,
                                  detail=f"{sub.property} fails", sub=sub)
    return PropertyReport("strongly-right-alternative", True)


def is_alternative(r):
    return check_right_alternative(r).holds and check_left_alternative(r).holds


def circle_magma(r, verify=False):
    """x o y = x + y + x*y, with neutral element zero."""
    require_valid(r)

    def build():
        c = CayleyTable(r.add[r.add, r.mul])
        if c.neutral != r.zero:
            raise TheoremViolation(f"circle operation has neutral {c.neutral}, expected zero {r.zero}")
        return c

    c = r.cached("circle", build)
    if verify and check_strongly_right_alternative(r).holds and not check_right_bol(c).holds:
        raise TheoremViolation(f"circle magma of a strongly right alternative ring is not Bol: "
                               f"{check_right_bol(c)}")
    return c


def units(r):
    require_valid(r)
    if r.one is None:
        raise NoUnity(f"order-{r.order} ring has no unity")
    return invertible_set(r.mul_table)


def quasiregular_set(r):
    return invertible_set(circle_magma(r))


def _require_sra(r):
    rep = check_strongly_right_alternative(r)
    if not rep.holds:
        raise NotStronglyRightAlternative(f"{rep.detail} at {rep.witness}")


def unit_bol_loop(r):
    _require_sra(r)
    units(r)
    return jloop(r.mul_table, verify=True)


def quasiregular_bol_loop(r):
    _require_sra(r)
    return jloop(circle_magma(r, verify=True), verify=True)


def _tagged(prefix, rep):
    return PropertyReport(f"{prefix}:{rep.property}", rep.holds, rep.witness, rep.lhs, rep.rhs,
                          rep.detail, rep.sub)


def moufang_corollary_check(r):
    """Flexible Bol multiplication and circle magmas, Moufang unit and quasiregular loops."""
    if not is_alternative(r):
        raise NotAlternative("ring is not both right and left alternative")
    circ = circle_magma(r)
    reports = [
        _tagged("mul", check_flexible(r.mul_table)),
        _tagged("mul", check_right_bol(r.mul_table)),
        _tagged("circle", check_flexible(circ)),
        _tagged("circle", check_right_bol(circ)),
    ]
    if r.one is not None:
        ul = jloop(r.mul_table, verify=True)
        reports += [_tagged("unit-loop", is_loop(ul)), _tagged("unit-loop", check_moufang(ul))]
    ql = jloop(circ, verify=True)
    reports += [_tagged("quasiregular-loop", is_loop(ql)), _tagged("quasiregular-loop", check_moufang(ql))]
    return reports


# ---------------------------------------------------------------- fixtures


def residue_ring(n):
    """Integers mod n."""
    if n < 1:
        raise ValueError("residue_ring needs n >= 1")
    x = np.arange(n)
    return FinRing(np.add.outer(x, x) % n, np.multiply.outer(x, x) % n, zero=0)


def abelian_add_table(moduli):
    """Addition on Z_m1 x ... x Z_mk, first factor most significant in the index."""
    return kernels.ring_add_table(moduli)


def zero_ring(add):
    """All products zero over the given addition; ``add`` is a table or a list of cyclic factors."""
    add = np.asarray(add, dtype=np.int64)
    if add.ndim == 1:
        add = abelian_add_table(add)
    zero = _neutral_of(add)
    if zero is None:
        raise ValueError("addition table has no identity")
    return FinRing(add, np.full(add.shape, zero), zero=zero)


def ring_from_constants(moduli, consts):
    """Ring on Z_m1 x ... x Z_mk with e_i * e_j = consts[i*k + j], extended bilinearly."""
    moduli = [int(m) for m in moduli]
    allowed = kernels.allowed_constants(moduli)
    for q, c in enumerate(consts):
        if c not in allowed[q]:
            raise ValueError(f"constant {c} for generator pair {divmod(q, len(moduli))} is not "
                             f"annihilated by the gcd of the two orders")
    return FinRing(abelian_add_table(moduli), kernels.lower_constants(moduli, consts), zero=0)


def zorn_encode(a, u, v, d):
    """Index of the vector matrix ((a, u), (v, d)); u and v are bit triples, u[0] most significant."""
    ub = (u[0] << 2) | (u[1] << 1) | u[2]
    vb = (v[0] << 2) | (v[1] << 1) | v[2]
    return (a << 7) | (ub << 4) | (vb << 1) | d


def zorn_decode(index):
    a = (index >> 7) & 1
    ub = (index >> 4) & 7
    vb = (index >> 1) & 7
    d = index & 1
    return a, ((ub >> 2) & 1, (ub >> 1) & 1, ub & 1), ((vb >> 2) & 1, (vb >> 1) & 1, vb & 1), d


def zorn_gf2():
    """Zorn vector matrices over the 2-element field (split octonions), order 256.

    ((a, u), (v, d)) * ((a', u'), (v', d')) =
        ((a a' + u.v', a u' + d' u + v x v'), (a' v + d v' + u x u', d d' + v.u'))
    with all signs dropped since 1 = -1.
    """
    idx = np.arange(256)
    a = (idx >> 7) & 1
    d = idx & 1
    u = np.stack([(idx >> 6) & 1, (idx >> 5) & 1, (idx >> 4) & 1], axis=1)
    v = np.stack([(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1], axis=1)

    def outer(p, q):
        return p[:, None] * q[None, :]

    def dot(p, q):
        return np.einsum("xi,yi->xy", p, q)

    def cross(p, q):
        P = p[:, None, :]
        Q = q[None, :, :]
        return np.stack([P[..., 1] * Q[..., 2] - P[..., 2] * Q[..., 1],
                         P[..., 2] * Q[..., 0] - P[..., 0] * Q[..., 2],
                         P[..., 0] * Q[..., 1] - P[..., 1] * Q[..., 0]], axis=-1)

    na = (outer(a, a) + dot(u, v)) % 2
    nd = (outer(d, d) + dot(v, u)) % 2
    nu = (a[:, None, None] * u[None, :, :] + d[None, :, None] * u[:, None, :] + cross(v, v)) % 2
    nv = (a[None, :, None] * v[:, None, :] + d[:, None, None] * v[None, :, :] + cross(u, u)) % 2
    mul = (na << 7) | (nu[..., 0] << 6) | (nu[..., 1] << 5) | (nu[..., 2] << 4) \
        | (nv[..., 0] << 3) | (nv[..., 1] << 2) | (nv[..., 2] << 1) | nd
    add = idx[:, None] ^ idx[None, :]
    return FinRing(add, mul, zero=0)
