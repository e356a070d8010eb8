"""Finite magmas as Cayley tables.

Elements are the integers ``0..n-1``.  Translations act on the right and are
composed in application order: ``compose(R(y), R(z), R(y))`` sends ``x`` to
``((x*y)*z)*y``.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .errors import NoNeutral, NonUniqueInverse, NotBol, NotClosed, NotInvertible, TheoremViolation

_AUTO = object()


def _neutral_of(table):
    n = table.shape[0]
    ident = np.arange(n)
    rows_ok = (table == ident[None, :]).all(axis=1)
    cols_ok = (table == ident[:, None]).all(axis=0)
    hits = np.flatnonzero(rows_ok & cols_ok)
    return int(hits[0]) if hits.size else None


class CayleyTable:
    """An order-n magma; ``table[x, y]`` is the product ``x*y``.

    The neutral element is detected from the table (two-sided neutrals are
    unique); passing ``neutral`` only asserts what the table already says.
    Instances are immutable and hashable.
    """

    __slots__ = ("table", "neutral", "_cache")

    def __init__(self, table, neutral=_AUTO):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise ValueError(f"entry at row {bad[0]}, column {bad[1]} is outside 0..{n - 1}")
        arr.setflags(write=False)
        found = _neutral_of(arr)
        if neutral is not _AUTO and neutral != found:
            raise ValueError(f"declared neutral {neutral} but the table's neutral is {found}")
        object.__setattr__(self, "table", arr)
        object.__setattr__(self, "neutral", found)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("CayleyTable is immutable")

    @property
    def order(self):
        return self.table.shape[0]

    def mul(self, x, y):
        return int(self.table[x, y])

    def rows(self):
        return self.table.tolist()

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"CayleyTable(order={self.order}, neutral={self.neutral})"

    def cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]


@dataclass(frozen=True, eq=False)
class Translation:
    images: np.ndarray

    def __post_init__(self):
        arr = np.array(self.images, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "images", arr)

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    def __len__(self):
        return len(self.images)

    def __call__(self, x):
        return int(self.images[x])

    def is_bijective(self):
        return np.array_equal(np.sort(self.images), np.arange(len(self.images)))

    def then(self, other):
        """Apply ``self`` first, then ``other``."""
        return Translation(other.images[self.images])

    def __eq__(self, other):
        return isinstance(other, Translation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"Translation({self.images.tolist()})"


def compose(*maps):
    """Composite of translations, leftmost applied first."""
    if not maps:
        raise ValueError("compose needs at least one map")
    images = maps[0].images
    for m in maps[1:]:
        images = m.images[images]
    return Translation(images)


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of a check.

    ``witness`` is the lexicographically least failing tuple; ``lhs`` and
    ``rhs`` are the two sides evaluated there.  ``sub`` carries the failing
    sub-report of a compound check.
    """

    property: str
    holds: bool
    witness: Optional[tuple] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    detail: str = ""
    sub: Optional["PropertyReport"] = None

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError(f"failing report {self.property!r} needs a witness")

    def __bool__(self):
        return self.holds

    def to_record(self):
        rec = {
            "property": self.property,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }
        if self.detail:
            rec["detail"] = self.detail
        if self.sub is not None:
            rec["sub"] = self.sub.to_record()
        return rec


@dataclass(frozen=True)
class InvertibleSet:
    members: tuple
    inv: dict = field(hash=False)
    # False when some member had several two-sided inverses (only possible off Bol)
    unique: bool = True

    def __contains__(self, x):
        return x in self.inv

    def __len__(self):
        return len(self.members)


IDENTITY_CODES = {
    "right-bol": kernels.BOL,
    "associative": kernels.ASSOC,
    "flexible": kernels.FLEX,
    "right-alternative": kernels.RALT,
    "left-alternative": kernels.LALT,
    "commutative": kernels.COMM,
}


def _as_array(t):
    return t.table if isinstance(t, CayleyTable) else np.asarray(t, dtype=np.int64)


def evaluate_identity(name, t, witness):
    """Both sides of a named single-table identity at ``witness``."""
    code = IDENTITY_CODES[name]
    m = _as_array(t)
    x, y = witness[0], witness[1]
    z = witness[2] if len(witness) > 2 else 0
    lhs, rhs = kernels._sides(code, m, m, x, y, z)
    return int(lhs), int(rhs)


def check_identity(t, name):
    def run():
        res = kernels.first_failure(IDENTITY_CODES[name], _as_array(t))
        if res is None:
            return PropertyReport(name, True)
        witness, lhs, rhs = res
        return PropertyReport(name, False, witness, lhs, rhs)

    if isinstance(t, CayleyTable):
        return t.cached(name, run)
    return run()


def find_neutral(t):
    return t.neutral if isinstance(t, CayleyTable) else _neutral_of(_as_array(t))


def check_right_bol(t):
    return check_identity(t, "right-bol")


def check_flexible(t):
    return check_identity(t, "flexible")


def check_associative(t):
    return check_identity(t, "associative")


def check_moufang(t):
    """Right Bol and flexible, as one report."""
    for sub in (check_right_bol(t), check_flexible(t)):
        if not sub.holds:
            return PropertyReport("moufang", False, sub.witness, sub.lhs, sub.rhs,
                                  detail=f"{sub.property} fails", sub=sub)
    return PropertyReport("moufang", True)


def right_translation(t, a):
    return Translation(t.table[:, a])


def left_translation(t, a):
    return Translation(t.table[a, :])


def is_loop(t):
    if t.neutral is None:
        return PropertyReport("loop", False, (), detail="no neutral element")
    ident = np.arange(t.order)
    for label, maps in (("R", t.table.T), ("L", t.table)):
        ok = (np.sort(maps, axis=1) == ident).all(axis=1)
        if not ok.all():
            a = int(np.flatnonzero(~ok)[0])
            return PropertyReport("loop", False, (a,), detail=f"{label}({a}) is not a bijection")
    return PropertyReport("loop", True)


def _require_neutral(t):
    if t.neutral is None:
        raise NoNeutral(f"order-{t.order} table has no neutral element")
    return t.neutral


def _require_bol(t):
    e = _require_neutral(t)
    rep = check_right_bol(t)
    if not rep.holds:
        raise NotBol(f"right Bol identity fails at {rep.witness}")
    return e


def power(t, a, k):
    """Left-normed power: a^0 = neutral, a^k = a^(k-1) * a."""
    if k < 0:
        raise ValueError("power needs k >= 0")
    if k == 0:
        return _require_neutral(t)
    p = a
    for _ in range(k - 1):
        p = int(t.table[p, a])
    return p


def invertible_set(t):
    e = _require_neutral(t)

    def scan():
        m = t.table
        both = (m == e) & (m.T == e)
        members = tuple(int(a) for a in np.flatnonzero(both.any(axis=1)))
        counts = both.sum(axis=1)
        unique = bool((counts <= 1).all())
        if not unique and check_right_bol(t).holds:
            a = int(np.flatnonzero(counts > 1)[0])
            raise NonUniqueInverse(a, np.flatnonzero(both[a]).tolist())
        inv = {a: int(np.argmax(both[a])) for a in members}
        return InvertibleSet(members, inv, unique)

    return t.cached("invertible-set", scan)


def closure_defect(t, s=None):
    """Least pair (a, b) of invertible elements whose product is not invertible."""
    s = invertible_set(t) if s is None else s
    if not s.members:
        return None
    mem = np.array(s.members)
    inside = np.zeros(t.order, bool)
    inside[mem] = True
    prods = t.table[np.ix_(mem, mem)]
    bad = np.argwhere(~inside[prods])
    if not bad.size:
        return None
    i, j = bad[0]
    return int(mem[i]), int(mem[j])


def restrict(t, members):
    """Sub-table on ``members`` (sorted), re-indexed by position."""
    mem = np.array(sorted(members), dtype=np.int64)
    pos = np.full(t.order, -1, np.int64)
    pos[mem] = np.arange(len(mem))
    sub = pos[t.table[np.ix_(mem, mem)]]
    if (sub < 0).any():
        raise ValueError("members are not closed under the operation")
    return CayleyTable(sub)


def jloop(t, verify=False):
    """The invertible elements as a table, re-indexed in sorted member order.

    With ``verify`` set and ``t`` right Bol, the result is checked to be a
    Bol loop; a failure there raises TheoremViolation.
    """
    s = invertible_set(t)
    defect = closure_defect(t, s)
    if defect is not None:
        raise NotClosed(defect, t.mul(*defect))
    loop = restrict(t, s.members)
    if verify and check_right_bol(t).holds:
        for rep in (is_loop(loop), check_right_bol(loop)):
            if not rep.holds:
                raise TheoremViolation(f"invertible elements of a finite Bol magma fail {rep.property}: {rep}")
    return loop


def torsion_witness(t, a):
    """Least n >= 1 with a^n equal to an earlier power a^m; returns (m, n)."""
    p = _require_neutral(t)
    seen = {p: 0}
    # pigeonhole: powers 0..order cannot all differ
    for n in range(1, t.order + 1):
        p = int(t.table[p, a])
        if p in seen:
            return seen[p], n
        seen[p] = n
    raise TheoremViolation(f"no repeat among the first {t.order + 1} powers of {a}")


def lemma_lr_check(t):
    """If a*b = c*a = neutral then b = c."""
    e = _require_bol(t)
    m = t.table
    for a in range(t.order):
        bs = np.flatnonzero(m[a, :] == e)
        cs = np.flatnonzero(m[:, a] == e)
        for b in bs:
            for c in cs:
                if b != c:
                    return PropertyReport("one-sided-inverses-agree", False, (a, int(b), int(c)),
                                          int(b), int(c))
    return PropertyReport("one-sided-inverses-agree", True)


def verify_translation_lemmas(t):
    """Four universally quantified translation identities of a Bol magma with neutral.

    power-translation: R(a)^k = R(a^k) for 0 <= k <= 2n;
    right-translation-inverse: R(a) R(a') = R(a') R(a) = I for invertible a;
    left-translation-inverse: R(a) L(a') R(a') inverts L(a) on both sides;
    translation-bol: R(y) R(z) R(y) = R((y*z)*y).
    Witnesses put the disagreeing point last.
    """
    e = _require_bol(t)
    m = t.table
    n = t.order
    ident = np.arange(n)
    r_all = m.T  # r_all[a] = images of R(a)
    reports = []

    cur = np.tile(ident, (n, 1))
    pows = np.full(n, e)
    rep = PropertyReport("power-translation", True)
    for k in range(2 * n + 1):
        diff = cur != r_all[pows]
        if diff.any():
            a, x = np.argwhere(diff)[0]
            rep = PropertyReport("power-translation", False, (int(a), k, int(x)),
                                 int(cur[a, x]), int(r_all[pows[a], x]))
            break
        cur = np.take_along_axis(r_all, cur, axis=1)
        pows = m[pows, ident]
    reports.append(rep)

    s = invertible_set(t)
    rep_r = PropertyReport("right-translation-inverse", True)
    rep_l = PropertyReport("left-translation-inverse", True)
    for a in s.members:
        ai = s.inv[a]
        ra, rai = right_translation(t, a), right_translation(t, ai)
        if rep_r.holds:
            for first, second in ((ra, rai), (rai, ra)):
                img = compose(first, second).images
                if not np.array_equal(img, ident):
                    x = int(np.flatnonzero(img != ident)[0])
                    rep_r = PropertyReport("right-translation-inverse", False, (a, x), int(img[x]), x)
                    break
        if rep_l.holds:
            la = left_translation(t, a)
            candidate = compose(ra, left_translation(t, ai), rai)
            for first, second in ((la, candidate), (candidate, la)):
                img = compose(first, second).images
                if not np.array_equal(img, ident):
                    x = int(np.flatnonzero(img != ident)[0])
                    rep_l = PropertyReport("left-translation-inverse", False, (a, x), int(img[x]), x)
                    break
    reports += [rep_r, rep_l]

    # lhs[y, z, x] = ((x*y)*z)*y, rhs[y, z, x] = x*((y*z)*y)
    y = ident[:, None, None]
    z = ident[None, :, None]
    x = ident[None, None, :]
    lhs = m[m[m[x, y], z], y]
    rhs = np.broadcast_to(m[x, m[m[y, z], y]], lhs.shape)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        yy, zz, xx = (int(v) for v in bad[0])
        reports.append(PropertyReport("translation-bol", False, (yy, zz, xx),
                                      int(lhs[yy, zz, xx]), int(rhs[yy, zz, xx])))
    else:
        reports.append(PropertyReport("translation-bol", True))
    return reports


def _inverse_of(t, s, a):
    if a not in s:
        raise NotInvertible(a)
    return s.inv[a]


def product_right_inverse(t, a, b):
    """c = ((b'a' * ba) a') b', which satisfies (a*b)*c = neutral."""
    e = _require_bol(t)
    s = invertible_set(t)
    ai, bi = _inverse_of(t, s, a), _inverse_of(t, s, b)
    m = t.table
    c = int(m[m[m[m[bi, ai], m[b, a]], ai], bi])
    if m[m[a, b], c] != e:
        raise TheoremViolation(f"({a}*{b})*{c} = {m[m[a, b], c]}, expected neutral {e}")
    return c


def verify_left_product_inverse(t, a, b):
    """L(ab) is inverted on both sides by R(b) R(a) L(b'a') R(a') R(b'),
    and ab has exactly one right inverse."""
    e = _require_bol(t)
    s = invertible_set(t)
    ai, bi = _inverse_of(t, s, a), _inverse_of(t, s, b)
    ab = t.mul(a, b)
    n = t.order
    ident = np.arange(n)
    candidate = compose(right_translation(t, b), right_translation(t, a),
                        left_translation(t, t.mul(bi, ai)),
                        right_translation(t, ai), right_translation(t, bi))
    lab = left_translation(t, ab)
    for first, second in ((lab, candidate), (candidate, lab)):
        img = compose(first, second).images
        if not np.array_equal(img, ident):
            x = int(np.flatnonzero(img != ident)[0])
            return PropertyReport("product-left-inverse", False, (a, b, x), int(img[x]), x)
    right_inverses = np.flatnonzero(t.table[ab, :] == e)
    c = product_right_inverse(t, a, b)
    if right_inverses.tolist() != [c]:
        return PropertyReport("product-left-inverse", False, (a, b), c,
                              int(right_inverses[0]) if right_inverses.size else -1,
                              detail=f"right inverses of {ab} by scan: {right_inverses.tolist()}")
    return PropertyReport("product-left-inverse", True)
