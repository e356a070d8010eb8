"""Exhaustive and random search for Bol magmas, Bol loops and right alternative rings."""

import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from . import magma as mg
from . import ring as rg
from .errors import BolmagError, BudgetExceeded, NoNeutral, TheoremViolation

log = logging.getLogger(__name__)

MAGMA_KINDS = ("bol-magma-with-neutral", "bol-loop")
RING_KINDS = ("right-alt-ring", "sra-ring")
KIND_ALIASES = {"bol-magma": "bol-magma-with-neutral"}
TARGETS = {
    "none": kernels.TARGET_NONE,
    "j-not-closed": kernels.TARGET_J_NOT_CLOSED,
    "not-alternative": kernels.TARGET_NOT_ALTERNATIVE,
    "not-bol": kernels.TARGET_NOT_BOL,
}

# fixed task granularity keeps node counts and output independent of --jobs
_SPLIT_CELLS = 2
_RING_CHUNK = 1 << 15
_RANDOM_CHUNK = 1 << 12


@dataclass(frozen=True)
class SearchSpec:
    kind: str
    order: int = 0
    additive_group: tuple = ()
    mode: str = "exhaustive"
    seed: int = 0
    iso_reduce: bool = False
    target: str = "none"
    limit: Optional[int] = None
    samples: int = 10000

    def __post_init__(self):
        kind = KIND_ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "additive_group", tuple(int(m) for m in self.additive_group))
        if kind not in MAGMA_KINDS + RING_KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}")
        if kind in RING_KINDS:
            if not self.additive_group or min(self.additive_group) < 2:
                raise ValueError("ring kinds need an additive group of cyclic factors >= 2")
            prod = math.prod(self.additive_group)
            if self.order and self.order != prod:
                raise ValueError(f"order {self.order} does not match additive group of order {prod}")
            object.__setattr__(self, "order", prod)
        else:
            if self.order < 1:
                raise ValueError("order must be >= 1")
            if self.additive_group:
                raise ValueError("additive group only applies to ring kinds")
            if self.target not in ("none", "j-not-closed"):
                raise ValueError(f"target {self.target!r} needs a ring kind")
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be >= 0")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def is_ring(self):
        return self.kind in RING_KINDS

    def to_record(self):
        rec = {
            "kind": self.kind,
            "order": self.order,
            "mode": self.mode,
            "iso_reduce": self.iso_reduce,
            "target": self.target,
            "limit": self.limit,
        }
        if self.is_ring:
            rec["additive_group"] = list(self.additive_group)
        if self.mode == "random":
            rec["seed"] = self.seed
            rec["samples"] = self.samples
        return rec


@dataclass(frozen=True, eq=False)
class RingCertificate:
    """A ring given by generator-pair structure constants and its lowered tables."""

    moduli: tuple
    constants: tuple
    ring: rg.FinRing

    @classmethod
    def build(cls, moduli, constants):
        moduli = tuple(int(m) for m in moduli)
        constants = tuple(int(c) for c in constants)
        return cls(moduli, constants, rg.ring_from_constants(moduli, constants))

    @property
    def characteristic(self):
        return math.lcm(*self.moduli)


@dataclass
class SearchResult:
    spec: SearchSpec
    emitted: int = 0
    explored: int = 0
    certificates: list = field(default_factory=list)
    exhausted: bool = False
    verified_bound: Optional[int] = None
    per_order: list = field(default_factory=list)

    def summary(self):
        rec = {
            "spec": self.spec.to_record(),
            "emitted": self.emitted,
            "explored": self.explored,
            "certificates": len(self.certificates),
            "exhausted": self.exhausted,
        }
        if self.verified_bound is not None:
            rec["verified_bound"] = self.verified_bound
        if self.per_order:
            rec["per_order"] = self.per_order
        return rec


# ---------------------------------------------------------------- canonical forms


def relabel(t, pi):
    """Isomorphic copy with element x renamed pi[x]."""
    pi = np.asarray(pi, dtype=np.int64)
    out = np.empty_like(t.table)
    out[np.ix_(pi, pi)] = pi[t.table]
    return mg.CayleyTable(out)


def canonical_form(t):
    """Least row-major table over relabelings sending the neutral element to 0."""
    if t.neutral is None:
        raise NoNeutral("canonical form needs a neutral element")
    best, _ = kernels.canonical_labeling(t.table, t.neutral)
    return mg.CayleyTable(best)


def additive_automorphisms(moduli):
    """All automorphisms of Z_m1 x ... x Z_mk as permutation arrays (old -> new)."""
    moduli = np.asarray(moduli, dtype=np.int64)
    coords = kernels.group_coords(moduli)
    strides = np.array([int(np.prod(moduli[q + 1:])) for q in range(len(moduli))], np.int64)
    n = len(coords)
    choices = [np.flatnonzero(((m * coords) % moduli == 0).all(axis=1)) for m in moduli]
    auts = []
    for images in itertools.product(*choices):
        img = coords[list(images)]  # (k generators, k coords)
        mapped = (coords @ img) % moduli
        perm = mapped @ strides
        if len(np.unique(perm)) == n:
            auts.append(perm)
    return np.array(auts, dtype=np.int64)


def canonical_ring_mul(mul, auts):
    """Least row-major multiplication table over the given additive automorphisms."""
    mul = np.asarray(mul, dtype=np.int64)
    n = mul.shape[0]
    inv = np.argsort(auts, axis=1)
    rel = mul[inv[:, :, None], inv[:, None, :]].reshape(len(auts), n * n)
    rel = np.take_along_axis(auts, rel, axis=1)
    return rel[np.lexsort(rel.T[::-1])[0]].reshape(n, n)


# ---------------------------------------------------------------- enumeration


def _run_tasks(fn, tasks, jobs, deadline):
    """Map ``fn`` over tasks in order; ``None`` marks tasks skipped past the deadline."""

    def guarded(task):
        if deadline is not None and time.monotonic() > deadline:
            return None
        return fn(task)

    if jobs <= 1:
        for task in tasks:
            yield guarded(task)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(guarded, tasks)


def _magma_tasks(spec):
    n = spec.order
    loop = spec.kind == "bol-loop"
    cells = (n - 1) ** 2
    split = min(_SPLIT_CELLS, cells)
    if spec.mode == "random":
        seqs = np.random.SeedSequence(spec.seed).spawn(math.ceil(spec.samples / _RANDOM_CHUNK))
        tasks = []
        for i, seq in enumerate(seqs):
            size = min(_RANDOM_CHUNK, spec.samples - i * _RANDOM_CHUNK)
            tasks.append(("random", seq, size))
        return tasks, 0
    if split == 0:
        return [("prefix", np.zeros(0, np.int64))], 0
    stats, prefixes = kernels.magma_dfs(n, loop, [], split, iso=spec.iso_reduce)
    return [("prefix", p) for p in prefixes], int(stats[1])


def _magma_task(spec, task):
    n = spec.order
    loop = spec.kind == "bol-loop"
    target = TARGETS[spec.target]
    cells = (n - 1) ** 2
    if task[0] == "prefix":
        stats, found = kernels.magma_dfs(n, loop, task[1], cells, iso=spec.iso_reduce, target=target)
        tables = [kernels.cells_to_table(n, row[:cells]) for row in found]
        return int(stats[0]), int(stats[1]), tables
    _, seq, size = task
    rng = np.random.default_rng(seq)
    tables = np.empty((size, n, n), np.int64)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    tables[:, 1:, 1:] = rng.integers(0, n, size=(size, n - 1, n - 1))
    flags = kernels.magma_batch(tables, loop, spec.iso_reduce, target)
    hits = [tables[i] for i in np.flatnonzero(flags[:, 1])]
    return int(flags[:, 0].sum()), size, hits


def _ring_layout(moduli):
    allowed = kernels.allowed_constants(moduli)
    counts = np.array([len(a) for a in allowed], np.int64)
    values = np.zeros((len(allowed), int(counts.max())), np.int64)
    for q, a in enumerate(allowed):
        values[q, : len(a)] = a
    return counts, values


def _ring_tasks(spec):
    counts, _ = _ring_layout(spec.additive_group)
    if spec.mode == "random":
        seqs = np.random.SeedSequence(spec.seed).spawn(math.ceil(spec.samples / _RANDOM_CHUNK))
        return [("random", seq, min(_RANDOM_CHUNK, spec.samples - i * _RANDOM_CHUNK))
                for i, seq in enumerate(seqs)], 0
    total = int(np.prod(counts))
    return [("range", lo, min(total, lo + _RING_CHUNK)) for lo in range(0, total, _RING_CHUNK)], 0


def _ring_task(spec, task):
    counts, values = _ring_layout(spec.additive_group)
    if task[0] == "range":
        lin = np.arange(task[1], task[2], dtype=np.int64)
        digits = np.stack(np.unravel_index(lin, tuple(counts)), axis=1)
    else:
        rng = np.random.default_rng(task[1])
        digits = rng.integers(0, counts, size=(task[2], len(counts)))
    flags = kernels.ring_batch(spec.additive_group, digits, values, spec.kind == "sra-ring",
                               TARGETS[spec.target])
    emitted_rows = np.flatnonzero(flags[:, 0])
    out = []
    for p in emitted_rows:
        consts = values[np.arange(len(counts)), digits[p]]
        out.append((bool(flags[p, 1]), tuple(int(c) for c in consts)))
    return len(digits), out


def iter_structures(spec, jobs=1, budget_seconds=None, _state=None):
    """Stream certificates of ``spec`` in deterministic order.

    ``_state`` (a SearchResult) receives running counts; ``enumerate_structures``
    wraps this generator.
    """
    state = _state if _state is not None else SearchResult(spec)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    limit = spec.limit
    if spec.is_ring:
        tasks, pre_nodes = _ring_tasks(spec)
        auts = additive_automorphisms(spec.additive_group) if spec.iso_reduce else None
        run = lambda task: _ring_task(spec, task)
    else:
        tasks, pre_nodes = _magma_tasks(spec)
        run = lambda task: _magma_task(spec, task)
    state.explored += pre_nodes
    state.exhausted = False
    done = 0
    for res in _run_tasks(run, tasks, jobs, deadline):
        if res is None:
            break
        done += 1
        if spec.is_ring:
            nodes, rings = res
            state.explored += nodes
            for is_cert, consts in rings:
                cert = RingCertificate.build(spec.additive_group, consts)
                if auts is not None:
                    canon = canonical_ring_mul(cert.ring.mul, auts)
                    if not np.array_equal(canon, cert.ring.mul):
                        continue
                state.emitted += 1
                if is_cert:
                    if limit is not None and len(state.certificates) >= limit:
                        return
                    state.certificates.append(cert)
                    yield cert
        else:
            emitted, nodes, tables = res
            state.emitted += emitted
            state.explored += nodes
            for tab in tables:
                if limit is not None and len(state.certificates) >= limit:
                    return
                cert = mg.CayleyTable(tab)
                state.certificates.append(cert)
                yield cert
        if limit is not None and len(state.certificates) >= limit and done < len(tasks):
            return
    state.exhausted = done == len(tasks)


def enumerate_structures(spec, jobs=1, budget_seconds=None):
    """Run a search to completion.

    Raises BudgetExceeded (carrying the partial result) when the deadline
    passes before every task ran.  A ``limit`` that stops the run early
    leaves ``exhausted`` false without raising.
    """
    state = SearchResult(spec)
    for cert in iter_structures(spec, jobs, budget_seconds, state):
        _reverify(spec, cert)
    if not state.exhausted and budget_seconds is not None and (
            spec.limit is None or len(state.certificates) < spec.limit):
        raise BudgetExceeded(state)
    return state


def _reverify(spec, cert):
    """Re-check a certificate through the magma/ring checkers, independent of the kernels."""
    if spec.is_ring:
        r = cert.ring
        rg.require_valid(r)
        ok = rg.check_right_alternative(r).holds
        bol = mg.check_right_bol(r.mul_table).holds
        if spec.kind == "sra-ring":
            ok = ok and bol
        if spec.target == "not-bol":
            ok = ok and not bol
        elif spec.target == "not-alternative":
            ok = ok and not rg.check_left_alternative(r).holds
        elif spec.target == "j-not-closed":
            circ = rg.circle_magma(r)
            hit = mg.closure_defect(circ) is not None
            if r.one is not None:
                hit = hit or mg.closure_defect(r.mul_table) is not None
            ok = ok and hit
    else:
        t = cert
        ok = t.neutral == 0 and mg.check_right_bol(t).holds
        if spec.kind == "bol-loop":
            ok = ok and mg.is_loop(t).holds
        if spec.iso_reduce:
            ok = ok and canonical_form(t) == t
        if spec.target == "j-not-closed":
            ok = ok and mg.closure_defect(t) is not None
    if not ok:
        raise TheoremViolation(f"search kernel emitted a certificate that fails re-verification: {cert!r}")


# ---------------------------------------------------------------- targeted hunts


def hunt_conjecture(spec, jobs=1, budget_seconds=None):
    """Bol magmas with neutral whose invertible elements are not closed, orders 1..spec.order.

    Finite hits contradict the closure theorem, so each one is re-derived by
    independent code before it is reported, and logged as an error.
    """
    if spec.kind != "bol-magma-with-neutral" or spec.target != "j-not-closed":
        raise ValueError("hunt_conjecture needs kind bol-magma-with-neutral and target j-not-closed")
    total = SearchResult(spec)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    orders = range(1, spec.order + 1) if spec.mode == "exhaustive" else [spec.order]
    total.exhausted = True
    for n in orders:
        sub = SearchSpec(spec.kind, n, mode=spec.mode, seed=spec.seed, iso_reduce=spec.iso_reduce,
                         target=spec.target, limit=spec.limit, samples=spec.samples)
        remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
        try:
            res = enumerate_structures(sub, jobs, remaining)
        except BudgetExceeded as exc:
            res = exc.result
        for cert in res.certificates:
            pair = mg.closure_defect(cert)
            diag = (f"order {n}: Bol magma with neutral {cert.neutral} has non-invertible product "
                    f"{pair} -> {cert.mul(*pair)}; rows={cert.rows()}")
            log.error("closure theorem falsified: %s", diag)
        total.emitted += res.emitted
        total.explored += res.explored
        total.certificates += res.certificates
        total.per_order.append({"order": n, "emitted": res.emitted, "explored": res.explored,
                                "certificates": len(res.certificates), "exhausted": res.exhausted})
        if not res.exhausted:
            total.exhausted = False
            break
        if spec.mode == "exhaustive" and not total.certificates:
            total.verified_bound = n
    if spec.mode != "exhaustive":
        total.exhausted = all(p["exhausted"] for p in total.per_order)
    return total


def hunt_separating_rings(spec, jobs=1, budget_seconds=None):
    """Right alternative rings that are not Bol, or strongly right alternative rings that are not alternative."""
    if not spec.is_ring or spec.target not in ("not-alternative", "not-bol"):
        raise ValueError("hunt_separating_rings needs a ring kind and target not-alternative or not-bol")
    try:
        return enumerate_structures(spec, jobs, budget_seconds)
    except BudgetExceeded as exc:
        # an empty result within the budget is a valid outcome
        return exc.result


def separation_witness(cert, target):
    """The sub-report pattern that makes ``cert`` a separating example."""
    r = cert.ring
    reports = [rg.check_right_alternative(r), mg.check_right_bol(r.mul_table)]
    if target == "not-alternative":
        reports.append(rg.check_left_alternative(r))
    return reports


# ---------------------------------------------------------------- corpus verification


@dataclass
class CorpusSummary:
    structures: int = 0
    checks: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_record(self):
        return {"structures": self.structures, "checks": self.checks, "skipped": self.skipped,
                "failures": len(self.failures), "diagnostics": self.failures}


def _record(summary, label, rep_or_ok, detail=""):
    summary.checks += 1
    ok = rep_or_ok.holds if isinstance(rep_or_ok, mg.PropertyReport) else bool(rep_or_ok)
    if not ok:
        entry = {"structure": summary.structures - 1, "check": label, "detail": detail}
        if isinstance(rep_or_ok, mg.PropertyReport):
            entry["report"] = rep_or_ok.to_record()
        summary.failures.append(entry)


def magma_suite(t, summary):
    """Closure and flexible theorems plus every translation and inverse lemma on one Bol magma."""
    s = mg.invertible_set(t)
    _record(summary, "unique-inverses", s.unique)
    defect = mg.closure_defect(t, s)
    _record(summary, "invertibles-closed", defect is None, f"defect {defect}")
    if defect is None:
        loop = mg.jloop(t)
        _record(summary, "jloop-is-loop", mg.is_loop(loop))
        _record(summary, "jloop-right-bol", mg.check_right_bol(loop))
        if mg.check_flexible(t).holds:
            _record(summary, "jloop-moufang", mg.check_moufang(loop))
    for rep in mg.verify_translation_lemmas(t):
        _record(summary, rep.property, rep)
    _record(summary, "one-sided-inverses-agree", mg.lemma_lr_check(t))
    e = t.neutral
    for a in s.members:
        for b in s.members:
            _record(summary, "product-left-inverse", mg.verify_left_product_inverse(t, a, b))
            c = mg.product_right_inverse(t, a, b)
            scan = np.flatnonzero(t.table[t.mul(a, b)] == e).tolist()
            _record(summary, "product-right-inverse-scan", scan == [c], f"a={a} b={b} c={c} scan={scan}")
    for a in range(t.order):
        m, n = mg.torsion_witness(t, a)
        powers = [mg.power(t, a, k) for k in range(n + 1)]
        minimal = len(set(powers[:n])) == n
        _record(summary, "torsion", powers[m] == powers[n] and minimal and n <= t.order + 1,
                f"a={a} m={m} n={n}")


def ring_suite(r, summary):
    """Circle-Bol transfer, unit and quasiregular Bol loops, and the Moufang corollary on one ring."""
    rg.require_valid(r)
    circ = rg.circle_magma(r)
    _record(summary, "circle-neutral-zero", circ.neutral == r.zero)
    if not rg.check_strongly_right_alternative(r).holds:
        summary.skipped += 1
        return
    _record(summary, "circle-right-bol", mg.check_right_bol(circ))
    loops = [("quasiregular", rg.quasiregular_bol_loop)]
    if r.one is not None:
        loops.insert(0, ("unit", rg.unit_bol_loop))
    for label, extract in loops:
        lp = extract(r)
        _record(summary, f"{label}-loop-is-loop", mg.is_loop(lp))
        _record(summary, f"{label}-loop-right-bol", mg.check_right_bol(lp))
    if rg.is_alternative(r):
        for rep in rg.moufang_corollary_check(r):
            _record(summary, rep.property, rep)


def verify_corpus(structures):
    """Run the applicable theorem suite on each structure; failures are collected, never raised."""
    summary = CorpusSummary()
    for obj in structures:
        if isinstance(obj, RingCertificate):
            obj = obj.ring
        summary.structures += 1
        try:
            if isinstance(obj, rg.FinRing):
                ring_suite(obj, summary)
            elif obj.neutral is not None and mg.check_right_bol(obj).holds:
                magma_suite(obj, summary)
            else:
                summary.skipped += 1
        except BolmagError as exc:
            summary.checks += 1
            summary.failures.append({"structure": summary.structures - 1, "check": "exception",
                                     "detail": f"{type(exc).__name__}: {exc}"})
    return summary
