"""Command-line interface.

Exit codes: 0 ok, 1 a property or theorem check failed, 2 input error,
3 invertible set not closed, 4 no unity, 5 not strongly right alternative,
6 search budget exceeded.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import fixtures
from . import formats
from . import magma as mg
from . import ring as rg
from . import search as sr
from .errors import (BolmagError, BudgetExceeded, FormatError, InvalidRing, NoNeutral, NotAlternative,
                     NotBol, NotClosed, NoUnity, NotStronglyRightAlternative, TheoremViolation)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NOT_CLOSED = 3
EXIT_NO_UNITY = 4
EXIT_NOT_SRA = 5
EXIT_BUDGET = 6

OUTPUT_DIR_ENV = "BOLMAG_OUTPUT_DIR"

MAGMA_PROPS = {
    "bol": mg.check_right_bol,
    "flexible": mg.check_flexible,
    "moufang": mg.check_moufang,
    "loop": mg.is_loop,
    "assoc": mg.check_associative,
    "rightalt": lambda t: mg.check_identity(t, "right-alternative"),
    "leftalt": lambda t: mg.check_identity(t, "left-alternative"),
}
RING_PROPS = {
    "rightalt": rg.check_right_alternative,
    "leftalt": rg.check_left_alternative,
    "sra": rg.check_strongly_right_alternative,
    "assoc": rg.check_associative,
    "bol": lambda r: mg.check_right_bol(r.mul_table),
    "flexible": lambda r: mg.check_flexible(r.mul_table),
    "moufang": lambda r: mg.check_moufang(r.mul_table),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


class Output:
    """Human lines or line-delimited JSON records; never both on stdout."""

    def __init__(self, machine):
        self.machine = machine

    def say(self, text):
        if not self.machine:
            print(text)

    def record(self, rec):
        if self.machine:
            print(json.dumps(rec, sort_keys=True))

    def report(self, rep):
        self.record(rep.to_record())
        if rep.holds:
            self.say(f"{rep.property}: holds")
        else:
            line = f"{rep.property}: FAILS"
            if rep.witness:
                line += f" at {tuple(rep.witness)}"
            if rep.lhs is not None:
                line += f": lhs={rep.lhs} rhs={rep.rhs}"
            if rep.detail:
                line += f" ({rep.detail})"
            self.say(line)


def _load_one(path):
    objs = formats.read_file(path)
    if len(objs) != 1:
        raise FormatError(f"expected one structure, found {len(objs)}", path=str(path))
    return objs[0]


def _out_dir(explicit):
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def cmd_check(args, out):
    obj = _load_one(args.path)
    table = RING_PROPS if isinstance(obj, rg.FinRing) else MAGMA_PROPS
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    unknown = [p for p in props if p not in table]
    if unknown or not props:
        raise UsageError(f"unknown properties for this structure: {unknown or '(none given)'}; "
                         f"choose from {sorted(table)}")
    ok = True
    for p in props:
        rep = table[p](obj)
        out.report(rep)
        ok &= rep.holds
    return EXIT_OK if ok else EXIT_FAIL


def _emit_loop(args, out, members, inv, loop, label):
    dest = Path(args.output) if args.output else _out_dir(None) / f"{Path(args.path).stem}.{label}.magma"
    formats.write_file(dest, loop)
    reps = [mg.is_loop(loop), mg.check_right_bol(loop), mg.check_moufang(loop)]
    out.record({"members": list(members), "inverse": {str(k): v for k, v in sorted(inv.items())},
                "order": loop.order, "output": str(dest)})
    out.say(f"members: {' '.join(str(m) for m in members)}")
    out.say("inverse: " + " ".join(f"{k}->{v}" for k, v in sorted(inv.items())))
    out.say(f"order-{loop.order} loop written to {dest}")
    for rep in reps:
        out.report(rep)
    # loop and Bol verdicts are what the extraction promises; Moufang is informational
    return EXIT_OK if reps[0].holds and reps[1].holds else EXIT_FAIL


def cmd_jloop(args, out):
    t = _load_one(args.path)
    if isinstance(t, rg.FinRing):
        raise UsageError("jloop takes a magma file; use units or quasi for rings")
    s = mg.invertible_set(t)
    loop = mg.jloop(t, verify=True)
    return _emit_loop(args, out, s.members, s.inv, loop, "jloop")


def _ring_arg(args):
    r = _load_one(args.path)
    if not isinstance(r, rg.FinRing):
        raise UsageError(f"{args.command} takes a ring file")
    return r


def cmd_units(args, out):
    r = _ring_arg(args)
    loop = rg.unit_bol_loop(r)
    s = rg.units(r)
    return _emit_loop(args, out, s.members, s.inv, loop, "units")


def cmd_quasi(args, out):
    r = _ring_arg(args)
    loop = rg.quasiregular_bol_loop(r)
    s = rg.quasiregular_set(r)
    return _emit_loop(args, out, s.members, s.inv, loop, "quasi")


def _parse_group(text):
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.replace("x", ",").split(",") if v)
    except ValueError as exc:
        raise UsageError(f"bad additive group {text!r}") from exc


def cmd_search(args, out):
    try:
        spec = sr.SearchSpec(kind=args.kind, order=args.order or 0, additive_group=_parse_group(args.add_group),
                             mode=args.mode, seed=args.seed, iso_reduce=args.iso_reduce, target=args.target,
                             limit=args.limit, samples=args.samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    budget_hit = False
    if spec.kind == "bol-magma-with-neutral" and spec.target == "j-not-closed":
        result = sr.hunt_conjecture(spec, args.jobs, args.budget_seconds)
        budget_hit = not result.exhausted and args.budget_seconds is not None
    else:
        try:
            result = sr.enumerate_structures(spec, args.jobs, args.budget_seconds)
        except BudgetExceeded as exc:
            result, budget_hit = exc.result, True
    dest = _out_dir(args.out)
    dest.mkdir(parents=True, exist_ok=True)
    for i, cert in enumerate(result.certificates, start=1):
        if isinstance(cert, sr.RingCertificate):
            notes = [f"additive-group: {' '.join(map(str, cert.moduli))}",
                     f"constants: {' '.join(map(str, cert.constants))}",
                     f"characteristic: {cert.characteristic}"]
            formats.write_file(dest / f"cert-{i:06d}.ring", cert.ring, notes)
        else:
            formats.write_file(dest / f"cert-{i:06d}.magma", cert)
    summary = json.dumps(result.summary(), sort_keys=True)
    (dest / "summary.json").write_text(summary + "\n", encoding="utf-8")
    if out.machine:
        print(summary)
    else:
        out.say(f"{len(result.certificates)} certificates written to {dest}")
        out.say(summary)
    if budget_hit:
        return EXIT_BUDGET
    if spec.target == "j-not-closed" and result.certificates:
        # any finite hit contradicts the closure theorem
        return EXIT_FAIL
    return EXIT_OK


def _corpus_files(root):
    root = Path(root)
    if root.is_file():
        return [root]
    if not root.is_dir():
        raise FormatError(f"no such corpus directory: {root}")
    return sorted(p for p in root.rglob("*") if p.suffix in (".magma", ".ring") and p.is_file())


def cmd_verify(args, out):
    files = _corpus_files(args.corpus)

    def stream():
        for path in files:
            yield from formats.read_file(path)

    summary = sr.verify_corpus(stream())
    rec = summary.to_record()
    rec["files"] = len(files)
    out.record(rec)
    out.say(f"{summary.structures} structures, {summary.checks} checks, "
            f"{summary.skipped} skipped, {len(summary.failures)} failures")
    for f in summary.failures:
        out.say(f"FAILURE: {json.dumps(f, sort_keys=True)}")
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_fixtures(args, out):
    dest = _out_dir(args.out)
    dest.mkdir(parents=True, exist_ok=True)
    names = args.names
    if names == ["all"]:
        names = sorted(fixtures.small_groups()) + [f"z{n}" for n in range(2, 13)] + ["zero-2x2", "zorn_gf2"]
    written = []
    for name in names:
        try:
            obj = fixtures.build_fixture(name)
        except KeyError:
            raise UsageError(f"unknown fixture {name!r}; known: {', '.join(fixtures.fixture_names())}")
        path = dest / f"{name}{formats.suffix_for(obj)}"
        formats.write_file(path, obj)
        written.append(str(path))
        out.record({"fixture": name, "path": str(path), "order": obj.order})
        out.say(f"wrote {path}")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="bolmag", description="Finite Bol magma and right alternative ring workbench.")
    p.add_argument("--machine", action="store_true", help="emit line-delimited JSON records only")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="check named properties of a magma or ring file")
    c.add_argument("path")
    c.add_argument("--props", required=True,
                   help="comma list: bol, flexible, moufang, loop, assoc, rightalt, leftalt, sra")
    c.set_defaults(func=cmd_check)

    for name, func, text in (("jloop", cmd_jloop, "extract the loop of invertible elements of a magma"),
                             ("units", cmd_units, "extract the unit loop of a ring"),
                             ("quasi", cmd_quasi, "extract the quasiregular circle loop of a ring")):
        c = sub.add_parser(name, help=text)
        c.add_argument("path")
        c.add_argument("-o", "--output", help="output magma file")
        c.set_defaults(func=func)

    c = sub.add_parser("search", help="enumerate or sample structures")
    c.add_argument("--kind", required=True,
                   choices=["bol-magma", "bol-magma-with-neutral", "bol-loop", "right-alt-ring", "sra-ring"])
    c.add_argument("--order", type=int)
    c.add_argument("--add-group", help="cyclic factors, e.g. 2,2,2")
    c.add_argument("--mode", default="exhaustive", choices=["exhaustive", "random"])
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--samples", type=int, default=10000, help="tables drawn in random mode")
    c.add_argument("--iso-reduce", action="store_true")
    c.add_argument("--target", default="none", choices=sorted(sr.TARGETS))
    c.add_argument("--limit", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--budget-seconds", type=float)
    c.add_argument("--out", help="certificate directory")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("verify", help="run the theorem suites over a corpus directory")
    c.add_argument("corpus")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("fixtures", help="write named fixture files (or 'all')")
    c.add_argument("names", nargs="+")
    c.add_argument("--out")
    c.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Output(args.machine)
    try:
        return args.func(args, out)
    except (FormatError, UsageError, InvalidRing, NoNeutral, NotBol, NotAlternative, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotClosed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CLOSED
    except NoUnity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_UNITY
    except NotStronglyRightAlternative as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SRA
    except (TheoremViolation, BolmagError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
