"""Text formats for magmas and rings.

Magma::

    magma <n> [neutral=<i>]
    <n lines of n space-separated 0-based indices>

Ring::

    ring <n> [one=<i>] zero=<i>
    add:
    <n lines>
    mul:
    <n lines>

``#`` starts a comment; blank lines are ignored.  A file may hold several
records, each starting at its header line.  Written files are canonical:
no comments, single spaces, trailing newline.
"""

import re

import numpy as np

from .errors import FormatError
from .magma import CayleyTable
from .ring import FinRing

MAX_ORDER = 65535

_KV = re.compile(r"^([a-z]+)=(\d+)$")


def _rows(values):
    return "".join(" ".join(str(v) for v in row) + "\n" for row in values.tolist())


def write_magma(t, comments=()):
    head = "".join(f"# {c}\n" for c in comments)
    head += f"magma {t.order}" + (f" neutral={t.neutral}" if t.neutral is not None else "") + "\n"
    return head + _rows(t.table)


def write_ring(r, comments=()):
    head = "".join(f"# {c}\n" for c in comments)
    head += f"ring {r.order}" + (f" one={r.one}" if r.one is not None else "") + f" zero={r.zero}\n"
    return head + "add:\n" + _rows(r.add) + "mul:\n" + _rows(r.mul)


def write_structure(obj, comments=()):
    if isinstance(obj, FinRing):
        return write_ring(obj, comments)
    return write_magma(obj, comments)


class _Lines:
    def __init__(self, text, path):
        self.path = path
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            if body.strip():
                self.items.append((no, body))
        self.pos = 0

    def done(self):
        return self.pos >= len(self.items)

    def next(self, what):
        if self.done():
            last = self.items[-1][0] if self.items else 0
            raise FormatError(f"unexpected end of file, expected {what}", last + 1, path=self.path)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def error(self, msg, no, col=None):
        return FormatError(msg, no, col, path=self.path)


def _column_of(body, token_index):
    # 1-based column where the token_index-th whitespace-separated token starts
    spans = [m.start() + 1 for m in re.finditer(r"\S+", body)]
    return spans[token_index] if token_index < len(spans) else len(body) + 1


def _read_table(lines, n, what):
    out = np.empty((n, n), np.int64)
    for i in range(n):
        no, body = lines.next(f"row {i} of the {what} table")
        toks = body.split()
        if len(toks) != n:
            raise lines.error(f"{what} row {i} has {len(toks)} entries, expected {n}", no,
                              _column_of(body, min(len(toks), n)))
        for j, tok in enumerate(toks):
            if not tok.isdigit():
                raise lines.error(f"not a non-negative integer: {tok!r}", no, _column_of(body, j))
            v = int(tok)
            if v >= n:
                raise lines.error(f"entry {v} out of range 0..{n - 1}", no, _column_of(body, j))
            out[i, j] = v
    return out


def _header(lines):
    no, body = lines.next("a header line")
    toks = body.split()
    kind = toks[0]
    if kind not in ("magma", "ring"):
        raise lines.error(f"expected 'magma' or 'ring', got {kind!r}", no, _column_of(body, 0))
    if len(toks) < 2 or not toks[1].isdigit():
        raise lines.error("missing order", no, _column_of(body, 1))
    n = int(toks[1])
    if not 1 <= n <= MAX_ORDER:
        raise lines.error(f"order {n} outside 1..{MAX_ORDER}", no, _column_of(body, 1))
    allowed = {"magma": ("neutral",), "ring": ("one", "zero")}[kind]
    opts = {}
    for k, tok in enumerate(toks[2:], start=2):
        m = _KV.match(tok)
        if not m or m.group(1) not in allowed or m.group(1) in opts:
            raise lines.error(f"bad header field {tok!r}", no, _column_of(body, k))
        opts[m.group(1)] = int(m.group(2))
    if kind == "ring" and "zero" not in opts:
        raise lines.error("ring header needs zero=<i>", no)
    return no, kind, n, opts


def read_structures(text, path=None):
    """Parse every record in ``text``."""
    lines = _Lines(text, path)
    out = []
    while not lines.done():
        no, kind, n, opts = _header(lines)
        try:
            if kind == "magma":
                tab = _read_table(lines, n, "magma")
                kwargs = {"neutral": opts["neutral"]} if "neutral" in opts else {}
                out.append(CayleyTable(tab, **kwargs))
            else:
                tables = {}
                for block in ("add", "mul"):
                    bno, body = lines.next(f"'{block}:'")
                    if body.strip() != f"{block}:":
                        raise lines.error(f"expected '{block}:'", bno, 1)
                    tables[block] = _read_table(lines, n, block)
                kwargs = {"one": opts["one"]} if "one" in opts else {}
                out.append(FinRing(tables["add"], tables["mul"], zero=opts["zero"], **kwargs))
        except ValueError as exc:
            raise lines.error(str(exc), no) from exc
    if not out:
        raise FormatError("no structure found", path=path)
    return out


def read_file(path):
    with open(path, encoding="utf-8") as fh:
        return read_structures(fh.read(), path=str(path))


def write_file(path, objs, comments=()):
    if not isinstance(objs, (list, tuple)):
        objs = [objs]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i, obj in enumerate(objs):
            fh.write(write_structure(obj, comments if i == 0 else ()))


def suffix_for(obj):
    return ".ring" if isinstance(obj, FinRing) else ".magma"
