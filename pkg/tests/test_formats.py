import numpy as np
import pytest

from bolmag import formats
from bolmag.errors import FormatError
from bolmag.fixtures import cyclic
from bolmag.magma import CayleyTable
from bolmag.ring import residue_ring, zero_ring, zorn_gf2


def test_magma_text_layout():
    text = formats.write_magma(cyclic(3))
    assert text == "magma 3 neutral=0\n0 1 2\n1 2 0\n2 0 1\n"
    no_neutral = CayleyTable([[0, 0], [1, 1]])
    assert formats.write_magma(no_neutral).splitlines()[0] == "magma 2"


def test_ring_text_layout():
    text = formats.write_ring(residue_ring(2))
    assert text == "ring 2 one=1 zero=0\nadd:\n0 1\n1 0\nmul:\n0 0\n0 1\n"
    assert formats.write_ring(zero_ring([2])).startswith("ring 2 zero=0\n")


@pytest.mark.parametrize("obj", [cyclic(5), residue_ring(6), zero_ring([2, 2]), zorn_gf2(),
                                 CayleyTable([[1, 0], [0, 0]])])
def test_roundtrip(obj):
    text = formats.write_structure(obj)
    back, = formats.read_structures(text)
    assert back == obj
    assert formats.write_structure(back) == text


def test_comments_and_multiple_records(tmp_path):
    text = "# two tables\nmagma 1\n0  # trivial\n\nmagma 2 neutral=0\n0 1\n1 0\n"
    a, b = formats.read_structures(text)
    assert a.order == 1 and b == cyclic(2)
    path = tmp_path / "x.magma"
    formats.write_file(path, [a, b], comments=["hello"])
    assert path.read_text().startswith("# hello\nmagma 1")
    assert formats.read_file(path) == [a, b]


def test_neutral_off_zero_survives_roundtrip():
    t = CayleyTable([[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    assert t.neutral == 1
    back, = formats.read_structures(formats.write_magma(t))
    assert back.neutral == 1


@pytest.mark.parametrize("text,line,col", [
    ("magma 2\n0 1\n", 3, None),
    ("magma 2\n0 1\n1\n", 3, 2),
    ("magma 2\n0 1\n1 x\n", 3, 3),
    ("magma 2\n0 1\n1 2\n", 3, 3),
    ("group 2\n", 1, 1),
    ("magma\n", 1, None),
    ("magma 0\n", 1, 7),
    ("magma 2 neutral=1\n0 1\n1 0\n", 1, None),
    ("magma 2 color=1\n0 1\n1 0\n", 1, 9),
    ("ring 2 zero=0\nadd:\n0 1\n1 0\nmul:\n0 0\n", 7, None),
    ("ring 2\nadd:\n", 1, None),
    ("ring 2 zero=0\nplus:\n", 2, 1),
])
def test_parse_errors_locate_problem(text, line, col):
    with pytest.raises(FormatError) as exc:
        formats.read_structures(text, path="bad.magma")
    assert exc.value.line == line
    if col is not None:
        assert exc.value.column == col
    assert "bad.magma" in str(exc.value)


def test_empty_file():
    with pytest.raises(FormatError):
        formats.read_structures("# nothing\n")


def test_order_limit():
    with pytest.raises(FormatError):
        formats.read_structures(f"magma {formats.MAX_ORDER + 1}\n")


def test_ring_axioms_are_checked_downstream():
    # parsing only checks shape; the axioms are reported by validate_ring
    from bolmag.ring import validate_ring
    r, = formats.read_structures("ring 2 zero=1\nadd:\n0 1\n1 0\nmul:\n0 0\n0 0\n")
    reps = {rep.property: rep for rep in validate_ring(r)}
    assert not reps["additive-identity"].holds


def test_write_is_deterministic(tmp_path):
    t = CayleyTable(np.array([[0, 1], [1, 1]]))
    a, b = tmp_path / "a.magma", tmp_path / "b.magma"
    formats.write_file(a, t)
    formats.write_file(b, t)
    assert a.read_bytes() == b.read_bytes()
