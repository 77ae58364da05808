"""Text formats for complexes and interval or Betti output.

Boundary format, one cell per line::

    # id dim filtration : faces
    0 0 0 :
    1 0 0 :
    2 1 1 : 0 1

Simplicial format, one simplex per line, every face listed::

    # filtration : vertices
    0 : a
    0 : b
    1 : a b
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Iterable

from .complex import Cell, ChainComplex, validate
from .intervals import PersistenceIntervals

BOUNDARY = "boundary"
SIMPLICIAL = "simplicial"
_EXTENSIONS = {".bnd": BOUNDARY, ".smp": SIMPLICIAL}


class FormatError(ValueError):
    """Malformed input; ``line`` is 1-based, or ``None`` for whole-file problems."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", lineno) from None


def _split_colon(line: str, lineno: int) -> tuple[list[str], list[str]]:
    if ":" not in line:
        raise FormatError("missing ':'", lineno)
    head, tail = line.split(":", 1)
    return head.split(), tail.split()


def parse_boundary_format(text: str, check: bool = True) -> ChainComplex:
    """Parse ``id dim filtration : faces`` lines.

    Faces must be declared on an earlier line with dimension one less.
    With ``check`` the result must also pass :func:`validate` (boundary of
    boundary zero, faces not above cofaces); ``check=False`` leaves that to
    the caller.
    """
    cells: list[Cell] = []
    boundary: dict[int, list[int]] = {}
    dims: dict[int, int] = {}
    lines: dict[int, int] = {}
    for lineno, line in _content_lines(text):
        head, tail = _split_colon(line, lineno)
        if len(head) != 3:
            raise FormatError(f"expected 'id dim filtration' before ':', got {' '.join(head)!r}", lineno)
        cid = _int(head[0], "id", lineno)
        dim = _int(head[1], "dimension", lineno)
        filt = _int(head[2], "filtration", lineno)
        if dim < 0:
            raise FormatError(f"negative dimension {dim}", lineno)
        if cid in dims:
            raise FormatError(f"duplicate id {cid} (first declared on line {lines[cid]})", lineno)
        faces = [_int(t, "face id", lineno) for t in tail]
        if dim == 0 and faces:
            raise FormatError(f"vertex {cid} cannot have faces", lineno)
        for f in faces:
            if f not in dims:
                raise FormatError(f"cell {cid} refers to undeclared face {f}", lineno)
            if dims[f] != dim - 1:
                raise FormatError(f"face {f} of cell {cid} has dimension {dims[f]}, expected {dim - 1}", lineno)
        if len(set(faces)) != len(faces):
            raise FormatError(f"cell {cid} lists a face twice", lineno)
        dims[cid] = dim
        lines[cid] = lineno
        cells.append(Cell(cid, dim, filt))
        boundary[cid] = faces
    complex = ChainComplex(cells, boundary)
    if check:
        report = validate(complex)
        if not report:
            v = report.violations[0]
            raise FormatError(str(report), lines[v.cell])
    return complex


def parse_simplicial_format(text: str) -> ChainComplex:
    """Parse ``filtration : v0 ... vp`` lines into a simplicial chain complex.

    Vertex labels are arbitrary tokens.  Cell ids follow line order.
    """
    entries: dict[frozenset, tuple[int, int, tuple[str, ...]]] = {}
    for lineno, line in _content_lines(text):
        head, verts = _split_colon(line, lineno)
        if len(head) != 1:
            raise FormatError(f"expected a single filtration value before ':', got {' '.join(head)!r}", lineno)
        filt = _int(head[0], "filtration", lineno)
        key = frozenset(verts)
        if not verts or len(key) != len(verts):
            raise FormatError("a simplex needs distinct vertex labels", lineno)
        if key in entries:
            raise FormatError(f"simplex {' '.join(verts)} listed twice "
                              f"(first on line {entries[key][1]})", lineno)
        entries[key] = (filt, lineno, tuple(verts))
    ids = {key: i for i, key in enumerate(entries)}
    cells, boundary = [], {}
    for key, (filt, lineno, verts) in entries.items():
        faces = []
        if len(verts) > 1:
            for v in verts:
                face = key - {v}
                if face not in entries:
                    missing = " ".join(u for u in verts if u != v)
                    raise FormatError(f"face {{{missing}}} of simplex {{{' '.join(verts)}}} is not listed", lineno)
                if entries[face][0] > filt:
                    raise FormatError(
                        f"face {{{' '.join(entries[face][2])}}} has filtration {entries[face][0]}, "
                        f"above its coface's {filt}", lineno)
                faces.append(ids[face])
        cells.append(Cell(ids[key], len(verts) - 1, filt))
        boundary[ids[key]] = faces
    return ChainComplex(cells, boundary)


def infer_format(path: str) -> str:
    for ext, fmt in _EXTENSIONS.items():
        if str(path).endswith(ext):
            return fmt
    raise FormatError(f"cannot infer the format of {path!r}; pass --format")


def parse(text: str, fmt: str, check: bool = True) -> ChainComplex:
    if fmt == BOUNDARY:
        return parse_boundary_format(text, check=check)
    if fmt == SIMPLICIAL:
        return parse_simplicial_format(text)
    raise ValueError(f"unknown format {fmt!r}")


def format_boundary(complex: ChainComplex) -> str:
    """Boundary format text, cells in dimension then id order so faces precede cofaces."""
    out = []
    for c in sorted(complex, key=lambda c: (c.dim, c.id)):
        faces = " ".join(map(str, sorted(complex.faces(c.id))))
        out.append(f"{c.id} {c.dim} {c.filtration} :" + (f" {faces}" if faces else ""))
    return "\n".join(out) + "\n"


def format_value(x) -> str:
    """Integer text, or ``inf``."""
    return "inf" if x == float("inf") else str(int(x))


def format_intervals(intervals: PersistenceIntervals) -> str:
    return "".join(f"{i.dim} {format_value(i.birth)} {format_value(i.death)}\n" for i in intervals)


def format_betti(betti: Iterable[int]) -> str:
    return " ".join(map(str, betti)) + "\n"


def intervals_json(intervals: PersistenceIntervals) -> str:
    return json.dumps({"intervals": [
        {"dim": i.dim, "birth": int(i.birth), "death": "inf" if not i.is_finite else int(i.death)}
        for i in intervals
    ]})


def betti_json(betti: Iterable[int]) -> str:
    return json.dumps({"betti": list(betti)})


def intervals_from_json(text: str) -> PersistenceIntervals:
    out = PersistenceIntervals()
    for item in json.loads(text)["intervals"]:
        out.add(item["dim"], item["birth"], None if item["death"] == "inf" else item["death"])
    return out


def fixture_names() -> list[str]:
    return sorted(p.name for p in resources.files("itermorse.data").iterdir()
                  if p.name.endswith(tuple(_EXTENSIONS)))


def fixture_path(name: str):
    """Path-like handle to a bundled fixture file."""
    return resources.files("itermorse.data").joinpath(name)


def load_fixture(name: str) -> ChainComplex:
    return parse(fixture_path(name).read_text(), infer_format(name))
