"""Text formats for geometries, orthogonal arrays, Latin squares and weightings.

Incidence files::

    # comment
    points 7
    name Fano plane
    line 0 1 2
    ...
    sub-points 0 1 2
    sub-lines 0 3

``sub-lines`` refers to lines by their position in the file.  The writer
emits lines in canonical (sorted) order with LF endings, so a canonical
file survives a load/save cycle byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator

from .constructors.arrays import LatinSquare, OrthogonalArray
from .errors import ConstructionError, GeometryError, ParseError, WeightingError
from .geometry import AnnotatedStructure, build_incidence
from .weightings import ZeroSumWeighting


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens, lineno, source, what="index"):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("-").isdigit())
        raise ParseError(f"{what} {bad!r} is not an integer", lineno, source) from None


def parse_incidence(text: str, source: str | None = None) -> AnnotatedStructure:
    n = None
    name = ""
    raw_lines: list[tuple[int, list[int]]] = []
    sub_points: list[int] = []
    sub_lines: list[tuple[int, int]] = []
    for lineno, tok in _lines(text):
        key, args = tok[0], tok[1:]
        if key == "points":
            if n is not None:
                raise ParseError("repeated 'points' header", lineno, source)
            vals = _ints(args, lineno, source, "point count")
            if len(vals) != 1 or vals[0] < 1:
                raise ParseError("'points' takes one positive integer", lineno, source)
            n = vals[0]
        elif key == "name":
            name = " ".join(args)
        elif n is None:
            raise ParseError(f"expected 'points <N>' before {key!r}", lineno, source)
        elif key == "line":
            pts = _ints(args, lineno, source)
            if not pts:
                raise ParseError("empty line", lineno, source)
            for p in pts:
                if not 0 <= p < n:
                    raise ParseError(f"point {p} out of range for {n} points", lineno, source)
            if len(set(pts)) != len(pts):
                raise ParseError("line repeats a point", lineno, source)
            raw_lines.append((lineno, sorted(pts)))
        elif key == "sub-points":
            for p in _ints(args, lineno, source):
                if not 0 <= p < n:
                    raise ParseError(f"sub-point {p} out of range for {n} points", lineno, source)
                sub_points.append(p)
        elif key == "sub-lines":
            sub_lines.extend((lineno, i) for i in _ints(args, lineno, source))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, source)
    if n is None:
        raise ParseError("missing 'points <N>' header", None, source)
    seen = {}
    for lineno, pts in raw_lines:
        key = tuple(pts)
        if key in seen:
            raise ParseError(f"line {key} already given on line {seen[key]}", lineno, source)
        seen[key] = lineno
    try:
        structure = build_incidence(n, [pts for _, pts in raw_lines])
    except GeometryError as exc:
        raise ParseError(str(exc), None, source) from None
    canon = []
    for lineno, i in sub_lines:
        if not 0 <= i < len(raw_lines):
            raise ParseError(f"sub-line {i} does not name a line of the file", lineno, source)
        canon.append(structure.index_of_line(raw_lines[i][1]))
    return AnnotatedStructure(structure, name, frozenset(sub_points), frozenset(canon))


def format_incidence(ann: AnnotatedStructure) -> str:
    s = ann.structure
    out = [f"points {s.point_count}"]
    if ann.name:
        out.append(f"name {ann.name}")
    out.extend("line " + " ".join(map(str, ln)) for ln in s.lines)
    if ann.sub_points:
        out.append("sub-points " + " ".join(map(str, sorted(ann.sub_points))))
    if ann.sub_lines:
        out.append("sub-lines " + " ".join(map(str, sorted(ann.sub_lines))))
    return "\n".join(out) + "\n"


def parse_oa(text: str, source: str | None = None) -> OrthogonalArray:
    it = _lines(text)
    try:
        lineno, tok = next(it)
    except StopIteration:
        raise ParseError("empty orthogonal array file", None, source) from None
    if tok[0] != "oa" or len(tok) != 3:
        raise ParseError("expected header 'oa <m> <n>'", lineno, source)
    m, n = _ints(tok[1:], lineno, source, "size")
    rows = []
    for lineno, tok in it:
        row = _ints(tok, lineno, source, "symbol")
        if len(row) != n * n:
            raise ParseError(f"row has {len(row)} symbols, expected {n * n}", lineno, source)
        rows.append(tuple(row))
    if len(rows) != m:
        raise ParseError(f"{len(rows)} rows, expected {m}", None, source)
    try:
        return OrthogonalArray(tuple(rows), n)
    except ConstructionError as exc:
        raise ParseError(f"not an orthogonal array: {exc}", None, source) from None


def format_oa(A: OrthogonalArray) -> str:
    out = [f"oa {A.m} {A.n}"]
    out.extend(" ".join(map(str, row)) for row in A.rows)
    return "\n".join(out) + "\n"


def parse_latin(text: str, source: str | None = None) -> list[tuple[str, LatinSquare]]:
    """All squares in a file; each block is ``latin <n> [name]`` then n rows."""
    squares = []
    current = None
    for lineno, tok in _lines(text):
        if tok[0] == "latin":
            if current is not None:
                squares.append(_finish_latin(current, source))
            if len(tok) < 2:
                raise ParseError("expected 'latin <n> [name]'", lineno, source)
            (n,) = _ints(tok[1:2], lineno, source, "order")
            name = " ".join(tok[2:]) or f"square{len(squares) + 1}"
            current = (lineno, n, name, [])
        elif current is None:
            raise ParseError("expected 'latin <n>' header", lineno, source)
        else:
            row = _ints(tok, lineno, source, "symbol")
            if len(row) != current[1]:
                raise ParseError(f"row has {len(row)} entries, expected {current[1]}", lineno, source)
            current[3].append(row)
    if current is not None:
        squares.append(_finish_latin(current, source))
    return squares


def _finish_latin(current, source):
    lineno, n, name, rows = current
    if len(rows) != n:
        raise ParseError(f"square {name!r} has {len(rows)} rows, expected {n}", lineno, source)
    try:
        return name, LatinSquare.from_rows(rows)
    except ConstructionError as exc:
        raise ParseError(f"square {name!r} is not Latin: {exc}", lineno, source) from None


def format_latin(squares) -> str:
    out = []
    for name, L in squares:
        out.append(f"latin {L.order} {name}".rstrip())
        out.extend(" ".join(map(str, row)) for row in L.cells)
    return "\n".join(out) + "\n"


def _fraction(token, lineno, source):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {token!r}", lineno, source) from None


def parse_weighting(text: str, point_count: int | None = None, source: str | None = None) -> ZeroSumWeighting:
    """``<point-index> <num>/<den>`` per line, every point exactly once."""
    values: dict[int, Fraction] = {}
    for lineno, tok in _lines(text):
        if len(tok) != 2:
            raise ParseError("expected '<point-index> <value>'", lineno, source)
        (p,) = _ints(tok[:1], lineno, source)
        if p in values:
            raise ParseError(f"point {p} given twice", lineno, source)
        if p < 0 or (point_count is not None and p >= point_count):
            raise ParseError(f"point {p} out of range", lineno, source)
        values[p] = _fraction(tok[1], lineno, source)
    n = point_count if point_count is not None else len(values)
    missing = [p for p in range(n) if p not in values]
    if missing:
        raise ParseError(f"no weight for point {missing[0]}", None, source)
    try:
        return ZeroSumWeighting(tuple(values[p] for p in range(n)))
    except WeightingError as exc:
        raise ParseError(str(exc), None, source) from None


def format_weighting(w: ZeroSumWeighting) -> str:
    return "".join(f"{p} {x.numerator}/{x.denominator}\n" for p, x in enumerate(w.weights))


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path)) from None


def read_incidence(path) -> AnnotatedStructure:
    return parse_incidence(_read(path), str(path))


def read_oa(path) -> OrthogonalArray:
    return parse_oa(_read(path), str(path))


def read_latin(path) -> list[tuple[str, LatinSquare]]:
    return parse_latin(_read(path), str(path))


def read_weighting(path, point_count: int | None = None) -> ZeroSumWeighting:
    return parse_weighting(_read(path), point_count, str(path))


def write_text(path, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


# bundled data ---------------------------------------------------------------


def check_subdesign(ann: AnnotatedStructure, v: int, w: int, k: int) -> None:
    """2-(v,k,1) design whose annotated points carry a 2-(w,k,1) subdesign on the annotated lines."""
    from .constructors.designs import is_t_design

    s = ann.structure
    if s.point_count != v or s.line_sizes() != {k} or not is_t_design(s, 2):
        raise ConstructionError(f"not a 2-({v},{k},1) design")
    if len(ann.sub_points) != w:
        raise ConstructionError(f"annotation has {len(ann.sub_points)} points, expected {w}")
    inside = {i for i, ln in enumerate(s.lines) if ann.sub_points.issuperset(ln)}
    if inside != set(ann.sub_lines) or not is_t_design(s.restrict(ann.sub_points), 2):
        raise ConstructionError(f"annotated points do not carry a 2-({w},{k},1) subdesign")


def check_switched_solid(ann: AnnotatedStructure, q: int = 2) -> None:
    """2-(q^3+q^2+q+1, q+1, 1) design; the annotated point set is a non-block
    that completes the annotated lines to a projective plane of order q."""
    from .constructors.designs import is_t_design

    s = ann.structure
    v = q**3 + q * q + q + 1
    if s.point_count != v or s.line_sizes() != {q + 1} or not is_t_design(s, 2):
        raise ConstructionError(f"not a 2-({v},{q + 1},1) design")
    a = tuple(sorted(ann.sub_points))
    if len(a) != q + 1 or s.has_line(a):
        raise ConstructionError("the annotated point set must be a (q+1)-set that is not a block")
    if len(ann.sub_lines) != q * q + q:
        raise ConstructionError(f"expected {q * q + q} annotated lines")
    pts = set(a)
    for i in ann.sub_lines:
        pts.update(s.lines[i])
    plane = [s.lines[i] for i in ann.sub_lines] + [a]
    relabel = {p: j for j, p in enumerate(sorted(pts))}
    if len(pts) != q * q + q + 1:
        raise ConstructionError("annotated lines do not span a plane")
    sub = build_incidence(len(pts), [[relabel[p] for p in ln] for ln in plane])
    if not is_t_design(sub, 2):
        raise ConstructionError("annotated lines plus the point set do not form a projective plane")


def _witt(ann):
    from .constructors.designs import check_witt_derived

    check_witt_derived(ann.structure)


BUNDLED_VALIDATORS: dict[str, Callable] = {
    "witt22.blocks": _witt,
    "sts19_fano.blocks": lambda ann: check_subdesign(ann, 19, 7, 3),
    "sts25_sts9.blocks": lambda ann: check_subdesign(ann, 25, 9, 3),
    "jt2.blocks": check_switched_solid,
}


def bundled_names() -> list[str]:
    return sorted(
        p.name for p in resources.files("pgmms.data").iterdir() if not p.name.startswith((".", "_"))
    )


def bundled_text(name: str) -> str:
    path = resources.files("pgmms.data") / name
    if not path.is_file():
        raise ParseError(f"no bundled file {name!r}; available: {', '.join(bundled_names())}")
    return path.read_text()


def load_bundled(name: str):
    """Load and validate a bundled data file; the parser is chosen by extension."""
    text = bundled_text(name)
    if name.endswith(".oa"):
        return parse_oa(text, name)
    if name.endswith(".lat"):
        return parse_latin(text, name)
    ann = parse_incidence(text, name)
    check = BUNDLED_VALIDATORS.get(name)
    if check is not None:
        try:
            check(ann)
        except ConstructionError as exc:
            raise ParseError(f"bundled data failed validation: {exc}", None, name) from None
    return ann
