"""File formats: a text grid for squares, JSON for designs and plans.

Square files::

    n m
    <hole, 1-based, space separated; blank when m = 0>
    <n rows of n tokens: a symbol 1..n or "." for an empty cell>

A square-set file is several squares, one after another, separated by a blank
line.  Design files are JSON objects with keys in a fixed order and sorted
arrays, so :func:`emit_design` output is byte-stable.
"""
from __future__ import annotations

import json
from typing import Any

import jsonschema
from jsonschema.exceptions import best_match

from .core import BlockDesign, DesignError, GroupedDesign, IncompleteSquare, SquareSet


class FormatError(DesignError):
    pass


# ---------------------------------------------------------------- squares


def emit_square(s: IncompleteSquare) -> str:
    lines = [f"{s.order} {s.m}", " ".join(str(h + 1) for h in sorted(s.hole))]
    for row in s.cells:
        lines.append(" ".join("." if x is None else str(x + 1) for x in row))
    return "\n".join(lines) + "\n"


def emit_square_set(ss: SquareSet) -> str:
    return "\n".join(emit_square(s) for s in ss.squares)


def _ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: {what} must be integers, got {' '.join(tokens)!r}") from None


def _parse_one(lines: list[str], pos: int) -> tuple[IncompleteSquare, int]:
    head = lines[pos].split()
    if len(head) != 2:
        raise FormatError(f"line {pos + 1}: expected 'n m', got {lines[pos]!r}")
    n, m = _ints(head, pos + 1, "'n m'")
    if n < 1 or not 0 <= m <= n:
        raise FormatError(f"line {pos + 1}: need n >= 1 and 0 <= m <= n, got n={n}, m={m}")
    if pos + 1 >= len(lines):
        raise FormatError(f"line {pos + 2}: missing hole line")
    hole = _ints(lines[pos + 1].split(), pos + 2, "hole indices")
    if len(hole) != m or len(set(hole)) != m:
        raise FormatError(f"line {pos + 2}: expected {m} distinct hole indices, got {hole}")
    if any(not 1 <= h <= n for h in hole):
        raise FormatError(f"line {pos + 2}: hole index outside 1..{n}")
    hs = {h - 1 for h in hole}
    rows = []
    for i in range(n):
        lineno = pos + 3 + i
        if lineno > len(lines):
            raise FormatError(f"line {lineno}: expected {n} rows, found {i}")
        toks = lines[lineno - 1].split()
        if len(toks) != n:
            raise FormatError(f"line {lineno}: expected {n} entries, got {len(toks)}")
        row: list[int | None] = []
        for j, tok in enumerate(toks):
            if tok == ".":
                if not (i in hs and j in hs):
                    raise FormatError(f"line {lineno}: cell ({i + 1},{j + 1}) is outside the hole but empty")
                row.append(None)
                continue
            (x,) = _ints([tok], lineno, "symbols")
            if not 1 <= x <= n:
                raise FormatError(f"line {lineno}: symbol {x} in cell ({i + 1},{j + 1}) outside 1..{n}")
            row.append(x - 1)
        rows.append(tuple(row))
    return IncompleteSquare(n, frozenset(hs), tuple(rows)), pos + 2 + n


def parse_square_set(text: str) -> SquareSet:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    squares = []
    pos = 0
    while pos < len(lines):
        if not lines[pos].strip():
            pos += 1
            continue
        s, pos = _parse_one(lines, pos)
        squares.append(s)
    if not squares:
        raise FormatError("no square found")
    first = squares[0]
    for k, s in enumerate(squares[1:], start=2):
        if s.order != first.order or s.hole != first.hole:
            raise FormatError(f"square {k}: order or hole differs from square 1")
    return SquareSet(first.order, first.hole, tuple(squares))


def parse_square(text: str) -> IncompleteSquare:
    ss = parse_square_set(text)
    if ss.t != 1:
        raise FormatError(f"expected one square, found {ss.t}")
    return ss.squares[0]


# ---------------------------------------------------------------- designs

_POINTS = {"type": "array", "items": {"type": "integer", "minimum": 1}}
_BLOCKS = {"type": "array", "items": _POINTS}

BLOCK_DESIGN_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "v": {"type": "integer", "minimum": 1},
        "hole": _POINTS,
        "blocks": _BLOCKS,
        "resolution": {"type": "array", "items": _BLOCKS},
    },
    "required": ["v", "blocks"],
    "additionalProperties": False,
}

GROUPED_DESIGN_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "v": {"type": "integer", "minimum": 1},
        "groups": {"type": "array", "items": {**_POINTS, "minItems": 1}},
        "group_holes": _BLOCKS,
        "blocks": _BLOCKS,
    },
    "required": ["v", "groups", "blocks"],
    "additionalProperties": False,
}


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _check_range(obj: dict[str, Any], keys: tuple[str, ...]) -> None:
    v = obj["v"]

    def walk(x: Any, path: list) -> None:
        if isinstance(x, list):
            for i, y in enumerate(x):
                walk(y, path + [i])
        elif x > v:
            raise FormatError(f"{_path(path)}: point {x} outside 1..{v}")

    for key in keys:
        if key in obj:
            walk(obj[key], [key])


def design_from_json(obj: Any) -> BlockDesign | GroupedDesign:
    grouped = isinstance(obj, dict) and "groups" in obj
    schema = GROUPED_DESIGN_SCHEMA if grouped else BLOCK_DESIGN_SCHEMA
    err = best_match(jsonschema.Draft202012Validator(schema).iter_errors(obj))
    if err is not None:
        raise FormatError(f"{_path(err.absolute_path)}: {err.message}")
    try:
        if grouped:
            _check_range(obj, ("groups", "group_holes", "blocks"))
            holes = obj.get("group_holes")
            if holes is not None and len(holes) != len(obj["groups"]):
                raise FormatError(f"$.group_holes: has {len(holes)} entries for {len(obj['groups'])} groups")
            return GroupedDesign.one_based(obj["v"], obj["groups"], obj["blocks"], holes)
        _check_range(obj, ("hole", "blocks", "resolution"))
        return BlockDesign.one_based(obj["v"], obj["blocks"], obj.get("hole", ()), obj.get("resolution"))
    except FormatError:
        raise
    except DesignError as e:
        raise FormatError(f"$: {e}") from None


def parse_design(text: str) -> BlockDesign | GroupedDesign:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return design_from_json(obj)


def _list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def _field(key: str, rows: list[str]) -> str:
    if not rows:
        return f'  "{key}": []'
    return f'  "{key}": [\n' + ",\n".join("    " + r for r in rows) + "\n  ]"


def emit_design(d: BlockDesign | GroupedDesign) -> str:
    one = lambda b: [x + 1 for x in sorted(b)]  # noqa: E731
    parts = [f'  "v": {d.v}']
    if isinstance(d, GroupedDesign):
        parts.append(_field("groups", [_list(one(g)) for g in d.groups]))
        parts.append(_field("group_holes", [_list(one(h)) for h in d.group_holes]))
        parts.append(_field("blocks", [_list(one(b)) for b in d.blocks]))
    else:
        parts.append(f'  "hole": {_list(one(d.hole))}')
        parts.append(_field("blocks", [_list(one(b)) for b in d.blocks]))
        if d.resolution is not None:
            parts.append(_field("resolution", ["[" + ", ".join(_list(one(b)) for b in c) + "]" for c in d.resolution]))
    return "{\n" + ",\n".join(parts) + "\n}\n"


# ---------------------------------------------------------------- plans / manifests


def emit_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"
