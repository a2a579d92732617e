"""Exact checks of the design axioms.

Every check scans exhaustively and collects all violations.  Pair coverage is
counted in a dense ``v x v`` table, so memory is O(v^2).  Messages use 1-based
labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .admissibility import imols_bound
from .core import BlockDesign, BlockSizeSet, DesignError, GroupedDesign, IncompleteSquare, SquareSet, as_sizes

MAX_LISTED = 50


@dataclass(frozen=True)
class Report:
    subject: str
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: PASS"
        shown = list(self.violations[:MAX_LISTED])
        more = len(self.violations) - len(shown)
        lines = [f"{self.subject}: FAIL ({len(self.violations)} violations)"]
        lines += [f"  - {v}" for v in shown]
        if more:
            lines.append(f"  ... and {more} more")
        return "\n".join(lines)


def _cell(i: int, j: int) -> str:
    return f"({i + 1},{j + 1})"


def verify_incomplete_latin(s: IncompleteSquare) -> Report:
    n, hole = s.order, s.hole
    bad: list[str] = []
    for i in range(n):
        for j in range(n):
            x = s.cells[i][j]
            in_hole = i in hole and j in hole
            if in_hole and x is not None:
                bad.append(f"cell {_cell(i, j)} lies in the hole but holds {x + 1}")
            elif not in_hole and x is None:
                bad.append(f"cell {_cell(i, j)} is outside the hole but empty")
            elif x is not None and x in hole and (i in hole or j in hole):
                line = f"row {i + 1}" if i in hole else f"column {j + 1}"
                bad.append(f"hole symbol {x + 1} at {_cell(i, j)} in hole {line}")
    for i in range(n):
        for label, line in (("row", [s.cells[i][j] for j in range(n)]), ("column", [s.cells[j][i] for j in range(n)])):
            seen: set[int] = set()
            for x in line:
                if x is None:
                    continue
                if x in seen:
                    bad.append(f"{label} {i + 1} repeats symbol {x + 1}")
                seen.add(x)
    return Report(f"incomplete latin square (n={n}, m={len(hole)})", tuple(bad))


def verify_orthogonal(a: IncompleteSquare, b: IncompleteSquare) -> Report:
    if a.order != b.order or a.hole != b.hole:
        raise DesignError("orthogonality needs squares with the same order and hole")
    n, hole = a.order, a.hole
    bad: list[str] = []
    first: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(n):
        for j in range(n):
            if i in hole and j in hole:
                continue
            x, y = a.cells[i][j], b.cells[i][j]
            if x is None or y is None:
                bad.append(f"cell {_cell(i, j)} is empty in one square")
                continue
            if x in hole and y in hole:
                bad.append(f"pair ({x + 1},{y + 1}) at {_cell(i, j)} lies in the hole")
            if (x, y) in first:
                bad.append(f"pair ({x + 1},{y + 1}) at {_cell(i, j)} repeats {_cell(*first[(x, y)])}")
            else:
                first[(x, y)] = (i, j)
    expected = n * n - len(hole) ** 2
    if not bad and len(first) != expected:
        bad.append(f"{len(first)} distinct pairs, expected {expected}")
    return Report("orthogonality", tuple(bad))


def verify_square_set(ss: SquareSet) -> Report:
    bad: list[str] = []
    for k, s in enumerate(ss.squares):
        bad += [f"square {k + 1}: {v}" for v in verify_incomplete_latin(s).violations]
    for k, l in combinations(range(ss.t), 2):
        bad += [f"squares {k + 1},{l + 1}: {v}" for v in verify_orthogonal(ss[k], ss[l]).violations]
    if not bad and ss.t and not imols_bound(ss.t, ss.order, len(ss.hole)):
        bad.append(f"n={ss.order} < (t+1)m = {(ss.t + 1) * len(ss.hole)}")
    return Report(f"{ss.t}-IMOLS({ss.order};{len(ss.hole)})", tuple(bad))


def verify_idempotent(s: IncompleteSquare) -> Report:
    bad = []
    for i in range(s.order):
        x = s.cells[i][i]
        if i in s.hole:
            if x is not None:
                bad.append(f"diagonal hole cell {_cell(i, i)} holds {x + 1}")
        elif x != i:
            bad.append(f"L{_cell(i, i)} = {None if x is None else x + 1}, expected {i + 1}")
    return Report("idempotence", tuple(bad))


def _check_sizes(blocks: Iterable[tuple[int, ...]], K: BlockSizeSet | None, bad: list[str]) -> None:
    if K is None:
        return
    for b in blocks:
        if len(b) not in K.sizes:
            bad.append(f"block {[x + 1 for x in b]} has size {len(b)} not in K={sorted(K.sizes)}")


def _pair_counts(v: int, blocks: Iterable[tuple[int, ...]]) -> list[bytearray]:
    counts = [bytearray(v) for _ in range(v)]
    for b in blocks:
        for x, y in combinations(b, 2):
            row = counts[x]
            if row[y] < 255:
                row[y] += 1
    return counts


def verify_block_design(d: BlockDesign, K: BlockSizeSet | Iterable[int] | None = None) -> Report:
    """PBD axioms when the hole is empty (or a single point), IPBD axioms otherwise.

    ``K=None`` skips the block-size check.
    """
    K = None if K is None else as_sizes(K)
    bad: list[str] = []
    _check_sizes(d.blocks, K, bad)
    hole = d.hole
    counts = _pair_counts(d.v, d.blocks)
    for x in range(d.v):
        row = counts[x]
        for y in range(x + 1, d.v):
            c = row[y]
            if x in hole and y in hole:
                if c:
                    bad.append(f"hole pair {{{x + 1},{y + 1}}} covered {c} times")
            elif c != 1:
                bad.append(f"pair {{{x + 1},{y + 1}}} covered {c} times")
    kind = f"IPBD(({d.v};{len(hole)}))" if len(hole) > 1 else f"PBD({d.v})"
    return Report(kind, tuple(bad))


def verify_grouped_design(d: GroupedDesign, K: BlockSizeSet | Iterable[int] | None = None) -> Report:
    K = None if K is None else as_sizes(K)
    bad: list[str] = []
    _check_sizes(d.blocks, K, bad)
    owner = d.group_of()
    holes = d.hole_points
    for b in d.blocks:
        gs = [owner[x] for x in b]
        if len(set(gs)) != len(gs):
            bad.append(f"block {[x + 1 for x in b]} meets a group twice")
    counts = _pair_counts(d.v, d.blocks)
    for x in range(d.v):
        row = counts[x]
        for y in range(x + 1, d.v):
            c = row[y]
            if owner[x] == owner[y] or (x in holes and y in holes):
                if c and owner[x] != owner[y]:
                    bad.append(f"hole pair {{{x + 1},{y + 1}}} covered {c} times")
            elif c != 1:
                bad.append(f"cross pair {{{x + 1},{y + 1}}} covered {c} times")
    kind = "GDD" if d.is_gdd() else "IGDD"
    return Report(f"{kind} type {list(d.type)}", tuple(bad))


def verify_resolution(d: BlockDesign) -> Report:
    if d.resolution is None:
        raise DesignError("design has no resolution")
    bad = []
    everything = list(range(d.v))
    for c, cls in enumerate(d.resolution):
        pts = sorted(x for b in cls for x in b)
        if pts != everything:
            bad.append(f"class {c + 1} is not a partition of the points")
    return Report(f"resolution ({len(d.resolution)} classes)", tuple(bad))
