"""Immutable domain types: incomplete squares, block designs, grouped designs.

Everything is 0-based internally. The ``one_based`` constructors and the
``rows()`` / ``one_based_blocks()`` accessors exist for callers who think in
the usual ``[n] = {1, ..., n}`` labelling; file formats convert at the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Sequence

Block = tuple[int, ...]


class DesignError(ValueError):
    """Structurally malformed input (wrong shapes, repeated points, bad holes)."""


def _sorted_block(block: Iterable[int], v: int, where: str) -> Block:
    pts = tuple(sorted(int(x) for x in block))
    if len(set(pts)) != len(pts):
        raise DesignError(f"{where}: repeated point in block {list(pts)}")
    if len(pts) < 2:
        raise DesignError(f"{where}: block {list(pts)} has size < 2")
    if pts and (pts[0] < 0 or pts[-1] >= v):
        raise DesignError(f"{where}: block {list(pts)} has a point outside 0..{v - 1}")
    return pts


# ---------------------------------------------------------------- squares


@dataclass(frozen=True)
class IncompleteSquare:
    """An ``n x n`` array with a hole ``M``.

    ``cells[i][j]`` is a 0-based symbol or ``None`` for an empty cell.  Only the
    shape and symbol range are enforced here; the latin and hole properties are
    checked by :func:`imols.verify.verify_incomplete_latin`, so that broken
    squares can still be represented and diagnosed.
    """

    order: int
    hole: frozenset[int]
    cells: tuple[tuple[int | None, ...], ...]

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise DesignError(f"order must be positive, got {n}")
        hole = frozenset(int(x) for x in self.hole)
        if any(x < 0 or x >= n for x in hole):
            raise DesignError(f"hole {sorted(hole)} not inside 0..{n - 1}")
        cells = tuple(tuple(row) for row in self.cells)
        if len(cells) != n or any(len(row) != n for row in cells):
            raise DesignError(f"cells must be {n}x{n}")
        for i, row in enumerate(cells):
            for j, x in enumerate(row):
                if x is not None and not (0 <= x < n):
                    raise DesignError(f"cell ({i + 1},{j + 1}) holds symbol {x + 1} outside 1..{n}")
        object.__setattr__(self, "hole", hole)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def one_based(cls, rows: Sequence[Sequence[int | None]], hole: Iterable[int] = ()) -> IncompleteSquare:
        """Build from 1-based rows; ``None`` or ``0`` marks an empty cell."""
        cells = tuple(tuple(None if not x else int(x) - 1 for x in row) for row in rows)
        return cls(len(cells), frozenset(int(h) - 1 for h in hole), cells)

    def rows(self) -> list[list[int | None]]:
        return [[None if x is None else x + 1 for x in row] for row in self.cells]

    @property
    def m(self) -> int:
        return len(self.hole)

    def __getitem__(self, ij: tuple[int, int]) -> int | None:
        i, j = ij
        return self.cells[i][j]

    def with_cell(self, i: int, j: int, value: int | None) -> IncompleteSquare:
        cells = [list(r) for r in self.cells]
        cells[i][j] = value
        return IncompleteSquare(self.order, self.hole, tuple(map(tuple, cells)))


@dataclass(frozen=True)
class SquareSet:
    """``t`` incomplete squares on a shared order and hole.

    ``t == 0`` is allowed so that degenerate cases (``TD(2, n)``, ``q = 2`` in
    :func:`imols.galois.idempotent_mols`) have a value.
    """

    order: int
    hole: frozenset[int]
    squares: tuple[IncompleteSquare, ...] = ()

    def __post_init__(self) -> None:
        hole = frozenset(self.hole)
        squares = tuple(self.squares)
        for s in squares:
            if s.order != self.order or s.hole != hole:
                raise DesignError("all squares in a set must share order and hole")
        object.__setattr__(self, "hole", hole)
        object.__setattr__(self, "squares", squares)

    @classmethod
    def of(cls, squares: Sequence[IncompleteSquare]) -> SquareSet:
        if not squares:
            raise DesignError("use SquareSet(order, hole) for an empty set")
        return cls(squares[0].order, squares[0].hole, tuple(squares))

    @property
    def t(self) -> int:
        return len(self.squares)

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)

    def __getitem__(self, i: int) -> IncompleteSquare:
        return self.squares[i]

    def take(self, t: int) -> SquareSet:
        if t > self.t:
            raise DesignError(f"asked for {t} squares, only {self.t} available")
        return SquareSet(self.order, self.hole, self.squares[:t])


# ---------------------------------------------------------------- designs


@dataclass(frozen=True)
class BlockDesign:
    """Points ``0..v-1``, an optional hole, blocks, and an optional resolution.

    Blocks are stored sorted, in lexicographic order, so two designs with the
    same block multiset compare equal.  A resolution is a tuple of parallel
    classes (each a sorted tuple of blocks) whose union must be the block list.
    """

    v: int
    blocks: tuple[Block, ...] = ()
    hole: frozenset[int] = frozenset()
    resolution: tuple[tuple[Block, ...], ...] | None = None

    def __post_init__(self) -> None:
        v = self.v
        if v < 1:
            raise DesignError(f"v must be positive, got {v}")
        hole = frozenset(int(x) for x in self.hole)
        if any(x < 0 or x >= v for x in hole):
            raise DesignError(f"hole {sorted(hole)} not inside 0..{v - 1}")
        blocks = tuple(sorted(_sorted_block(b, v, f"blocks[{i}]") for i, b in enumerate(self.blocks)))
        resolution = self.resolution
        if resolution is not None:
            classes = tuple(
                sorted(
                    tuple(sorted(_sorted_block(b, v, f"resolution[{c}][{i}]") for i, b in enumerate(cls)))
                    for c, cls in enumerate(resolution)
                )
            )
            if sorted(b for cls in classes for b in cls) != list(blocks):
                raise DesignError("resolution classes do not use exactly the design's blocks")
            resolution = classes
        object.__setattr__(self, "hole", hole)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "resolution", resolution)

    @classmethod
    def one_based(
        cls,
        v: int,
        blocks: Iterable[Iterable[int]],
        hole: Iterable[int] = (),
        resolution: Iterable[Iterable[Iterable[int]]] | None = None,
    ) -> BlockDesign:
        shift = lambda b: tuple(int(x) - 1 for x in b)  # noqa: E731
        res = None if resolution is None else tuple(tuple(shift(b) for b in c) for c in resolution)
        return cls(v, tuple(shift(b) for b in blocks), frozenset(int(h) - 1 for h in hole), res)

    def one_based_blocks(self) -> list[list[int]]:
        return [[x + 1 for x in b] for b in self.blocks]

    @property
    def w(self) -> int:
        return len(self.hole)

    def block_sizes(self) -> frozenset[int]:
        return frozenset(len(b) for b in self.blocks)


@dataclass(frozen=True)
class GroupedDesign:
    """Points ``0..v-1`` partitioned into groups, each with a (possibly empty) hole.

    Covers GDDs (all holes empty), IGDDs and transversal designs.  Groups are
    stored sorted and ordered by smallest point; ``group_holes[i]`` belongs to
    ``groups[i]``.
    """

    v: int
    groups: tuple[Block, ...]
    blocks: tuple[Block, ...] = ()
    group_holes: tuple[frozenset[int], ...] | None = None

    def __post_init__(self) -> None:
        v = self.v
        if v < 1:
            raise DesignError(f"v must be positive, got {v}")
        raw_groups = [tuple(sorted(int(x) for x in g)) for g in self.groups]
        holes = self.group_holes
        if holes is None:
            holes = tuple(frozenset() for _ in raw_groups)
        if len(holes) != len(raw_groups):
            raise DesignError("group_holes must align with groups")
        seen: list[int] = sorted(x for g in raw_groups for x in g)
        if seen != list(range(v)):
            raise DesignError(f"groups do not partition 0..{v - 1}")
        if any(not g for g in raw_groups):
            raise DesignError("empty group")
        pairs = []
        for i, (g, h) in enumerate(zip(raw_groups, holes)):
            h = frozenset(int(x) for x in h)
            if not h <= set(g):
                raise DesignError(f"group_holes[{i}] = {sorted(h)} is not inside group {list(g)}")
            pairs.append((g, h))
        pairs.sort(key=lambda gh: gh[0])
        blocks = tuple(sorted(_sorted_block(b, v, f"blocks[{i}]") for i, b in enumerate(self.blocks)))
        object.__setattr__(self, "groups", tuple(g for g, _ in pairs))
        object.__setattr__(self, "group_holes", tuple(h for _, h in pairs))
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def one_based(
        cls,
        v: int,
        groups: Iterable[Iterable[int]],
        blocks: Iterable[Iterable[int]] = (),
        group_holes: Iterable[Iterable[int]] | None = None,
    ) -> GroupedDesign:
        shift = lambda b: tuple(int(x) - 1 for x in b)  # noqa: E731
        gh = None if group_holes is None else tuple(frozenset(shift(h)) for h in group_holes)
        return cls(v, tuple(shift(g) for g in groups), tuple(shift(b) for b in blocks), gh)

    @property
    def u(self) -> int:
        return len(self.groups)

    @property
    def type(self) -> tuple[tuple[int, int], ...]:
        """``(|V_i|, |W_i|)`` per group, in canonical group order."""
        return tuple((len(g), len(h)) for g, h in zip(self.groups, self.group_holes))

    @property
    def hole_points(self) -> frozenset[int]:
        return frozenset().union(*self.group_holes) if self.group_holes else frozenset()

    def is_gdd(self) -> bool:
        return not self.hole_points

    def group_of(self) -> list[int]:
        owner = [0] * self.v
        for gi, g in enumerate(self.groups):
            for x in g:
                owner[x] = gi
        return owner

    def block_sizes(self) -> frozenset[int]:
        return frozenset(len(b) for b in self.blocks)


def canonicalize(design: BlockDesign | GroupedDesign) -> BlockDesign | GroupedDesign:
    """Return the canonical form of ``design`` (sorted blocks, groups, classes).

    Construction already canonicalizes, so this re-runs validation and is
    idempotent; designs are equal iff their canonical forms are equal.
    """
    if isinstance(design, BlockDesign):
        return BlockDesign(design.v, design.blocks, design.hole, design.resolution)
    if isinstance(design, GroupedDesign):
        return GroupedDesign(design.v, design.groups, design.blocks, design.group_holes)
    raise TypeError(f"cannot canonicalize {type(design).__name__}")


# ---------------------------------------------------------------- block sizes


@dataclass(frozen=True)
class BlockSizeSet:
    sizes: frozenset[int]
    alpha: int
    beta: int
    gamma: int

    @classmethod
    def of(cls, sizes: Iterable[int]) -> BlockSizeSet:
        ks = frozenset(int(k) for k in sizes)
        if not ks:
            raise DesignError("block size set K is empty")
        if min(ks) < 2:
            raise DesignError(f"block sizes must be >= 2, got {sorted(ks)}")
        alpha = reduce(math.gcd, (k - 1 for k in ks))
        beta = reduce(math.gcd, (k * (k - 1) for k in ks))
        gamma = beta // alpha
        if beta % alpha or math.gcd(alpha, gamma) != 1:
            raise AssertionError(f"alpha={alpha}, beta={beta} break gcd(alpha, beta/alpha) = 1")
        return cls(ks, alpha, beta, gamma)

    @property
    def k(self) -> int:
        return min(self.sizes)

    def __contains__(self, k: object) -> bool:
        return k in self.sizes

    def __iter__(self):
        return iter(sorted(self.sizes))


def as_sizes(K: BlockSizeSet | Iterable[int]) -> BlockSizeSet:
    return K if isinstance(K, BlockSizeSet) else BlockSizeSet.of(K)


# ---------------------------------------------------------------- plans

MATERIALIZED = "materialized"
CERTIFICATE = "certificate-only"


@dataclass(frozen=True)
class PlanNode:
    """One named construction step.

    ``build`` is set on materialized nodes and produces the step's output when
    called; it is never serialized.
    """

    step: str
    params: dict[str, Any]
    status: str
    children: tuple[PlanNode, ...] = ()
    assumptions: tuple[str, ...] = ()
    build: Callable[[], Any] | None = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict[str, Any]:
        return {
            "step": self.step,
            "params": _jsonable(self.params),
            "status": self.status,
            "assumptions": list(self.assumptions),
            "children": [c.to_json() for c in self.children],
        }

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class ConstructionPlan:
    root: PlanNode

    @property
    def materialized(self) -> bool:
        return self.root.status == MATERIALIZED

    def execute(self) -> Any:
        if self.root.build is None:
            raise RuntimeError(f"plan '{self.root.step}' is certificate-only and cannot be executed")
        return self.root.build()

    def to_json(self) -> dict[str, Any]:
        return self.root.to_json()


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)
