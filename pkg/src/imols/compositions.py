"""Gluing, expansion, filling, truncation and replacement constructions.

Every construction takes its ingredients explicitly.  Ingredient *suppliers*
may be a mapping or a callable; a missing key, a ``None`` return or a
``LookupError`` is reported as :class:`MissingIngredient`.  Outputs are
verified before being returned unless ``verify=False``.

All relabelings are order preserving: the i-th smallest point of an
ingredient goes to the i-th smallest point of the block, group or hole it is
placed on.
"""
from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Callable, Iterable, Union

from .core import BlockDesign, BlockSizeSet, DesignError, GroupedDesign, SquareSet, IncompleteSquare
from .verify import Report, verify_block_design, verify_grouped_design, verify_idempotent, verify_resolution, verify_square_set

Supplier = Union[Mapping, Callable[[Any], Any]]
Sizes = Union[BlockSizeSet, Iterable[int], None]


class ConstructionError(RuntimeError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message if report is None else f"{message}\n{report}")
        self.report = report


class MissingIngredient(ConstructionError, LookupError):
    pass


def _supply(supplier: Supplier, key: Any, what: str) -> Any:
    try:
        if isinstance(supplier, Mapping):
            got = supplier.get(key)
        else:
            got = supplier(key)
    except LookupError as exc:
        raise MissingIngredient(f"no {what} for {key!r}: {exc}") from exc
    if got is None:
        raise MissingIngredient(f"no {what} for {key!r}")
    return got


def _check(report: Report, what: str) -> None:
    if not report.ok:
        raise ConstructionError(f"{what} failed verification", report)


# ---------------------------------------------------------------- gluing


def _glue(d: BlockDesign, hole: frozenset[int], templates: Supplier, t: int, verify: bool) -> SquareSet:
    if t < 0:
        raise DesignError(f"t must be >= 0, got {t}")
    if verify:
        _check(verify_block_design(d), "input design")
    n = d.v
    chosen: dict[int, SquareSet] = {}
    for k in sorted(d.block_sizes()):
        tmpl = _supply(templates, k, "template MOLS of order")
        if tmpl.order != k:
            raise ConstructionError(f"template for block size {k} has order {tmpl.order}")
        if tmpl.t < t:
            raise ConstructionError(f"template of order {k} has only {tmpl.t} squares, need {t}")
        for s in tmpl.squares[:t]:
            if tmpl.hole or not verify_idempotent(s).ok:
                raise ConstructionError(f"template of order {k} is not idempotent")
        chosen[k] = tmpl
    grids = [[[None] * n for _ in range(n)] for _ in range(t)]
    for grid in grids:
        for i in range(n):
            if i not in hole:
                grid[i][i] = i
    for b in d.blocks:
        if sum(x in hole for x in b) > 1:
            raise ConstructionError(f"block {[x + 1 for x in b]} meets the hole twice")
        tmpl = chosen[len(b)]
        for s, grid in enumerate(grids):
            cells = tmpl.squares[s].cells
            for a, x in enumerate(b):
                row, trow = grid[x], cells[a]
                for c, y in enumerate(b):
                    if a != c:
                        row[y] = b[trow[c]]
    out = SquareSet(n, hole, tuple(IncompleteSquare(n, hole, tuple(map(tuple, g))) for g in grids))
    if verify:
        _check(verify_square_set(out), "glued squares")
        for s in out.squares:
            _check(verify_idempotent(s), "glued squares")
    return out


def glue_pbd(d: BlockDesign, templates: Supplier, t: int, *, verify: bool = True) -> SquareSet:
    """``t`` idempotent MOLS of order ``v`` glued from idempotent templates on the blocks.

    ``templates`` maps a block size ``k`` to a set of at least ``t`` idempotent
    MOLS of order ``k``; the first ``t`` are used.
    """
    if len(d.hole) > 1:
        raise DesignError("glue_pbd needs a PBD; use glue_ipbd for a design with a hole")
    return _glue(d, frozenset(), templates, t, verify)


def glue_ipbd(d: BlockDesign, templates: Supplier, t: int, *, verify: bool = True) -> SquareSet:
    """t-IMOLS(v; w) from an IPBD((v; w), K) with hole ``W``.

    A block through hole point ``x`` contributes its template with cell
    ``(x, x)`` left empty; diagonal cells of hole points stay empty.
    """
    return _glue(d, d.hole, templates, t, verify)


# ---------------------------------------------------------------- Wilson


def wilson_expand(
    master: GroupedDesign,
    weights: Mapping[int, int] | list[int] | tuple[int, ...],
    ingredients: Supplier,
    K: Sizes = None,
    *,
    verify: bool = True,
) -> GroupedDesign:
    """Weight every master point and replace each block by an ingredient GDD.

    The supplier is asked for a GDD whose group sizes are the positive weights
    on a block, keyed by the sorted tuple of *all* weights on that block
    (zeros included).  Point ``(x, c)`` of the result, ``c < weight(x)``, gets
    index equal to its rank in lexicographic order; groups are the unions of
    the copies of each master group.  The result has type
    ``[sum of weights over V_i]``.
    """
    if not master.is_gdd():
        raise DesignError("master must be a GDD (no group holes)")
    if verify:
        _check(verify_grouped_design(master), "master design")
    w = [int(weights[x]) for x in range(master.v)]
    if any(x < 0 for x in w):
        raise DesignError("weights must be nonnegative")
    index: dict[tuple[int, int], int] = {}
    for x in range(master.v):
        for c in range(w[x]):
            index[(x, c)] = len(index)
    if not index:
        raise DesignError("all weights are zero")
    groups = [tuple(index[(x, c)] for x in g for c in range(w[x])) for g in master.groups]
    groups = [g for g in groups if g]
    blocks: list[tuple[int, ...]] = []
    for b in master.blocks:
        key = tuple(sorted(w[x] for x in b))
        ing = _supply(ingredients, key, "ingredient GDD of type")
        if not isinstance(ing, GroupedDesign) or not ing.is_gdd():
            raise ConstructionError(f"ingredient for {key} is not a GDD")
        if verify:
            _check(verify_grouped_design(ing, K), f"ingredient for weights {key}")
        live = sorted((w[x], x) for x in b if w[x])
        igroups = sorted(ing.groups, key=len)
        if [len(g) for g in igroups] != [wx for wx, _ in live]:
            raise ConstructionError(f"ingredient for weights {key} has type {sorted(len(g) for g in ing.groups)}")
        image: dict[int, int] = {}
        for (wx, x), g in zip(live, igroups):
            for c, y in enumerate(g):
                image[y] = index[(x, c)]
        blocks += [tuple(image[y] for y in ib) for ib in ing.blocks]
    out = GroupedDesign(len(index), tuple(groups), tuple(blocks))
    if verify:
        _check(verify_grouped_design(out, K), "Wilson expansion")
    return out


# ---------------------------------------------------------------- filling


def _place(filler: BlockDesign, normal: list[int], hole_img: list[int]) -> list[tuple[int, ...]]:
    """Map a filler onto ``normal`` (its non-hole points) and ``hole_img`` (its hole)."""
    src_normal = [x for x in range(filler.v) if x not in filler.hole]
    src_hole = sorted(filler.hole)
    img = dict(zip(src_normal, normal))
    img.update(zip(src_hole, hole_img))
    return [tuple(img[x] for x in b) for b in filler.blocks]


def _filler_fits(filler: Any, v: int, w: int, what: str, verify: bool, K: Sizes) -> BlockDesign:
    if not isinstance(filler, BlockDesign):
        raise ConstructionError(f"{what} is not a block design")
    fw = len(filler.hole)
    if filler.v != v or not (fw == w or (w <= 1 and fw <= 1)):
        raise ConstructionError(f"{what} is IPBD(({filler.v};{fw})), need (({v};{w}))")
    if verify:
        _check(verify_block_design(filler, K), what)
    if fw != w:
        # a hole of at most one point carries no pairs; pick the last points
        filler = BlockDesign(filler.v, filler.blocks, frozenset(range(v - w, v)))
    return filler


def fill_gdd(
    d: GroupedDesign,
    group: int,
    i: int,
    fillers: Supplier,
    K: Sizes = None,
    *,
    verify: bool = True,
) -> BlockDesign:
    """Fill every group but ``groups[group]`` after adding ``i`` new points.

    ``fillers`` maps a group size ``g`` to an IPBD((g+i; i), K).  With a
    distinguished group of size ``a`` the result is an IPBD((v+i; a+i), K)
    whose hole is that group plus the new points ``v..v+i-1``.
    """
    if not d.is_gdd():
        raise DesignError("fill_gdd needs a GDD; use fill_igdd for group holes")
    if not 0 <= group < d.u:
        raise DesignError(f"group index {group} out of range 0..{d.u - 1}")
    if i < 0:
        raise DesignError(f"i must be >= 0, got {i}")
    if verify:
        _check(verify_grouped_design(d), "input GDD")
    new = list(range(d.v, d.v + i))
    blocks = list(d.blocks)
    for gi, g in enumerate(d.groups):
        if gi == group:
            continue
        filler = _filler_fits(_supply(fillers, len(g), "filler IPBD for group size"), len(g) + i, i,
                              f"filler for group size {len(g)}", verify, K)
        blocks += _place(filler, list(g), new)
    hole = frozenset(d.groups[group]) | frozenset(new)
    out = BlockDesign(d.v + i, tuple(blocks), hole)
    if verify:
        _check(verify_block_design(out, K), "filled GDD")
    return out


def fill_igdd(d: GroupedDesign, i: int, fillers: Supplier, K: Sizes = None, *, verify: bool = True) -> BlockDesign:
    """Fill every group ``(g; h)`` of an IGDD with an IPBD((g+i; h+i), K).

    The filler's hole lands on the group's hole followed by the ``i`` new
    points.  The result is an IPBD((v+i; w+i), K) whose hole is every group
    hole plus the new points.
    """
    if i < 0:
        raise DesignError(f"i must be >= 0, got {i}")
    if verify:
        _check(verify_grouped_design(d), "input IGDD")
    new = list(range(d.v, d.v + i))
    blocks = list(d.blocks)
    for g, h in zip(d.groups, d.group_holes):
        key = (len(g), len(h))
        filler = _filler_fits(_supply(fillers, key, "filler IPBD for (g;h) ="), len(g) + i, len(h) + i,
                              f"filler for (g;h)={key}", verify, K)
        normal = [x for x in g if x not in h]
        blocks += _place(filler, normal, sorted(h) + new)
    out = BlockDesign(d.v + i, tuple(blocks), d.hole_points | frozenset(new))
    if verify:
        _check(verify_block_design(out, K), "filled IGDD")
    return out


def ipbd_from_resolvable(d: BlockDesign, *, verify: bool = True) -> BlockDesign:
    """Add one point per parallel class to each block of the class.

    From a resolvable design with block size ``k-1`` and ``w`` classes this
    gives an IPBD((v+w; w), {k}) whose hole is the ``w`` new points.
    """
    if d.resolution is None:
        raise DesignError("design has no resolution")
    sizes = d.block_sizes()
    if len(sizes) != 1:
        raise DesignError(f"block sizes {sorted(sizes)} are not uniform")
    if verify:
        _check(verify_resolution(d), "resolution")
        _check(verify_block_design(d), "resolvable design")
    w = len(d.resolution)
    blocks = [b + (d.v + c,) for c, cls in enumerate(d.resolution) for b in cls]
    out = BlockDesign(d.v + w, tuple(blocks), frozenset(range(d.v, d.v + w)))
    if verify:
        _check(verify_block_design(out, {next(iter(sizes)) + 1}), "IPBD from resolvable design")
    return out


def replace_blocks(d: BlockDesign, fillers: Supplier, K: Sizes = None, *, verify: bool = True) -> BlockDesign:
    """Replace each block of size ``s`` by a PBD(s, K) placed on its points."""
    if verify:
        _check(verify_block_design(d), "input design")
    cache: dict[int, BlockDesign] = {}
    blocks: list[tuple[int, ...]] = []
    for b in d.blocks:
        s = len(b)
        if s not in cache:
            cache[s] = _filler_fits(_supply(fillers, s, "PBD filler of order"), s, 0, f"PBD({s}) filler", verify, K)
        blocks += _place(cache[s], list(b), [])
    out = BlockDesign(d.v, tuple(blocks), d.hole)
    if verify:
        _check(verify_block_design(out, K), "block replacement")
    return out


def truncate_group(d: GroupedDesign, group: int, keep: int, *, verify: bool = True) -> GroupedDesign:
    """Delete all but the ``keep`` smallest points of ``groups[group]``.

    Surviving points are renumbered in order; blocks lose the deleted points
    and blocks left with fewer than two points are dropped.
    """
    if not 0 <= group < d.u:
        raise DesignError(f"group index {group} out of range 0..{d.u - 1}")
    g = d.groups[group]
    if not 0 <= keep <= len(g):
        raise DesignError(f"keep={keep} out of range 0..{len(g)}")
    gone = set(g[keep:])
    if len(gone) == d.v:
        raise DesignError("truncation would delete every point")
    renum = {x: i for i, x in enumerate(x for x in range(d.v) if x not in gone)}
    groups, holes = [], []
    for gg, hh in zip(d.groups, d.group_holes):
        kept = [renum[x] for x in gg if x not in gone]
        if kept:
            groups.append(tuple(kept))
            holes.append(frozenset(renum[x] for x in hh if x not in gone))
    blocks = [tuple(renum[x] for x in b if x not in gone) for b in d.blocks]
    out = GroupedDesign(len(renum), tuple(groups), tuple(b for b in blocks if len(b) >= 2), tuple(holes))
    if verify:
        _check(verify_grouped_design(out), "truncated design")
    return out


def fill_hole(outer: BlockDesign, inner: BlockDesign, K: Sizes = None, *, verify: bool = True) -> BlockDesign:
    """Place ``inner`` on the hole of ``outer``.

    The result's hole is the image of ``inner``'s hole, or empty (a PBD) when
    that hole has at most one point.
    """
    hole = sorted(outer.hole)
    if inner.v != len(hole):
        raise DesignError(f"inner design has {inner.v} points, outer hole has {len(hole)}")
    if verify:
        _check(verify_block_design(outer), "outer design")
        _check(verify_block_design(inner), "inner design")
    img = dict(enumerate(hole))
    blocks = list(outer.blocks) + [tuple(img[x] for x in b) for b in inner.blocks]
    new_hole = frozenset(img[x] for x in inner.hole) if len(inner.hole) > 1 else frozenset()
    out = BlockDesign(outer.v, tuple(blocks), new_hole)
    if verify:
        _check(verify_block_design(out, K), "filled hole")
    return out
