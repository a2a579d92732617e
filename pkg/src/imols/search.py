"""Complete backtracking search for small IMOLS and IPBDs.

Both searches are deterministic: the branching order is fixed, so equal
inputs give equal results and equal node counts.  A node is one tentative
assignment (a symbol in a cell, or a block).  The budget caps nodes, not time.

``EXHAUSTED_NONE`` is a proof of nonexistence: the only pruning is by
necessary conditions and by symmetry normalizations that every solution can
be brought into.
"""
from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

from .core import BlockDesign, BlockSizeSet, DesignError, IncompleteSquare, SquareSet, as_sizes


class Outcome(enum.Enum):
    FOUND = "found"
    NONE_WITHIN_BUDGET = "none-within-budget"
    EXHAUSTED_NONE = "exhausted-none"


@dataclass(frozen=True)
class SearchResult:
    kind: str
    params: dict[str, Any]
    budget: int
    outcome: Outcome
    nodes: int
    squares: SquareSet | None = None
    design: BlockDesign | None = None

    def manifest(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "params": self.params,
            "budget": self.budget,
            "nodes": self.nodes,
            "outcome": self.outcome.value,
        }


class _OutOfBudget(Exception):
    pass


def _check_budget(budget: Any) -> int:
    if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
        raise ValueError(f"budget must be a positive integer node count, got {budget!r}")
    return budget


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------- squares


@dataclass
class _SquareSearch:
    n: int
    m: int
    t: int
    budget: int
    nodes: int = 0
    val: list[list[list[int]]] = field(default_factory=list)
    row: list[list[int]] = field(default_factory=list)
    col: list[list[int]] = field(default_factory=list)
    # used[s][r][y]: symbols x already paired (x in square s, y in square r)
    used: list[list[list[int]]] = field(default_factory=list)
    free: list[tuple[int, int, int]] = field(default_factory=list)

    def setup(self) -> bool:
        n, m, t = self.n, self.m, self.t
        self.full = (1 << n) - 1
        self.hole_syms = (1 << m) - 1
        self.val = [[[-1] * n for _ in range(n)] for _ in range(t)]
        self.row = [[0] * n for _ in range(t)]
        self.col = [[0] * n for _ in range(t)]
        self.used = [[[self.hole_syms if y < m else 0 for y in range(n)] for _ in range(t)] for _ in range(t)]
        # symmetry normalization: row 1 of every square, column 1 of the first
        fixed: list[tuple[int, int, int, int]] = []
        for s in range(t):
            fixed += [(s, 0, j, j) for j in range(n) if not (0 < m and j < m)]
        first = 1 if m == 0 else m
        fixed += [(0, i, 0, i) for i in range(first, n)]
        for s, i, j, x in fixed:
            if self.val[s][i][j] == -1:
                if not (self.domain(s, i, j) >> x) & 1:
                    return False
                self.assign(s, i, j, x)
        self.free = [
            (s, i, j)
            for s in range(t)
            for i in range(n)
            for j in range(n)
            if not (i < m and j < m) and self.val[s][i][j] == -1
        ]
        return True

    def domain(self, s: int, i: int, j: int) -> int:
        d = self.full & ~(self.row[s][i] | self.col[s][j])
        if i < self.m or j < self.m:
            d &= ~self.hole_syms
        for r in range(self.t):
            if r != s:
                y = self.val[r][i][j]
                if y >= 0:
                    d &= ~self.used[s][r][y]
        return d

    def assign(self, s: int, i: int, j: int, x: int) -> None:
        self.val[s][i][j] = x
        bit = 1 << x
        self.row[s][i] |= bit
        self.col[s][j] |= bit
        for r in range(self.t):
            if r != s:
                y = self.val[r][i][j]
                if y >= 0:
                    self.used[s][r][y] |= bit
                    self.used[r][s][x] |= 1 << y

    def unassign(self, s: int, i: int, j: int) -> None:
        x = self.val[s][i][j]
        bit = 1 << x
        self.row[s][i] &= ~bit
        self.col[s][j] &= ~bit
        for r in range(self.t):
            if r != s:
                y = self.val[r][i][j]
                if y >= 0:
                    self.used[s][r][y] &= ~bit
                    self.used[r][s][x] &= ~(1 << y)
        self.val[s][i][j] = -1

    def solve(self) -> bool:
        best, best_dom, best_count = None, 0, 1 << 30
        for idx, (s, i, j) in enumerate(self.free):
            if self.val[s][i][j] != -1:
                continue
            d = self.domain(s, i, j)
            c = _popcount(d)
            if c < best_count:
                best, best_dom, best_count = (s, i, j), d, c
                if c == 0:
                    return False
                if c == 1:
                    break
        if best is None:
            return True
        s, i, j = best
        x = 0
        while best_dom:
            if best_dom & 1:
                self.nodes += 1
                if self.nodes > self.budget:
                    raise _OutOfBudget
                self.assign(s, i, j, x)
                if self.solve():
                    return True
                self.unassign(s, i, j)
            best_dom >>= 1
            x += 1
        return False


def search_square_set(
    n: int, m: int, t: int, hole: Iterable[int] | None = None, budget: int = 10**6
) -> SearchResult:
    """Search for t-IMOLS(n; m) with the given 0-based hole (default ``0..m-1``).

    Row 1 of every square is normalized to the identity on the non-hole
    columns, and column 1 of the first square on the non-hole rows.
    """
    budget = _check_budget(budget)
    if n < 1 or not 0 <= m <= n or t < 1:
        raise DesignError(f"need n >= 1, 0 <= m <= n, t >= 1; got n={n}, m={m}, t={t}")
    hole_list = sorted(range(m) if hole is None else {int(x) for x in hole})
    if len(hole_list) != m or any(not 0 <= x < n for x in hole_list):
        raise DesignError(f"hole {hole_list} is not an {m}-subset of 0..{n - 1}")
    params = {"n": n, "m": m, "t": t, "hole": [x + 1 for x in hole_list]}
    if m == n:
        # an all-hole array has no cells; the counting bound rules it out as an IMOLS
        return SearchResult("imols", params, budget, Outcome.EXHAUSTED_NONE, 0)
    # relabel so the hole is 0..m-1, search, then map back
    order = hole_list + [x for x in range(n) if x not in set(hole_list)]
    back = {new: old for new, old in enumerate(order)}
    st = _SquareSearch(n, m, t, budget)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, t * n * n + 1000))
    try:
        found = st.setup() and st.solve()
    except _OutOfBudget:
        return SearchResult("imols", params, budget, Outcome.NONE_WITHIN_BUDGET, st.nodes)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return SearchResult("imols", params, budget, Outcome.EXHAUSTED_NONE, st.nodes)
    hole_set = frozenset(hole_list)
    squares = []
    for s in range(t):
        cells = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                x = st.val[s][i][j]
                if x >= 0:
                    cells[back[i]][back[j]] = back[x]
        squares.append(IncompleteSquare(n, hole_set, tuple(map(tuple, cells))))
    return SearchResult("imols", params, budget, Outcome.FOUND, st.nodes, squares=SquareSet(n, hole_set, tuple(squares)))


# ---------------------------------------------------------------- designs


def _representable(limit: int, steps: Iterable[int]) -> list[bool]:
    ok = [False] * (limit + 1)
    ok[0] = True
    steps = sorted(set(steps))
    for d in range(1, limit + 1):
        ok[d] = any(s <= d and ok[d - s] for s in steps)
    return ok


def search_block_design(
    v: int, w: int, K: BlockSizeSet | Iterable[int], budget: int = 10**6
) -> SearchResult:
    """Search for an IPBD((v; w), K) with hole ``0..w-1`` (a PBD when ``w <= 1``).

    Branches on the lexicographically smallest uncovered pair, trying blocks
    through it by increasing size, then lexicographically.  A point whose
    uncovered degree is not a sum of values ``k - 1`` prunes the branch.
    """
    budget = _check_budget(budget)
    K = as_sizes(K)
    if not v >= w >= 0 or v < 1:
        raise DesignError(f"need v >= w >= 0 and v >= 1, got v={v}, w={w}")
    params = {"v": v, "w": w, "K": sorted(K.sizes)}
    hole = list(range(w)) if w > 1 else []
    sizes = sorted(k for k in K.sizes if k <= v)
    ok_deg = _representable(v, [k - 1 for k in sizes])
    # cov[x]: bit y set when {x, y} must not be used again (self and hole pairs included)
    cov = [1 << x for x in range(v)]
    for x in hole:
        for y in hole:
            cov[x] |= 1 << y
    full = (1 << v) - 1
    blocks: list[tuple[int, ...]] = []
    nodes = 0

    def degree_ok(pts: Iterable[int]) -> bool:
        return all(ok_deg[v - _popcount(cov[p])] for p in pts)

    def place(b: tuple[int, ...], on: bool) -> None:
        mask = 0
        for p in b:
            mask |= 1 << p
        for p in b:
            if on:
                cov[p] |= mask
            else:
                cov[p] &= ~(mask & ~(1 << p))

    def solve() -> bool:
        nonlocal nodes
        x = next((p for p in range(v) if cov[p] != full), None)
        if x is None:
            return True
        free = full & ~cov[x]
        y = (free & -free).bit_length() - 1
        common = [z for z in range(y + 1, v) if not (cov[x] >> z) & 1 and not (cov[y] >> z) & 1]
        common_low = [z for z in range(x + 1, y) if not (cov[x] >> z) & 1 and not (cov[y] >> z) & 1]
        cands = sorted(common_low + common)
        for k in sizes:
            for extra in combinations(cands, k - 2):
                if any((cov[a] >> b) & 1 for a, b in combinations(extra, 2)):
                    continue
                b = tuple(sorted((x, y) + extra))
                nodes += 1
                if nodes > budget:
                    raise _OutOfBudget
                place(b, True)
                blocks.append(b)
                if degree_ok(b) and solve():
                    return True
                blocks.pop()
                place(b, False)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, v * v + 1000))
    try:
        found = degree_ok(range(v)) and solve()
    except _OutOfBudget:
        return SearchResult("design", params, budget, Outcome.NONE_WITHIN_BUDGET, nodes)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return SearchResult("design", params, budget, Outcome.EXHAUSTED_NONE, nodes)
    design = BlockDesign(v, tuple(blocks), frozenset(hole))
    return SearchResult("design", params, budget, Outcome.FOUND, nodes, design=design)
