"""Independent reference constructions used to cross-check the library.

Nothing here imports the package's constructions: each oracle rebuilds its
object from first principles (modular arithmetic, brute force) so agreement
is evidence rather than tautology.
"""
from __future__ import annotations

from itertools import combinations, permutations


def affine_plane_lines(p: int) -> tuple[list[list[int]], list[list[list[int]]]]:
    """AG(2, p) for a prime p by brute-force collinearity.

    Returns 1-based blocks and the parallel classes.  Point ``(x, y)`` is
    ``x*p + y + 1``.
    """
    pts = [(x, y) for x in range(p) for y in range(p)]
    lines: set[frozenset[tuple[int, int]]] = set()
    for a, b in combinations(pts, 2):
        dx, dy = b[0] - a[0], b[1] - a[1]
        lines.add(frozenset(r for r in pts if (dx * (r[1] - a[1]) - dy * (r[0] - a[0])) % p == 0))
    lines_sorted = sorted(sorted(x * p + y + 1 for x, y in line) for line in lines)
    # parallel means equal or disjoint
    classes: list[list[list[int]]] = []
    for line in lines_sorted:
        for cls in classes:
            if all(not set(line) & set(other) for other in cls):
                cls.append(line)
                break
        else:
            classes.append([line])
    return lines_sorted, classes


def round_robin(n: int) -> list[list[list[int]]]:
    """A 1-factorization of K_n (n even) by the circle method, 1-based."""
    assert n % 2 == 0
    inf = n - 1
    rounds = []
    for r in range(n - 1):
        pairs = [sorted([r, inf])]
        for i in range(1, n // 2):
            pairs.append(sorted([(r + i) % (n - 1), (r - i) % (n - 1)]))
        rounds.append([[x + 1 for x in p] for p in pairs])
    return rounds


def isomorphic(blocks_a: list[list[int]], blocks_b: list[list[int]], v: int) -> bool:
    """Brute-force isomorphism over all v! relabelings (small v only)."""
    target = sorted(tuple(sorted(b)) for b in blocks_b)
    for perm in permutations(range(1, v + 1)):
        image = sorted(tuple(sorted(perm[x - 1] for x in b)) for b in blocks_a)
        if image == target:
            return True
    return False


def pair_multiplicities(v: int, blocks: list[list[int]]) -> dict[tuple[int, int], int]:
    count = {pair: 0 for pair in combinations(range(1, v + 1), 2)}
    for b in blocks:
        for pair in combinations(sorted(b), 2):
            count[pair] += 1
    return count


# ---------------------------------------------------------------- polynomials over Z_p


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """Multiply residues a, b (length e) modulo monic f (length e+1, low first)."""
    e = len(f) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for j in range(e + 1):
                prod[d - e + j] = (prod[d - e + j] - c * f[j]) % p
    return prod[:e]


def _polypow_x(n: int, f: list[int], p: int) -> list[int]:
    e = len(f) - 1
    result = [1] + [0] * (e - 1)
    base = [0, 1] + [0] * (e - 2) if e > 1 else [(-f[0]) % p]
    while n:
        if n & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        n >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive(lower: list[int], p: int) -> bool:
    """x has order p^e - 1 modulo x^e + sum lower[j] x^j."""
    f = list(lower) + [1]
    e = len(lower)
    q = p**e
    one = [1] + [0] * (e - 1)
    if _polypow_x(q - 1, f, p) != one:
        return False
    return all(_polypow_x((q - 1) // r, f, p) != one for r in _prime_factors(q - 1))


def first_primitive(p: int, e: int) -> tuple[int, ...]:
    """The primitive polynomial with the smallest code sum c_j p^j."""
    for code in range(1, p**e):
        lower = [(code // p**j) % p for j in range(e)]
        if lower[0] and is_primitive(lower, p):
            return tuple(lower)
    raise AssertionError("no primitive polynomial")


def incomplete_latin_squares(n: int, m: int) -> list[tuple[tuple[int | None, ...], ...]]:
    """All incomplete latin squares of order n with hole 0..m-1, by plain cell-order backtracking."""
    hole = set(range(m))
    cells = [(i, j) for i in range(n) for j in range(n) if not (i in hole and j in hole)]
    grid: list[list[int | None]] = [[None] * n for _ in range(n)]
    out = []

    def rec(k: int) -> None:
        if k == len(cells):
            out.append(tuple(tuple(r) for r in grid))
            return
        i, j = cells[k]
        for x in range(n):
            if (i in hole or j in hole) and x in hole:
                continue
            if x in grid[i] or any(grid[r][j] == x for r in range(n)):
                continue
            grid[i][j] = x
            rec(k + 1)
            grid[i][j] = None

    rec(0)
    return out


def imols_exist(n: int, m: int, t: int) -> bool:
    """Brute force: is there a pairwise orthogonal t-set of incomplete squares of order n, hole size m?"""
    hole = set(range(m))
    squares = incomplete_latin_squares(n, m)
    cells = [(i, j) for i in range(n) for j in range(n) if not (i in hole and j in hole)]

    def orth(a, b) -> bool:
        pairs = {(a[i][j], b[i][j]) for i, j in cells}
        return len(pairs) == len(cells) and not any(x in hole and y in hole for x, y in pairs)

    def extend(chosen: list[int], start: int) -> bool:
        if len(chosen) == t:
            return True
        for k in range(start, len(squares)):
            # reuse is allowed: only the order-1 square is orthogonal to itself
            if all(orth(squares[c], squares[k]) for c in chosen) and extend(chosen + [k], k):
                return True
        return False

    return extend([], 0)
