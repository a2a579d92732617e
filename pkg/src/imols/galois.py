"""Finite fields GF(q) and the MOLS / transversal designs they give.

Field elements are indices ``0..q-1``.  For ``q = p^e`` the index
``sum c_j p^j`` stands for the polynomial ``sum c_j x^j`` reduced modulo a
fixed primitive polynomial, so 0 is zero, 1 is one and ``p`` is the
generator ``x``.  Element ``i`` is written as symbol ``i + 1`` in files.
"""
from __future__ import annotations

import warnings
from functools import cached_property, lru_cache

from sympy import factorint

from ._polys import PRIMITIVE_POLYNOMIALS
from .core import BlockDesign, DesignError, GroupedDesign, IncompleteSquare, SquareSet

FIELD_CAP = 2**16


class FieldError(DesignError):
    pass


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q = p**e`` or raise :class:`FieldError`."""
    if q < 2:
        raise FieldError(f"q={q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        shown = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(f.items()))
        raise FieldError(f"q={q} = {shown} is not a prime power")
    ((p, e),) = f.items()
    return p, e


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(factorint(q)) == 1


class FieldTable:
    """Arithmetic of GF(q) on element indices.

    Multiplication goes through log/antilog tables of length ``q``; full
    ``q x q`` addition and multiplication tables are built on first access to
    :attr:`add_table` / :attr:`mul_table`.
    """

    def __init__(self, q: int):
        if q > FIELD_CAP:
            raise FieldError(f"q={q} exceeds the supported cap {FIELD_CAP}")
        p, e = prime_power(q)
        self.q, self.p, self.e = q, p, e
        self.poly: tuple[int, ...] | None = PRIMITIVE_POLYNOMIALS[q] if e > 1 else None
        if e > 1:
            self._exp, self._log = self._build_logs()

    def _build_logs(self) -> tuple[list[int], list[int]]:
        p, e, q = self.p, self.e, self.q
        top = [(-c) % p for c in self.poly]
        exp = [0] * (q - 1)
        log = [-1] * q
        coeffs = [1] + [0] * (e - 1)
        for k in range(q - 1):
            idx = sum(c * p**j for j, c in enumerate(coeffs))
            if log[idx] != -1:
                raise FieldError(f"polynomial for q={q} is not primitive")
            exp[k], log[idx] = idx, k
            lead = coeffs[-1]
            coeffs = [0] + coeffs[:-1]
            if lead:
                coeffs = [(c + lead * t) % p for c, t in zip(coeffs, top)]
        return exp, log

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _undigits(self, ds: list[int]) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._undigits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.add(a, b) for b in range(self.q)) for a in range(self.q))

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.mul(a, b) for b in range(self.q)) for a in range(self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=64)
def field(q: int) -> FieldTable:
    return FieldTable(q)


def _linear_square(F: FieldTable, a: int, b: int) -> IncompleteSquare:
    q = F.q
    cells = tuple(tuple(F.add(F.mul(a, x), F.mul(b, y)) for y in range(q)) for x in range(q))
    return IncompleteSquare(q, frozenset(), cells)


def mols_from_field(q: int) -> SquareSet:
    """The ``q-1`` squares ``L_a(x, y) = a x + y``, ``a = 1..q-1``."""
    F = field(q)
    return SquareSet(q, frozenset(), tuple(_linear_square(F, a, 1) for a in range(1, q)))


def idempotent_mols(q: int) -> SquareSet:
    """The ``q-2`` idempotent squares ``L_a(x, y) = a x + (1-a) y``, ``a = 2..q-1``."""
    F = field(q)
    if q == 2:
        warnings.warn("GF(2) has no a outside {0, 1}: returning an empty set", stacklevel=2)
    return SquareSet(q, frozenset(), tuple(_linear_square(F, a, F.sub(1, a)) for a in range(2, q)))


def td_from_mols(ss: SquareSet) -> GroupedDesign:
    """TD(t+2, n): groups are rows, columns, then one group per square's symbols.

    Point ``g*n + i`` is item ``i`` of group ``g``.
    """
    if ss.hole:
        raise DesignError("td_from_mols needs squares without a hole")
    n, k = ss.order, ss.t + 2
    groups = tuple(tuple(range(g * n, (g + 1) * n)) for g in range(k))
    blocks = []
    for r in range(n):
        for c in range(n):
            syms = [s.cells[r][c] for s in ss.squares]
            if any(x is None for x in syms):
                raise DesignError(f"cell ({r + 1},{c + 1}) is empty")
            blocks.append((r, n + c) + tuple((g + 2) * n + x for g, x in enumerate(syms)))
    return GroupedDesign(n * k, groups, tuple(blocks))


def mols_from_td(d: GroupedDesign) -> SquareSet:
    """Inverse of :func:`td_from_mols`; the first two groups index rows and columns."""
    sizes = {len(g) for g in d.groups}
    if len(sizes) != 1:
        raise DesignError(f"groups are not uniform: sizes {sorted(sizes)}")
    if d.hole_points:
        raise DesignError("transversal design must not have holes")
    (n,) = sizes
    k = d.u
    if k < 2:
        raise DesignError("need at least two groups")
    owner = d.group_of()
    position = {x: i for g in d.groups for i, x in enumerate(g)}
    cells = [[[None] * n for _ in range(n)] for _ in range(k - 2)]
    seen = set()
    for b in d.blocks:
        if len(b) != k or sorted(owner[x] for x in b) != list(range(k)):
            raise DesignError(f"block {[x + 1 for x in b]} is not a transversal")
        pos = [0] * k
        for x in b:
            pos[owner[x]] = position[x]
        r, c = pos[0], pos[1]
        if (r, c) in seen:
            raise DesignError(f"cell ({r + 1},{c + 1}) is covered twice")
        seen.add((r, c))
        for s in range(k - 2):
            cells[s][r][c] = pos[s + 2]
    if len(seen) != n * n:
        raise DesignError(f"only {len(seen)} of {n * n} cells covered")
    squares = tuple(IncompleteSquare(n, frozenset(), tuple(map(tuple, c))) for c in cells)
    return SquareSet(n, frozenset(), squares)


def affine_plane(q: int) -> BlockDesign:
    """AG(2, q) as a resolvable PBD(q^2, {q}), resolved into parallel classes by slope.

    Point ``(x, y)`` has index ``x*q + y``.  Class ``s < q`` holds the lines
    ``y = s x + c``; class ``q`` holds the vertical lines ``x = c``.
    """
    F = field(q)
    classes = []
    for s in range(q):
        classes.append(tuple(tuple(sorted(x * q + F.add(F.mul(s, x), c) for x in range(q))) for c in range(q)))
    classes.append(tuple(tuple(c * q + y for y in range(q)) for c in range(q)))
    blocks = tuple(b for cls in classes for b in cls)
    return BlockDesign(q * q, blocks, frozenset(), tuple(classes))
