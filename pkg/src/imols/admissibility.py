"""Necessary divisibility and inequality conditions on design parameters.

All predicates are exact integer arithmetic; none of them claims sufficiency.
"""
from __future__ import annotations

from typing import Iterable

from .core import BlockSizeSet, DesignError, as_sizes

Sizes = BlockSizeSet | Iterable[int]


def alpha_beta(K: Iterable[int]) -> BlockSizeSet:
    """``alpha = gcd{k-1}``, ``beta = gcd{k(k-1)}``, ``gamma = beta / alpha``."""
    return BlockSizeSet.of(K)


def pbd_conditions(v: int, K: Sizes) -> dict[str, bool]:
    K = as_sizes(K)
    return {
        f"v-1 = {v - 1} = 0 mod alpha={K.alpha}": (v - 1) % K.alpha == 0,
        f"v(v-1) = {v * (v - 1)} = 0 mod beta={K.beta}": (v * (v - 1)) % K.beta == 0,
    }


def pbd_admissible(v: int, K: Sizes) -> bool:
    if v < 1:
        raise DesignError(f"v must be positive, got {v}")
    return all(pbd_conditions(v, K).values())


def ipbd_conditions(v: int, w: int, K: Sizes) -> dict[str, bool]:
    """The local and global congruences for an IPBD((v;w),K), without range checks."""
    K = as_sizes(K)
    w = max(w, 1)
    a, b = K.alpha, K.beta
    return {
        f"v-1 = {v - 1} = 0 mod alpha={a}": (v - 1) % a == 0,
        f"w-1 = {w - 1} = 0 mod alpha={a}": (w - 1) % a == 0,
        f"v(v-1)-w(w-1) = {v * (v - 1) - w * (w - 1)} = 0 mod beta={b}": (v * (v - 1) - w * (w - 1)) % b == 0,
    }


def _ipbd_range(v: int, w: int) -> int:
    if w < 0 or v < w:
        raise DesignError(f"need v >= w >= 0, got v={v}, w={w}")
    if v == w:
        raise DesignError(f"v = w = {v}: the hole would be the whole point set")
    return max(w, 1)


def ipbd_admissible(v: int, w: int, K: Sizes) -> bool:
    """Local and global congruences. ``w = 0`` is treated as ``w = 1``."""
    _ipbd_range(v, w)
    return all(ipbd_conditions(v, w, K).values())


def ipbd_inequality(v: int, w: int, K: Sizes) -> bool:
    """``v >= (k-1) w + 1`` with ``k = min K``."""
    w = _ipbd_range(v, w)
    return v >= (as_sizes(K).k - 1) * w + 1


def ipbd_inequality_tight(v: int, w: int, K: Sizes) -> bool:
    w = _ipbd_range(v, w)
    return v == (as_sizes(K).k - 1) * w + 1


def imols_bound(t: int, n: int, m: int) -> bool:
    """``n >= (t+1) m``: necessary for t-IMOLS(n;m)."""
    if t < 1 or m < 0 or n < m:
        raise DesignError(f"need t >= 1 and n >= m >= 0, got t={t}, n={n}, m={m}")
    return n >= (t + 1) * m


def gdd_conditions(g: int, u: int, K: Sizes) -> dict[str, bool]:
    K = as_sizes(K)
    return {
        f"g(u-1) = {g * (u - 1)} = 0 mod alpha={K.alpha}": (g * (u - 1)) % K.alpha == 0,
        f"g^2 u(u-1) = {g * g * u * (u - 1)} = 0 mod beta={K.beta}": (g * g * u * (u - 1)) % K.beta == 0,
    }


def gdd_admissible(g: int, u: int, K: Sizes) -> bool:
    if g < 0 or u < 1:
        raise DesignError(f"need g >= 0 and u >= 1, got g={g}, u={u}")
    return all(gdd_conditions(g, u, K).values())


def igdd_conditions(g: int, h: int, u: int, K: Sizes) -> dict[str, bool]:
    K = as_sizes(K)
    a, b = K.alpha, K.beta
    return {
        f"g(u-1) = {g * (u - 1)} = 0 mod alpha={a}": (g * (u - 1)) % a == 0,
        f"h(u-1) = {h * (u - 1)} = 0 mod alpha={a}": (h * (u - 1)) % a == 0,
        f"(g^2-h^2)u(u-1) = {(g * g - h * h) * u * (u - 1)} = 0 mod beta={b}": ((g * g - h * h) * u * (u - 1)) % b == 0,
        f"g = {g} >= (k-1)h = {(K.k - 1) * h}": g >= (K.k - 1) * h,
    }


def igdd_admissible(g: int, h: int, u: int, K: Sizes) -> bool:
    if not (g >= h >= 0) or u < 1:
        raise DesignError(f"need g >= h >= 0 and u >= 1, got g={g}, h={h}, u={u}")
    return all(igdd_conditions(g, h, u, K).values())


def grouped_type_conditions(gtype: Iterable[tuple[int, int]], K: Sizes) -> dict[str, bool]:
    """Congruences for a GDD/IGDD of arbitrary type ``[(g_i; h_i)]``.

    A point outside every hole in group i sees ``v - g_i`` partners; a hole
    point of group i sees ``(v - g_i) - (w - h_i)``; twice the number of
    covered pairs is ``v^2 - sum g_i^2 - (w^2 - sum h_i^2)``.  For uniform
    types these reduce to the ``g^u`` and ``(g;h)^u`` conditions.
    """
    K = as_sizes(K)
    gtype = list(gtype)
    v = sum(g for g, _ in gtype)
    w = sum(h for _, h in gtype)
    out: dict[str, bool] = {}
    for g, h in sorted(set(gtype)):
        if g > h:
            out[f"group ({g};{h}): v-g = {v - g} = 0 mod alpha={K.alpha}"] = (v - g) % K.alpha == 0
        if h:
            r = (v - g) - (w - h)
            out[f"group ({g};{h}): hole point degree {r} = 0 mod alpha={K.alpha}"] = r % K.alpha == 0
    twice = v * v - sum(g * g for g, _ in gtype) - (w * w - sum(h * h for _, h in gtype))
    out[f"2 * covered pairs = {twice} = 0 mod beta={K.beta}"] = twice % K.beta == 0
    return out


def rpbd_admissible(v: int, k: int) -> bool:
    """Resolvable PBD(v,{k}) needs ``v = k mod k(k-1)``."""
    if k < 2 or v < k:
        raise DesignError(f"need v >= k >= 2, got v={v}, k={k}")
    return (v - k) % (k * (k - 1)) == 0


def design_conditions(design, K: Sizes | None = None) -> dict[str, bool]:
    """All necessary conditions that apply to a concrete design.

    Dispatches on the kind: PBD / IPBD (plus the hole-size inequality) for
    :class:`BlockDesign`, type congruences (plus ``v - g >= (k-1)(w - h)``
    per group with non-hole points) for :class:`GroupedDesign`, and the
    counting bound for a square set.
    ``K`` defaults to the block sizes actually used.
    """
    from .core import BlockDesign, GroupedDesign, SquareSet

    if isinstance(design, SquareSet):
        if design.t == 0:
            return {}
        return {"n >= (t+1)m": imols_bound(design.t, design.order, len(design.hole))}
    if not isinstance(design, (BlockDesign, GroupedDesign)):
        raise TypeError(f"no conditions for {type(design).__name__}")
    sizes = design.block_sizes() if K is None else as_sizes(K).sizes
    if not sizes:
        return {}
    K = as_sizes(sizes)
    if isinstance(design, BlockDesign):
        v, w = design.v, len(design.hole)
        if w <= 1:
            return pbd_conditions(v, K)
        out = ipbd_conditions(v, w, K)
        out[f"v={v} >= (k-1)w+1 = {(K.k - 1) * w + 1}"] = ipbd_inequality(v, w, K)
        return out
    out = grouped_type_conditions(design.type, K)
    v, w = design.v, len(design.hole_points)
    # a non-hole point meets each foreign hole point in its own block
    for g, h in sorted(set(design.type)):
        if w and g > h:
            out[f"group ({g};{h}): v-g >= (k-1)(w-h)"] = v - g >= (K.k - 1) * (w - h)
    return out
