"""Parameter planning: difference decompositions, congruence classes, plan trees.

The asymptotic existence results these plans lean on have no effective
thresholds, so a plan node is either *materialized* (it can be executed into a
verified object at desk scale) or *certificate-only* (it records the exact
hypothesis it relies on and the integer data checked against it).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Sequence

from sympy import factorint
from sympy.ntheory.modular import crt

from .admissibility import imols_bound, ipbd_admissible, ipbd_conditions, ipbd_inequality, pbd_admissible
from .core import (
    CERTIFICATE,
    MATERIALIZED,
    BlockDesign,
    BlockSizeSet,
    ConstructionPlan,
    DesignError,
    IncompleteSquare,
    PlanNode,
    SquareSet,
    as_sizes,
)


class PlanError(RuntimeError):
    """A plan or decomposition cannot be produced at this scale (inputs were valid)."""


class DecompositionError(PlanError):
    pass


# ---------------------------------------------------------------- decompositions


@dataclass(frozen=True)
class Decomposition:
    """``v - w = sum c_k (k-1)`` over an ordering ``k_1..k_n`` of ``K0``.

    ``intermediates[i]`` is the pair ``(S_i + w; S_{i-1} + w)`` with
    ``S_i = sum_{j<=i} c_{k_j} (k_j - 1)``.
    """

    order: tuple[int, ...]
    coefficients: tuple[int, ...]
    v: int
    w: int
    method: str
    intermediates: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        pairs, s = [], 0
        for k, c in zip(self.order, self.coefficients):
            prev = s
            s += c * (k - 1)
            pairs.append((s + self.w, prev + self.w))
        object.__setattr__(self, "intermediates", tuple(pairs))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.order, self.coefficients))


def pair_admissible(v: int, w: int, K: BlockSizeSet) -> bool:
    """IPBD congruences, accepting the degenerate pair ``v = w`` (no blocks needed)."""
    if v == w:
        return (max(w, 1) - 1) % K.alpha == 0
    return ipbd_admissible(v, w, K)


def _prefixes_ok(order: Sequence[int], coeffs: Sequence[int], w: int, K: BlockSizeSet) -> bool:
    s = 0
    for k, c in zip(order, coeffs):
        prev = s
        s += c * (k - 1)
        if not pair_admissible(s + w, prev + w, K):
            return False
    return True


def _solve_y(r: int, mod_r: int, b: int, c: int, a: int) -> tuple[int, int] | None:
    """Smallest ``y >= 0`` with ``y = r (mod mod_r)`` and ``b y = c (mod a)``, plus the period."""
    g = math.gcd(a, b)
    if c % g:
        return None
    a_g = a // g
    y1 = (c // g) * pow(b // g, -1, a_g) % a_g if a_g > 1 else 0
    sol = crt([mod_r, a_g], [r % mod_r, y1], check=True)
    if sol is None:
        return None
    return int(sol[0]), int(sol[1])


def _recipe(order: Sequence[int], c: int, w: int, K: BlockSizeSet, tries: int = 64) -> list[int] | None:
    """Inductive split ``c = a_{l-1} x + (k_l - 1) y``.

    The residue ``y = 1 - 2c - 2w (mod beta')`` is tried first; when the
    resulting pair ``(c - b y + w; w)`` is not admissible the class
    ``y = 0 (mod beta')`` is used, which always makes
    ``(c - by)(c - by + 2w - 1) = c(c + 2w - 1) = 0 (mod beta')``.
    """
    l = len(order)
    if c == 0:
        return [0] * l
    if l == 1:
        b = order[0] - 1
        return [c // b] if c % b == 0 else None
    a = reduce(math.gcd, (k - 1 for k in order[:-1]))
    b = order[-1] - 1
    beta_p = K.beta // math.gcd(a, K.beta)
    for r in ((1 - 2 * c - 2 * w) % beta_p, 0):
        sol = _solve_y(r, beta_p, b, c, a)
        if sol is None:
            continue
        y, period = sol
        for _ in range(tries):
            rest = c - b * y
            if rest < 0:
                break
            if pair_admissible(rest + w, w, K):
                sub = _recipe(order[:-1], rest, w, K, tries)
                if sub is not None:
                    return sub + [y]
            y += period
    return None


def _exhaustive(order: Sequence[int], c: int, w: int, K: BlockSizeSet, cap: int) -> list[int] | None:
    visited = 0
    steps = [k - 1 for k in order]

    def rec(i: int, left: int, acc: list[int]) -> list[int] | None:
        nonlocal visited
        if i == len(steps) - 1:
            visited += 1
            if visited > cap:
                raise DecompositionError(f"exhaustive search exceeded {cap} tuples")
            if left % steps[i]:
                return None
            cand = acc + [left // steps[i]]
            return cand if _prefixes_ok(order, cand, w, K) else None
        for ci in range(left // steps[i] + 1):
            got = rec(i + 1, left - ci * steps[i], acc + [ci])
            if got is not None:
                return got
        return None

    return rec(0, c, [])


def decompose_difference(
    K0: Iterable[int],
    K: BlockSizeSet | Iterable[int],
    v: int,
    w: int,
    *,
    search_cap: int = 10**6,
) -> Decomposition:
    """Write ``v - w`` over ``K0`` so that every prefix pair is admissible for ``K``.

    ``K0`` is used in the order given (sets are sorted ascending).  The
    inductive recipe runs first; if its representatives go negative the
    nonnegative tuples are searched exhaustively (at most ``search_cap``).
    Raises :class:`DesignError` for invalid input and
    :class:`DecompositionError` when nothing works at this size.
    """
    order = tuple(sorted(K0)) if isinstance(K0, (set, frozenset)) else tuple(K0)
    K = as_sizes(K)
    K0s = BlockSizeSet.of(order)
    if not set(order) <= K.sizes:
        raise DesignError(f"K0={sorted(order)} is not a subset of K={sorted(K.sizes)}")
    if K0s.alpha != K.alpha:
        raise DesignError(f"alpha(K0)={K0s.alpha} differs from alpha(K)={K.alpha}")
    if v < w or w < 0:
        raise DesignError(f"need v >= w >= 0, got v={v}, w={w}")
    c = v - w
    if c % K.alpha:
        raise DesignError(f"v-w={c} is not divisible by alpha={K.alpha}")
    if not pair_admissible(v, w, K):
        raise DesignError(f"(v;w)=({v};{w}) is not admissible for K={sorted(K.sizes)}")
    coeffs = _recipe(order, c, w, K)
    method = "recipe"
    if coeffs is None:
        coeffs = _exhaustive(order, c, w, K, search_cap)
        method = "search"
    if coeffs is None:
        raise DecompositionError(f"no decomposition of v-w={c} over {list(order)} with admissible prefixes")
    dec = Decomposition(order, tuple(coeffs), v, w, method)
    assert sum(ci * (k - 1) for k, ci in zip(order, coeffs)) == c
    assert all(pair_admissible(a, b, K) for a, b in dec.intermediates)
    return dec


# ---------------------------------------------------------------- congruences


@dataclass(frozen=True)
class CongruencePlan:
    """Residues of ``u`` and ``h`` modulo ``Mq`` plus the derived IGDD parameters.

    ``w2`` is ``w1`` lifted by multiples of ``Mq`` until ``y >= h`` and
    ``g >= (k-1) h``; then ``y = w2 - h(u-1)``, ``x = y q alpha + 1``,
    ``g = h + x - y`` and ``v2 = g(u-1) + x``.  ``branches`` records, per
    prime power ``p^t || Mq``, whether ``p`` divides ``q alpha - 1``.
    """

    K: BlockSizeSet
    M: int
    q: int
    modulus: int
    v1: int
    w1: int
    u: int
    h: int
    y: int
    x: int
    g: int
    v2: int
    w2: int
    branches: tuple[tuple[int, int, str], ...]
    degenerate: bool

    def eq_uh_residual(self, modulus: int | None = None) -> int:
        """``u(u-1)(qa-1)h - (w1 u (qa-1) + w1 + u - v1)`` reduced mod ``modulus``."""
        mod = self.modulus if modulus is None else modulus
        Q = self.q * self.K.alpha
        u, h = self.u, self.h
        return (u * (u - 1) * (Q - 1) * h - (self.w1 * u * (Q - 1) + self.w1 + u - self.v1)) % mod

    def checks(self) -> dict[str, bool]:
        a, gam = self.K.alpha, self.K.gamma
        out = {f"eq-uh mod {p}^{t}": self.eq_uh_residual(p**t) == 0 for p, t, _ in self.branches}
        out[f"u-1 = 0 mod alpha={a}"] = (self.u - 1) % a == 0
        out[f"(g^2-h^2)u(u-1) = 0 mod gamma={gam}"] = (self.g**2 - self.h**2) * self.u * (self.u - 1) % gam == 0
        out["v2 = v1 mod Mq"] = (self.v2 - self.v1) % self.modulus == 0
        out["w2 = w1 mod Mq"] = (self.w2 - self.w1) % self.modulus == 0
        out["y >= h"] = self.y >= self.h
        return out


def table1_congruences(K: BlockSizeSet | Iterable[int], M: int, q: int, v1: int, w1: int) -> CongruencePlan:
    """Choose ``u, h`` so an IGDD((g;h)^u) filled with IPBD((x;y)) lands on ``(v1; w1) mod Mq``.

    Per prime power ``p^t || Mq``: if ``p`` does not divide ``q alpha - 1``,
    ``u = -(q alpha - 1)^{-1}`` and ``h = -((q alpha - 1) v1 + 1) / (q alpha)``;
    otherwise ``u = (v1 - w1)((q alpha - 1) w1 + 1)^{-1}`` and ``h = 0``.
    The residues are combined by CRT.
    """
    K = as_sizes(K)
    alpha, beta, gamma = K.alpha, K.beta, K.gamma
    if M <= 0 or M % beta:
        raise DesignError(f"M={M} is not a positive multiple of beta={beta}")
    if q < 1 or math.gcd(q, M) != 1:
        raise DesignError(f"gcd(q={q}, M={M}) != 1")
    if (q * alpha + 1) % gamma:
        raise DesignError(f"q alpha + 1 = {q * alpha + 1} is not divisible by gamma={gamma}")
    if (v1 - 1) % q or (w1 - 1) % q:
        raise DesignError(f"need v1 = w1 = 1 mod q={q}")
    if v1 < w1 or not all(ipbd_conditions(v1, w1, K).values()):
        raise DesignError(f"(v1;w1)=({v1};{w1}) is not admissible for K={sorted(K.sizes)}")
    Q = q * alpha
    mod = M * q
    if ((Q - 1) * v1 + 1) % Q:
        raise DesignError(f"(q alpha - 1) v1 + 1 is not divisible by q alpha = {Q}")
    us, hs, mods, branches = [], [], [], []
    for p, t in sorted(factorint(mod).items()):
        pt = p**t
        if (Q - 1) % p:
            u = -pow(Q - 1, -1, pt) % pt
            h = -(((Q - 1) * v1 + 1) // Q) % pt
            branch = "coprime"
        else:
            d = (w1 * (Q - 1) + 1) % pt
            if math.gcd(d, p) != 1:
                raise PlanError(f"(q alpha - 1) w1 + 1 is not invertible mod {p}^{t}")
            u = (v1 - w1) * pow(d, -1, pt) % pt
            h = 0
            branch = "divides"
        if (u * (u - 1) * (Q - 1) * h - (w1 * u * (Q - 1) + w1 + u - v1)) % pt:
            raise AssertionError(f"eq-uh fails mod {p}^{t}")
        us.append(u)
        hs.append(h)
        mods.append(pt)
        branches.append((int(p), int(t), branch))
    u = int(crt(mods, us)[0]) if mods else 0
    h = int(crt(mods, hs)[0]) if mods else 0
    while u < 2:
        u += mod
    k = K.k
    j = max(0, -(-(h * u - w1) // mod))
    while True:
        w2 = w1 + j * mod
        y = w2 - h * (u - 1)
        x = y * Q + 1
        g = h + x - y
        if y >= h and g >= (k - 1) * h:
            break
        j += 1
    plan = CongruencePlan(
        K=K, M=M, q=q, modulus=mod, v1=v1, w1=w1, u=u, h=h, y=y, x=x, g=g,
        v2=g * (u - 1) + x, w2=w2, branches=tuple(branches), degenerate=(v1 - w1) % mod == 0,
    )
    failed = [name for name, ok in plan.checks().items() if not ok]
    if failed:
        raise AssertionError(f"congruence plan fails: {failed}")
    return plan


def find_q(K: BlockSizeSet | Iterable[int], M: int, floor: int = 2, cap: int = 10**6) -> int:
    """Smallest ``q >= floor`` with ``gcd(q, M) = 1``, ``gamma | q alpha + 1`` and PBD(q alpha + 1, K) admissible."""
    K = as_sizes(K)
    if M <= 0 or M % K.beta:
        raise DesignError(f"M={M} is not a positive multiple of beta={K.beta}")
    if floor > cap:
        raise PlanError(f"floor {floor} is above the search cap {cap}")
    for q in range(max(floor, 1), cap + 1):
        if math.gcd(q, M) == 1 and (q * K.alpha + 1) % K.gamma == 0 and pbd_admissible(q * K.alpha + 1, K):
            return q
    raise PlanError(f"no q in [{floor}, {cap}]")


# ---------------------------------------------------------------- ratios


@dataclass(frozen=True)
class RatioParams:
    k: int
    m: int
    n: int
    r: int
    R: frozenset[int]
    c: Fraction
    c_bound_holds: bool
    t_max: Fraction
    t_max_lower: Fraction
    ratio_bound: Fraction
    limit_bound: Fraction


def recur_ratio_params(k: int, m: int, n: int) -> RatioParams:
    """Arithmetic behind the point-hole ratio of the recursive IPBD construction.

    ``r = (k-1)(m-1)/(k-2)``, ``R = {k-1, k^2-1, r}``,
    ``c = (m-1)/(k(k-2)) - (k+1)/k``,
    ``t_max = (n - (c-1)) r + (c-1)(k^2-1) >= (k-1) n ((m-1)/(k-2) - 1)`` and
    ``ratio_bound = (k-1) n (m+1) / t_max + 1``.  ``limit_bound`` is the same
    ratio computed from the lower bound on ``t_max``,
    ``(k-2)(m+1)/(m-k+1) + 1``, which tends to ``k - 1`` as ``m`` grows.
    """
    if k < 3:
        raise DesignError(f"k must be >= 3, got {k}")
    if m % k != k - 1:
        raise DesignError(f"m={m} is not -1 mod k={k}")
    if (m - 1) % (k - 2):
        raise DesignError(f"m={m} is not 1 mod k-2={k - 2}")
    if m <= k - 1:
        raise DesignError(f"m={m} too small: need m > k-1")
    if n < 1:
        raise DesignError(f"n must be positive, got {n}")
    r = (k - 1) * (m - 1) // (k - 2)
    c = Fraction(m - 1, k * (k - 2)) - Fraction(k + 1, k)
    t_max = (n - (c - 1)) * r + (c - 1) * (k * k - 1)
    lower = (k - 1) * n * (Fraction(m - 1, k - 2) - 1)
    c_ok = c < Fraction(n * (k - 2), m - 1)
    ratio = Fraction((k - 1) * n * (m + 1)) / t_max + 1
    limit = Fraction((k - 2) * (m + 1), m - k + 1) + 1
    if c_ok and c >= 1:
        if t_max < lower:
            raise AssertionError(f"t_max={t_max} below its lower bound {lower}")
        if ratio > limit:
            raise AssertionError(f"ratio {ratio} exceeds {limit}")
    return RatioParams(k, m, n, r, frozenset({k - 1, k * k - 1, r}), c, c_ok, t_max, lower, ratio, limit)


@dataclass(frozen=True)
class MolsPlan:
    t: int
    f: int
    K0: frozenset[int]
    K: frozenset[int]
    ratio: int


def mols_plan(t: int) -> MolsPlan:
    """Block sizes for t-IMOLS: ``2^f`` the least power of two above ``t+1``.

    ``K0 = {2^f, 2^(f+1)}``, ``K = K0 + {3^(2f+1)}``, ratio ``2^(2f+1)``.
    """
    if t < 1:
        raise DesignError(f"t must be >= 1, got {t}")
    f = (t + 1).bit_length()
    assert 2**f > t + 1 >= 2 ** (f - 1)
    K0 = frozenset({2**f, 2 ** (f + 1)})
    K = K0 | {3 ** (2 * f + 1)}
    sizes = BlockSizeSet.of(K)
    assert BlockSizeSet.of(K0).alpha == 1 and sizes.alpha == 1, "alpha(K0) = alpha(K) = 1"
    assert sizes.beta == 2, "beta(K) = 2"
    ratio = 2 ** (2 * f + 1)
    assert ratio <= 8 * (t + 1) ** 2
    assert all(k - 2 >= t for k in K), "each k in K carries t idempotent MOLS"
    return MolsPlan(t, f, K0, frozenset(K), ratio)


# ---------------------------------------------------------------- IMOLS plans


def _template_sizes_ok(sizes: Iterable[int], t: int) -> list[int]:
    from .galois import is_prime_power

    return [k for k in sorted(sizes) if not (is_prime_power(k) and k - 2 >= t)]


def _field_route(t: int, n: int, m: int) -> PlanNode:
    from .galois import mols_from_field

    def build() -> SquareSet:
        ss = mols_from_field(n).take(t)
        if m == 0:
            return ss
        # every L_a(x, y) = a x + y has L(0, 0) = 0, so cell (1,1) can become the hole
        hole = frozenset({0})
        squares = tuple(IncompleteSquare(n, hole, s.with_cell(0, 0, None).cells) for s in ss)
        return SquareSet(n, hole, squares)

    child = PlanNode("mols_from_field", {"q": n, "t": t}, MATERIALIZED, build=lambda: mols_from_field(n))
    return PlanNode("imols", {"t": t, "n": n, "m": m}, MATERIALIZED, (child,),
                    ("m <= 1 reduces to ordinary MOLS",), build=build)


def _ipbd_route(t: int, n: int, m: int, ipbd: BlockDesign) -> PlanNode | None:
    from .compositions import glue_ipbd
    from .galois import idempotent_mols
    from .verify import verify_block_design

    if ipbd.v != n or not (len(ipbd.hole) == m or (m <= 1 and len(ipbd.hole) <= 1)):
        raise DesignError(f"supplied design is IPBD(({ipbd.v};{len(ipbd.hole)})), need (({n};{m}))")
    report = verify_block_design(ipbd)
    if not report.ok:
        raise DesignError(f"supplied IPBD is invalid\n{report}")
    sizes = sorted(ipbd.block_sizes())
    if _template_sizes_ok(sizes, t):
        return None
    kids = [PlanNode("ipbd", {"v": n, "w": len(ipbd.hole), "K": sizes}, MATERIALIZED, build=lambda: ipbd)]
    kids += [PlanNode("idempotent_mols", {"q": k, "t": t}, MATERIALIZED, build=lambda k=k: idempotent_mols(k))
             for k in sizes]

    def build() -> SquareSet:
        return glue_ipbd(ipbd, {k: idempotent_mols(k) for k in sizes}, t)

    glue = PlanNode("glue_ipbd", {"t": t, "n": n, "m": m, "K": sizes}, MATERIALIZED, tuple(kids), build=build)
    return PlanNode("imols", {"t": t, "n": n, "m": m}, MATERIALIZED, (glue,), build=glue.build)


def _affine_route(t: int, n: int, m: int) -> PlanNode | None:
    """AG(2, q) plus one point per parallel class: IPBD((q^2+q+1; q+1), {q+1})."""
    from .compositions import glue_ipbd, ipbd_from_resolvable
    from .galois import affine_plane, idempotent_mols, is_prime_power

    q = m - 1
    if q < 2 or n != q * q + q + 1 or not is_prime_power(q) or not is_prime_power(m) or m - 2 < t:
        return None
    plane = PlanNode("affine_plane", {"q": q}, MATERIALIZED, build=lambda: affine_plane(q))
    ipbd = PlanNode("ipbd_from_resolvable", {"v": n, "w": m, "K": [m]}, MATERIALIZED, (plane,),
                    build=lambda: ipbd_from_resolvable(affine_plane(q)))
    tmpl = PlanNode("idempotent_mols", {"q": m, "t": t}, MATERIALIZED, build=lambda: idempotent_mols(m))

    def build() -> SquareSet:
        return glue_ipbd(ipbd.build(), {m: idempotent_mols(m)}, t)

    glue = PlanNode("glue_ipbd", {"t": t, "n": n, "m": m, "K": [m]}, MATERIALIZED, (ipbd, tmpl), build=build)
    return PlanNode("imols", {"t": t, "n": n, "m": m}, MATERIALIZED, (glue,), build=build)


def _ipbd_search_route(t: int, n: int, m: int, budget: int) -> tuple[PlanNode | None, list[str]]:
    """Search IPBD((n; m), {k}) for prime powers k >= t + 2, then glue."""
    from .galois import is_prime_power
    from .search import Outcome, search_block_design

    notes = []
    for k in range(t + 2, n + 1):
        if not is_prime_power(k):
            continue
        ok = ipbd_admissible(n, m, [k]) and ipbd_inequality(n, m, [k]) if m > 1 else pbd_admissible(n, [k])
        if not ok:
            continue
        res = search_block_design(n, m, [k], budget=budget)
        if res.outcome is Outcome.FOUND:
            node = _ipbd_route(t, n, m, res.design)
            if node is not None:
                found = res.design
                search = PlanNode("search_block_design", {**res.params, "budget": budget, "nodes": res.nodes,
                                                          "outcome": res.outcome.value},
                                  MATERIALIZED, build=lambda: found)
                glue = node.children[0]
                glue = PlanNode(glue.step, glue.params, glue.status, (search,) + glue.children[1:],
                                glue.assumptions, glue.build)
                return PlanNode(node.step, node.params, node.status, (glue,), node.assumptions, node.build), notes
        notes.append(f"IPBD(({n};{m}),{{{k}}}) search: {res.outcome.value} after {res.nodes} nodes")
    return None, notes


def _certificate_route(t: int, n: int, m: int, note: tuple[str, ...] = ()) -> PlanNode:
    mp = mols_plan(t)
    K = sorted(mp.K)
    mp_node = PlanNode(
        "mols_plan", {"t": t, "f": mp.f, "K0": sorted(mp.K0), "K": K, "ratio": mp.ratio}, CERTIFICATE,
        assumptions=("alpha(K0) = alpha(K) = 1 and beta(K) = 2", "each k in K is a prime power with k - 2 >= t"),
    )
    wide = m > 1 and n > m
    ipbd_params = {
        "v": n, "w": m, "K": K,
        "admissible": ipbd_admissible(n, m, K) if wide else None,
        "ratio_ok": n >= mp.ratio * m,
    }
    ipbd_node = PlanNode(
        "ipbd", ipbd_params, CERTIFICATE,
        assumptions=(f"IPBD((v;w),K) exists for all sufficiently large admissible v, w with v >= {mp.ratio} w",),
    )
    templates = tuple(PlanNode("idempotent_mols", {"q": k, "t": t}, CERTIFICATE) for k in K)
    glue = PlanNode("glue_ipbd", {"t": t, "n": n, "m": m}, CERTIFICATE, (ipbd_node,) + templates)
    return PlanNode("imols", {"t": t, "n": n, "m": m}, CERTIFICATE, (mp_node, glue), note)


def plan_imols(
    t: int,
    n: int,
    m: int,
    *,
    ipbd: BlockDesign | Callable[[], BlockDesign] | None = None,
    search_budget: int | None = None,
    allow_certificate: bool = True,
) -> ConstructionPlan:
    """Plan t-IMOLS(n; m).

    Routes, in order: a finite field when ``m <= 1`` and ``n`` is a prime
    power; gluing idempotent MOLS on a caller-supplied IPBD((n;m),K); an
    affine plane with one point added per parallel class; when
    ``search_budget`` is given, an IPBD search and then a direct square
    search; otherwise a certificate-only plan through the block sizes of
    :func:`mols_plan`.
    """
    from .galois import is_prime_power

    if not imols_bound(t, n, m):
        raise PlanError(f"n={n} < (t+1)m={(t + 1) * m}: no t-IMOLS(n;m) can exist")
    if m <= 1 and is_prime_power(n) and t <= n - 1:
        return ConstructionPlan(_field_route(t, n, m))
    notes: list[str] = []
    if ipbd is not None:
        design = ipbd() if callable(ipbd) else ipbd
        node = _ipbd_route(t, n, m, design)
        if node is not None:
            return ConstructionPlan(node)
        bad = _template_sizes_ok(design.block_sizes(), t)
        notes.append(f"supplied IPBD uses block sizes {bad} without {t} idempotent MOLS from a field")
    node = _affine_route(t, n, m)
    if node is not None:
        return ConstructionPlan(node)
    if search_budget is not None:
        from .search import Outcome, search_square_set

        node, more = _ipbd_search_route(t, n, m, search_budget)
        if node is not None:
            return ConstructionPlan(node)
        notes += more

        res = search_square_set(n, m, t, budget=search_budget)
        params = {"t": t, "n": n, "m": m, "budget": search_budget, "nodes": res.nodes, "outcome": res.outcome.value}
        if res.outcome is Outcome.FOUND:
            found = res.squares
            oracle = PlanNode("search", params, MATERIALIZED, build=lambda: found)
            return ConstructionPlan(PlanNode("imols", {"t": t, "n": n, "m": m}, MATERIALIZED, (oracle,),
                                             build=lambda: found))
        if res.outcome is Outcome.EXHAUSTED_NONE:
            raise PlanError(f"exhaustive search proves no {t}-IMOLS({n};{m}) with this hole")
        notes.append(f"search found nothing within {search_budget} nodes")
    if not allow_certificate:
        raise PlanError(f"no desk-scale route to {t}-IMOLS({n};{m})" + (f": {'; '.join(notes)}" if notes else ""))
    return ConstructionPlan(_certificate_route(t, n, m, tuple(notes)))
