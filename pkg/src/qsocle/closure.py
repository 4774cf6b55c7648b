"""Integral closure of monomial ideals.

For a monomial ideal J, x^alpha is integral over J exactly when alpha lies
in the Newton polyhedron conv(generators) + R^d_{>=0}.  Membership is decided
by Fourier-Motzkin elimination over integer-scaled rational rows, so no
verdict ever depends on floating point.  For the diagonal ideal
(x_1^{a_1}, ..., x_d^{a_d}) the polyhedron is {sum alpha_i / a_i >= 1}.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .box import BoxCapExceeded, default_box_cap
from .monomial import (
    MonomialIdeal,
    contains,
    ideal_sum,
    maximal_power,
    power,
)


def in_closure_diagonal(a: Sequence[int], alpha: Sequence[int]) -> bool:
    if len(a) != len(alpha):
        raise ValueError(f"length mismatch: {tuple(a)} vs {tuple(alpha)}")
    if min(a) < 1:
        raise ValueError(f"exponents must be positive, got {tuple(a)}")
    return sum(Fraction(x, n) for x, n in zip(alpha, a)) >= 1


def closure_diagonal(a: Sequence[int]) -> MonomialIdeal:
    """Minimal generators of the closure of the diagonal ideal, by exhaustive search."""
    if min(a) < 1:
        raise ValueError(f"exponents must be positive, got {tuple(a)}")
    pts = [p for p in itertools.product(*(range(n + 1) for n in a)) if in_closure_diagonal(a, p)]
    return MonomialIdeal(pts, len(a))


# A row (coeffs, bound) stands for sum coeffs[j] * x_j <= bound.
Row = tuple[tuple[int, ...], int]


def _normalize(coeffs: Sequence[int], bound: int) -> Row:
    g = math.gcd(*coeffs, bound)
    if g > 1:
        coeffs = [c // g for c in coeffs]
        bound //= g
    return tuple(coeffs), bound


def fm_feasible(rows: Sequence[Row], nvars: int) -> bool:
    """Exact feasibility of a system of integer inequalities over the rationals."""
    system = {_normalize(c, b) for c, b in rows}
    live = set(range(nvars))
    while live:
        for c, b in system:
            if not any(c) and b < 0:
                return False
        system = {(c, b) for c, b in system if any(c)}

        def cost(k):
            pos = sum(1 for c, _ in system if c[k] > 0)
            neg = sum(1 for c, _ in system if c[k] < 0)
            return pos * neg - pos - neg

        k = min(live, key=cost)
        live.discard(k)
        pos = [(c, b) for c, b in system if c[k] > 0]
        neg = [(c, b) for c, b in system if c[k] < 0]
        nxt = {(c, b) for c, b in system if c[k] == 0}
        for (cp, bp), (cn, bn) in itertools.product(pos, neg):
            wp, wn = -cn[k], cp[k]
            coeffs = [wp * x + wn * y for x, y in zip(cp, cn)]
            nxt.add(_normalize(coeffs, wp * bp + wn * bn))
        system = nxt
    return all(b >= 0 for _, b in system)


def in_newton_polyhedron(gens: Sequence[Sequence[int]], alpha: Sequence[int]) -> bool:
    """Is there a convex combination of ``gens`` lying componentwise below alpha?"""
    gens = [tuple(g) for g in gens]
    if not gens:
        return False
    if any(all(x <= y for x, y in zip(g, alpha)) for g in gens):
        return True
    if len(gens) == 1:
        return False
    # eliminate the simplex equality: lambda_last = 1 - sum of the others
    *head, last = gens
    m = len(head)
    rows: list[Row] = []
    for j in range(m):
        rows.append((tuple(-1 if i == j else 0 for i in range(m)), 0))
    rows.append(((1,) * m, 1))
    for i in range(len(alpha)):
        rows.append((tuple(g[i] - last[i] for g in head), alpha[i] - last[i]))
    return fm_feasible(rows, m)


def in_closure_general(J: MonomialIdeal, alpha: Sequence[int]) -> bool:
    if J.is_zero():
        raise ValueError("closure of the zero ideal is not queried")
    if len(alpha) != J.dim:
        raise ValueError(f"point {tuple(alpha)} does not match dim {J.dim}")
    return in_newton_polyhedron(J.generators, alpha)


def _box_points(sides: Sequence[int], cap: int | None):
    cap = default_box_cap() if cap is None else cap
    size = math.prod(n + 1 for n in sides)
    if size > cap:
        raise BoxCapExceeded(f"search box {tuple(sides)} has {size} points, cap is {cap}")
    return itertools.product(*(range(n + 1) for n in sides))


def closure_general(J: MonomialIdeal, cap: int | None = None) -> MonomialIdeal:
    """Minimal generators of the integral closure of J.

    Searched in prod [0, M_i + 1] with M_i the largest i-th exponent among the
    generators; a minimal generator reaching M_i + 1 would mean the bound is
    wrong, which raises instead of truncating.
    """
    if J.is_zero():
        return J
    top = [max(g[i] for g in J.generators) for i in range(J.dim)]
    sides = [t + 1 for t in top]
    members = [p for p in _box_points(sides, cap) if in_newton_polyhedron(J.generators, p)]
    out = MonomialIdeal(members, J.dim)
    for g in out.generators:
        if any(c > t for c, t in zip(g, top)):
            raise RuntimeError(f"closure generator {g} escapes the search bound {tuple(top)}")
    return out


def _corollary_ideals(d: int, n: int, m: int):
    frak_q = MonomialIdeal.diagonal((n - 1,) + (n,) * (d - 1))
    J = ideal_sum(frak_q, maximal_power(d, n))
    K = MonomialIdeal.diagonal((m * (n - 1),) + (m * n,) * (d - 1))
    return frak_q, J, K


def corollary41_check(d: int, n: int, m: int, cap: int | None = None) -> bool:
    """Check closure((x_1^{n-1}, x_2^n, ..., x_d^n)) = J := that ideal + m^n, and
    J^m = closure((x_1^{m(n-1)}, x_2^{mn}, ..., x_d^{mn})), pointwise on [0, mn+1]^d.
    """
    if d < 2 or n < 2 or m < 1:
        raise ValueError(f"need d >= 2, n >= 2, m >= 1; got d={d}, n={n}, m={m}")
    frak_q, J, K = _corollary_ideals(d, n, m)
    Jm = power(J, m)
    for alpha in _box_points([m * n + 1] * d, cap):
        if in_closure_general(frak_q, alpha) != contains(J, alpha):
            return False
        if in_closure_general(K, alpha) != contains(Jm, alpha):
            return False
    return True


def prop42_classify(a: Sequence[int], q: int) -> bool:
    """Closed-form test for Q : m^q being the integral closure of Q."""
    d = len(a)
    if d < 2 or min(a) < 2:
        raise ValueError(f"classification needs d >= 2 and every a_i >= 2, got {tuple(a)}")
    ell = sum(a) - d + 1 - q
    if all(x == ell for x in a):
        return True
    short = [x for x in a if x != ell]
    return len(short) == 1 and short[0] == ell - 1
