"""The artinian quotient A/(x_1^{a_1}, ..., x_d^{a_d}) as a finite box.

Monomials surviving modulo Q are the lattice points of B = prod [0, a_i - 1].
An ideal of the quotient is an upward-closed subset of B, held as a dense
boolean array of shape ``a`` (C order gives the mixed-radix indexing).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .monomial import MonomialIdeal, _antichain

DEFAULT_BOX_CAP = 10**6
BOX_CAP_ENV = "QSOCLE_BOX_CAP"


class BoxCapExceeded(ValueError):
    pass


def default_box_cap() -> int:
    raw = os.environ.get(BOX_CAP_ENV)
    if not raw:
        return DEFAULT_BOX_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError(f"{BOX_CAP_ENV} must be positive, got {raw!r}")
    return cap


@dataclass(frozen=True)
class BoxSpec:
    a: tuple[int, ...]
    cap: int = field(default_factory=default_box_cap, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if not self.a:
            raise ValueError("box needs at least one exponent")
        if min(self.a) < 1:
            raise ValueError(f"exponents must be positive, got {self.a}")
        if self.size > self.cap:
            raise BoxCapExceeded(f"box {self.a} has {self.size} points, cap is {self.cap}")

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def size(self) -> int:
        return math.prod(self.a)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Total degree |alpha| at every box point."""
        deg = np.zeros(self.a, dtype=np.int64)
        for axis, n in enumerate(self.a):
            shape = [1] * self.d
            shape[axis] = n
            deg = deg + np.arange(n).reshape(shape)
        return deg


def rho(spec: BoxSpec) -> int:
    """Index of nilpotency of the maximal ideal of the box: sum(a_i) - d."""
    return sum(spec.a) - spec.d


class BoxIdeal:
    __slots__ = ("spec", "mask")

    def __init__(self, spec: BoxSpec, mask: np.ndarray):
        if mask.shape != spec.a:
            raise ValueError(f"mask shape {mask.shape} does not match box {spec.a}")
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        self.spec = spec
        self.mask = mask

    @classmethod
    def from_minimal(cls, spec: BoxSpec, points) -> "BoxIdeal":
        mask = np.zeros(spec.a, dtype=bool)
        for beta in points:
            mask[tuple(slice(int(b), None) for b in beta)] = True
        return cls(spec, mask)

    @classmethod
    def empty(cls, spec: BoxSpec) -> "BoxIdeal":
        return cls(spec, np.zeros(spec.a, dtype=bool))

    @classmethod
    def full(cls, spec: BoxSpec) -> "BoxIdeal":
        return cls(spec, np.ones(spec.a, dtype=bool))

    def is_empty(self) -> bool:
        return not self.mask.any()

    def is_full(self) -> bool:
        return bool(self.mask.all())

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, alpha) -> bool:
        return bool(self.mask[tuple(alpha)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoxIdeal):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.mask, other.mask)

    def __hash__(self) -> int:
        return hash((self.spec, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"BoxIdeal(a={self.spec.a}, minimal={[tuple(p) for p in self.minimal_points().tolist()]})"

    def points(self) -> np.ndarray:
        return np.argwhere(self.mask)

    def minimal_points(self) -> np.ndarray:
        """Points of the ideal with no immediate predecessor inside it."""
        minimal = self.mask.copy()
        for axis in range(self.spec.d):
            below = np.zeros_like(self.mask)
            src = [slice(None)] * self.spec.d
            dst = [slice(None)] * self.spec.d
            src[axis] = slice(None, -1)
            dst[axis] = slice(1, None)
            below[tuple(dst)] = self.mask[tuple(src)]
            minimal &= ~below
        return np.argwhere(minimal)

    def is_upward_closed(self) -> bool:
        return self == BoxIdeal.from_minimal(self.spec, self.minimal_points())


def project(J: MonomialIdeal, spec: BoxSpec) -> BoxIdeal:
    """Image of J in A/Q: the box points lying in J."""
    if J.dim != spec.d:
        raise ValueError(f"ideal of dim {J.dim} projected into a box of dim {spec.d}")
    inside = [g for g in J.generators if all(c < n for c, n in zip(g, spec.a))]
    return BoxIdeal.from_minimal(spec, inside)


def mbar_power(spec: BoxSpec, n: int) -> BoxIdeal:
    if n < 0:
        raise ValueError(f"negative power {n}")
    return BoxIdeal(spec, spec.degrees >= n)


def _same_box(E: BoxIdeal, F: BoxIdeal) -> BoxSpec:
    if E.spec != F.spec:
        raise ValueError(f"box mismatch: {E.spec.a} vs {F.spec.a}")
    return E.spec


def annihilator(E: BoxIdeal) -> BoxIdeal:
    """(0) : E, the points alpha with alpha + beta outside B for all beta in E."""
    spec = E.spec
    killed = np.zeros(spec.a, dtype=bool)
    # alpha + beta stays in B exactly on the sub-box prod [0, a_i - 1 - beta_i]
    for beta in E.minimal_points():
        killed[tuple(slice(0, n - int(b)) for n, b in zip(spec.a, beta))] = True
    return BoxIdeal(spec, ~killed)


def box_product(E: BoxIdeal, F: BoxIdeal) -> BoxIdeal:
    spec = _same_box(E, F)
    me, mf = E.minimal_points(), F.minimal_points()
    if len(me) == 0 or len(mf) == 0:
        return BoxIdeal.empty(spec)
    sums = (me[:, None, :] + mf[None, :, :]).reshape(-1, spec.d)
    sums = sums[(sums < np.asarray(spec.a)).all(axis=1)]
    return BoxIdeal.from_minimal(spec, _antichain(sums))


def box_power(E: BoxIdeal, n: int) -> BoxIdeal:
    if n < 0:
        raise ValueError(f"negative power {n}")
    out = BoxIdeal.full(E.spec)
    for _ in range(n):
        if out.is_empty():
            break
        out = box_product(out, E)
    return out


def nilpotency_index(E: BoxIdeal) -> int:
    """Largest n with E^n != 0."""
    if E.is_full():
        raise ValueError("the unit ideal is not nilpotent")
    n = 0
    cur = E
    while not cur.is_empty():
        n += 1
        cur = box_product(cur, E)
    return n


def ooishi_gorenstein_check(E: BoxIdeal) -> bool:
    """True iff (0) : E^i == E^{r+1-i} for 0 <= i <= r + 1, r the nilpotency index.

    Outside that range both sides are forced (E^i = box for i <= 0 and
    E^i = 0 for i > r), so the finite range decides the duality.
    """
    if E.is_full() or E.is_empty():
        raise ValueError("duality check needs a proper nonzero ideal")
    r = nilpotency_index(E)
    powers = [BoxIdeal.full(E.spec)]
    for _ in range(r + 1):
        powers.append(box_product(powers[-1], E))
    return all(annihilator(powers[i]) == powers[r + 1 - i] for i in range(r + 2))
