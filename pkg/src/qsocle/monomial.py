"""Monomial ideals in d variables, stored as antichains of exponent vectors.

An exponent vector is a plain tuple of non-negative ints.  A
:class:`MonomialIdeal` keeps its minimal generators sorted, so two ideals are
equal exactly when their generator tuples agree.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

ExponentVector = tuple[int, ...]

# rows * candidates * d bools materialized per divisibility block
_BLOCK_ELEMS = 1 << 22


class DimensionMismatch(ValueError):
    pass


def _antichain(points: np.ndarray) -> np.ndarray:
    """Minimal rows of ``points`` under the componentwise order, lex sorted."""
    if len(points) <= 1:
        return points.copy()
    lo = points.min(axis=0)
    extent = points.max(axis=0) - lo + 1
    if len(points) > 64 and int(np.prod(extent, dtype=np.float64)) <= _DENSE_CELLS:
        return _antichain_dense(points, lo, tuple(int(x) for x in extent))
    return _antichain_pairwise(points)


_DENSE_CELLS = 1 << 24


def _antichain_dense(points: np.ndarray, lo: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Minimal points via the upward closure on a dense grid over the bounding box."""
    up = np.zeros(shape, dtype=bool)
    up[tuple((points - lo).T)] = True
    for axis in range(len(shape)):
        up = np.logical_or.accumulate(up, axis=axis)
    minimal = up.copy()
    for axis in range(len(shape)):
        head = [slice(None)] * len(shape)
        tail = [slice(None)] * len(shape)
        head[axis] = slice(1, None)
        tail[axis] = slice(None, -1)
        minimal[tuple(head)] &= ~up[tuple(tail)]
    return np.argwhere(minimal).astype(np.int64) + lo


def _antichain_pairwise(points: np.ndarray) -> np.ndarray:
    pts = np.unique(points, axis=0)
    n, d = pts.shape
    if n == 1:
        return pts
    keep = np.ones(n, dtype=bool)
    step = max(1, _BLOCK_ELEMS // (n * d))
    for start in range(0, n, step):
        block = pts[start:start + step]
        divides = (pts[None, :, :] <= block[:, None, :]).all(axis=2)
        rows = np.arange(len(block))
        divides[rows, rows + start] = False
        keep[start:start + len(block)] = ~divides.any(axis=1)
    return pts[keep]


class MonomialIdeal:
    """Ideal generated by monomials x^g, g in ``generators``.

    The empty generator set is the zero ideal; the zero vector alone is the
    unit ideal.  Instances are immutable.
    """

    __slots__ = ("dim", "_array", "_gens", "_hash")

    def __init__(self, generators: Iterable[Sequence[int]], dim: int | None = None):
        rows = [tuple(int(c) for c in g) for g in generators]
        if dim is None:
            if not rows:
                raise ValueError("dimension required for the zero ideal")
            dim = len(rows[0])
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        for g in rows:
            if len(g) != dim:
                raise DimensionMismatch(f"generator {g} does not have length {dim}")
            if min(g) < 0:
                raise ValueError(f"negative exponent in {g}")
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), dim)
        self._set(dim, _antichain(arr))

    def _set(self, dim: int, arr: np.ndarray) -> None:
        arr.setflags(write=False)
        self.dim = dim
        self._array = arr
        self._gens = tuple(tuple(int(c) for c in row) for row in arr)
        self._hash = hash((dim, self._gens))

    @classmethod
    def _from_points(cls, dim: int, points: np.ndarray) -> "MonomialIdeal":
        obj = cls.__new__(cls)
        obj._set(dim, _antichain(points.reshape(-1, dim).astype(np.int64, copy=False)))
        return obj

    @classmethod
    def zero(cls, dim: int) -> "MonomialIdeal":
        return cls((), dim)

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls([(0,) * dim], dim)

    @classmethod
    def diagonal(cls, exponents: Sequence[int]) -> "MonomialIdeal":
        """The parameter ideal (x_1^{a_1}, ..., x_d^{a_d})."""
        d = len(exponents)
        return cls([tuple(a if j == i else 0 for j in range(d)) for i, a in enumerate(exponents)], d)

    @property
    def generators(self) -> tuple[ExponentVector, ...]:
        return self._gens

    @property
    def array(self) -> np.ndarray:
        return self._array

    def is_zero(self) -> bool:
        return len(self._gens) == 0

    def is_unit(self) -> bool:
        return len(self._gens) == 1 and not any(self._gens[0])

    def __len__(self) -> int:
        return len(self._gens)

    def __iter__(self):
        return iter(self._gens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.dim == other.dim and self._gens == other._gens

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_zero():
            return f"MonomialIdeal(0, dim={self.dim})"
        return f"MonomialIdeal({list(self._gens)})"

    def __contains__(self, alpha: Sequence[int]) -> bool:
        return contains(self, alpha)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return is_subset(self, other)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return power(self, n)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return intersect(self, other)


def _check_dims(*ideals: MonomialIdeal) -> int:
    dims = {J.dim for J in ideals}
    if len(dims) != 1:
        raise DimensionMismatch(f"ideals live in different dimensions: {sorted(dims)}")
    return dims.pop()


def minimalize(gens: Iterable[Sequence[int]], dim: int | None = None) -> MonomialIdeal:
    return MonomialIdeal(gens, dim)


def contains(J: MonomialIdeal, alpha: Sequence[int]) -> bool:
    """True iff some generator of J divides x^alpha."""
    if len(alpha) != J.dim:
        raise DimensionMismatch(f"point {tuple(alpha)} has length {len(alpha)}, ideal has dim {J.dim}")
    if J.is_zero():
        return False
    return bool((J.array <= np.asarray(alpha)).all(axis=1).any())


def is_subset(J: MonomialIdeal, K: MonomialIdeal) -> bool:
    _check_dims(J, K)
    if J.is_zero():
        return True
    if K.is_zero():
        return False
    return bool((K.array[None, :, :] <= J.array[:, None, :]).all(axis=2).any(axis=1).all())


def ideal_sum(*ideals: MonomialIdeal) -> MonomialIdeal:
    d = _check_dims(*ideals)
    return MonomialIdeal._from_points(d, np.concatenate([J.array for J in ideals]))


def product(*ideals: MonomialIdeal) -> MonomialIdeal:
    d = _check_dims(*ideals)
    out = ideals[0]
    for K in ideals[1:]:
        if out.is_zero() or K.is_zero():
            return MonomialIdeal.zero(d)
        out = MonomialIdeal._from_points(d, out.array[:, None, :] + K.array[None, :, :])
    return out


def power(J: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError(f"negative power {n}")
    out = MonomialIdeal.unit(J.dim)
    for _ in range(n):
        out = product(out, J)
    return out


def intersect(*ideals: MonomialIdeal) -> MonomialIdeal:
    d = _check_dims(*ideals)
    out = ideals[0]
    for K in ideals[1:]:
        if out.is_zero() or K.is_zero():
            return MonomialIdeal.zero(d)
        out = MonomialIdeal._from_points(d, np.maximum(out.array[:, None, :], K.array[None, :, :]))
    return out


def colon_monomial(J: MonomialIdeal, k: Sequence[int]) -> MonomialIdeal:
    """J : x^k, generator-wise max(g - k, 0)."""
    if len(k) != J.dim:
        raise DimensionMismatch(f"monomial {tuple(k)} does not have length {J.dim}")
    if J.is_zero():
        return J
    return MonomialIdeal._from_points(J.dim, np.maximum(J.array - np.asarray(k), 0))


def colon(J: MonomialIdeal, K: MonomialIdeal) -> MonomialIdeal:
    """J : K = {alpha : alpha + k in J for every monomial k in K}."""
    _check_dims(J, K)
    if K.is_zero():
        raise ValueError("colon by the zero ideal is undefined")
    return intersect(*(colon_monomial(J, k) for k in K.generators))


def colon_mpower(J: MonomialIdeal, q: int) -> MonomialIdeal:
    """J : m^q as q successive colons by the maximal ideal."""
    if q < 0:
        raise ValueError(f"negative power {q}")
    m = maximal_power(J.dim, 1)
    for _ in range(q):
        if J.is_unit():
            break
        J = colon(J, m)
    return J


def compositions(total: int, parts: int) -> Iterable[ExponentVector]:
    """All non-negative integer vectors of length ``parts`` summing to ``total``."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def maximal_power(d: int, q: int) -> MonomialIdeal:
    """m^q: generated by every monomial of total degree q."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if q < 0:
        raise ValueError(f"negative power {q}")
    return MonomialIdeal(compositions(q, d), d)
