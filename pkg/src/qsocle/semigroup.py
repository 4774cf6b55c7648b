"""Quasi-socle ideals in A = k[[t^a, t^b]] with Q = (t^{an}).

Monomial ideals of A are semigroup ideals E of S = <a, b>, i.e. subsets with
E + S inside E.  They are held as Python int bitsets over the t-degrees
0..bound.  A nonzero ideal contains every integer >= min(E) + conductor, so a
run of ``a`` consecutive members ending at ``bound`` certifies that everything
above the bound is a member too; operations that would need an uncertified
tail raise :class:`BoundViolation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .quasisocle import CaseReport, Prediction, ReductionNotFound, ceil_div


class BoundViolation(RuntimeError):
    pass


def _bits(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out |= 1 << v
    return out


def _members(bits: int) -> list[int]:
    return [i for i, c in enumerate(reversed(bin(bits)[2:])) if c == "1"]


def semigroup_members(a: int, b: int, bound: int) -> set[int]:
    """{ia + jb : i, j >= 0} intersected with [0, bound]."""
    _check_generators(a, b)
    return {i * a + j * b for j in range(bound // b + 1) for i in range((bound - j * b) // a + 1)}


def _check_generators(a: int, b: int) -> None:
    if not 1 < a < b:
        raise ValueError(f"need 1 < a < b, got a={a}, b={b}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"a={a} and b={b} are not coprime")


class SemigroupRing:
    """S = <a, b> truncated at ``bound``, with its m-adic order function."""

    def __init__(self, a: int, b: int, bound: int):
        _check_generators(a, b)
        self.a, self.b = a, b
        self.conductor = (a - 1) * (b - 1)
        if bound < self.conductor + a:
            raise BoundViolation(f"bound {bound} is below conductor + a = {self.conductor + a}")
        self.bound = bound
        self.full = (1 << (bound + 1)) - 1
        self.s_bits = _bits(semigroup_members(a, b, bound))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemigroupRing):
            return NotImplemented
        return (self.a, self.b, self.bound) == (other.a, other.b, other.bound)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.bound))

    def in_semigroup(self, s: int) -> bool:
        if s < 0:
            return False
        if s <= self.bound:
            return bool(self.s_bits >> s & 1)
        return s >= self.conductor or any((s - j * self.b) % self.a == 0 for j in range(s // self.b + 1))

    @cached_property
    def order(self) -> list[int]:
        """order[s] = largest k with s a sum of k nonzero elements of S; -1 off S."""
        ord_ = [-1] * (self.bound + 1)
        ord_[0] = 0
        for s in range(1, self.bound + 1):
            best = -1
            for g in (self.a, self.b):
                if s >= g and ord_[s - g] >= 0:
                    best = max(best, ord_[s - g] + 1)
            ord_[s] = best
        return ord_

    def ideal(self, generators: Iterable[int]) -> "SemigroupIdeal":
        bits = 0
        for g in generators:
            if not self.in_semigroup(g):
                raise ValueError(f"{g} is not in <{self.a}, {self.b}>")
            if g > self.bound:
                raise BoundViolation(f"generator {g} lies beyond the bound {self.bound}")
            bits |= self.s_bits << g
        return SemigroupIdeal(self, bits & self.full)

    def unit(self) -> "SemigroupIdeal":
        return SemigroupIdeal(self, self.s_bits)

    def zero(self) -> "SemigroupIdeal":
        return SemigroupIdeal(self, 0)

    def maximal(self) -> "SemigroupIdeal":
        return SemigroupIdeal(self, self.s_bits & ~1)

    def mpower(self, k: int) -> "SemigroupIdeal":
        """m^k, the elements of order at least k."""
        if k <= 0:
            return self.unit()
        return SemigroupIdeal(self, _bits(s for s, o in enumerate(self.order) if o >= k))

    def above(self, c: int) -> "SemigroupIdeal":
        """{s in S : s >= c}."""
        return SemigroupIdeal(self, self.s_bits & ~((1 << c) - 1) if c > 0 else self.s_bits)


class SemigroupIdeal:
    __slots__ = ("ring", "bits")

    def __init__(self, ring: SemigroupRing, bits: int):
        self.ring = ring
        self.bits = bits

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemigroupIdeal):
            return NotImplemented
        return self.ring == other.ring and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.ring, self.bits))

    def __repr__(self) -> str:
        return f"SemigroupIdeal(<{self.ring.a},{self.ring.b}>, generators={self.generators})"

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_unit(self) -> bool:
        return bool(self.bits & 1)

    @property
    def members(self) -> list[int]:
        return _members(self.bits)

    @property
    def generators(self) -> list[int]:
        r = self.ring
        return _members(self.bits & ~((self.bits << r.a) | (self.bits << r.b)))

    def minimum(self) -> int | None:
        return (self.bits & -self.bits).bit_length() - 1 if self.bits else None

    def tail_certified(self) -> bool:
        if self.bits == 0:
            return True
        r = self.ring
        run = ((1 << r.a) - 1) << (r.bound - r.a + 1)
        return self.bits & run == run

    def certify(self) -> "SemigroupIdeal":
        if not self.tail_certified():
            raise BoundViolation(f"bound {self.ring.bound} too small to pin down ideal with minimum "
                                 f"{self.minimum()}")
        return self

    def __contains__(self, s: int) -> bool:
        r = self.ring
        if s < 0:
            return False
        if s <= r.bound:
            return bool(self.bits >> s & 1)
        if self.bits == 0 or not r.in_semigroup(s):
            return False
        self.certify()
        return True

    def is_subset(self, other: "SemigroupIdeal") -> bool:
        _same_ring(self, other)
        return self.bits & ~other.bits == 0

    def __add__(self, other: "SemigroupIdeal") -> "SemigroupIdeal":
        return sg_sum(self, other)

    def __mul__(self, other: "SemigroupIdeal") -> "SemigroupIdeal":
        return sg_product(self, other)

    def __and__(self, other: "SemigroupIdeal") -> "SemigroupIdeal":
        return sg_intersect(self, other)


def _same_ring(E: SemigroupIdeal, F: SemigroupIdeal) -> SemigroupRing:
    if E.ring != F.ring:
        raise ValueError("ideals belong to different truncated semigroup rings")
    return E.ring


def sg_sum(E: SemigroupIdeal, F: SemigroupIdeal) -> SemigroupIdeal:
    return SemigroupIdeal(_same_ring(E, F), E.bits | F.bits)


def sg_intersect(E: SemigroupIdeal, F: SemigroupIdeal) -> SemigroupIdeal:
    return SemigroupIdeal(_same_ring(E, F), E.bits & F.bits)


def sg_product(E: SemigroupIdeal, F: SemigroupIdeal) -> SemigroupIdeal:
    # every product member <= bound is e + f with e, f <= bound, so this is exact below the bound
    ring = _same_ring(E, F)
    bits = 0
    for f in F.generators:
        bits |= E.bits << f
    bits &= ring.full
    if not bits and E.bits and F.bits:
        raise BoundViolation(f"product of nonzero ideals lies beyond the bound {ring.bound}")
    return SemigroupIdeal(ring, bits).certify()


def sg_power(E: SemigroupIdeal, n: int) -> SemigroupIdeal:
    if n < 0:
        raise ValueError(f"negative power {n}")
    out = E.ring.unit()
    for _ in range(n):
        out = sg_product(out, E)
    return out


def sg_colon(E: SemigroupIdeal, F: SemigroupIdeal) -> SemigroupIdeal:
    """{s in S : s + f in E for every generator f of F}."""
    ring = _same_ring(E, F)
    if F.is_zero():
        raise ValueError("colon by the zero ideal is undefined")
    F.certify()
    bits = ring.s_bits
    for f in F.generators:
        shifted = E.bits >> f
        if f and E.bits:
            # s in (bound - f, bound] needs s + f beyond the bound
            E.certify()
            shifted |= ((1 << f) - 1) << (ring.bound - f + 1)
        bits &= shifted
    return SemigroupIdeal(ring, bits & ring.full)


@dataclass(frozen=True)
class SemigroupSpec:
    a: int
    b: int
    n: int
    q: int

    def __post_init__(self):
        _check_generators(self.a, self.b)
        if self.n < 1 or self.q < 1:
            raise ValueError(f"n and q must be positive, got n={self.n}, q={self.q}")

    @property
    def rho(self) -> int:
        return self.a + self.n - 2

    @property
    def ell(self) -> int:
        return self.a + self.n - (self.q + 1)

    @property
    def key(self) -> tuple:
        return (self.a, self.b, self.n, self.q)


def sg_predict(spec: SemigroupSpec) -> Prediction:
    rho, ell = spec.rho, spec.ell
    if ell <= 0:
        return Prediction(rho, ell, improper=True, integral=False)
    if spec.q >= spec.a:
        return Prediction(rho, ell, improper=False, integral=False)
    r = ceil_div(spec.q, ell)
    return Prediction(rho, ell, improper=False, integral=True, r=r, aG=r - 1,
                      g_gorenstein=spec.q % ell == 0)


def sg_n_max(pred: Prediction) -> int:
    return pred.r + 3 if pred.integral else 10


def certified_bound(spec: SemigroupSpec, n_max: int | None = None) -> int:
    """Truncation bound large enough for the colon, powers and reduction checks of a case."""
    a, b, n, q = spec.a, spec.b, spec.n, spec.q
    if n_max is None:
        n_max = sg_n_max(sg_predict(spec))
    ell = max(spec.ell, 1)
    base = a * n + (q + ceil_div(q, ell) + 4) * b + a * b
    # I^{k} has minimum <= k*an since Q is inside I; its tail must be visible
    reduction = (n_max + 1) * a * n + (a - 1) * (b - 1) + a
    return max(base, reduction)


def parameter_ideal(ring: SemigroupRing, spec: SemigroupSpec) -> SemigroupIdeal:
    return ring.ideal([spec.a * spec.n])


def sg_compute_I(ring: SemigroupRing, spec: SemigroupSpec) -> SemigroupIdeal:
    return sg_colon(parameter_ideal(ring, spec), ring.mpower(spec.q))


def sg_closure(ring: SemigroupRing, spec: SemigroupSpec) -> SemigroupIdeal:
    """Integral closure of (t^{an}): every t^s in A with s >= an."""
    return ring.above(spec.a * spec.n)


def sg_reduction_number(Q: SemigroupIdeal, I: SemigroupIdeal, n_max: int) -> int:
    if not Q.is_subset(I):
        raise ValueError("Q must be contained in I")
    cur = I.ring.unit()
    for k in range(n_max + 1):
        nxt = sg_product(cur, I)
        if nxt == sg_product(Q, cur):
            return k
        cur = nxt
    raise ReductionNotFound(f"no reduction equality up to n = {n_max}")


class ArtinianQuotient:
    """A/Q as the finite set of t-degrees in S outside Q.

    Multiplication adds degrees and sends a sum to zero once it lands in Q.
    Ideals of the quotient are frozensets of surviving degrees.
    """

    def __init__(self, Q: SemigroupIdeal):
        ring = Q.ring
        if Q.is_zero() or Q.is_unit():
            raise ValueError("quotient needs a proper nonzero ideal")
        Q.certify()
        self.basis = frozenset(s for s in range(ring.bound + 1) if ring.in_semigroup(s) and s not in Q)
        # the largest surviving degree must sit well inside the bound
        if max(self.basis) + ring.a > ring.bound:
            raise BoundViolation(f"quotient basis reaches {max(self.basis)}, bound {ring.bound}")
        self.Q = Q

    def image(self, E: SemigroupIdeal) -> frozenset[int]:
        return frozenset(s for s in self.basis if s in E)

    def product(self, X: frozenset[int], Y: frozenset[int]) -> frozenset[int]:
        return frozenset(x + y for x in X for y in Y if x + y in self.basis)

    def power(self, X: frozenset[int], n: int) -> frozenset[int]:
        out = self.basis
        for _ in range(n):
            if not out:
                break
            out = self.product(out, X)
        return out

    def annihilator(self, X: frozenset[int]) -> frozenset[int]:
        return frozenset(s for s in self.basis if all(s + x not in self.basis for x in X))

    def nilpotency_index(self, X: frozenset[int]) -> int:
        if 0 in X:
            raise ValueError("the unit ideal is not nilpotent")
        n, cur = 0, X
        while cur:
            n += 1
            cur = self.product(cur, X)
        return n

    def duality_check(self, X: frozenset[int]) -> bool:
        """(0) : X^i == X^{r+1-i} for 0 <= i <= r + 1."""
        if not X or 0 in X:
            raise ValueError("duality check needs a proper nonzero ideal")
        r = self.nilpotency_index(X)
        powers = [self.power(X, i) for i in range(r + 2)]
        return all(self.annihilator(powers[i]) == powers[r + 1 - i] for i in range(r + 2))


def sg_analyze(spec: SemigroupSpec) -> CaseReport:
    pred = sg_predict(spec)
    report = CaseReport("semigroup", spec.key, pred)
    oracle, checks = report.oracle, report.checks
    n_max = sg_n_max(pred)
    ring = SemigroupRing(spec.a, spec.b, certified_bound(spec, n_max))
    oracle["bound"] = ring.bound
    Q = parameter_ideal(ring, spec)
    I = sg_compute_I(ring, spec)
    oracle["I"] = I.generators

    closure = sg_closure(ring, spec)
    oracle["integral"] = all(g in closure for g in I.generators)
    checks["integral"] = oracle["integral"] == pred.integral

    if pred.improper:
        checks["improper_I_is_unit"] = I.is_unit()
        return report
    checks["I_equals_Q_plus_m_ell"] = I == Q + ring.mpower(pred.ell)

    mq = ring.mpower(spec.q)
    oracle["mq_equality"] = mq * I == mq * Q
    checks["mq_equality"] = oracle["mq_equality"] == pred.integral

    try:
        oracle["r"] = sg_reduction_number(Q, I, n_max)
    except ReductionNotFound:
        oracle["r"] = None
    checks["r"] = oracle["r"] == pred.r

    if not pred.integral:
        return report
    quotient = ArtinianQuotient(Q)
    Ibar = quotient.image(I)
    oracle["nilpotency"] = quotient.nilpotency_index(Ibar)
    checks["nilpotency"] = oracle["nilpotency"] == pred.r
    oracle["g_gorenstein"] = quotient.duality_check(Ibar)
    checks["g_gorenstein"] = oracle["g_gorenstein"] == pred.g_gorenstein
    return report
