"""Vector-bundle surrogates: a rank plus a total Chern class.

A ``BundleClass`` is purely formal data - nothing requires the components to
come from an actual bundle, which is the point: the operator calculus feeds
on formal bundles whose Chern classes are free ring variables.  Concrete
geometry constructs only honest ones.

The tensor-by-a-line-bundle twist uses the closed binomial form

    c_k(A (x) L) = sum_i  C(rank-i, k-i) c_i(A) l^(k-i),

never root splitting; the splitting-principle computation exists only in the
test suite, as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Tuple

from .chowring import ChowClass, ChowError, RingMismatchError, RingPresentation, normal_form
from .gradedpoly import GradedPoly, series_inverse, truncate


class BundleError(ChowError):
    """Invalid bundle data or operation."""


@dataclass(frozen=True)
class BundleClass:
    """rank + Chern components (c_0 = 1, c_1, ...), all in one ring.

    ``chern`` stores components 0..k with k <= rank; missing high components
    are zero.  ``tail`` holds quotient-series components beyond the rank;
    honest quotients have an empty (or all-zero) tail, and a nonzero tail
    flags that the input pair was not an actual sub-bundle situation.
    """

    rank: int
    chern: Tuple[ChowClass, ...]
    tail: Tuple[ChowClass, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise BundleError("rank must be nonnegative")
        if not self.chern:
            raise BundleError("chern must at least contain c_0 = 1")
        if len(self.chern) > self.rank + 1:
            raise BundleError("components beyond the rank are not storable")
        ring = self.chern[0].ring
        if not (self.chern[0].value == GradedPoly.one(ring.table)):
            raise BundleError("c_0 must be 1")
        for i, c in enumerate(self.chern):
            if c.ring != ring:
                raise BundleError("all components must live in one ring")
            if not c.value.is_homogeneous(i):
                raise BundleError(f"c_{i} must be homogeneous of degree {i}")

    @property
    def ring(self) -> RingPresentation:
        return self.chern[0].ring

    @classmethod
    def trivial(cls, ring: RingPresentation, rank: int) -> "BundleClass":
        return cls(rank, (ring.one(),))

    @classmethod
    def from_total(
        cls, ring: RingPresentation, total: ChowClass, rank: int
    ) -> "BundleClass":
        """Split a total class into homogeneous components up to the rank."""
        comps = []
        top = total.value.total_degree()
        if top > rank:
            extra = [
                k for k in range(rank + 1, top + 1)
                if not total.value.homogeneous_component(k).is_zero()
            ]
            if extra:
                raise BundleError(
                    f"total class has nonzero components {extra} beyond rank {rank}"
                )
        for k in range(min(rank, max(top, 0)) + 1):
            comps.append(total.homogeneous_component(k))
        b = cls(rank, tuple(comps))
        if b.c(0).value != GradedPoly.one(ring.table):
            raise BundleError("total class must start with 1")
        return b

    def c(self, i: int) -> ChowClass:
        """The i-th Chern component (zero beyond the stored list)."""
        if 0 <= i < len(self.chern):
            return self.chern[i]
        return self.ring.zero()

    def total(self) -> ChowClass:
        out = self.ring.zero()
        for comp in self.chern:
            out = out + comp
        return out

    def has_nonzero_tail(self) -> bool:
        return any(not t.is_zero() for t in self.tail)


def _same_ring(a: BundleClass, b: BundleClass) -> None:
    if a.ring != b.ring:
        raise RingMismatchError("bundles live in different rings")


def whitney_sum(a: BundleClass, b: BundleClass) -> BundleClass:
    """Direct sum: ranks add, total Chern classes multiply."""
    _same_ring(a, b)
    return BundleClass.from_total(a.ring, a.total() * b.total(), a.rank + b.rank)


def dual(a: BundleClass) -> BundleClass:
    """Dual bundle: c_i changes sign by (-1)^i."""
    comps = tuple(c if i % 2 == 0 else -c for i, c in enumerate(a.chern))
    return BundleClass(a.rank, comps)


def tensor_line(a: BundleClass, ell: ChowClass) -> BundleClass:
    """Twist by a line bundle with first Chern class ell (degree 1)."""
    if ell.ring != a.ring:
        raise RingMismatchError("line class lives in a different ring")
    if not ell.value.is_homogeneous(1):
        raise BundleError("line class must be homogeneous of degree 1")
    r = a.rank
    comps = []
    for k in range(r + 1):
        acc = a.ring.zero()
        for i in range(k + 1):
            w = comb(r - i, k - i)
            if w:
                acc = acc + w * (a.c(i) * ell ** (k - i))
        comps.append(acc)
    while len(comps) > 1 and comps[-1].is_zero():
        comps.pop()
    return BundleClass(r, tuple(comps))


def quotient_chern(e: BundleClass, s: BundleClass) -> BundleClass:
    """Chern data of E/S: total class c(E)/c(S), rank difference.

    Components beyond the new rank are kept in ``tail`` (up to a fixed
    window) so a dishonest quotient is detectable rather than silently
    truncated away.
    """
    _same_ring(e, s)
    if e.rank < s.rank:
        raise BundleError("quotient rank would be negative")
    new_rank = e.rank - s.rank
    ring = e.ring
    dmax = ring.dim if ring.dim is not None else e.rank + s.rank
    dmax = max(dmax, new_rank)
    inv = series_inverse(s.total().value, dmax)
    total = normal_form(truncate(e.total().value * inv, dmax), ring)
    comps = tuple(total.homogeneous_component(k) for k in range(new_rank + 1))
    tail = tuple(
        total.homogeneous_component(k) for k in range(new_rank + 1, dmax + 1)
    )
    while tail and tail[-1].is_zero():
        tail = tail[:-1]
    return BundleClass(new_rank, comps, tail)
