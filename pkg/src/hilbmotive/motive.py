"""Motivic decomposition of the Hilbert scheme of points and its specializations.

The motive of ``X^[n]`` splits as a sum over partitions ``nu`` of ``n`` of the
motive of ``X^(nu) = X^(a_1) x ... x X^(a_n)`` twisted by ``n - l(nu)`` and
shifted by twice that.  The functions below turn that into numbers: a twist is
``t^2`` on Poincare polynomials, ``(1, 1)`` on Hodge bidegrees and ``+1`` on the
cycle dimension of Chow groups.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, TypeVar

from .graded import (
    BiGradedDimension,
    GradedDimension,
    SurfaceDescriptor,
    sym_power_bigraded,
    sym_power_signed,
    sym_power_unsigned,
    tensor,
)
from .partitions import MultiplicityVector, Partition, enum_partitions, partition_count

__all__ = [
    "MotiveTerm",
    "MotiveDecomposition",
    "NonCellularError",
    "hilb_decomposition",
    "symmetric_product_poincare",
    "symmetric_product_hodge",
    "symmetric_product_chow",
    "poincare_hilb",
    "hodge_hilb",
    "chow_dims_hilb",
    "punctual_chow_total",
    "euler_hilb",
]

T = TypeVar("T")


class NonCellularError(ValueError):
    """Chow ranks requested for a surface whose Chow groups are not known to satisfy Kunneth."""


@dataclass(frozen=True)
class MotiveTerm:
    nu: Partition
    factors: MultiplicityVector
    twist: int
    shift: int

    def __post_init__(self) -> None:
        if self.twist != self.nu.n - self.nu.l or self.shift != 2 * self.twist:
            raise ValueError(f"inconsistent twist/shift for {self.nu}")
        if self.factors.to_partition() != self.nu:
            raise ValueError("factors do not match nu")

    def factor_label(self, space: str = "X") -> str:
        """``X^(2) x X`` style label for the symmetric-product factors."""
        chunks = []
        for m, a in sorted(self.factors.items(), key=lambda ma: ma[0]):
            chunks.append(space if a == 1 else f"{space}^({a})")
        return " x ".join(chunks)


@dataclass(frozen=True)
class MotiveDecomposition:
    n: int
    terms: tuple[MotiveTerm, ...]

    def __post_init__(self) -> None:
        nus = [t.nu for t in self.terms]
        if len(set(nus)) != len(nus) or len(nus) != partition_count(self.n):
            raise ValueError("decomposition must have one term per partition")

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def as_dict(self) -> dict[Partition, tuple[int, int]]:
        return {t.nu: (t.twist, t.shift) for t in self.terms}


def hilb_decomposition(n: int, order: str = "coarse_first") -> MotiveDecomposition:
    if n < 0:
        raise ValueError("n must be non-negative")
    terms = []
    for nu in enum_partitions(n, order):
        twist = n - nu.l
        terms.append(MotiveTerm(nu, nu.multiplicities(), twist, 2 * twist))
    return MotiveDecomposition(n, tuple(terms))


# --- symmetric products X^(nu) ---------------------------------------------

def _product_over_factors(nu: Partition, base, sym, unit):
    return reduce(tensor, (sym(base, a) for _, a in nu.multiplicities().items()), unit)


def symmetric_product_poincare(s: SurfaceDescriptor, nu: Partition) -> GradedDimension:
    return _product_over_factors(nu, s.poincare, sym_power_signed, GradedDimension.unit())


def symmetric_product_hodge(s: SurfaceDescriptor, nu: Partition) -> BiGradedDimension:
    if s.hodge is None:
        raise ValueError(f"surface {s.name!r} has no Hodge data")
    return _product_over_factors(nu, s.hodge, sym_power_bigraded, BiGradedDimension.unit())


def symmetric_product_chow(s: SurfaceDescriptor, nu: Partition) -> GradedDimension:
    """Chow ranks of ``X^(nu)`` by cycle dimension (cellular surfaces only)."""
    _require_cellular(s)
    return _product_over_factors(nu, s.chow, sym_power_unsigned, GradedDimension.unit())


def _require_cellular(s: SurfaceDescriptor) -> None:
    if not s.cellular or s.chow_ranks is None:
        raise NonCellularError(
            f"surface {s.name!r} is not cellular: Chow groups of its symmetric products "
            "need not be generated by products of surface classes, so surface data "
            "does not determine the Chow ranks of the Hilbert scheme"
        )


def _sum_terms(n: int, term: Callable[[Partition], T], unit: T, parallel: bool) -> T:
    nus = enum_partitions(n)
    if parallel and len(nus) > 1:
        with ProcessPoolExecutor() as pool:
            parts: Iterable[T] = list(pool.map(term, nus))
    else:
        parts = map(term, nus)
    return reduce(lambda a, b: a + b, parts, type(unit)())


class _PoincareTerm:
    def __init__(self, s: SurfaceDescriptor, n: int):
        self.s, self.n = s, n

    def __call__(self, nu: Partition) -> GradedDimension:
        return symmetric_product_poincare(self.s, nu).shift(2 * (self.n - nu.l))


class _HodgeTerm(_PoincareTerm):
    def __call__(self, nu: Partition) -> BiGradedDimension:
        tw = self.n - nu.l
        return symmetric_product_hodge(self.s, nu).shift((tw, tw))


class _ChowTerm(_PoincareTerm):
    def __call__(self, nu: Partition) -> GradedDimension:
        return symmetric_product_chow(self.s, nu).shift(self.n - nu.l)


def poincare_hilb(s: SurfaceDescriptor, n: int, parallel: bool = False) -> GradedDimension:
    """Betti numbers of ``X^[n]`` from the decomposition; ``n = 0`` is a point."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _sum_terms(n, _PoincareTerm(s, n), GradedDimension.unit(), parallel)


def hodge_hilb(s: SurfaceDescriptor, n: int, parallel: bool = False) -> BiGradedDimension:
    if s.hodge is None:
        raise ValueError(f"surface {s.name!r} has no Hodge data")
    if n < 0:
        raise ValueError("n must be non-negative")
    return _sum_terms(n, _HodgeTerm(s, n), BiGradedDimension.unit(), parallel)


def chow_dims_hilb(s: SurfaceDescriptor, n: int, parallel: bool = False) -> GradedDimension:
    """Ranks of ``A_k(X^[n])`` indexed by cycle dimension ``k``.

    ``A_k(X^(nu))`` lands in ``A_{k + n - l(nu)}(X^[n])``.  Only cellular
    surfaces are accepted.
    """
    _require_cellular(s)
    if n < 0:
        raise ValueError("n must be non-negative")
    return _sum_terms(n, _ChowTerm(s, n), GradedDimension.unit(), parallel)


def punctual_chow_total(n: int) -> int:
    """Total Chow rank of the punctual Hilbert scheme: one class per partition."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return len(enum_partitions(n))


def euler_hilb(s: SurfaceDescriptor, n: int) -> int:
    return poincare_hilb(s, n).euler()
