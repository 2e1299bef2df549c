"""Graded and bigraded dimension vectors.

These are the Poincare, Hodge and Chow-rank shadows of the spaces involved:
finitely supported maps from a degree (an ``int``, or a ``(p, q)`` pair) to a
non-negative count.  Symmetric powers come in two flavours that callers must
pick explicitly:

* ``sym_power_signed`` follows the Koszul rule: odd-degree classes
  anticommute and contribute exterior factors.  This is the cohomological one.
* ``sym_power_unsigned`` counts plain multisets in every degree.  This is the
  one for Chow groups, where the permutation action carries no sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Optional

__all__ = [
    "GradedDimension",
    "BiGradedDimension",
    "SurfaceDescriptor",
    "tensor",
    "sym_power_signed",
    "sym_power_unsigned",
    "sym_power_bigraded",
]


class _SparseDims:
    """Shared machinery: a frozen, zero-pruned ``degree -> count`` mapping."""

    __slots__ = ("_dims",)
    _unit_degree: Hashable

    def __init__(self, dims: Mapping | Iterable = ()) -> None:
        items = dims.items() if isinstance(dims, Mapping) else dims
        clean: dict = {}
        for deg, count in items:
            deg = self._normalize_degree(deg)
            count = int(count)
            if count < 0:
                raise ValueError(f"negative count {count} at degree {deg}")
            if count:
                clean[deg] = clean.get(deg, 0) + count
        self._dims = dict(sorted(clean.items()))

    @staticmethod
    def _add_degrees(a, b):
        raise NotImplementedError

    @staticmethod
    def _normalize_degree(deg):
        raise NotImplementedError

    @classmethod
    def unit(cls):
        return cls({cls._unit_degree: 1})

    @property
    def dims(self) -> dict:
        return dict(self._dims)

    @property
    def total(self) -> int:
        return sum(self._dims.values())

    def __getitem__(self, deg) -> int:
        return self._dims.get(self._normalize_degree(deg), 0)

    def __iter__(self) -> Iterator:
        return iter(self._dims)

    def items(self):
        return self._dims.items()

    def __len__(self) -> int:
        return len(self._dims)

    def __bool__(self) -> bool:
        return bool(self._dims)

    def __eq__(self, other) -> bool:
        if isinstance(other, type(self)):
            return self._dims == other._dims
        if isinstance(other, Mapping):
            return self == type(self)(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((type(self).__name__, tuple(self._dims.items())))

    def __add__(self, other):
        out = dict(self._dims)
        for deg, c in other.items():
            out[deg] = out.get(deg, 0) + c
        return type(self)(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)({d: c * other for d, c in self._dims.items()})
        return tensor(self, other)

    __rmul__ = __mul__

    def shift(self, by):
        return type(self)({self._add_degrees(d, by): c for d, c in self._dims.items()})

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._dims})"


class GradedDimension(_SparseDims):
    """Counts indexed by a non-negative integer degree."""

    __slots__ = ()
    _unit_degree = 0

    @staticmethod
    def _normalize_degree(deg) -> int:
        deg = int(deg)
        if deg < 0:
            raise ValueError(f"negative degree {deg}")
        return deg

    @staticmethod
    def _add_degrees(a: int, b: int) -> int:
        return a + b

    @classmethod
    def from_list(cls, coeffs: Iterable[int]) -> "GradedDimension":
        return cls(enumerate(coeffs))

    def to_list(self, length: Optional[int] = None) -> list[int]:
        top = max(self._dims, default=-1) + 1
        length = top if length is None else max(length, top)
        return [self._dims.get(d, 0) for d in range(length)]

    def euler(self) -> int:
        return sum(c if d % 2 == 0 else -c for d, c in self._dims.items())

    def evaluate(self, t: int) -> int:
        return sum(c * t**d for d, c in self._dims.items())


class BiGradedDimension(_SparseDims):
    """Counts indexed by a bidegree ``(p, q)``, e.g. Hodge numbers."""

    __slots__ = ()
    _unit_degree = (0, 0)

    @staticmethod
    def _normalize_degree(deg) -> tuple[int, int]:
        p, q = deg
        p, q = int(p), int(q)
        if p < 0 or q < 0:
            raise ValueError(f"negative bidegree {(p, q)}")
        return p, q

    @staticmethod
    def _add_degrees(a, b):
        return a[0] + b[0], a[1] + b[1]

    def collapse(self) -> GradedDimension:
        """Total-degree image ``(p, q) -> p + q``."""
        return GradedDimension((p + q, c) for (p, q), c in self._dims.items())

    def is_hodge_symmetric(self) -> bool:
        return all(self[q, p] == c for (p, q), c in self._dims.items())

    def to_matrix(self) -> list[list[int]]:
        top = max((max(p, q) for p, q in self._dims), default=-1) + 1
        return [[self[p, q] for q in range(top)] for p in range(top)]

    @classmethod
    def from_matrix(cls, rows: Iterable[Iterable[int]]) -> "BiGradedDimension":
        return cls(((p, q), c) for p, row in enumerate(rows) for q, c in enumerate(row))


def tensor(a: _SparseDims, b: _SparseDims) -> _SparseDims:
    """Kunneth-style convolution of two dimension vectors of the same kind."""
    if type(a) is not type(b):
        raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")
    out: dict = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = a._add_degrees(da, db)
            out[d] = out.get(d, 0) + ca * cb
    return type(a)(out)


def _sym_power(v: _SparseDims, k: int, is_odd: Callable[[Hashable], bool]) -> _SparseDims:
    """Coefficient of ``x^k`` in the graded symmetric algebra generating function.

    A degree ``d`` with ``c`` classes contributes ``(1 - t^d x)^(-c)`` when even
    and ``(1 + t^d x)^c`` when odd; the product is truncated at ``x^k``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    cls = type(v)
    # layers[j] = dimension vector of weight-j part accumulated so far
    layers: list[dict] = [{cls._unit_degree: 1}] + [{} for _ in range(k)]
    for deg, count in v.items():
        odd = is_odd(deg)
        coeffs = []
        power = cls._unit_degree
        for j in range(k + 1):
            c = math.comb(count, j) if odd else math.comb(count + j - 1, j)
            if odd and c == 0:
                break
            coeffs.append((j, power, c))
            power = v._add_degrees(power, deg)
        new = [{} for _ in range(k + 1)]
        for w, layer in enumerate(layers):
            for d0, c0 in layer.items():
                for j, dj, cj in coeffs:
                    if w + j > k:
                        break
                    d = v._add_degrees(d0, dj)
                    new[w + j][d] = new[w + j].get(d, 0) + c0 * cj
        layers = new
    return cls(layers[k])


def sym_power_signed(v: GradedDimension, k: int) -> GradedDimension:
    """Koszul symmetric power: odd generators enter as exterior factors."""
    return _sym_power(v, k, lambda d: d % 2 == 1)


def sym_power_unsigned(v: GradedDimension, k: int) -> GradedDimension:
    """Plain multiset symmetric power, no signs in any degree."""
    return _sym_power(v, k, lambda d: False)


def sym_power_bigraded(v: BiGradedDimension, k: int) -> BiGradedDimension:
    """Koszul symmetric power with parity of total degree ``p + q``."""
    return _sym_power(v, k, lambda d: (d[0] + d[1]) % 2 == 1)


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Numerical data of a smooth surface.

    ``betti`` holds b_0..b_4; ``hodge`` optionally holds h^{p,q} for
    ``0 <= p, q <= 2``; ``chow_ranks`` holds the ranks of A_0, A_1, A_2
    (indexed by cycle dimension).  A ``cellular`` surface has b_1 = b_3 = 0
    and must carry Chow ranks.
    """

    name: str
    betti: tuple[int, ...]
    hodge: Optional[BiGradedDimension] = None
    chow_ranks: Optional[tuple[int, ...]] = None
    cellular: bool = False
    projective: bool = True
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        betti = tuple(int(b) for b in self.betti)
        object.__setattr__(self, "betti", betti)
        errors = self.validation_errors()
        if errors:
            raise ValueError(f"invalid surface descriptor {self.name!r}: " + "; ".join(errors))
        if self.chow_ranks is not None:
            object.__setattr__(self, "chow_ranks", tuple(int(r) for r in self.chow_ranks))

    def validation_errors(self) -> list[str]:
        errors = []
        if len(self.betti) != 5:
            errors.append(f"betti: expected 5 entries, got {len(self.betti)}")
        elif any(b < 0 for b in self.betti):
            errors.append("betti: entries must be non-negative")
        if self.hodge is not None:
            if any(p > 2 or q > 2 for p, q in self.hodge):
                errors.append("hodge: bidegrees must satisfy 0 <= p, q <= 2")
            if not self.hodge.is_hodge_symmetric():
                errors.append("hodge: h^{p,q} must equal h^{q,p}")
            if len(self.betti) == 5:
                collapsed = self.hodge.collapse()
                for i, b in enumerate(self.betti):
                    if collapsed[i] != b:
                        errors.append(f"hodge: sum of h^(p,q) with p+q={i} is {collapsed[i]}, betti says {b}")
        if self.chow_ranks is not None:
            if len(self.chow_ranks) != 3:
                errors.append(f"chow_ranks: expected 3 entries, got {len(self.chow_ranks)}")
            elif any(r < 0 for r in self.chow_ranks):
                errors.append("chow_ranks: entries must be non-negative")
        if self.cellular:
            if len(self.betti) == 5 and (self.betti[1] or self.betti[3]):
                errors.append("cellular: requires b_1 = b_3 = 0")
            if self.chow_ranks is None:
                errors.append("cellular: chow_ranks must be present")
        return errors

    @property
    def poincare(self) -> GradedDimension:
        return GradedDimension.from_list(self.betti)

    @property
    def chow(self) -> GradedDimension:
        if self.chow_ranks is None:
            raise ValueError(f"surface {self.name!r} carries no Chow ranks")
        return GradedDimension.from_list(self.chow_ranks)

    @property
    def euler(self) -> int:
        return self.poincare.euler()

    def satisfies_poincare_duality(self) -> bool:
        return self.betti == self.betti[::-1]
