"""Truncated power series in ``q`` over exact multivariate polynomial coefficients.

Used to expand the product formula for the Hilbert schemes of points on a
surface and compare it, coefficient by coefficient, with the sum over
partitions computed in :mod:`hilbmotive.motive`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence

from .graded import BiGradedDimension, GradedDimension, SurfaceDescriptor
from .motive import MotiveDecomposition, hilb_decomposition, poincare_hilb
from .partitions import Partition

__all__ = [
    "Poly",
    "TruncatedSeries",
    "series_mul",
    "series_inverse",
    "series_pow",
    "goettsche_series",
    "goettsche_hodge_series",
    "motivic_monomial_expansion",
    "monomial_to_partition",
    "compare_with_decomposition",
    "two_path_check",
    "TwoPathReport",
]


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Poly:
    """Sparse polynomial in ``nvars`` variables with exact coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Rational] | None = None):
        self.nvars = nvars
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
            if c:
                clean[tuple(mono)] = _normalize(c)
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c: Rational = 1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Rational = 1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def _check(self, other: "Poly") -> None:
        if other.nvars != self.nvars:
            raise ValueError("incompatible coefficient rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(self.nvars, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def substitute(self, values: Sequence[Rational]):
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                term *= Fraction(v) ** e
            total += term
        return _normalize(Fraction(total)) if total else 0

    def to_graded(self) -> GradedDimension:
        if self.nvars != 1:
            raise ValueError("only univariate polynomials convert to GradedDimension")
        return GradedDimension({m[0]: c for m, c in self.terms.items()})

    def to_bigraded(self) -> BiGradedDimension:
        if self.nvars != 2:
            raise ValueError("only bivariate polynomials convert to BiGradedDimension")
        return BiGradedDimension({m: c for m, c in self.terms.items()})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in sorted(self.terms.items()))


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{k <= order} coeffs[k] q^k``; exponents above ``order`` are unknown, not zero."""

    order: int
    coeffs: tuple[Poly, ...]
    nvars: int = field(default=1)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be non-negative")
        coeffs = list(self.coeffs[: self.order + 1])
        coeffs += [Poly(self.nvars)] * (self.order + 1 - len(coeffs))
        if any(c.nvars != self.nvars for c in coeffs):
            raise ValueError("coefficient arity mismatch")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_polys(cls, polys: Iterable[Poly], order: int, nvars: int = 1) -> "TruncatedSeries":
        return cls(order, tuple(polys), nvars)

    @classmethod
    def one(cls, order: int, nvars: int = 1) -> "TruncatedSeries":
        return cls(order, (Poly.constant(nvars),), nvars)

    @classmethod
    def binomial(cls, order: int, m: int, coeff: Poly) -> "TruncatedSeries":
        """``1 + coeff * q^m``."""
        polys = [Poly.constant(coeff.nvars)] + [Poly(coeff.nvars)] * order
        if m <= order:
            polys[m] = polys[m] + coeff
        return cls(order, tuple(polys), coeff.nvars)

    def __getitem__(self, k: int) -> Poly:
        if k > self.order:
            raise IndexError(f"coefficient q^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(min(order, self.order), self.coeffs, self.nvars)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller order."""
    if a.nvars != b.nvars:
        raise ValueError("incompatible coefficient rings")
    order = min(a.order, b.order)
    out = []
    for k in range(order + 1):
        acc = Poly(a.nvars)
        for i in range(k + 1):
            if a.coeffs[i].terms and b.coeffs[k - i].terms:
                acc = acc + a.coeffs[i] * b.coeffs[k - i]
        out.append(acc)
    return TruncatedSeries(order, tuple(out), a.nvars)


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant coefficient must be ``+1`` or ``-1``."""
    c0 = a.coeffs[0]
    if not c0.is_constant() or c0.constant_term() not in (1, -1):
        raise ValueError(f"constant coefficient {c0!r} is not a unit")
    u = c0.constant_term()  # u == 1/u
    inv = [Poly.constant(a.nvars, u)]
    for k in range(1, a.order + 1):
        acc = Poly(a.nvars)
        for i in range(1, k + 1):
            if a.coeffs[i].terms and inv[k - i].terms:
                acc = acc + a.coeffs[i] * inv[k - i]
        inv.append(acc * (-u))
    return TruncatedSeries(a.order, tuple(inv), a.nvars)


def series_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """``a**e``; negative exponents go through :func:`series_inverse`."""
    if e < 0:
        return series_pow(series_inverse(a), -e)
    result = TruncatedSeries.one(a.order, a.nvars)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def goettsche_series(s: SurfaceDescriptor, order: int) -> TruncatedSeries:
    """Product over ``m`` and degrees ``i`` of the Hilbert-scheme generating function in ``t``.

    A class of degree ``i`` contributes ``(1 + t^(i+2m-2) q^m)^(b_i)`` when
    ``i`` is odd and ``(1 - t^(i+2m-2) q^m)^(-b_i)`` when even.
    """
    result = TruncatedSeries.one(order)
    for m in range(1, order + 1):
        for i, b in enumerate(s.betti):
            if not b:
                continue
            e = i + 2 * m - 2
            if i % 2:
                factor = series_pow(TruncatedSeries.binomial(order, m, Poly.monomial((e,))), b)
            else:
                factor = series_pow(TruncatedSeries.binomial(order, m, Poly.monomial((e,), -1)), -b)
            result = series_mul(result, factor)
    return result


def goettsche_hodge_series(s: SurfaceDescriptor, order: int) -> TruncatedSeries:
    """Bigraded version in ``u, v``: the twist weight of ``X_m`` is ``(uv)^(m-1)``."""
    if s.hodge is None:
        raise ValueError(f"surface {s.name!r} has no Hodge data")
    result = TruncatedSeries.one(order, 2)
    for m in range(1, order + 1):
        for (p, q), h in s.hodge.items():
            mono = (p + m - 1, q + m - 1)
            if (p + q) % 2:
                factor = series_pow(TruncatedSeries.binomial(order, m, Poly.monomial(mono)), h)
            else:
                factor = series_pow(TruncatedSeries.binomial(order, m, Poly.monomial(mono, -1)), -h)
            result = series_mul(result, factor)
    return result


def monomial_to_partition(key: Sequence[int]) -> Partition:
    """``X_1^a1 ... X_t^at`` corresponds to the partition ``1^a1 ... t^at``."""
    parts: list[int] = []
    for m, a in enumerate(key, start=1):
        parts.extend([m] * a)
    return Partition.of(*parts)


def motivic_monomial_expansion(n: int) -> dict[tuple[int, ...], tuple[int, int]]:
    """Expand ``prod_m 1/(1 - X_m L q^m)`` and read off the ``q^n`` coefficient.

    ``L`` stands for the twist-and-shift ``(1)[2]``.  Each monomial
    ``X_1^a1 ... X_n^an L^e`` is reported under its exponent key ``(a1..an)``
    with net twist ``n - e`` and net shift ``2(n - e)``, which is what remains
    after moving the ``(n)[2n]`` of the left-hand side across.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    nvars = n + 1  # X_1..X_n, L
    result = TruncatedSeries.one(n, nvars)
    for m in range(1, n + 1):
        exps = [0] * nvars
        exps[m - 1] = 1
        exps[n] = 1
        factor = series_inverse(TruncatedSeries.binomial(n, m, Poly.monomial(exps, -1)))
        result = series_mul(result, factor)
    out = {}
    for mono, c in result[n].terms.items():
        if c != 1:
            raise ArithmeticError(f"monomial {mono} has coefficient {c}, expected 1")
        key, e = mono[:n], mono[n]
        out[key] = (n - e, 2 * (n - e))
    return dict(sorted(out.items()))


def compare_with_decomposition(n: int) -> tuple[bool, list[str]]:
    """Check the monomial expansion against :func:`hilb_decomposition` term for term."""
    expansion = motivic_monomial_expansion(n)
    decomp: MotiveDecomposition = hilb_decomposition(n)
    problems = []
    by_nu = {monomial_to_partition(k): v for k, v in expansion.items()}
    expected = decomp.as_dict()
    for nu in sorted(set(by_nu) | set(expected), key=lambda p: p.parts):
        if by_nu.get(nu) != expected.get(nu):
            problems.append(f"{nu}: expansion {by_nu.get(nu)} vs decomposition {expected.get(nu)}")
    return not problems, problems


@dataclass
class TwoPathReport:
    surface: str
    order: int
    passed: bool
    rows: list[dict]
    first_discrepancy: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "order": self.order,
            "passed": self.passed,
            "first_discrepancy": self.first_discrepancy,
            "rows": self.rows,
        }

    def __bool__(self) -> bool:
        return self.passed


def two_path_check(s: SurfaceDescriptor, order: int) -> TwoPathReport:
    """Compare the series coefficients with the partition sum for ``n = 0..order``."""
    series = goettsche_series(s, order)
    rows = []
    first = None
    for n in range(order + 1):
        from_series = {m[0]: c for m, c in series[n].terms.items()}
        direct = poincare_hilb(s, n)
        ok = from_series == direct.dims
        row = {"n": n, "equal": ok, "poincare": direct.to_list()}
        if not ok:
            row["series"] = dict(sorted(from_series.items()))
            if first is None:
                first = row
        rows.append(row)
    return TwoPathReport(s.name, order, first is None, rows, first)
