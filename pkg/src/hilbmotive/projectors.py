"""Formal algebra of the correspondences Gamma^nu, their transposes and the projectors Delta_nu.

Objects are ``H`` (the Hilbert scheme ``X^[n]``) and ``S_nu`` (the symmetric
product ``X^(nu)``).  The generators are

* ``G(nu)``: ``S_nu -> H``, the correspondence Gamma^nu;
* ``T(nu)``: ``H -> S_nu``, its transpose.

Words are tuples of letters in composition order: ``(w1, w2)`` means
``w1 o w2`` (``w2`` acts first).  The only rewrite rule is

    T(nu) o G(mu)  ->  delta(nu, mu) * m_nu * id_{S_nu}

which is length-decreasing, so reduction terminates.  Normal forms of the
endomorphisms of ``H`` are ``id_H`` and ``E(nu, mu) = G(nu) o T(mu)``.
Completeness (``sum Delta_nu = id_H``) is deliberately not a rule: it is
checked in a concrete :class:`BlockRealization` instead.

Both layers are exact: rationals here, sympy ``DomainMatrix`` over ``QQ`` for
the block matrices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .graded import GradedDimension, SurfaceDescriptor
from .motive import _require_cellular, chow_dims_hilb, symmetric_product_chow
from .partitions import Partition, enum_partitions, m_coeff, refines

__all__ = [
    "H",
    "Letter",
    "CorrespondenceElement",
    "gamma",
    "gamma_t",
    "identity",
    "compose",
    "reduce_word",
    "delta_projector",
    "verify_projector_algebra",
    "BlockRealization",
    "build_block_realization",
    "verify_completeness",
    "fiber_action_check",
    "SupportLedger",
    "support_ledger",
    "CheckReport",
]

H = "H"
Obj = Union[str, Partition]


@dataclass(frozen=True, order=True)
class Letter:
    kind: str  # "G" or "T"
    nu: Partition = field(compare=True)

    @property
    def source(self) -> Obj:
        return self.nu if self.kind == "G" else H

    @property
    def target(self) -> Obj:
        return H if self.kind == "G" else self.nu

    def transpose(self) -> "Letter":
        return Letter("T" if self.kind == "G" else "G", self.nu)

    def __str__(self) -> str:
        return f"{'G' if self.kind == 'G' else 'tG'}[{self.nu}]"


Word = tuple[Letter, ...]


def _word_str(word: Word) -> str:
    return " o ".join(map(str, word)) if word else "id"


def _obj_str(obj: Obj) -> str:
    return "H" if obj == H else f"S[{obj}]"


def _check_word(word: Word, source: Obj, target: Obj) -> None:
    cur = source
    for letter in reversed(word):
        if letter.source != cur:
            raise TypeError(f"word {_word_str(word)} is not composable from {_obj_str(source)}")
        cur = letter.target
    if cur != target:
        raise TypeError(f"word {_word_str(word)} does not land in {_obj_str(target)}")


def _redexes(word: Word) -> list[int]:
    return [i for i in range(len(word) - 1) if word[i].kind == "T" and word[i + 1].kind == "G"]


def reduce_word(word: Word, rng: Optional[random.Random] = None) -> tuple[Fraction, Word]:
    """Rewrite ``word`` to normal form, returning ``(coefficient, normal word)``.

    A zero coefficient means the word vanishes.  With ``rng`` the redex to
    contract is chosen at random; otherwise the leftmost one is used.
    """
    coeff = Fraction(1)
    word = tuple(word)
    while True:
        spots = _redexes(word)
        if not spots:
            return coeff, word
        i = rng.choice(spots) if rng is not None else spots[0]
        left, right = word[i], word[i + 1]
        if left.nu != right.nu:
            return Fraction(0), ()
        coeff *= m_coeff(left.nu)
        word = word[:i] + word[i + 2:]


class CorrespondenceElement:
    """Rational linear combination of normal-form words between two objects."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: Obj, target: Obj, terms: Optional[dict] = None) -> None:
        self.source = source
        self.target = target
        clean: dict[Word, Fraction] = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            _check_word(word, source, target)
            k, nf = reduce_word(word)
            c = Fraction(c) * k
            if c:
                clean[nf] = clean.get(nf, Fraction(0)) + c
        self.terms = {w: c for w, c in clean.items() if c}

    def _same_hom(self, other: "CorrespondenceElement") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise TypeError(
                f"hom-set mismatch: {_obj_str(self.source)}->{_obj_str(self.target)} vs "
                f"{_obj_str(other.source)}->{_obj_str(other.target)}"
            )

    def __add__(self, other: "CorrespondenceElement") -> "CorrespondenceElement":
        self._same_hom(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return CorrespondenceElement(self.source, self.target, terms)

    def __neg__(self) -> "CorrespondenceElement":
        return self * -1

    def __sub__(self, other: "CorrespondenceElement") -> "CorrespondenceElement":
        return self + (-other)

    def __mul__(self, scalar) -> "CorrespondenceElement":
        return CorrespondenceElement(
            self.source, self.target, {w: c * Fraction(scalar) for w, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other: "CorrespondenceElement") -> "CorrespondenceElement":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CorrespondenceElement):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.terms.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def transpose(self) -> "CorrespondenceElement":
        """Transpose anti-automorphism: reverse words and swap G with tG."""
        return CorrespondenceElement(
            self.target,
            self.source,
            {tuple(l.transpose() for l in reversed(w)): c for w, c in self.terms.items()},
        )

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{_obj_str(self.source)}->{_obj_str(self.target)}]"
        return " + ".join(f"{c}*({_word_str(w)})" for w, c in sorted(self.terms.items()))


def gamma(nu: Partition) -> CorrespondenceElement:
    return CorrespondenceElement(nu, H, {(Letter("G", nu),): 1})


def gamma_t(nu: Partition) -> CorrespondenceElement:
    return CorrespondenceElement(H, nu, {(Letter("T", nu),): 1})


def identity(obj: Obj) -> CorrespondenceElement:
    return CorrespondenceElement(obj, obj, {(): 1})


def zero(source: Obj, target: Obj) -> CorrespondenceElement:
    return CorrespondenceElement(source, target)


def compose(a: CorrespondenceElement, b: CorrespondenceElement) -> CorrespondenceElement:
    """``a o b`` in normal form; ``b`` acts first."""
    if b.target != a.source:
        raise TypeError(f"cannot compose: {_obj_str(b.target)} is not {_obj_str(a.source)}")
    terms: dict[Word, Fraction] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            terms[wa + wb] = terms.get(wa + wb, Fraction(0)) + ca * cb
    return CorrespondenceElement(b.source, a.target, terms)


def delta_projector(nu: Partition) -> CorrespondenceElement:
    """``(1/m_nu) Gamma^nu o tGamma^nu``."""
    return compose(gamma(nu), gamma_t(nu)) * Fraction(1, m_coeff(nu))


# --- reports -----------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "details": self.details,
        }

    def __bool__(self) -> bool:
        return self.passed


def verify_projector_algebra(n: int) -> CheckReport:
    """Symbolic check of orthogonality, idempotency and absorption for all pairs."""
    nus = enum_partitions(n)
    deltas = {nu: delta_projector(nu) for nu in nus}
    failures = []
    checked = 0
    for nu in nus:
        for mu in nus:
            got = compose(deltas[nu], deltas[mu])
            want = deltas[nu] if nu == mu else zero(H, H)
            checked += 1
            if got != want:
                failures.append({"identity": "Delta_nu o Delta_mu", "nu": str(nu), "mu": str(mu), "got": repr(got)})
            got = compose(deltas[nu], gamma(mu))
            want = gamma(mu) if nu == mu else zero(mu, H)
            checked += 1
            if got != want:
                failures.append({"identity": "Delta_nu o G_mu", "nu": str(nu), "mu": str(mu), "got": repr(got)})
        per_nu = {
            "tG_nu o Delta_nu = tG_nu": compose(gamma_t(nu), deltas[nu]) == gamma_t(nu),
            "transpose(Delta_nu) = Delta_nu": deltas[nu].transpose() == deltas[nu],
        }
        for name, ok in per_nu.items():
            checked += 1
            if not ok:
                failures.append({"identity": name, "nu": str(nu)})
    return CheckReport(
        "projector_algebra",
        not failures,
        checked,
        failures,
        {"n": n, "partitions": len(nus), "pairs": len(nus) ** 2},
    )


# --- block realization -------------------------------------------------------

def _dm_zeros(rows: int, cols: int) -> DomainMatrix:
    return DomainMatrix({}, (rows, cols), QQ)


def _dm_identity(size: int) -> DomainMatrix:
    return DomainMatrix({i: {i: QQ(1)} for i in range(size)}, (size, size), QQ)


def _basis_degrees(dims: GradedDimension) -> list[int]:
    return [d for d, c in sorted(dims.items()) for _ in range(c)]


@dataclass
class BlockRealization:
    """Matrices for the generators acting on ``A_*(X^[n]) = sum_nu A_*(X^(nu))``.

    ``G(nu)`` is the inclusion of the ``nu`` block and ``T(nu)`` is ``m_nu``
    times the projection onto it, so ``T(nu) G(mu) = delta m_nu id`` exactly.
    Basis vectors of each block are sorted by cycle dimension; the ``H`` degree
    of a vector from block ``nu`` is its dimension plus ``n - l(nu)``.
    """

    n: int
    surface: str
    partitions: list[Partition]
    blocks: dict[Partition, GradedDimension]
    offsets: dict[Partition, int]
    degrees: list[int]
    gamma: dict[Partition, DomainMatrix]
    gamma_t: dict[Partition, DomainMatrix]

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def block_dim(self, nu: Partition) -> int:
        return self.blocks[nu].total

    def delta(self, nu: Partition) -> DomainMatrix:
        return (self.gamma[nu] * self.gamma_t[nu]) * QQ(1, m_coeff(nu))

    def point_vector(self, mu: Partition) -> Optional[DomainMatrix]:
        """Column vector of the point class in ``A_0(X^(mu))``, or None if that group is zero."""
        if self.blocks[mu][0] == 0:
            return None
        return DomainMatrix({0: {0: QQ(1)}}, (self.block_dim(mu), 1), QQ)

    def realize(self, element: CorrespondenceElement) -> DomainMatrix:
        """Matrix of a formal element; words are evaluated letter by letter."""
        rows = self._obj_dim(element.target)
        cols = self._obj_dim(element.source)
        total = _dm_zeros(rows, cols)
        for word, c in element.terms.items():
            mat = _dm_identity(cols)
            for letter in reversed(word):
                gen = self.gamma if letter.kind == "G" else self.gamma_t
                mat = gen[letter.nu] * mat
            total = total + mat * QQ(c.numerator, c.denominator)
        return total

    def _obj_dim(self, obj: Obj) -> int:
        return self.dim if obj == H else self.block_dim(obj)


def build_block_realization(s: SurfaceDescriptor, n: int) -> BlockRealization:
    _require_cellular(s)
    nus = enum_partitions(n)
    blocks = {nu: symmetric_product_chow(s, nu) for nu in nus}
    offsets = {}
    degrees: list[int] = []
    for nu in nus:
        offsets[nu] = len(degrees)
        degrees.extend(d + n - nu.l for d in _basis_degrees(blocks[nu]))
    dim = len(degrees)
    gam, gam_t = {}, {}
    for nu in nus:
        size, off, m = blocks[nu].total, offsets[nu], m_coeff(nu)
        gam[nu] = DomainMatrix({off + i: {i: QQ(1)} for i in range(size)}, (dim, size), QQ)
        gam_t[nu] = DomainMatrix({i: {off + i: QQ(m)} for i in range(size)}, (size, dim), QQ)
    return BlockRealization(n, s.name, nus, blocks, offsets, degrees, gam, gam_t)


def _restrict(mat: DomainMatrix, idx: list[int]) -> DomainMatrix:
    return mat.extract(idx, idx)


def verify_completeness(r: BlockRealization, surface: Optional[SurfaceDescriptor] = None) -> CheckReport:
    """Check that the realized projectors are orthogonal idempotents summing to the identity.

    Also checks the generator relations, ``rank(Delta_nu) = dim A_*(X^(nu))``,
    the graded ranks, and (given the surface) that the graded dimension of the
    realization matches :func:`chow_dims_hilb`.
    """
    failures = []
    checked = 0
    deltas = {nu: r.delta(nu) for nu in r.partitions}
    ident = _dm_identity(r.dim)

    for nu in r.partitions:
        for mu in r.partitions:
            rel = r.gamma_t[nu] * r.gamma[mu]
            want = _dm_identity(r.block_dim(nu)) * QQ(m_coeff(nu)) if nu == mu else _dm_zeros(r.block_dim(nu), r.block_dim(mu))
            checked += 1
            if rel != want:
                failures.append({"check": "tG_nu G_mu = delta m_nu id", "nu": str(nu), "mu": str(mu)})
            prod = deltas[nu] * deltas[mu]
            checked += 1
            if prod != (deltas[nu] if nu == mu else _dm_zeros(r.dim, r.dim)):
                failures.append({"check": "Delta_nu Delta_mu = delta Delta_nu", "nu": str(nu), "mu": str(mu)})

    total = _dm_zeros(r.dim, r.dim)
    for d in deltas.values():
        total = total + d
    checked += 1
    if total != ident:
        failures.append({"check": "sum Delta_nu = id"})

    ranks = {}
    by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(r.degrees):
        by_degree.setdefault(d, []).append(i)
    for nu in r.partitions:
        rank = deltas[nu].rank()
        ranks[str(nu)] = rank
        checked += 1
        if rank != r.block_dim(nu):
            failures.append({"check": "rank Delta_nu = dim A(S_nu)", "nu": str(nu), "rank": rank})
        shift = r.n - nu.l
        for k, idx in by_degree.items():
            want = r.blocks[nu][k - shift] if k >= shift else 0
            got = _restrict(deltas[nu], idx).rank()
            checked += 1
            if got != want:
                failures.append({"check": "graded rank", "nu": str(nu), "k": k, "rank": got, "expected": want})
    rank_sum = sum(ranks.values())
    checked += 1
    if rank_sum != r.dim:
        failures.append({"check": "sum of ranks = dim H", "sum": rank_sum, "dim": r.dim})

    graded = GradedDimension({k: len(v) for k, v in by_degree.items()})
    if surface is not None:
        checked += 1
        if graded != chow_dims_hilb(surface, r.n):
            failures.append({"check": "graded dim = chow_dims_hilb"})

    return CheckReport(
        "completeness",
        not failures,
        checked,
        failures,
        {
            "n": r.n,
            "surface": r.surface,
            "dim": r.dim,
            "rank_sum": rank_sum,
            "ranks": ranks,
            "graded_dims": graded.to_list(),
        },
    )


def fiber_action_check(r: BlockRealization, nu: Partition, mu: Partition) -> CheckReport:
    """Apply ``Delta_nu`` to the fiber class ``G(mu) e_pt``.

    Expected: the class itself when ``nu == mu`` and zero otherwise.  The case
    where ``nu`` strictly refines ``mu`` is labelled ``model-derived``; the
    other two cases are the geometric statements.
    """
    if nu == mu:
        case = "equal"
    elif refines(nu, mu):
        case = "model-derived"
    else:
        case = "not-refining"
    e_pt = r.point_vector(mu)
    if e_pt is None:
        return CheckReport(
            "fiber_action", False, 0, [{"reason": f"A_0(X^({mu})) is zero; no point class"}],
            {"nu": str(nu), "mu": str(mu), "case": case},
        )
    fiber = r.gamma[mu] * e_pt
    image = r.delta(nu) * fiber
    want = fiber if nu == mu else _dm_zeros(r.dim, 1)
    ok = image == want
    failures = [] if ok else [{"nu": str(nu), "mu": str(mu), "case": case}]
    return CheckReport("fiber_action", ok, 1, failures, {"nu": str(nu), "mu": str(mu), "case": case})


# --- support bookkeeping -----------------------------------------------------

@dataclass
class SupportLedger:
    """Which ``D^{nu'}`` may appear in ``Delta_nu``, and the linear constraints on the coefficients.

    ``support[nu]`` is the down-set ``{nu' : nu refines nu'}``.  The unknown
    ``eps[nu][nu']`` is the coefficient of ``D^{nu'}`` in ``Delta_nu``.  Summing
    all ``Delta_nu`` must give the diagonal ``D^{1^n}``, which yields one
    equation per ``nu'``: ``sum_{nu refines nu'} eps[nu][nu'] = [nu' == 1^n]``.
    Each coefficient must be non-zero with the sign of ``m_nu``.
    """

    n: int
    support: dict[Partition, list[Partition]]
    equations: dict[Partition, tuple[list[Partition], int]]
    signs: dict[Partition, int]
    consistent: bool
    sign_feasible: bool
    witness: dict[Partition, dict[Partition, Fraction]]

    @property
    def unknowns(self) -> int:
        return sum(len(v) for v in self.support.values())

    @property
    def rank(self) -> int:
        # every unknown occurs in exactly one equation, each equation is non-empty
        return sum(1 for nus, _ in self.equations.values() if nus)

    @property
    def degrees_of_freedom(self) -> int:
        return self.unknowns - self.rank

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "unknowns": self.unknowns,
            "equations": len(self.equations),
            "rank": self.rank,
            "degrees_of_freedom": self.degrees_of_freedom,
            "consistent": self.consistent,
            "sign_feasible": self.sign_feasible,
            "support": {str(nu): [str(x) for x in down] for nu, down in self.support.items()},
            "constraints": [
                {
                    "column": str(col),
                    "terms": [f"eps[{nu}][{col}]" for nu in nus],
                    "rhs": rhs,
                }
                for col, (nus, rhs) in self.equations.items()
            ],
            "witness": {
                str(nu): {str(col): str(v) for col, v in row.items()} for nu, row in self.witness.items()
            },
        }


def support_ledger(n: int) -> SupportLedger:
    nus = enum_partitions(n)
    finest = Partition((1,) * n)
    support = {nu: [x for x in nus if refines(nu, x)] for nu in nus}
    signs = {nu: 1 if m_coeff(nu) > 0 else -1 for nu in nus}
    equations = {}
    for col in nus:
        rows = [nu for nu in nus if col in support[nu]]
        equations[col] = (rows, 1 if col == finest else 0)

    consistent = all(rows or rhs == 0 for rows, rhs in equations.values())
    witness: dict[Partition, dict[Partition, Fraction]] = {nu: {} for nu in nus}
    sign_feasible = True
    for col, (rows, rhs) in equations.items():
        pos = [nu for nu in rows if signs[nu] > 0]
        neg = [nu for nu in rows if signs[nu] < 0]
        if rhs > 0:
            ok = bool(pos)
        elif rhs < 0:
            ok = bool(neg)
        else:
            ok = (bool(pos) and bool(neg)) or not rows
        if not ok:
            sign_feasible = False
            continue
        # spread the right-hand side plus a balancing unit across each sign class
        if rhs == 0 and rows:
            for nu in pos:
                witness[nu][col] = Fraction(1, len(pos))
            for nu in neg:
                witness[nu][col] = Fraction(-1, len(neg))
        elif rhs != 0:
            extra = 1 if neg else 0
            for nu in pos:
                witness[nu][col] = Fraction(rhs + extra, len(pos))
            for nu in neg:
                witness[nu][col] = Fraction(-extra, len(neg))
    return SupportLedger(n, support, equations, signs, consistent, sign_feasible, witness)
