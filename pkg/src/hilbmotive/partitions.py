"""Integer partitions, the refinement order and set decompositions.

A partition ``nu`` of ``n`` indexes a stratum of the Hilbert-Chow morphism.
``nu`` *refines* ``mu`` (written ``nu >= mu`` below) when the parts of ``nu``
can be grouped into blocks whose sums are the parts of ``mu``; ``1^n`` is the
finest partition and ``(n)`` the coarsest.

Set decompositions of ``{1, ..., l}`` use 1-based indices throughout so that
they read like the blocks ``I_1, ..., I_r`` of the combinatorics they model.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "Partition",
    "MultiplicityVector",
    "SetDecomposition",
    "Multipartition",
    "ORDERS",
    "enum_partitions",
    "iter_partitions",
    "partition_count",
    "m_coeff",
    "refines",
    "enum_decompositions",
    "iter_decompositions",
    "q_map",
    "q_fiber",
    "sigma_orbits",
    "enum_multipartitions",
    "multipartition_of",
    "multipartition_from_pair",
    "orbit_bijection_check",
    "OrbitBijectionReport",
    "stratum_dims",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2,1,1"``, ``"2 1 1"`` or exponent form ``"2.1^2"``."""
        text = text.strip()
        if text in ("", "()", "0"):
            return cls(())
        parts: list[int] = []
        for token in text.replace(",", " ").replace(".", " ").split():
            base, _, exp = token.partition("^")
            parts.extend([int(base)] * (int(exp) if exp else 1))
        return cls.of(*parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def multiplicities(self) -> "MultiplicityVector":
        return MultiplicityVector.from_partition(self)

    def sigma_order(self) -> int:
        """Order of the group permuting equal parts, ``prod a_m!``."""
        return math.prod(math.factorial(a) for a in Counter(self.parts).values())

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        chunks = []
        for part, count in sorted(Counter(self.parts).items(), reverse=True):
            chunks.append(str(part) if count == 1 else f"{part}^{count}")
        return ".".join(chunks)

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


@dataclass(frozen=True)
class MultiplicityVector:
    """``a[m]`` = number of parts equal to ``m``, for ``m = 1..n``."""

    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.a):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def from_partition(cls, nu: Partition) -> "MultiplicityVector":
        counts = Counter(nu.parts)
        return cls(tuple(counts.get(m, 0) for m in range(1, nu.n + 1)))

    @property
    def n(self) -> int:
        return sum(m * a for m, a in enumerate(self.a, start=1))

    @property
    def length(self) -> int:
        return sum(self.a)

    def items(self) -> Iterator[tuple[int, int]]:
        """Yield ``(m, a_m)`` for the non-zero multiplicities."""
        for m, a in enumerate(self.a, start=1):
            if a:
                yield m, a

    def to_partition(self) -> Partition:
        parts: list[int] = []
        for m in range(len(self.a), 0, -1):
            parts.extend([m] * self.a[m - 1])
        return Partition(tuple(parts))


@dataclass(frozen=True)
class SetDecomposition:
    """A set partition of ``{1, ..., size}``.

    Blocks are stored sorted internally and sorted by their minimum element,
    so equal decompositions compare equal.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b))
        if any(not b for b in blocks):
            raise ValueError("blocks must be non-empty")
        flat = [i for b in blocks for i in b]
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValueError(f"blocks must be disjoint and cover 1..{len(flat)}: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sums(self, nu: Partition) -> list[int]:
        return [sum(nu.parts[i - 1] for i in b) for b in self.blocks]

    def ordered(self, nu: Partition) -> tuple[tuple[int, ...], ...]:
        """Blocks sorted by descending block-sum under ``nu``, ties lexicographic."""
        self._check_against(nu)
        return tuple(sorted(self.blocks, key=lambda b: (-sum(nu.parts[i - 1] for i in b), b)))

    def permute(self, perm: Sequence[int]) -> "SetDecomposition":
        """Relabel index ``i`` as ``perm[i-1]``."""
        return SetDecomposition(tuple(tuple(perm[i - 1] for i in b) for b in self.blocks))

    def _check_against(self, nu: Partition) -> None:
        if self.size != nu.l:
            raise ValueError(f"decomposition of 1..{self.size} does not match l(nu) = {nu.l}")

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class Multipartition:
    """A tuple of partitions ``(eta^1, ..., eta^r)`` with ``eta^i`` a partition of ``mu_i``."""

    components: tuple[Partition, ...]
    target: Partition

    def __post_init__(self) -> None:
        if len(self.components) != self.target.l:
            raise ValueError("one component per part of the target is required")
        for eta, m in zip(self.components, self.target.parts):
            if eta.n != m:
                raise ValueError(f"component {eta} is not a partition of {m}")

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


# --- partitions of n -------------------------------------------------------

ORDERS = ("coarse_first", "fine_first")


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield partitions of ``n`` in reverse lexicographic order, lazily."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        yield Partition(())
        return

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            yield from rec(remaining - p, p, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def _order_key(order: str):
    if order == "coarse_first":
        # graded by length; reverse-lex within a length.
        return lambda nu: (nu.l, tuple(-p for p in nu.parts))
    if order == "fine_first":
        return lambda nu: (-nu.l, nu.parts)
    raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")


@lru_cache(maxsize=64)
def _partitions_cached(n: int, order: str) -> tuple[Partition, ...]:
    return tuple(sorted(iter_partitions(n), key=_order_key(order)))


def enum_partitions(n: int, order: str = "coarse_first") -> list[Partition]:
    """All partitions of ``n`` in a total order compatible with refinement.

    ``coarse_first`` (the default) sorts by increasing length, so ``(n)`` comes
    first and ``1^n`` last; ``fine_first`` is the reverse-graded variant.
    Since refinement strictly increases the length unless the partitions are
    equal, both are linear extensions of the refinement order.
    ``n = 0`` gives the single empty partition.
    """
    return list(_partitions_cached(n, order))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by the standard bounded-part recurrence."""
    if n < 0:
        return 0
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def m_coeff(nu: Partition) -> int:
    """``(-1)^(n - l) * prod(parts)``."""
    sign = -1 if (nu.n - nu.l) % 2 else 1
    return sign * math.prod(nu.parts)


def stratum_dims(nu: Partition) -> tuple[int, int]:
    """Dimensions of the stratum in the symmetric product and in the Hilbert scheme."""
    return 2 * nu.l, nu.n + nu.l


# --- set decompositions ----------------------------------------------------

def iter_decompositions(l: int) -> Iterator[SetDecomposition]:  # noqa: E741
    """Set partitions of ``{1..l}`` via restricted growth strings."""
    if l < 0:
        raise ValueError("l must be non-negative")
    if l == 0:
        yield SetDecomposition(())
        return
    rgs = [0] * l
    maxes = [0] * l  # maxes[i] = max(rgs[:i+1])

    def emit() -> SetDecomposition:
        blocks: dict[int, list[int]] = {}
        for idx, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(idx)
        return SetDecomposition(tuple(tuple(b) for b in blocks.values()))

    def rec(i: int) -> Iterator[SetDecomposition]:
        if i == l:
            yield emit()
            return
        for label in range(maxes[i - 1] + 2):
            rgs[i] = label
            maxes[i] = max(maxes[i - 1], label)
            yield from rec(i + 1)

    yield from rec(1)


def enum_decompositions(l: int) -> list[SetDecomposition]:  # noqa: E741
    return list(iter_decompositions(l))


def q_map(nu: Partition, rho: SetDecomposition) -> Partition:
    """Block sums of ``rho`` under ``nu``, sorted non-increasingly."""
    rho._check_against(nu)
    return Partition(tuple(sorted(rho.block_sums(nu), reverse=True)))


def _fiber_search(nu: Partition, mu: Partition, first_only: bool) -> list[SetDecomposition]:
    """Backtracking search for decompositions of ``1..l(nu)`` with block sums ``mu``.

    Each index is placed into an open block or starts a new one (restricted
    growth), pruning once a block overshoots the largest remaining target.
    """
    if nu.n != mu.n:
        raise ValueError(f"weight mismatch: |{nu}| = {nu.n} but |{mu}| = {mu.n}")
    target = Counter(mu.parts)
    r = mu.l
    blocks: list[list[int]] = []
    sums: list[int] = []
    found: list[SetDecomposition] = []
    biggest = mu.parts[0] if mu.parts else 0

    def rec(i: int) -> bool:
        if len(blocks) > r:
            return False
        if i > nu.l:
            if len(blocks) == r and Counter(sums) == target:
                found.append(SetDecomposition(tuple(tuple(b) for b in blocks)))
                return first_only
            return False
        part = nu.parts[i - 1]
        for b in range(len(blocks)):
            if sums[b] + part <= biggest:
                blocks[b].append(i)
                sums[b] += part
                stop = rec(i + 1)
                sums[b] -= part
                blocks[b].pop()
                if stop:
                    return True
        if len(blocks) < r:
            blocks.append([i])
            sums.append(part)
            stop = rec(i + 1)
            sums.pop()
            blocks.pop()
            if stop:
                return True
        return False

    rec(1)
    return found


def refines(nu: Partition, mu: Partition) -> bool:
    """True iff ``nu`` refines ``mu`` (``nu`` finer, ``mu`` coarser)."""
    if nu.n != mu.n:
        raise ValueError(f"weight mismatch: |{nu}| = {nu.n} but |{mu}| = {mu.n}")
    if nu.l < mu.l:
        return False
    return bool(_fiber_search(nu, mu, first_only=True))


def q_fiber(nu: Partition, mu: Partition) -> list[SetDecomposition]:
    """All ``rho`` with ``q_map(nu, rho) == mu``, sorted."""
    return sorted(_fiber_search(nu, mu, first_only=False), key=lambda d: d.blocks)


def _sigma_generators(nu: Partition) -> list[tuple[int, ...]]:
    """Adjacent transpositions inside each run of equal parts (1-based images)."""
    l = nu.l  # noqa: E741
    gens = []
    for i in range(1, l):
        if nu.parts[i - 1] == nu.parts[i]:
            perm = list(range(1, l + 1))
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            gens.append(tuple(perm))
    return gens


def sigma_orbits(nu: Partition, mu: Partition) -> list[list[SetDecomposition]]:
    """Orbits of the fiber of ``q_map`` over ``mu`` under permutations of equal parts.

    Equal parts of ``nu`` sit at consecutive indices, so the group is generated
    by adjacent transpositions within runs. Each orbit is returned sorted, its
    first element being the lexicographically minimal representative; orbits
    are ordered by representative.
    """
    fiber = q_fiber(nu, mu)
    gens = _sigma_generators(nu)
    seen: set[SetDecomposition] = set()
    orbits = []
    for rho in fiber:
        if rho in seen:
            continue
        orbit = {rho}
        frontier = [rho]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                img = cur.permute(g)
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        seen |= orbit
        orbits.append(sorted(orbit, key=lambda d: d.blocks))
    return orbits


# --- multipartitions -------------------------------------------------------

def enum_multipartitions(mu: Partition) -> list[Multipartition]:
    """Every tuple ``(eta^1, ..., eta^r)`` with ``eta^i`` a partition of ``mu_i``."""
    choices = [enum_partitions(m) for m in mu.parts]
    return [Multipartition(tuple(c), mu) for c in itertools.product(*choices)]


def multipartition_of(nu: Partition, rho: SetDecomposition) -> Multipartition:
    """Group the parts of ``nu`` along the blocks of ``rho`` (blocks in canonical order)."""
    mu = q_map(nu, rho)
    comps = tuple(Partition.of(*(nu.parts[i - 1] for i in b)) for b in rho.ordered(nu))
    return Multipartition(comps, mu)


def multipartition_from_pair(eta: Multipartition) -> tuple[Partition, SetDecomposition]:
    """The reordering construction: concatenate the components, sort, track blocks.

    The concatenated sequence ``s`` is sorted non-increasingly by a stable
    permutation ``sigma``; ``sigma`` sends position ``j`` of ``s`` to its index
    in ``nu`` and component ``i`` becomes the block of images of its positions.
    """
    seq: list[int] = []
    owner: list[int] = []
    for i, comp in enumerate(eta.components):
        seq.extend(comp.parts)
        owner.extend([i] * comp.l)
    order = sorted(range(len(seq)), key=lambda j: -seq[j])  # stable
    sigma = [0] * len(seq)
    for new_index, j in enumerate(order, start=1):
        sigma[j] = new_index
    nu = Partition(tuple(seq[j] for j in order))
    blocks = [[] for _ in eta.components]
    for j, i in enumerate(owner):
        blocks[i].append(sigma[j])
    return nu, SetDecomposition(tuple(tuple(b) for b in blocks))


@dataclass
class OrbitBijectionReport:
    mu: Partition
    passed: bool
    witnesses: list[dict]
    multipartition_orbits: int
    fiber_orbits: int

    def to_dict(self) -> dict:
        return {
            "mu": str(self.mu),
            "passed": self.passed,
            "multipartition_orbits": self.multipartition_orbits,
            "fiber_orbits": self.fiber_orbits,
            "witnesses": self.witnesses,
        }

    def __bool__(self) -> bool:
        return self.passed


def _mu_orbit_key(eta: Multipartition) -> tuple:
    """Canonical representative of the orbit of ``eta`` under permuting equal parts of ``mu``."""
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for comp, m in zip(eta.components, eta.target.parts):
        by_size.setdefault(m, []).append(comp.parts)
    return tuple((m, tuple(sorted(v))) for m, v in sorted(by_size.items(), reverse=True))


def orbit_bijection_check(mu: Partition) -> OrbitBijectionReport:
    """Round-trip every multipartition of ``mu`` through ``(nu, rho)`` and back.

    Passes when each round trip lands in the same orbit under permutations of
    equal parts of ``mu``, and when orbits of multipartitions correspond one to
    one with pairs ``(nu, orbit of rho)`` over all ``nu``.
    """
    witnesses = []
    passed = True
    orbit_keys = set()
    for eta in enum_multipartitions(mu):
        nu, rho = multipartition_from_pair(eta)
        ok = q_map(nu, rho) == mu
        eta_hat = multipartition_of(nu, rho) if ok else None
        ok = ok and _mu_orbit_key(eta_hat) == _mu_orbit_key(eta)
        passed &= ok
        orbit_keys.add(_mu_orbit_key(eta))
        witnesses.append({
            "eta": str(eta),
            "nu": str(nu),
            "rho": str(rho),
            "eta_hat": str(eta_hat) if eta_hat else None,
            "same_orbit": ok,
        })
    fiber_orbits = sum(len(sigma_orbits(nu, mu)) for nu in iter_partitions(mu.n) if nu.l >= mu.l)
    passed &= fiber_orbits == len(orbit_keys)
    return OrbitBijectionReport(mu, passed, witnesses, len(orbit_keys), fiber_orbits)
