"""Independent oracles shared by the test modules.

Nothing here imports the code paths it is used to check.
"""
from __future__ import annotations

import itertools
from collections import Counter

import pytest

from hilbmotive.surfaces import BUILTINS


def pentagonal_partition_counts(limit: int) -> list[int]:
    """p(0..limit) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * limit
    for n in range(1, limit + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def bell_triangle(limit: int) -> list[int]:
    """Bell(0..limit) from the Bell (Aitken) triangle."""
    bells = [1]
    row = [1]
    for _ in range(limit):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
        bells.append(row[0])
    return bells


def brute_set_partitions(items: list[int]):
    """Set partitions by 'insert the first element into every block' recursion."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in brute_set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def brute_refines(nu: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    target = Counter(mu)
    for blocks in brute_set_partitions(list(range(len(nu)))):
        if Counter(sum(nu[i] for i in b) for b in blocks) == target:
            return True
    return False


def brute_sym_power(dims: dict, k: int, signed: bool = True, parity=lambda d: d % 2, zero=0) -> dict:
    """Symmetric power by enumerating multisets of basis vectors.

    With ``signed``, multisets repeating an odd basis vector are dropped.
    """
    basis = [d for d, c in sorted(dims.items()) for _ in range(c)]
    out: dict = {}
    for combo in itertools.combinations_with_replacement(range(len(basis)), k):
        if signed and any(parity(basis[i]) == 1 and combo.count(i) > 1 for i in set(combo)):
            continue
        if isinstance(zero, tuple):
            deg = tuple(map(sum, zip(*(basis[i] for i in combo)))) if combo else zero
        else:
            deg = sum(basis[i] for i in combo)
        out[deg] = out.get(deg, 0) + 1
    return out


def euler_series(chi: int, limit: int) -> list[int]:
    """Coefficients of prod_m (1 - q^m)^(-chi) up to q^limit, by integer convolution."""
    coeffs = [1] + [0] * limit
    for m in range(1, limit + 1):
        factor = [0] * (limit + 1)
        # (1 - q^m)^(-chi) = sum_j C(chi + j - 1, j) q^(mj) for chi >= 0;
        # for chi < 0 it is the polynomial (1 - q^m)^(|chi|)
        from math import comb
        for j in range(0, limit // m + 1):
            if chi >= 0:
                c = comb(chi + j - 1, j) if chi > 0 else (1 if j == 0 else 0)
            else:
                c = (-1) ** j * comb(-chi, j)
            factor[m * j] = c
        coeffs = [sum(coeffs[i] * factor[n - i] for i in range(n + 1)) for n in range(limit + 1)]
    return coeffs


@pytest.fixture(params=["P2", "P1xP1", "K3", "abelian"])
def projective_surface(request):
    return BUILTINS[request.param]


@pytest.fixture
def P2():
    return BUILTINS["P2"]


# --- acceptance reporting -----------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion; the outcome follows the test."""
    entry = {}

    def record(number: int, title: str, detail: str = "") -> None:
        entry.update(number=number, title=title, detail=detail)

    yield record
    if entry:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        ACCEPTANCE_RESULTS[entry["number"]] = (entry["title"], ok, entry["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
