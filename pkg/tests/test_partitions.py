import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bell_triangle, brute_refines, pentagonal_partition_counts
from hilbmotive.partitions import (
    MultiplicityVector,
    Multipartition,
    Partition,
    SetDecomposition,
    enum_decompositions,
    enum_multipartitions,
    enum_partitions,
    iter_partitions,
    m_coeff,
    multipartition_from_pair,
    multipartition_of,
    orbit_bijection_check,
    partition_count,
    q_fiber,
    q_map,
    refines,
    sigma_orbits,
    stratum_dims,
)

P = Partition.of
D = SetDecomposition


def partitions_of(draw_n):
    return st.integers(1, draw_n).flatmap(lambda n: st.sampled_from(enum_partitions(n)))


# --- Partition and enumeration ----------------------------------------------

def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert P(1, 3, 2) == Partition((3, 2, 1))
    assert Partition.parse("2.1^2") == P(2, 1, 1)
    assert Partition.parse("2,2") == P(2, 2)
    assert str(P(2, 1, 1)) == "2.1^2"


def test_enum_small():
    assert enum_partitions(1) == [P(1)]
    assert set(enum_partitions(4)) == {P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)}
    assert enum_partitions(0) == [Partition(())]


def test_enum_counts_match_pentagonal_oracle():
    oracle = pentagonal_partition_counts(20)
    assert oracle[10] == 42
    for n in range(21):
        assert len(enum_partitions(n)) == oracle[n]
        assert partition_count(n) == oracle[n]


@pytest.mark.parametrize("order", ["coarse_first", "fine_first"])
def test_order_is_linear_extension(order):
    for n in range(1, 8):
        nus = enum_partitions(n, order)
        assert len(set(nus)) == len(nus)
        pos = {nu: i for i, nu in enumerate(nus)}
        for a in nus:
            for b in nus:
                if a != b and refines(a, b):
                    # coarse_first: coarser b before finer a
                    assert (pos[b] < pos[a]) if order == "coarse_first" else (pos[a] < pos[b])


def test_iter_partitions_is_lazy():
    it = iter_partitions(60)
    assert next(it) == P(60)


@given(partitions_of(12))
def test_multiplicity_round_trip(nu):
    mv = nu.multiplicities()
    assert mv.to_partition() == nu
    assert mv.n == nu.n and mv.length == nu.l
    assert nu.sigma_order() == math.prod(math.factorial(a) for _, a in mv.items())


def test_multiplicity_vector_rejects_negative():
    with pytest.raises(ValueError):
        MultiplicityVector((1, -1))


# --- m_nu, strata -------------------------------------------------------------

def test_m_coeff_examples():
    assert m_coeff(P(1, 1, 1, 1, 1)) == 1
    assert m_coeff(P(3)) == 3
    assert m_coeff(P(2, 2)) == 4
    assert m_coeff(P(2)) == -2


@given(partitions_of(10), partitions_of(10))
def test_m_coeff_sign_and_multiplicativity(nu, nu2):
    assert m_coeff(nu) * (-1) ** (nu.n - nu.l) > 0
    joined = P(*nu.parts, *nu2.parts)
    assert abs(m_coeff(joined)) == abs(m_coeff(nu)) * abs(m_coeff(nu2))


def test_stratum_dims():
    assert stratum_dims(P(1, 1, 1)) == (6, 6)
    assert stratum_dims(P(5)) == (2, 6)
    assert stratum_dims(P(2, 1)) == (4, 5)


# --- refinement order -------------------------------------------------------

def test_refines_examples():
    assert refines(P(1, 1, 1, 1), P(2, 2))
    assert refines(P(2, 1, 1), P(2, 2))
    assert not refines(P(3, 1), P(2, 2))
    with pytest.raises(ValueError):
        refines(P(2), P(2, 1))


def test_refines_matches_brute_force():
    for n in range(1, 8):
        for a in enum_partitions(n):
            for b in enum_partitions(n):
                assert refines(a, b) == brute_refines(a.parts, b.parts), (a, b)


def test_poset_laws_exhaustive():
    for n in range(1, 9):
        nus = enum_partitions(n)
        rel = {(a, b): refines(a, b) for a in nus for b in nus}
        finest, coarsest = P(*[1] * n), P(n)
        for a in nus:
            assert rel[a, a]
            assert rel[finest, a] and rel[a, coarsest]
            for b in nus:
                if rel[a, b]:
                    assert a.l >= b.l
                    if a.l == b.l:
                        assert a == b
                if a != b:
                    assert not (rel[a, b] and rel[b, a])
                for c in nus:
                    if rel[a, b] and rel[b, c]:
                        assert rel[a, c]


# --- set decompositions -------------------------------------------------------

def test_decomposition_counts():
    bells = bell_triangle(8)
    assert bells[3] == 5 and bells[5] == 52
    for l in range(1, 9):
        decs = enum_decompositions(l)
        assert len(decs) == bells[l]
        assert len(set(decs)) == len(decs)


def test_decomposition_validation():
    with pytest.raises(ValueError):
        D(((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        D(((1,), (3,)))
    assert D(((3, 2), (1,))) == D(((1,), (2, 3)))


def test_q_map_examples():
    nu = P(2, 1, 1)
    assert q_map(nu, D(((1,), (2, 3)))) == P(2, 2)
    assert q_map(nu, D(((1,), (2,), (3,)))) == nu
    assert q_map(nu, D(((1, 2, 3),))) == P(4)
    with pytest.raises(ValueError):
        q_map(nu, D(((1, 2),)))


def test_ordered_blocks_by_sum_then_lex():
    nu = P(3, 1, 1, 1)
    rho = D(((1,), (2, 3, 4)))
    assert rho.ordered(nu) == ((1,), (2, 3, 4))
    rho = D(((1, 2), (3,), (4,)))
    assert rho.ordered(nu) == ((1, 2), (3,), (4,))


@given(partitions_of(7), st.data())
def test_q_map_lands_in_coarser(nu, data):
    rho = data.draw(st.sampled_from(enum_decompositions(nu.l)))
    mu = q_map(nu, rho)
    assert refines(nu, mu)
    assert mu.l == len(rho)


def test_q_fiber_examples():
    assert len(q_fiber(P(1, 1, 1, 1), P(2, 2))) == 3
    assert q_fiber(P(2, 2), P(2, 2)) == [D(((1,), (2,)))]
    assert q_fiber(P(2, 1, 1), P(2, 2)) == [D(((1,), (2, 3)))]
    assert q_fiber(P(3, 1), P(2, 2)) == []


def test_q_fiber_is_preimage_of_q_map():
    for n in range(1, 7):
        for nu in enum_partitions(n):
            by_mu = {}
            for rho in enum_decompositions(nu.l):
                by_mu.setdefault(q_map(nu, rho), []).append(rho)
            for mu in enum_partitions(n):
                fiber = q_fiber(nu, mu)
                assert sorted(by_mu.get(mu, []), key=lambda d: d.blocks) == fiber
                assert bool(fiber) == refines(nu, mu)


# --- orbits -------------------------------------------------------------------

def test_sigma_orbit_examples():
    orbits = sigma_orbits(P(1, 1, 1, 1), P(2, 2))
    assert [len(o) for o in orbits] == [3]
    assert orbits[0][0] == D(((1, 2), (3, 4)))
    assert [len(o) for o in sigma_orbits(P(2, 1, 1), P(2, 2))] == [1]
    for nu in enum_partitions(5):
        orbits = sigma_orbits(nu, nu)
        assert [len(o) for o in orbits] == [1]
        assert orbits[0][0] == D(tuple((i,) for i in range(1, nu.l + 1)))


def test_orbit_sizes_sum_and_divide():
    for n in range(1, 8):
        for nu in enum_partitions(n):
            for mu in enum_partitions(n):
                orbits = sigma_orbits(nu, mu)
                assert sum(map(len, orbits)) == len(q_fiber(nu, mu))
                for orbit in orbits:
                    assert nu.sigma_order() % len(orbit) == 0
                    assert orbit[0] == min(orbit, key=lambda d: d.blocks)


def test_q_map_constant_on_orbits():
    nu = P(2, 2, 1, 1, 1)
    for mu in enum_partitions(7):
        for orbit in sigma_orbits(nu, mu):
            assert {q_map(nu, rho) for rho in orbit} == {mu}
            assert len({multipartition_of(nu, rho) for rho in orbit}) == 1


# --- multipartitions ----------------------------------------------------------

def test_multipartitions_of_2_2():
    mps = enum_multipartitions(P(2, 2))
    assert [tuple(c.parts for c in m.components) for m in mps] == [
        ((2,), (2,)), ((2,), (1, 1)), ((1, 1), (2,)), ((1, 1), (1, 1)),
    ]
    assert len(enum_multipartitions(P(5))) == 7
    assert len(enum_multipartitions(P(1, 1))) == 1


@given(partitions_of(10))
@settings(max_examples=40)
def test_multipartition_count(mu):
    oracle = pentagonal_partition_counts(10)
    assert len(enum_multipartitions(mu)) == math.prod(oracle[m] for m in mu.parts)


def test_multipartition_of_examples():
    m = multipartition_of(P(2, 1, 1), D(((1,), (2, 3))))
    assert m.components == (P(2), P(1, 1))
    nu = P(3, 2, 2)
    m = multipartition_of(nu, D(((1,), (2,), (3,))))
    assert m.components == (P(3), P(2), P(2))
    for rho in q_fiber(P(1, 1, 1, 1), P(2, 2)):
        assert multipartition_of(P(1, 1, 1, 1), rho).components == (P(1, 1), P(1, 1))


def test_multipartition_validation():
    with pytest.raises(ValueError):
        Multipartition((P(2),), P(2, 1))
    with pytest.raises(ValueError):
        Multipartition((P(2), P(2)), P(2, 1))


def test_reordering_construction():
    eta = Multipartition((P(1, 1), P(2)), P(2, 2))
    nu, rho = multipartition_from_pair(eta)
    assert nu == P(2, 1, 1)
    assert rho == D(((1,), (2, 3)))


def test_orbit_bijection():
    assert orbit_bijection_check(P(2, 2)).passed
    for n in range(1, 9):
        assert orbit_bijection_check(P(n)).passed
        for mu in enum_partitions(n):
            rep = orbit_bijection_check(mu)
            assert rep.passed, rep.to_dict()
            assert all(w["same_orbit"] for w in rep.witnesses)
