import pytest
from hypothesis import given
from hypothesis import strategies as st

from finzar.corpus import corpus_lattices, corpus_spaces, posets_up_to_iso, small_distributive_lattices
from finzar.dlattice import boolean_lattice, chain, opposite, order_isomorphism
from finzar.duality import (
    SpectralSpace,
    birkhoff_counit,
    birkhoff_unit,
    downset_lattice,
    hochster_dual,
    homeomorphism,
    join_irreducibles,
    meet_irreducibles,
    prime_filters,
    spectral_space_of,
)
from oracles import prime_filter_minima

LATTICES = corpus_lattices(20)


def test_sierpinski():
    X = spectral_space_of(chain(3))
    assert len(X) == 2
    D = hochster_dual(X)
    assert hochster_dual(D) == X
    phi = homeomorphism(X, D)
    assert phi == {"1": "2", "2": "1"}


def test_boolean_space_is_discrete():
    X = spectral_space_of(boolean_lattice("abc"))
    assert len(X) == 3
    assert X.points.covers() == []
    assert len(X.opens) == 8


@pytest.mark.parametrize("L", LATTICES, ids=lambda L: f"n{len(L)}")
def test_prime_filters_match_definition(L):
    assert prime_filters(L) == prime_filter_minima(L)
    assert set(prime_filters(L)) == set(join_irreducibles(L).elements)


@pytest.mark.parametrize("L", LATTICES, ids=lambda L: f"n{len(L)}")
def test_opens_of_stone_space_recover_lattice(L):
    X = spectral_space_of(L)
    assert order_isomorphism(X.opens, L) is not None
    assert len(X.basis) == len(L)


@pytest.mark.parametrize("n", range(6))
def test_birkhoff_round_trip_posets(n):
    for P in posets_up_to_iso(n):
        L = downset_lattice(P)
        unit = birkhoff_unit(P)
        J = join_irreducibles(L)
        assert sorted(unit.values()) == sorted(J.elements)
        for a in P:
            for b in P:
                assert P.leq(a, b) == J.leq(unit[a], unit[b])


def test_birkhoff_counit_is_isomorphism():
    for L in LATTICES:
        c = birkhoff_counit(L)
        D = downset_lattice(join_irreducibles(L))
        assert sorted(c.values()) == sorted(D.elements)
        for a in L:
            for b in L:
                assert L.leq(a, b) == D.leq(c[a], c[b])


def test_meet_irreducibles_dual():
    for L in LATTICES:
        assert set(meet_irreducibles(L).elements) == set(join_irreducibles(opposite(L)).elements)


def test_reoriented_keeps_topology():
    for X in corpus_spaces(5)[:60]:
        Y = X.reoriented()
        assert set(map(frozenset, X.open_sets())) == set(map(frozenset, Y.open_sets()))
        assert Y.reoriented() == X


def test_rejects_non_open_basis():
    P = chain(2).poset()
    with pytest.raises(ValueError):
        SpectralSpace(P, "down", frozenset({frozenset({"1"})}))


@given(st.sampled_from(corpus_spaces(6)))
def test_hochster_involution_and_opposite_opens(X):
    D = hochster_dual(X)
    assert hochster_dual(D) == X
    assert order_isomorphism(D.opens, opposite(X.opens)) is not None
    for p in X.points:
        for q in X.points:
            assert X.points.leq(p, q) == D.points.leq(q, p)


def test_small_distributive_lattices_are_complete_and_distinct():
    Ls = small_distributive_lattices(9)
    counts = [sum(1 for L in Ls if len(L) == n) for n in range(1, 10)]
    # number of distributive lattices with n elements, up to isomorphism
    assert counts == [1, 1, 1, 2, 3, 5, 8, 15, 26]
    for i, A in enumerate(Ls):
        for B in Ls[i + 1:]:
            if len(A) == len(B):
                assert order_isomorphism(A, B) is None
    for n in range(5):
        for P in posets_up_to_iso(n):
            L = downset_lattice(P)
            if len(L) <= 9:
                assert any(order_isomorphism(L, M) is not None for M in Ls if len(M) == len(L))
