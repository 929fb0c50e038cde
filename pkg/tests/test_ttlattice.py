import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finzar.corpus import random_presentation, sample_presentations
from finzar.dlattice import check_map
from finzar.duality import homeomorphism
from finzar.errors import NotAPoint, UnknownSymbol
from finzar.formats import parse_presentation
from finzar.ttlattice import (
    ONE,
    ZERO,
    Gen,
    Rel,
    Sum,
    Tensor,
    TTPresentation,
    basic_open,
    is_local,
    is_meet_prime,
    is_zariski_cover,
    localize,
    meet_primes,
    realize,
    spc,
    spc_via_stone,
    stalk,
)
from oracles import is_local_by_pairs, meet_prime_by_pairs

XY = parse_presentation("gens x, y; rel x * y = 0;")
PRESENTATIONS = sample_presentations()


def test_xy_zero_spectrum():
    R = realize(XY)
    X = spc(R)
    assert set(X.points) == {"x", "y", "x + y"}
    assert set(X.points.covers()) == {("x", "x + y"), ("y", "x + y")}
    assert basic_open(R, Gen("x")) == {"x", "x + y"}
    assert basic_open(R, ONE) == frozenset()
    assert basic_open(R, ZERO) == {"x", "y", "x + y"}


def test_shift_relation_is_vacuous():
    R = realize(parse_presentation("gens x; rel S(x) = x;"))
    assert R.lattice.elements == ("0", "x", "1")


def test_one_equals_zero_gives_empty_spectrum():
    R = realize(parse_presentation("gens x; rel 1 = 0;"))
    assert R.lattice.is_trivial
    assert len(spc(R)) == 0
    assert not is_local(R)


def test_unknown_symbol_in_relation():
    with pytest.raises(UnknownSymbol):
        TTPresentation(("x",), (Rel(Gen("y"), ZERO),))


def test_localize_at_x():
    R = realize(XY)
    sub, f = localize(R, "x")
    assert sub.elements == ("x", "x + y", "1")
    assert f("y") == "x + y" and f("0") == "x"
    assert check_map(f).ok


def test_zariski_cover():
    R = realize(XY)
    assert is_zariski_cover(R, ["x", "y"])
    c = is_zariski_cover(R, ["x", "x + y"])
    assert not c and c.witness == "x"
    assert is_zariski_cover(R, ["0"])


def test_stalk_rejects_non_points():
    R = realize(XY)
    with pytest.raises(NotAPoint):
        stalk(R, "1")
    with pytest.raises(NotAPoint):
        stalk(R, "0")
    with pytest.raises(NotAPoint):
        stalk(R, "nope")


@pytest.mark.parametrize("P", PRESENTATIONS, ids=str)
def test_meet_primes_match_pairwise_definition(P):
    L = realize(P).lattice
    brute = [p for p in L if meet_prime_by_pairs(L, p)]
    assert meet_primes(L) == brute
    assert [p for p in L if is_meet_prime(L, p)] == brute


@pytest.mark.parametrize("P", PRESENTATIONS, ids=str)
def test_spc_matches_stone_route(P):
    R = realize(P)
    assert spc(R) == spc_via_stone(R)


@pytest.mark.parametrize("P", PRESENTATIONS, ids=str)
def test_stalks_local(P):
    R = realize(P)
    for p in spc(R).points:
        S = stalk(R, p)
        assert is_local(S) and is_local_by_pairs(S)


@pytest.mark.parametrize("P", PRESENTATIONS, ids=str)
def test_generators_generate(P):
    R = realize(P)
    assert R.generates()
    for x in R.lattice:
        assert R.radical(R.representative(x)) == x


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_presentations_spectrum_routes_agree(seed):
    P = random_presentation(random.Random(seed), max_gens=3, max_rels=3)
    R = realize(P)
    assert homeomorphism(spc(R), spc_via_stone(R)) is not None
    for r in P.relations:
        a, b = R.radical(r.lhs), R.radical(r.rhs)
        assert a == b if r.kind == "=" else R.lattice.leq(a, b)


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_radical_sends_tensor_to_meet(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_gens=3, max_rels=2)
    R = realize(P)
    L = R.lattice
    gens = [Gen(g) for g in P.generators]
    a, b = rng.choice(gens), rng.choice(gens)
    assert R.radical(Tensor(a, b)) == L.meet(R.radical(a), R.radical(b))
    assert R.radical(Sum(a, b)) == L.join(R.radical(a), R.radical(b))
    # U(a*b) = U(a) ∪ U(b) and U(a+b) = U(a) ∩ U(b)
    assert basic_open(R, Tensor(a, b)) == basic_open(R, a) | basic_open(R, b)
    assert basic_open(R, Sum(a, b)) == basic_open(R, a) & basic_open(R, b)
