import numpy as np
import pytest

from finzar.duality import homeomorphism
from finzar.errors import CapExceeded, DSLSyntaxError
from finzar.ring_oracle import (
    RingIdeal,
    all_ideals,
    check_ring_axioms,
    hnb_check,
    is_prime_ideal,
    localization,
    parse_polynomial,
    parse_ring,
    prime_ideals,
    prime_spectrum,
    product,
    radical,
    radical_ideal_lattice,
    zmod,
)
from finzar.ttlattice import meet_primes
from oracles import ring_ideals_by_subsets

SMALL = ["Z/1", "Z/2", "Z/4", "Z/6", "Z/8", "Z/12", "Z/30", "F2[x]/(x^2)", "F2[x]/(x^2+x+1)",
         "F3[x]/(x^2)", "F2[x]/(x^3+x)", "Z/2 x Z/4", "Z/4 x F2[x]/(x^2+x+1)", "Z/3 x Z/3"]


def labels(ideals):
    return [I.label for I in ideals]


@pytest.mark.parametrize("desc, expected", [
    ("Z/6", ["(0)", "(3)", "(2)", "(1)"]),
    ("Z/4", ["(0)", "(2)", "(1)"]),
    ("Z/7", ["(0)", "(1)"]),
    ("F2[x]/(x^2+x+1)", ["(0)", "(1)"]),
])
def test_all_ideals(desc, expected):
    assert labels(all_ideals(parse_ring(desc))) == expected


@pytest.mark.parametrize("desc", SMALL)
def test_ideals_match_subset_enumeration(desc):
    R = parse_ring(desc)
    if len(R) > 16:
        pytest.skip("subset oracle only for tiny rings")
    brute = set(ring_ideals_by_subsets(R))
    found = {frozenset(np.flatnonzero(I.mask).tolist()) for I in all_ideals(R)}
    assert found == brute


@pytest.mark.parametrize("desc", SMALL)
def test_ring_axioms(desc):
    assert check_ring_axioms(parse_ring(desc)).ok


def test_ring_axioms_detect_corruption():
    R = zmod(5)
    R.mul = R.mul.copy()
    R.mul[2, 3] = 0
    assert not check_ring_axioms(R).ok


@pytest.mark.parametrize("desc, primes", [
    ("Z/6", ["(3)", "(2)"]),
    ("Z/4", ["(2)"]),
    ("F2[x]/(x^2)", ["(x)"]),
    ("Z/1", []),
])
def test_primes(desc, primes):
    R = parse_ring(desc)
    assert labels(prime_ideals(R)) == primes
    X = prime_spectrum(R)
    assert sorted(X.points) == sorted(primes)


def test_z6_spectrum_is_discrete():
    X = prime_spectrum(zmod(6))
    assert X.points.covers() == []


@pytest.mark.parametrize("desc, rads, bottom", [
    ("Z/12", ["(6)", "(2)", "(3)", "(1)"], "(6)"),
    ("Z/6", ["(0)", "(2)", "(3)", "(1)"], "(0)"),
    ("Z/5", ["(0)", "(1)"], "(0)"),
])
def test_radical_ideal_lattice(desc, rads, bottom):
    RL = radical_ideal_lattice(parse_ring(desc))
    assert sorted(RL.lattice.elements) == sorted(rads)
    assert RL.lattice.bottom == bottom


@pytest.mark.parametrize("desc", SMALL)
def test_radical_is_closure(desc):
    R = parse_ring(desc)
    ideals = all_ideals(R)
    for I in ideals:
        r = radical(I)
        assert I <= r and radical(r) == r
        for J in ideals:
            if I <= J:
                assert radical(I) <= radical(J)


@pytest.mark.parametrize("desc", SMALL)
def test_meet_primes_are_primes(desc):
    R = parse_ring(desc)
    RL = radical_ideal_lattice(R)
    assert sorted(meet_primes(RL.lattice)) == sorted(labels(prime_ideals(R)))


@pytest.mark.parametrize("desc", SMALL)
def test_basic_opens_multiply(desc):
    R = parse_ring(desc)
    primes = prime_ideals(R)

    def D(f):
        return {p.label for p in primes if not p.mask[f]}

    for f in range(len(R)):
        for g in range(len(R)):
            assert D(f) & D(g) == D(int(R.mul[f, g]))


def test_prime_check_on_non_prime():
    R = zmod(12)
    I = RingIdeal(R, R.principal(6))
    assert not is_prime_ideal(I)


def test_localization_inverts_f():
    R = zmod(12)
    Rf, proj = localization(R, "2")
    assert len(Rf) == 3
    image = proj[R.index["2"]]
    assert any(Rf.mul[image, u] == Rf.one for u in range(len(Rf)))
    nil, _ = localization(R, "6")
    assert len(nil) == 1
    assert check_ring_axioms(Rf).ok


def test_hnb_examples():
    w = hnb_check(zmod(6))
    assert set(w.bijection) == {"(2)", "(3)"}
    w12 = hnb_check(zmod(12))
    assert len(w12.bijection) == 2
    assert radical_ideal_lattice(zmod(12)).lattice.bottom == "(6)"
    w7 = hnb_check(zmod(7))
    assert list(w7.bijection) == ["(0)"]


@pytest.mark.parametrize("desc", SMALL)
def test_hnb_small(desc):
    R = parse_ring(desc)
    w = hnb_check(R)
    for f, (D, U) in w.opens.items():
        assert {w.bijection[p] for p in D} == set(U)


def test_parse_ring_forms():
    assert parse_ring("Z/12").description == "Z/12"
    R = parse_ring("Z/4 x F2[x]/(x^2 + x + 1)")
    assert len(R) == 16
    assert parse_ring("F_3[x]/(x^2 - 1)").description == "F3[x]/(x^2+2)"
    with pytest.raises(DSLSyntaxError):
        parse_ring("Q[x]")
    with pytest.raises(DSLSyntaxError):
        parse_ring("F4[x]/(x)")
    assert parse_polynomial("2x^3 + x - 1", 5) == [4, 1, 0, 2]


def test_product_flattens():
    R = product(zmod(2), product(zmod(3), zmod(5)))
    assert len(R.components) == 3 and len(R) == 30
    assert check_ring_axioms(R).ok


def test_cap():
    with pytest.raises(CapExceeded):
        all_ideals(zmod(300))
    assert len(all_ideals(zmod(300), cap=300)) == 18


def test_zero_polynomial_quotient_is_zero_ring():
    R = parse_ring("F2[x]/(1)")
    assert len(R) == 1
    assert hnb_check(R).bijection == {}


def test_spectra_homeomorphic_through_hnb():
    R = parse_ring("Z/2 x Z/4")
    w = hnb_check(R)
    X = prime_spectrum(R)
    assert homeomorphism(X, X) is not None and len(w.bijection) == len(X)
