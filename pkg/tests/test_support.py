import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finzar.corpus import random_frame_map, random_presentation
from finzar.dlattice import LatticeMap, chain, check_map
from finzar.errors import (
    ElementNotFound,
    InvalidMap,
    MissingAssignment,
    NotASupportDatum,
    SourceTargetMismatch,
    UnknownSymbol,
)
from finzar.formats import parse_expression, parse_presentation
from finzar.support import (
    SupportDatum,
    factor_support,
    kernel_element,
    radical_datum,
    support_from_frame_map,
    verify_support,
)
from finzar.ttlattice import ONE, ZERO, Gen, Shift, localize, realize

XY = parse_presentation("gens x, y; rel x * y = 0;")


def e(text):
    return parse_expression(text)


def test_radical_datum_is_clean_and_factors_as_identity():
    s = radical_datum(XY)
    assert verify_support(s).ok
    f = factor_support(s)
    assert all(f(x) == x for x in f.source)


@pytest.mark.parametrize("change, label", [
    (("1", "0"), "a"),
    (("0", "1"), "a"),
    (("x * x", "0"), "d"),
    (("x + x", "1"), "c"),
    (("S(x)", "0"), "b"),
])
def test_single_axiom_mutations(change, label):
    s = radical_datum(XY)
    expr, value = change
    bad = s.with_value(e(expr), value)
    assert label in verify_support(bad).kinds()


def test_triangle_axiom():
    s = radical_datum(XY)
    good = s.with_value(e("x + y"), "x + y").with_triangle(e("x"), e("x + y"), e("y"))
    assert verify_support(good).ok
    bad = s.with_triangle(ZERO, Gen("x"), ZERO)
    assert verify_support(bad).kinds() == {"e"}


def test_triangle_members_need_explicit_values():
    s = radical_datum(XY).with_triangle(e("x"), e("x + y"), e("y"))
    with pytest.raises(MissingAssignment):
        verify_support(s)


def test_presentation_relations_must_hold():
    P = parse_presentation("gens x, y; rel x <= y;")
    s = radical_datum(P)
    # send y to bottom of F^op while x stays put
    bad = s.with_value(Gen("y"), s.op.bottom)
    assert "presentation" in verify_support(bad).kinds()


def test_factor_rejects_invalid():
    s = radical_datum(XY).with_value(e("x * x"), "0")
    with pytest.raises(NotASupportDatum):
        factor_support(s)


def test_missing_and_unknown():
    s = radical_datum(XY)
    d = dict(s.d)
    del d[Gen("x")]
    with pytest.raises(MissingAssignment):
        verify_support(SupportDatum(XY, s.carrier, d))
    d = dict(s.d)
    d[Gen("q")] = "0"
    with pytest.raises(UnknownSymbol):
        verify_support(SupportDatum(XY, s.carrier, d))
    d = dict(s.d)
    d[Gen("x")] = "nowhere"
    with pytest.raises(ElementNotFound):
        verify_support(SupportDatum(XY, s.carrier, d))


def test_localization_datum():
    R = realize(XY)
    _, f = localize(R, "x")
    s = support_from_frame_map(XY, f, R=R)
    assert verify_support(s).ok
    assert factor_support(s, R=R) == f
    assert kernel_element(f) == "x"


def test_frame_map_errors():
    R = realize(XY)
    L = R.lattice
    bad = LatticeMap(L, L, {a: L.bottom for a in L})
    with pytest.raises(InvalidMap):
        support_from_frame_map(XY, bad, R=R)
    other = chain(2)
    with pytest.raises(SourceTargetMismatch):
        support_from_frame_map(XY, LatticeMap(other, other, {"0": "0", "1": "1"}), R=R)


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_universal_factorization_round_trip(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_gens=3, max_rels=3)
    R = realize(P)
    f = random_frame_map(rng, R.lattice)
    assert check_map(f).ok
    s = support_from_frame_map(P, f, R=R)
    assert verify_support(s).ok
    assert factor_support(s, R=R) == f


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_supp_commutes_with_radical_on_expressions(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_gens=3, max_rels=2)
    R = realize(P)
    s = radical_datum(P)
    f = factor_support(s, R=R)
    for expr in (Shift(Gen(P.generators[0])), ONE, ZERO):
        assert f(R.radical(expr)) == s.value(expr)


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_values_are_monotone_along_the_lattice_order(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_gens=3, max_rels=3)
    R = realize(P)
    s = support_from_frame_map(P, random_frame_map(rng, R.lattice), R=R)
    for a in P.generators:
        for b in P.generators:
            if R.lattice.leq(R.gen_image[a], R.gen_image[b]):
                assert s.op.leq(s.value(Gen(a)), s.value(Gen(b)))
