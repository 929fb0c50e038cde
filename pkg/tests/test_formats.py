import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finzar.corpus import SAMPLE_PRESENTATIONS, corpus_lattices, random_expression, random_presentation
from finzar.dlattice import boolean_lattice, chain
from finzar.errors import DSLSyntaxError, DuplicateGenerator, NotDistributive, UnknownSymbol
from finzar.formats import (
    parse_expression,
    parse_lattice,
    parse_presentation,
    parse_presheaf,
    parse_support,
    serialize_lattice,
    serialize_presentation,
    serialize_presheaf,
    serialize_support,
    tokenize,
)
from finzar.sheaf import structure_presheaf
from finzar.support import radical_datum
from finzar.ttlattice import ONE, ZERO, Gen, Shift, Sum, Tensor, realize


def test_basic_presentation():
    P = parse_presentation("gens x, y; rel x * y = 0;")
    assert P.generators == ("x", "y")
    assert len(P.relations) == 1
    r = P.relations[0]
    assert r.lhs == Tensor(Gen("x"), Gen("y")) and r.rhs == ZERO and r.kind == "="


def test_precedence_and_parens():
    assert parse_expression("x + y * z") == Sum(Gen("x"), Tensor(Gen("y"), Gen("z")))
    assert parse_expression("(x + y) * z") == Tensor(Sum(Gen("x"), Gen("y")), Gen("z"))
    assert parse_expression("S(x) * 1") == Tensor(Shift(Gen("x")), ONE)
    assert str(parse_expression("x * (y * z)")) == "x * (y * z)"
    assert str(parse_expression("x + (y + z)")) == "x + (y + z)"


def test_le_relation_and_locations():
    P = parse_presentation("gens x, y;\nrel x <= y;\nrel S(x) = x;")
    assert [r.kind for r in P.relations] == ["<=", "="]
    assert P.relations[1].loc[0] == 3


def test_ampersand_is_rejected():
    with pytest.raises(SyntaxError) as info:
        parse_presentation("gens x; rel x & y = 0;")
    assert isinstance(info.value, DSLSyntaxError)
    assert (info.value.line, info.value.column) == (1, 15)


@pytest.mark.parametrize("text, line, column", [
    ("gens x;\nrel x = ;", 2, 9),
    ("gens x\nrel x = 0;", 2, 1),
    ("gens x; rel x == 0;", 1, 16),
    ("gens x; rel S(x = 0;", 1, 17),
    ("gens x; rel 2 = 0;", 1, 13),
])
def test_syntax_error_locations(text, line, column):
    with pytest.raises(DSLSyntaxError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_duplicate_and_unknown():
    with pytest.raises(DuplicateGenerator):
        parse_presentation("gens x, x;")
    with pytest.raises(UnknownSymbol) as info:
        parse_presentation("gens x;\nrel y = 0;")
    assert info.value.line == 2 and info.value.symbol == "y"
    with pytest.raises(UnknownSymbol):
        parse_presentation("gens x; rel S x = 0;")


def test_comments_are_ignored():
    P = parse_presentation("# a comment\ngens x; # trailing\nrel x = 0;")
    assert P == parse_presentation("gens x; rel x = 0;")


def test_tokenize_positions():
    toks = tokenize("gens a;\n  rel a = 1;")
    rel = next(t for t in toks if t.text == "rel")
    assert (rel.line, rel.col) == (2, 3)


@pytest.mark.parametrize("text", SAMPLE_PRESENTATIONS)
def test_presentation_round_trip_samples(text):
    P = parse_presentation(text)
    assert parse_presentation(serialize_presentation(P)) == P


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_presentation_round_trip_random(seed):
    P = random_presentation(random.Random(seed))
    assert parse_presentation(serialize_presentation(P)) == P


@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=0, max_value=4))
def test_expression_round_trip(seed, depth):
    e = random_expression(random.Random(seed), ["x", "y", "z"], depth)
    assert parse_expression(str(e)) == e


@pytest.mark.parametrize("L", corpus_lattices(12)[::5], ids=lambda L: f"n{len(L)}")
def test_lattice_round_trip(L):
    assert parse_lattice(serialize_lattice(L)) == L


def test_lattice_with_quoted_labels():
    L = realize(parse_presentation("gens x, y; rel x * y = 0;")).lattice
    text = serialize_lattice(L)
    assert "'x + y'" in text
    assert parse_lattice(text) == L


def test_lattice_errors(fixtures_dir):
    with pytest.raises(NotDistributive):
        parse_lattice((fixtures_dir / "n5.lat").read_text())
    with pytest.raises(DSLSyntaxError):
        parse_lattice("lattice\nelement a\n")
    with pytest.raises(UnknownSymbol):
        parse_lattice("lattice\nelement a\ncover a b\nend\n")
    with pytest.raises(DSLSyntaxError):
        parse_lattice("lattice\nelement a\nelement a\nend\n")


@pytest.mark.parametrize("name", ["xy_zero.sup", "bad_tensor.sup"])
def test_support_fixture_round_trip(fixtures_dir, name):
    s = parse_support((fixtures_dir / name).read_text())
    text = serialize_support(s)
    again = parse_support(text)
    assert serialize_support(again) == text
    assert dict(again.d) == dict(s.d) and again.triangles == s.triangles
    assert again.carrier == s.carrier and again.presentation == s.presentation


def test_support_generated_round_trip():
    P = parse_presentation("gens x, y, z; rel x <= y; rel y * z = 0;")
    s = radical_datum(P)
    again = parse_support(serialize_support(s))
    assert dict(again.d) == dict(s.d)


def test_support_errors():
    with pytest.raises(DSLSyntaxError):
        parse_support("gens x;\nd x => 1\n")
    with pytest.raises(DSLSyntaxError):
        parse_support("gens x;\ncarrier\nelement 0\nend\nd x 0\n")


@pytest.mark.parametrize("name", ["xy_zero.psh", "broken.psh", "boolean_gap.psh", "sierpinski_const.psh"])
def test_presheaf_fixture_round_trip(fixtures_dir, name):
    F = parse_presheaf((fixtures_dir / name).read_text())
    text = serialize_presheaf(F)
    assert parse_presheaf(text) == F
    assert serialize_presheaf(parse_presheaf(text)) == text


def test_structure_presheaf_round_trip():
    F = structure_presheaf(realize(parse_presentation("gens x, y, z; rel x * y = 0;")))
    assert parse_presheaf(serialize_presheaf(F)) == F


def test_presheaf_errors():
    frame = serialize_lattice(chain(2), opener="frame")
    with pytest.raises(DSLSyntaxError):
        parse_presheaf("presheaf group\n" + frame)
    with pytest.raises(DSLSyntaxError):
        # missing restriction table for the only cover
        parse_presheaf("presheaf set\n" + frame + "sections 0 a\nsections 1 b\n")
    with pytest.raises(UnknownSymbol):
        parse_presheaf("presheaf set\n" + frame + "sections 7 a\n")


def test_serialize_is_deterministic():
    B = boolean_lattice("abc")
    assert serialize_lattice(B) == serialize_lattice(boolean_lattice("abc"))
