import pytest

from dld import Act, DataLinkage
from dld.checks import enumerate_linkages
from dld.errors import ParseError, UndeclaredName
from dld.parsing import (parse_action, parse_action_list, parse_linkage,
                         parse_term)
from dld.universe import small_universe

U = small_universe(2, 1, 2, 3)


def test_linkage_roundtrip_exhaustive():
    for l in enumerate_linkages(U):
        assert parse_linkage(l.canonical_text(), U) == l


def test_whitespace_insensitive():
    a = parse_linkage("s:#0,#0.f:#1,#1=2", U)
    b = parse_linkage("  s : #0 ,\t#0 . f : #1 , #1 = 2 ", U)
    assert a == b


def test_value_literals_reduce_mod_p():
    assert parse_linkage("#0=5", U) == parse_linkage("#0=2", U)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_linkage("s:#0, s:", U)
    assert err.value.pos > 0
    with pytest.raises(UndeclaredName):
        parse_linkage("nosuch:#0", U)
    with pytest.raises(UndeclaredName):
        parse_linkage("s:#9", U)
    with pytest.raises(ParseError):
        parse_linkage("s:#0 t:#1", U)


def test_term_precedence_and_braces():
    # + binds tighter than <|
    t1 = parse_term("{s:#0} + {s:#1} <| {t:#0}", U)
    t2 = parse_term("({s:#0} + {s:#1}) <| {t:#0}", U)
    from dld.linkage import normalize
    assert normalize(t1, U) == normalize(t2, U)
    assert normalize(parse_term("0 <| 0", U), U) == DataLinkage.empty(U)
    bare = parse_term("s:#0, #0.f:#1 <| t:#1", U)
    assert normalize(bare, U) == normalize(
        parse_term("{s:#0, #0.f:#1} <| {t:#1}", U), U)


def test_left_associative_override():
    from dld.linkage import normalize
    t = parse_term("{s:#0} <| {s:#1} <| {t:#1}", U)
    explicit = parse_term("({s:#0} <| {s:#1}) <| {t:#1}", U)
    assert normalize(t, U) == normalize(explicit, U)


def test_parse_action():
    assert parse_action("getatobj(s)", U) == Act("getatobj", ("s",))
    assert parse_action("setfield(s,f,t)", U) == Act("setfield", ("s", "f", "t"))
    assert parse_action("fgc", U) == Act("fgc")
    assert parse_action("sdsetspot(s,t)", U) == Act("sdsetspot", ("s", "t"))
    with pytest.raises(ParseError):
        parse_action("setspot(s)", U)
    with pytest.raises(ParseError):
        parse_action("nosuch(s)", U)
    with pytest.raises(UndeclaredName):
        parse_action("addfield(s,nofield)", U)


def test_parse_action_list():
    acts = parse_action_list("getatobj(s); fgc; clrspot(t)", U)
    assert acts == [Act("getatobj", ("s",)), Act("fgc"), Act("clrspot", ("t",))]
