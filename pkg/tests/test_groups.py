import pytest
from hypothesis import given, strategies as st

from conftest import read_pairs
from gkverify.factored import FactoredInteger
from gkverify.groups import (
    TITS,
    Family,
    GroupId,
    NotSimpleError,
    alternating,
    canonical,
    lie,
    load_sporadic_file,
    order,
    out_order,
    parse_group,
    resolve_data_dir,
    sporadic,
    sporadic_names,
    sporadic_records,
)

F = FactoredInteger.parse


@pytest.mark.parametrize("name,expected", read_pairs("reference_orders.tsv"))
def test_lie_and_alternating_orders_match_character_table_library(name, expected):
    assert order(parse_group(name)) == F(expected)


@pytest.mark.parametrize("name,expected", read_pairs("sporadic_orders.tsv"))
def test_sporadic_orders(name, expected):
    assert order(sporadic(name)) == F(expected)


def test_twenty_six_sporadics():
    assert len(sporadic_names()) == 26
    assert sporadic_names()[0] == "M11"


@pytest.mark.parametrize("text,canon", [
    ("A1(4)", "A5"), ("L2(5)", "A5"), ("L2(9)", "A6"), ("L3(2)", "L2(7)"),
    ("L4(2)", "A8"), ("S4(3)", "U4(2)"), ("O7(8)", "S6(8)"), ("2F4(2)'", "2F4(2)'"),
])
def test_exceptional_isomorphisms_collapse(text, canon):
    assert parse_group(text).atlas_name == canon
    assert order(parse_group(text)) == order(parse_group(canon))


def test_keep_form_preserves_input():
    g = parse_group("L2(4)", keep_form=True)
    assert g.family is Family.A and g.q == 4
    assert canonical(g) == alternating(5)


@pytest.mark.parametrize("alias,name", [("O'N", "ON"), ("F3+", "Fi24'"), ("F1", "M"), ("Co_1", "Co1")])
def test_sporadic_aliases(alias, name):
    assert parse_group(alias) == sporadic(name)


@pytest.mark.parametrize("text", ["A4", "L2(2)", "L2(3)", "S4(2)", "G2(2)", "Sz(2)", "R(3)", "U3(2)"])
def test_non_simple_parameters_rejected(text):
    with pytest.raises(NotSimpleError):
        parse_group(text)


@pytest.mark.parametrize("text", ["Foo", "L2(6)", "Sz(4)", "", "M13"])
def test_unknown_names_rejected(text):
    with pytest.raises(ValueError):
        parse_group(text)


def test_out_orders():
    assert out_order(parse_group("L2(1024)")) == F("2*5")
    assert out_order(parse_group("U4(3)")) == F("2^3")
    assert out_order(parse_group("O8+(2)")) == F("2*3")
    assert out_order(alternating(6)) == F("2^2")
    assert out_order(TITS) == F("2")
    assert out_order(sporadic("J1")) == FactoredInteger.one()


def test_names_round_trip_for_catalog_samples():
    for g in [lie("2E6", None, 2), lie("D", 5, 2), lie("2D", 5, 2), lie("C", 3, 3), lie("B", 3, 3), TITS]:
        assert parse_group(g.atlas_name) == canonical(g)


def test_data_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("GK_DATA_DIR", str(tmp_path))
    assert resolve_data_dir() == tmp_path
    assert resolve_data_dir("/elsewhere").as_posix() == "/elsewhere"
    monkeypatch.delenv("GK_DATA_DIR")
    assert (resolve_data_dir() / "sporadic.tsv").exists()


def test_sporadic_file_rejects_impossible_element_order(tmp_path):
    bad = tmp_path / "sporadic.tsv"
    bad.write_text("M11\t2^4*3^2*5*11\t1\t1,2,7\n")
    with pytest.raises(ValueError, match="do not divide"):
        load_sporadic_file(bad)


def test_spectra_are_divisor_closed():
    for rec in sporadic_records().values():
        for k in rec.spectrum:
            assert all(d in rec.spectrum for d in range(1, k + 1) if k % d == 0), rec.name


@given(st.integers(min_value=5, max_value=60))
def test_alternating_order_is_half_factorial(n):
    import math
    assert order(alternating(n)).value == math.factorial(n) // 2


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32]), st.integers(min_value=1, max_value=5))
def test_linear_group_order_formula(q, rank):
    import math
    n = rank + 1
    try:
        g = lie("A", rank, q)
    except NotSimpleError:
        return
    gl = q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(1, n + 1))
    assert order(g).value == gl // (q - 1) // math.gcd(n, q - 1)
