import math

import pytest

from regspec import Keyword, keyword, value_from_json, value_to_json, values_equal
from regspec.errors import MessageFormatError
from regspec.keywords import keyword_from_key_string
from regspec.values import is_number, kind_of


def test_keyword_text_forms():
    k = Keyword("mmsr", "trade-date")
    assert k.text == "::mmsr/trade-date"
    assert k.key_string == "mmsr/trade-date"
    assert k.value_string == ":mmsr/trade-date"
    assert Keyword("", "fruit").text == "::fruit"


def test_keyword_parse():
    assert keyword("::mmsr/trade-date") == Keyword("mmsr", "trade-date")
    assert keyword("::fruit") == Keyword("", "fruit")
    assert keyword("::fruit", "mmsr") == Keyword("mmsr", "fruit")
    assert keyword_from_key_string("mmsr/x") == Keyword("mmsr", "x")
    assert keyword_from_key_string("x") == Keyword("", "x")


@pytest.mark.parametrize("bad", ["fruit", ":fruit", "::", "::1abc", "::a/b/c!", "::a b"])
def test_keyword_parse_rejects(bad):
    with pytest.raises(ValueError):
        keyword(bad)


def test_keyword_name_grammar():
    with pytest.raises(ValueError):
        Keyword("ns", "")
    with pytest.raises(ValueError):
        Keyword("ns", "9lives")
    Keyword("a.b.c", "ok-name_1")  # namespaces may contain dots


def test_kind_of():
    assert kind_of(None) == "null"
    assert kind_of(True) == "bool"
    assert kind_of(3) == "int"
    assert kind_of(3.0) == "float"
    assert kind_of("x") == "string"
    assert kind_of(Keyword("", "k")) == "keyword"
    assert kind_of([1]) == "vector"
    assert kind_of({Keyword("", "k"): 1}) == "map"


def test_is_number_excludes_bool():
    assert is_number(1) and is_number(1.5)
    assert not is_number(True)


def test_values_equal_type_distinctions():
    assert not values_equal(1, 1.0)
    assert not values_equal(1, True)
    assert not values_equal(0, False)
    assert values_equal(1, 1)
    assert values_equal("a", "a")


def test_values_equal_float_bitwise():
    assert not values_equal(0.0, -0.0)
    assert not values_equal(float("nan"), float("nan"))
    assert values_equal(1.5, 1.5)
    assert not values_equal(math.inf, -math.inf)


def test_values_equal_structural():
    k = Keyword("", "k")
    assert values_equal([1, [2, "x"]], [1, [2, "x"]])
    assert not values_equal([1, 2], [2, 1])
    assert values_equal({k: [1]}, {k: [1]})
    assert not values_equal({k: 1}, {k: 1.0})
    assert not values_equal({k: 1}, {})


def test_json_round_trip():
    msg = {
        Keyword("mmsr", "trade-date"): "2017-04-10",
        Keyword("mmsr", "tags"): [Keyword("", "a"), ":literalish"],
        Keyword("", "amount"): 10.5,
        Keyword("", "flag"): None,
    }
    encoded = value_to_json(msg)
    assert encoded["mmsr/trade-date"] == "2017-04-10"
    assert encoded["mmsr/tags"] == [":a", "::literalish"[1:]]  # ":a" and ":literalish"
    decoded = value_from_json(encoded)
    # ":literalish" decodes back to a keyword: strings starting with a colon
    # are keywords by definition in this interchange format
    assert decoded[Keyword("mmsr", "tags")] == [Keyword("", "a"), Keyword("", "literalish")]


def test_json_keyword_value_prefix():
    assert value_to_json(Keyword("mmsr", "x")) == ":mmsr/x"
    assert value_from_json(":mmsr/x") == Keyword("mmsr", "x")


def test_json_bad_key_rejected():
    with pytest.raises(MessageFormatError):
        value_from_json({"9bad": 1})
    with pytest.raises(MessageFormatError):
        value_from_json(":not/ a-keyword")
