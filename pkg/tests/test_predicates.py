import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regspec import (
    BUILTINS,
    DuplicatePredicateError,
    Keyword,
    PredicateDef,
    UnknownPredicateError,
    eval_predicate,
)
from regspec.mmsr import LEI_CHECKSUM, lei_checksum, predicate_library


def ev(name, params, value):
    return eval_predicate(BUILTINS, name, params, value)


# --- one-of / ranges / regex -------------------------------------------------

def test_one_of():
    assert ev("one-of", ["apple", "pear", "cherry"], "apple")
    assert not ev("one-of", ["apple", "pear", "cherry"], "carrot")
    assert not ev("one-of", ["apple"], 42)


def test_one_of_type_distinct_membership():
    assert ev("one-of", [1], 1)
    assert not ev("one-of", [1], 1.0)
    assert not ev("one-of", [1], True)


def test_string_regex_is_anchored():
    assert ev("string-regex", "a", "a")
    assert not ev("string-regex", "a", "ab")
    assert not ev("string-regex", "a", "ba")


def test_string_regex_type_mismatch_is_false():
    assert not ev("string-regex", "a+", 7)
    assert not ev("string-regex", 5, "a")


def test_int_range_inclusive():
    assert ev("int-range", [1, 3], 1) and ev("int-range", [1, 3], 3)
    assert not ev("int-range", [1, 3], 0)
    assert not ev("int-range", [1, 3], 2.5)  # ints only
    assert not ev("int-range", [1, 3], True)


def test_number_range_mixes_int_float():
    assert ev("number-range", [0, 1.5], 1)
    assert ev("number-range", [0, 1.5], 1.5)
    assert not ev("number-range", [0, 1.5], 2)


def test_string_length():
    assert ev("string-length", [1, 3], "ab")
    assert not ev("string-length", [1, 3], "")
    assert not ev("string-length", [1, 3], "abcd")


def test_type_is():
    assert ev("type-is", "string", "x")
    assert ev("type-is", "number", 1) and ev("type-is", "number", 1.0)
    assert not ev("type-is", "number", True)
    assert ev("type-is", "keyword", Keyword("", "k"))
    assert not ev("type-is", "vector", {})


def test_misc_predicates():
    assert ev("even", None, 4) and not ev("even", None, 3)
    assert not ev("even", None, True)
    assert ev("positive-number", None, 0.5) and not ev("positive-number", None, 0)
    assert ev("non-blank-string", None, " x ") and not ev("non-blank-string", None, "  ")


# --- the three ISO 8601 forms --------------------------------------------------
# Oracle: shape by hand-rolled regex here, calendar validity by the classical
# leap-year rule and month day-count table (proleptic Gregorian, so year 0000
# is a leap year -- divisible by 400).

_SHAPE_DATE = re.compile(r"\d{4}-\d{2}-\d{2}\Z")


def oracle_leap(y):
    return y % 4 == 0 and (y % 100 != 0 or y % 400 == 0)


def oracle_iso_date(s):
    if not isinstance(s, str) or not _SHAPE_DATE.match(s):
        return False
    y, m, d = int(s[0:4]), int(s[5:7]), int(s[8:10])
    if not 1 <= m <= 12:
        return False
    days = [31, 29 if oracle_leap(y) else 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]
    return 1 <= d <= days[m - 1]


def test_iso_date_examples():
    assert ev("iso-date", None, "2017-04-10")  # quoted form instance
    assert not ev("iso-date", None, "2017-02-29")  # 2017 is not a leap year
    assert ev("iso-date", None, "2016-02-29")  # 2016 is
    assert not ev("iso-date", None, "2017-13-01")
    assert not ev("iso-date", None, "2017-00-10")
    assert not ev("iso-date", None, "2017-4-10")
    assert not ev("iso-date", None, 20170410)


def test_iso_datetime_no_ms_examples():
    assert ev("iso-datetime-no-ms", None, "2017-04-10T09:30:00+01:00")
    assert ev("iso-datetime-no-ms", None, "2017-04-10T23:59:59-23:59")
    assert not ev("iso-datetime-no-ms", None, "2017-04-10T24:00:00+01:00")  # hour 24
    assert not ev("iso-datetime-no-ms", None, "2017-04-10T09:30:60+01:00")  # leap second
    assert not ev("iso-datetime-no-ms", None, "2017-04-10T09:30:00+24:00")  # offset hour
    assert not ev("iso-datetime-no-ms", None, "2017-04-10T09:30:00Z")  # Z not accepted
    assert not ev("iso-datetime-no-ms", None, "2017-04-10 09:30:00+01:00")
    assert not ev("iso-datetime-no-ms", None, "2017-04-10t09:30:00+01:00")


def test_iso_datetime_ms_examples():
    assert ev("iso-datetime-ms", None, "2017-04-10T09:30:00.000+01:00")
    assert not ev("iso-datetime-ms", None, "2017-04-10T09:30:00.00+01:00")  # 2 digits
    assert not ev("iso-datetime-ms", None, "2017-04-10T09:30:00.0000+01:00")  # 4 digits
    assert not ev("iso-datetime-ms", None, "2017-04-10T09:30:00+01:00")  # no ms at all
    assert not ev("iso-datetime-ms", None, "2017-02-30T09:30:00.000+01:00")  # 30 Feb


@given(
    y=st.integers(0, 9999),
    m=st.integers(0, 13),
    d=st.integers(0, 32),
)
def test_iso_date_matches_calendar_oracle(y, m, d):
    s = f"{y:04d}-{m:02d}-{d:02d}"
    assert ev("iso-date", None, s) == oracle_iso_date(s)


@given(st.text(max_size=30))
@settings(max_examples=300)
def test_iso_forms_mutually_exclusive(s):
    hits = sum(
        ev(name, None, s)
        for name in ("iso-date", "iso-datetime-no-ms", "iso-datetime-ms")
    )
    assert hits <= 1


def test_iso_forms_mutually_exclusive_on_valid_instances():
    for s in ("2017-04-10", "2017-04-10T09:30:00+01:00", "2017-04-10T09:30:00.000+01:00"):
        hits = [
            name
            for name in ("iso-date", "iso-datetime-no-ms", "iso-datetime-ms")
            if ev(name, None, s)
        ]
        assert len(hits) == 1


# --- custom predicates -------------------------------------------------------


def oracle_mod_97_10(s):
    return int("".join(str(int(c, 36)) for c in s)) % 97 == 1


def test_lei_checksum_against_oracle():
    good = "5493000IBP32UQZ0KL24"
    assert oracle_mod_97_10(good)
    assert lei_checksum(None, good)
    for bad in ("5493000IBP32UQZ0KL25", "5493000IBP32UQZ0KL2", "5493000ibp32uqz0kl24", 5):
        assert not lei_checksum(None, bad)


def test_custom_predicate_pluggable():
    lib = predicate_library()
    assert "lei-checksum" in lib
    assert eval_predicate(lib, "lei-checksum", None, "5493000IBP32UQZ0KL24")
    # and the engine can use it without changes
    from regspec import Pred, Registry, validate

    name = Keyword("demo", "lei")
    reg = Registry().register(name, Pred("lei-checksum"))
    assert validate(reg, name, "5493000IBP32UQZ0KL24", lib)
    assert not validate(reg, name, "5493000IBP32UQZ0KL25", lib)


def test_register_custom_even_styled_predicate():
    lib = BUILTINS.register(
        PredicateDef("divisible-by", "divisor int", lambda p, v: isinstance(v, int)
                     and not isinstance(v, bool) and p != 0 and v % p == 0,
                     "is divisible by {params}")
    )
    assert eval_predicate(lib, "divisible-by", 3, 9)
    assert not eval_predicate(lib, "divisible-by", 3, 10)


def test_duplicate_predicate_rejected():
    with pytest.raises(DuplicatePredicateError):
        BUILTINS.register(LEI_CHECKSUM).register(LEI_CHECKSUM)
    with pytest.raises(DuplicatePredicateError):
        BUILTINS.register(PredicateDef("one-of", "x", lambda p, v: True, "x"))


def test_unknown_predicate():
    with pytest.raises(UnknownPredicateError):
        eval_predicate(BUILTINS, "nope", None, 1)


def test_catalogue_lists_builtins():
    catalogue = BUILTINS.catalogue()
    names = {entry["name"] for entry in catalogue}
    assert {"one-of", "string-regex", "iso-date", "iso-datetime-ms"} <= names
    assert all({"name", "params-schema", "description"} <= set(e) for e in catalogue)
