"""Named boolean predicates referenced by Pred nodes.

Every predicate is total: a value of the wrong type yields False, never an
error, because contracts must run over arbitrary heterogeneous data.

Parameter conventions (params is an ordinary value):

* ``one-of``        -- vector of allowed values
* ``string-regex``  -- pattern string, matched against the whole string
* ``int-range``, ``number-range``, ``string-length`` -- ``[min, max]``, inclusive
* ``type-is``       -- kind name: null, bool, int, float, number, string,
                       keyword, vector, map
* the rest take no params

The three ISO 8601 date-time predicates accept exactly one textual form
each and check calendar validity (month 13 or 30 February never pass).
Offsets are explicit ``+hh:mm``/``-hh:mm`` with hh 00-23 and mm 00-59;
``Z``, week dates, ordinal dates and leap seconds are not accepted.
"""

from __future__ import annotations

import calendar
import json
import re
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import DuplicatePredicateError, UnknownPredicateError
from .values import Value, is_number, kind_of, value_to_json, values_equal


@dataclass(frozen=True)
class PredicateDef:
    """A named, parameterizable boolean check.

    ``describe(params)`` renders the human-readable text used in Problem.pred.
    ``default_generator`` names the generator used when a Pred node has no
    with-gen override (None means the pred is not generatable by itself).
    """

    name: str
    params_schema: str
    eval: Callable[[Value, Value], bool]
    description_template: str
    default_generator: str | None = None

    def describe(self, params: Value) -> str:
        return self.description_template.format(params=_params_text(params))


def _params_text(params: Value) -> str:
    if params is None:
        return ""
    return json.dumps(value_to_json(params), ensure_ascii=False)


class PredicateLibrary:
    """Immutable name -> PredicateDef store; register returns a new library."""

    def __init__(self, defs: Mapping[str, PredicateDef] | None = None):
        self._defs = dict(defs or {})

    def register(self, predicate: PredicateDef) -> "PredicateLibrary":
        if predicate.name in self._defs:
            raise DuplicatePredicateError(f"predicate already defined: {predicate.name}")
        merged = dict(self._defs)
        merged[predicate.name] = predicate
        return PredicateLibrary(merged)

    def get(self, name: str) -> PredicateDef:
        try:
            return self._defs[name]
        except KeyError:
            raise UnknownPredicateError(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._defs

    def names(self) -> list[str]:
        return sorted(self._defs)

    def catalogue(self) -> list[dict]:
        """JSON-ready listing of every predicate (name, params schema, description)."""
        return [
            {
                "name": d.name,
                "params-schema": d.params_schema,
                "description": d.description_template.replace("{params}", "<params>"),
            }
            for d in (self._defs[n] for n in self.names())
        ]


def eval_predicate(lib: PredicateLibrary, name: str, params: Value, value: Value) -> bool:
    return lib.get(name).eval(params, value)


# --- built-in evaluators ----------------------------------------------------

def _one_of(params: Value, value: Value) -> bool:
    if not isinstance(params, list):
        return False
    return any(values_equal(item, value) for item in params)


def _string_regex(params: Value, value: Value) -> bool:
    if not isinstance(params, str) or not isinstance(value, str):
        return False
    try:
        return re.fullmatch(params, value) is not None
    except re.error:
        return False


def _pair(params: Value) -> tuple | None:
    if isinstance(params, list) and len(params) == 2:
        return params[0], params[1]
    return None


def _int_range(params: Value, value: Value) -> bool:
    bounds = _pair(params)
    if bounds is None or not isinstance(value, int) or isinstance(value, bool):
        return False
    lo, hi = bounds
    return is_number(lo) and is_number(hi) and lo <= value <= hi


def _number_range(params: Value, value: Value) -> bool:
    bounds = _pair(params)
    if bounds is None or not is_number(value):
        return False
    lo, hi = bounds
    return is_number(lo) and is_number(hi) and lo <= value <= hi


def _string_length(params: Value, value: Value) -> bool:
    bounds = _pair(params)
    if bounds is None or not isinstance(value, str):
        return False
    lo, hi = bounds
    if not (isinstance(lo, int) and isinstance(hi, int)):
        return False
    return lo <= len(value) <= hi


def _type_is(params: Value, value: Value) -> bool:
    if params == "number":
        return is_number(value)
    return isinstance(params, str) and kind_of(value) == params


_DATE_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})\Z")
_TIME_RE = r"([0-2]\d):([0-5]\d):([0-5]\d)"
_OFFSET_RE = r"[+-]([0-2]\d):([0-5]\d)"
_DT_NO_MS_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})T" + _TIME_RE + _OFFSET_RE + r"\Z")
_DT_MS_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})T" + _TIME_RE + r"\.(\d{3})" + _OFFSET_RE + r"\Z")


def _calendar_ok(year: int, month: int, day: int) -> bool:
    if not 1 <= month <= 12:
        return False
    return 1 <= day <= calendar.monthrange(year, month)[1]


def _iso_date(params: Value, value: Value) -> bool:
    if not isinstance(value, str):
        return False
    m = _DATE_RE.match(value)
    return bool(m) and _calendar_ok(int(m.group(1)), int(m.group(2)), int(m.group(3)))


def _datetime_ok(m: re.Match, offset_at: int) -> bool:
    if not _calendar_ok(int(m.group(1)), int(m.group(2)), int(m.group(3))):
        return False
    if int(m.group(4)) > 23:
        return False
    return int(m.group(offset_at)) <= 23


def _iso_datetime_no_ms(params: Value, value: Value) -> bool:
    if not isinstance(value, str):
        return False
    m = _DT_NO_MS_RE.match(value)
    return bool(m) and _datetime_ok(m, offset_at=7)


def _iso_datetime_ms(params: Value, value: Value) -> bool:
    if not isinstance(value, str):
        return False
    m = _DT_MS_RE.match(value)
    return bool(m) and _datetime_ok(m, offset_at=8)


def _even(params: Value, value: Value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value % 2 == 0


def _positive_number(params: Value, value: Value) -> bool:
    return is_number(value) and value > 0


def _non_blank_string(params: Value, value: Value) -> bool:
    return isinstance(value, str) and bool(value.strip())


_BUILTIN_DEFS = [
    PredicateDef("one-of", "vector of allowed values", _one_of,
                 "one of {params}", "choose"),
    PredicateDef("string-regex", "pattern string (full match)", _string_regex,
                 "matches {params}", "regex-sampler"),
    PredicateDef("int-range", "[min, max] inclusive", _int_range,
                 "integer in {params}", "int-range-gen"),
    PredicateDef("number-range", "[min, max] inclusive", _number_range,
                 "number in {params}", "number-range-gen"),
    PredicateDef("string-length", "[min, max] length bounds", _string_length,
                 "string of length in {params}", "string-length-gen"),
    PredicateDef("type-is", "kind name", _type_is,
                 "is of type {params}", "type-gen"),
    PredicateDef("iso-date", "none", _iso_date,
                 "is an ISO 8601 date (YYYY-MM-DD)", "iso-date-gen"),
    PredicateDef("iso-datetime-no-ms", "none", _iso_datetime_no_ms,
                 "is an ISO 8601 date-time (YYYY-MM-DDThh:mm:ss+/-hh:mm)",
                 "iso-datetime-no-ms-gen"),
    PredicateDef("iso-datetime-ms", "none", _iso_datetime_ms,
                 "is an ISO 8601 date-time with milliseconds "
                 "(YYYY-MM-DDThh:mm:ss.sss+/-hh:mm)", "iso-datetime-ms-gen"),
    PredicateDef("even", "none", _even, "is an even integer", "even-gen"),
    PredicateDef("positive-number", "none", _positive_number,
                 "is a positive number", "positive-number-gen"),
    PredicateDef("non-blank-string", "none", _non_blank_string,
                 "is a non-blank string", "non-blank-string-gen"),
]

BUILTINS = PredicateLibrary({d.name: d for d in _BUILTIN_DEFS})
