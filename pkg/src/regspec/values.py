"""The universal value model messages are made of, plus its JSON interchange.

A value is one of: None, bool, 64-bit int, float, str, Keyword, a vector
(python list) of values, or a map keyed by Keyword. Maps are keyed by
Keyword only; key order carries no meaning.

Equality is structural but stricter than python ``==``:

* ints, floats and bools are distinct types (``1 != 1.0 != True``),
* float comparison is bitwise (``-0.0 != 0.0``) except that NaN never
  equals anything, including itself.

JSON interchange (the message wire format): map keys are ``ns/name``
strings with no leading colon; keyword *values* are strings prefixed with
a single ``:``. A consequence is that ordinary strings beginning with a
colon cannot be represented in message JSON; no escape is defined.
"""

from __future__ import annotations

import math
import struct
from typing import Union

from .errors import MessageFormatError
from .keywords import Keyword, keyword_from_key_string

Value = Union[None, bool, int, float, str, Keyword, list, dict]

_KINDS = (
    (bool, "bool"),
    (int, "int"),
    (float, "float"),
    (str, "string"),
    (Keyword, "keyword"),
    (list, "vector"),
    (dict, "map"),
)


def kind_of(value: Value) -> str:
    """Name of a value's kind: null, bool, int, float, string, keyword, vector, map."""
    if value is None:
        return "null"
    for typ, name in _KINDS:  # bool first: it subclasses int
        if isinstance(value, typ):
            return name
    raise TypeError(f"not a value: {value!r}")


def is_number(value: Value) -> bool:
    """True for ints and floats but never bools."""
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _float_bits(x: float) -> bytes:
    return struct.pack("<d", x)


def values_equal(a: Value, b: Value) -> bool:
    """Structural equality honoring the type distinctions documented above."""
    ka, kb = kind_of(a), kind_of(b)
    if ka != kb:
        return False
    if ka == "float":
        if math.isnan(a) or math.isnan(b):
            return False
        return _float_bits(a) == _float_bits(b)
    if ka == "vector":
        return len(a) == len(b) and all(values_equal(x, y) for x, y in zip(a, b))
    if ka == "map":
        if len(a) != len(b):
            return False
        return all(k in b and values_equal(v, b[k]) for k, v in a.items())
    return a == b


def value_from_json(data: object) -> Value:
    """Decode a json-loaded object into a value per the interchange rules."""
    if data is None or isinstance(data, (bool, int, float)):
        return data
    if isinstance(data, str):
        if data.startswith(":"):
            try:
                return keyword_from_key_string(data[1:])
            except ValueError as exc:
                raise MessageFormatError(f"bad keyword value {data!r}: {exc}") from exc
        return data
    if isinstance(data, list):
        return [value_from_json(item) for item in data]
    if isinstance(data, dict):
        out: dict[Keyword, Value] = {}
        for key, item in data.items():
            try:
                kw = keyword_from_key_string(key)
            except ValueError as exc:
                raise MessageFormatError(f"bad map key {key!r}: {exc}") from exc
            out[kw] = value_from_json(item)
        return out
    raise MessageFormatError(f"unsupported json node: {data!r}")


def value_to_json(value: Value) -> object:
    """Encode a value as a json-dumpable object per the interchange rules."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Keyword):
        return value.value_string
    if isinstance(value, list):
        return [value_to_json(item) for item in value]
    if isinstance(value, dict):
        return {key.key_string: value_to_json(item) for key, item in value.items()}
    raise TypeError(f"not a value: {value!r}")
