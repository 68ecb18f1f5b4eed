"""The shipped money-market reporting bundle.

A representative ruleset for the secured market segment: the date-time
rules verbatim from the regulation's ISO 8601 requirement, the remaining
fields constructed from the shape of a secured transaction report. It is
NOT an authoritative encoding of the regulation; it exists so the whole
toolchain has something real to chew on.

Also home of the ``lei-checksum`` predicate (ISO 17442 structure plus the
ISO 7064 mod 97-10 check), registered on top of the built-ins here as a
demonstration that domain predicates plug in without engine changes.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .cnl import CnlDocument, parse
from .keywords import Keyword
from .predicates import BUILTINS, PredicateDef, PredicateLibrary
from .registry import Registry
from .ruleset import load_ruleset
from .values import Value, value_from_json

SECURED_REPORT = Keyword("mmsr", "secured-report")
REPORT_FILE = Keyword("mmsr", "report-file")
TRADE_DATE = Keyword("mmsr", "trade-date")


def data_dir() -> Path:
    return Path(resources.files("regspec").joinpath("data"))


def ruleset_path() -> Path:
    return data_dir() / "mmsr.json"


def cnl_path() -> Path:
    return data_dir() / "mmsr.cnl"


def example_message_path() -> Path:
    return data_dir() / "example-message.json"


def invalid_messages_dir() -> Path:
    return data_dir() / "invalid-messages"


def lei_checksum(params: Value, value: Value) -> bool:
    """ISO 17442 LEI: 18 alphanumerics + 2 check digits, mod 97-10 == 1."""
    if not isinstance(value, str) or len(value) != 20:
        return False
    digits = ""
    for ch in value:
        if "0" <= ch <= "9":
            digits += ch
        elif "A" <= ch <= "Z":
            digits += str(ord(ch) - ord("A") + 10)
        else:
            return False
    if not value[18:].isdigit():
        return False
    return int(digits) % 97 == 1


LEI_CHECKSUM = PredicateDef(
    name="lei-checksum",
    params_schema="none",
    eval=lei_checksum,
    description_template="is a valid LEI (ISO 17442 with mod 97-10 checksum)",
)


def predicate_library() -> PredicateLibrary:
    """Built-ins plus the bundle's custom lei-checksum predicate."""
    return BUILTINS.register(LEI_CHECKSUM)


def load_bundle(lib: PredicateLibrary | None = None) -> tuple[Registry, Keyword]:
    """The shipped ruleset as (registry, root)."""
    return load_ruleset(ruleset_path(), lib or predicate_library())


def load_cnl() -> CnlDocument:
    return parse(cnl_path().read_text(encoding="utf-8"))


def canonical_example() -> Value:
    """The example secured transaction report (trade date in the ms form)."""
    data = json.loads(example_message_path().read_text(encoding="utf-8"))
    return value_from_json(data)
