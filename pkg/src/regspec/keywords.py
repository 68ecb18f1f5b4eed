"""Namespaced keywords: the names under which contracts are registered.

A keyword is a (namespace, name) pair written ``::ns/name``. The namespace
may be empty, in which case the canonical text is ``::name``. In files that
carry a namespace directive, ``::name`` is shorthand for that namespace
instead (see the cnl and ruleset modules).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*\Z")
_NAMESPACE_RE = re.compile(r"[A-Za-z][A-Za-z0-9_.-]*\Z")
_TEXT_RE = re.compile(r"::(?:([A-Za-z][A-Za-z0-9_.-]*)/)?([A-Za-z][A-Za-z0-9_-]*)\Z")


@dataclass(frozen=True, slots=True)
class Keyword:
    """An interned-by-value, namespaced name such as ``::mmsr/trade-date``."""

    namespace: str
    name: str

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValueError(f"invalid keyword name: {self.name!r}")
        if self.namespace and not _NAMESPACE_RE.match(self.namespace):
            raise ValueError(f"invalid keyword namespace: {self.namespace!r}")

    def __str__(self) -> str:
        return self.text

    @property
    def text(self) -> str:
        """Canonical ``::ns/name`` form (``::name`` when the namespace is empty)."""
        return f"::{self.namespace}/{self.name}" if self.namespace else f"::{self.name}"

    @property
    def key_string(self) -> str:
        """Map-key form used in message JSON: ``ns/name`` with no colon."""
        return f"{self.namespace}/{self.name}" if self.namespace else self.name

    @property
    def value_string(self) -> str:
        """Keyword-as-value form used in message JSON: ``:ns/name``."""
        return ":" + self.key_string


def keyword(text: str, default_namespace: str = "") -> Keyword:
    """Parse ``::ns/name`` or ``::name``; the latter takes default_namespace.

    Raises ValueError on anything else.
    """
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"invalid keyword text: {text!r}")
    ns, name = m.group(1), m.group(2)
    return Keyword(ns if ns is not None else default_namespace, name)


def keyword_from_key_string(text: str) -> Keyword:
    """Parse the colon-free map-key form ``ns/name`` or ``name``."""
    ns, sep, name = text.rpartition("/")
    if not sep:
        return Keyword("", text)
    return Keyword(ns, name)
