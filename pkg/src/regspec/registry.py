"""The name -> contract store.

A registry is immutable: ``register`` returns a new registry and never
touches the old one, so a loaded registry can be shared freely across
threads. Re-registering a name replaces the previous entry, which is what
the iterative authoring loop needs.

Forward references are allowed (a Ref may target a name registered later);
unresolvable targets surface as UnknownSpecError at validation time. The
one cycle rejected eagerly is the pure-ref cycle -- a loop of entries whose
forms are all bare Refs -- because resolving any name on it could never
terminate. Cycles that pass through a collection combinator are legitimate
recursive specs and are kept; note that a recursive spec whose cycle never
crosses a collection boundary (e.g. an ``or`` branch referring straight
back to itself) will not terminate at validation time, mirroring the
underlying contract-system behavior.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import CyclicDefinitionError, UnknownSpecError
from .forms import Ref, SpecForm, check_form
from .keywords import Keyword


@dataclass(frozen=True)
class Registry:
    """Immutable mapping of keyword -> (form, metadata)."""

    _entries: Mapping = field(default_factory=dict)

    def register(self, name: Keyword, form: SpecForm, metadata: dict | None = None) -> "Registry":
        """Return a new registry that also answers to ``name``.

        Raises MalformedSpecError on a bad form and CyclicDefinitionError if
        the entry would close a pure-ref cycle.
        """
        check_form(form)
        entries = dict(self._entries)
        entries[name] = (form, dict(metadata or {}))
        _check_pure_ref_cycle(entries, name)
        return Registry(entries)

    def without(self, name: Keyword) -> "Registry":
        """Return a new registry lacking ``name`` (used by mutation tooling)."""
        entries = dict(self._entries)
        entries.pop(name, None)
        return Registry(entries)

    def resolve(self, name: Keyword) -> SpecForm:
        """The stored form, one level only: a Ref result is not chased."""
        try:
            return self._entries[name][0]
        except KeyError:
            raise UnknownSpecError(name.text) from None

    def metadata(self, name: Keyword) -> dict:
        try:
            return dict(self._entries[name][1])
        except KeyError:
            raise UnknownSpecError(name.text) from None

    def __contains__(self, name: Keyword) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[Keyword]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def names(self) -> list[Keyword]:
        return list(self._entries)


def _check_pure_ref_cycle(entries: dict, start: Keyword) -> None:
    # Only bare-Ref entries can form a non-terminating resolution loop, and
    # a new cycle must pass through the entry just written.
    form, _ = entries[start]
    chain = [start]
    while isinstance(form, Ref):
        target = form.target
        if target in chain:
            text = " -> ".join(k.text for k in chain) + f" -> {target.text}"
            raise CyclicDefinitionError(f"pure ref cycle: {text}")
        if target not in entries:
            return
        chain.append(target)
        form = entries[target][0]


def register(
    registry: Registry, name: Keyword, form: SpecForm, metadata: dict | None = None
) -> Registry:
    """Functional alias for Registry.register."""
    return registry.register(name, form, metadata)
