"""The contract AST: the tree of combinator forms a registered spec stores.

A form is one of:

* ``Pred(name, params)``   -- a named boolean predicate from the library
* ``Ref(target)``          -- a reference to another registered spec
* ``Or(branches)``         -- tagged alternative branches, tried in order
* ``And(children)``        -- all children must hold
* ``Keys(required, optional)`` -- a map whose listed keys satisfy the specs
                                  registered under the keys' own names
* ``CollOf(child, min_count, max_count)`` -- a vector of child-conforming
                                             members with optional bounds
* ``WithGen(child, generator_name, params)`` -- child plus a generator
                                                override; validation ignores it
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedSpecError
from .keywords import Keyword
from .values import Value


@dataclass(frozen=True)
class Pred:
    name: str
    params: Value = None


@dataclass(frozen=True)
class Ref:
    target: Keyword


@dataclass(frozen=True)
class Or:
    branches: tuple  # of (tag: Keyword, child: SpecForm)

    def __init__(self, branches):
        object.__setattr__(self, "branches", tuple((t, c) for t, c in branches))


@dataclass(frozen=True)
class And:
    children: tuple  # of SpecForm

    def __init__(self, children):
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class Keys:
    required: tuple = ()
    optional: tuple = ()

    def __init__(self, required=(), optional=()):
        object.__setattr__(self, "required", tuple(required))
        object.__setattr__(self, "optional", tuple(optional))


@dataclass(frozen=True)
class CollOf:
    child: "SpecForm"
    min_count: int | None = None
    max_count: int | None = None


@dataclass(frozen=True)
class WithGen:
    child: "SpecForm"
    generator_name: str
    params: Value = None


SpecForm = Pred | Ref | Or | And | Keys | CollOf | WithGen


def check_form(form: SpecForm) -> None:
    """Raise MalformedSpecError if the form breaks a structural invariant."""
    if isinstance(form, Pred):
        if not form.name or not isinstance(form.name, str):
            raise MalformedSpecError("pred needs a non-empty predicate name")
    elif isinstance(form, Ref):
        if not isinstance(form.target, Keyword):
            raise MalformedSpecError("ref target must be a keyword")
    elif isinstance(form, Or):
        if not form.branches:
            raise MalformedSpecError("or needs at least one branch")
        tags = [tag for tag, _ in form.branches]
        if len(set(tags)) != len(tags):
            raise MalformedSpecError("or branch tags must be unique")
        for tag, child in form.branches:
            if not isinstance(tag, Keyword):
                raise MalformedSpecError("or branch tag must be a keyword")
            check_form(child)
    elif isinstance(form, And):
        if not form.children:
            raise MalformedSpecError("and needs at least one child")
        for child in form.children:
            check_form(child)
    elif isinstance(form, Keys):
        for key in (*form.required, *form.optional):
            if not isinstance(key, Keyword):
                raise MalformedSpecError("keys entries must be keywords")
        overlap = set(form.required) & set(form.optional)
        if overlap:
            names = ", ".join(sorted(k.text for k in overlap))
            raise MalformedSpecError(f"keys required/optional overlap: {names}")
    elif isinstance(form, CollOf):
        for bound in (form.min_count, form.max_count):
            if bound is not None and (not isinstance(bound, int) or bound < 0):
                raise MalformedSpecError("coll-of bounds must be non-negative ints")
        if (
            form.min_count is not None
            and form.max_count is not None
            and form.min_count > form.max_count
        ):
            raise MalformedSpecError("coll-of min-count exceeds max-count")
        check_form(form.child)
    elif isinstance(form, WithGen):
        if not form.generator_name or not isinstance(form.generator_name, str):
            raise MalformedSpecError("with-gen needs a generator name")
        check_form(form.child)
    else:
        raise MalformedSpecError(f"not a spec form: {form!r}")
