"""Validation, conformance and explanation over a registry.

``validate`` answers yes/no. ``conform`` additionally reports which branch
of every traversed ``or`` matched, as a 2-element vector ``[tag, child]``
inside an otherwise untouched copy of the input. ``explain`` returns a
list of path-addressed problems, empty exactly when the value validates.

Semantics worth spelling out:

* ``or`` commits to the first declaring branch that accepts the value; on
  failure every branch contributes its problems.
* ``and`` conforms its first child and boolean-checks the rest against the
  original value (values never flow between conjuncts); explanation stops
  at the first failing conjunct.
* ``keys`` is open: keys not listed are permitted and ignored. A listed key
  that is present must satisfy the spec registered under the key's own
  name; each missing required key yields one problem. Key specs are looked
  up strictly, so a listed key with no registered spec raises UnknownSpec.
* ``coll-of`` reports one problem per failing member plus one for a count
  violation.

The ``via`` chain of a problem lists the registered spec names crossed on
the way down, outermost first; the ``in`` path addresses the offending
sub-value with map keys and vector indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import And, CollOf, Keys, Or, Pred, Ref, SpecForm, WithGen
from .keywords import Keyword
from .predicates import BUILTINS, PredicateLibrary
from .registry import Registry
from .values import Value, value_to_json


@dataclass(frozen=True)
class Problem:
    """One reason a value fails a contract."""

    in_path: tuple  # map keys (Keyword) and vector indices (int), outermost first
    via: tuple  # registered spec names crossed, outermost first
    pred: str  # human-readable description of the violated predicate
    val: Value  # the offending sub-value

    def to_json(self) -> dict:
        return {
            "in": [s.key_string if isinstance(s, Keyword) else s for s in self.in_path],
            "via": [k.text for k in self.via],
            "pred": self.pred,
            "val": value_to_json(self.val),
        }


@dataclass(frozen=True)
class Conformed:
    tree: Value


@dataclass(frozen=True)
class Invalid:
    problems: tuple  # of Problem, never empty


ConformResult = Conformed | Invalid


def validate(
    registry: Registry, name: Keyword, value: Value, lib: PredicateLibrary = BUILTINS
) -> bool:
    """True iff value satisfies the spec registered under name."""
    return _check(registry, lib, registry.resolve(name), value)


def conform(
    registry: Registry, name: Keyword, value: Value, lib: PredicateLibrary = BUILTINS
) -> ConformResult:
    """Conformed(tree) with or-branches tagged, or Invalid(problems)."""
    out = _conform(registry, lib, registry.resolve(name), value, (), (name,))
    if isinstance(out, _Fail):
        return Invalid(tuple(out.problems))
    return Conformed(out.tree)


def explain(
    registry: Registry, name: Keyword, value: Value, lib: PredicateLibrary = BUILTINS
) -> list[Problem]:
    """All problems, empty iff the value validates."""
    result = conform(registry, name, value, lib)
    return list(result.problems) if isinstance(result, Invalid) else []


def resolve(registry: Registry, name: Keyword) -> SpecForm:
    """The stored form for name (a Ref result is returned as-is)."""
    return registry.resolve(name)


# --- fast boolean path -------------------------------------------------------

def _check(registry: Registry, lib: PredicateLibrary, form: SpecForm, value: Value) -> bool:
    if isinstance(form, Pred):
        return lib.get(form.name).eval(form.params, value)
    if isinstance(form, Ref):
        return _check(registry, lib, registry.resolve(form.target), value)
    if isinstance(form, Or):
        return any(_check(registry, lib, child, value) for _, child in form.branches)
    if isinstance(form, And):
        return all(_check(registry, lib, child, value) for child in form.children)
    if isinstance(form, Keys):
        if not isinstance(value, dict):
            return False
        for key in form.required:
            if key not in value:
                return False
            if not _check(registry, lib, registry.resolve(key), value[key]):
                return False
        for key in form.optional:
            if key in value and not _check(registry, lib, registry.resolve(key), value[key]):
                return False
        return True
    if isinstance(form, CollOf):
        if not isinstance(value, list):
            return False
        if form.min_count is not None and len(value) < form.min_count:
            return False
        if form.max_count is not None and len(value) > form.max_count:
            return False
        return all(_check(registry, lib, form.child, item) for item in value)
    if isinstance(form, WithGen):
        return _check(registry, lib, form.child, value)
    raise TypeError(f"not a spec form: {form!r}")


# --- conforming path (shared by conform and explain) -------------------------

@dataclass
class _Ok:
    tree: Value


@dataclass
class _Fail:
    problems: list = field(default_factory=list)


def _problem(path: tuple, via: tuple, pred: str, value: Value) -> _Fail:
    return _Fail([Problem(path, via, pred, value)])


def _conform(
    registry: Registry,
    lib: PredicateLibrary,
    form: SpecForm,
    value: Value,
    path: tuple,
    via: tuple,
):
    if isinstance(form, Pred):
        definition = lib.get(form.name)
        if definition.eval(form.params, value):
            return _Ok(value)
        return _problem(path, via, definition.describe(form.params), value)

    if isinstance(form, Ref):
        return _conform(
            registry, lib, registry.resolve(form.target), value, path, via + (form.target,)
        )

    if isinstance(form, Or):
        failures: list = []
        for tag, child in form.branches:
            out = _conform(registry, lib, child, value, path, via)
            if isinstance(out, _Ok):
                return _Ok([tag, out.tree])
            failures.extend(out.problems)
        return _Fail(failures)

    if isinstance(form, And):
        first = _conform(registry, lib, form.children[0], value, path, via)
        if isinstance(first, _Fail):
            return first
        for child in form.children[1:]:
            out = _conform(registry, lib, child, value, path, via)
            if isinstance(out, _Fail):
                return out  # first failing conjunct only
        return first

    if isinstance(form, Keys):
        if not isinstance(value, dict):
            return _problem(path, via, "is a map", value)
        problems: list = []
        tree = dict(value)  # unlisted keys pass through untouched
        for key in form.required:
            if key not in value:
                problems.append(Problem(path, via, f"contains key {key.text}", value))
        for key in (*form.required, *form.optional):
            if key not in value:
                continue
            out = _conform(
                registry, lib, registry.resolve(key), value[key], path + (key,), via + (key,)
            )
            if isinstance(out, _Fail):
                problems.extend(out.problems)
            else:
                tree[key] = out.tree
        if problems:
            return _Fail(problems)
        return _Ok(tree)

    if isinstance(form, CollOf):
        if not isinstance(value, list):
            return _problem(path, via, "is a vector", value)
        problems = []
        if form.min_count is not None and len(value) < form.min_count:
            problems.append(Problem(path, via, _count_text(form), value))
        elif form.max_count is not None and len(value) > form.max_count:
            problems.append(Problem(path, via, _count_text(form), value))
        tree = []
        for index, item in enumerate(value):
            out = _conform(registry, lib, form.child, item, path + (index,), via)
            if isinstance(out, _Fail):
                problems.extend(out.problems)
            else:
                tree.append(out.tree)
        if problems:
            return _Fail(problems)
        return _Ok(tree)

    if isinstance(form, WithGen):
        return _conform(registry, lib, form.child, value, path, via)

    raise TypeError(f"not a spec form: {form!r}")


def _count_text(form: CollOf) -> str:
    if form.min_count is not None and form.max_count is not None:
        return f"has between {form.min_count} and {form.max_count} elements"
    if form.min_count is not None:
        return f"has at least {form.min_count} elements"
    return f"has at most {form.max_count} elements"


# --- conformed-tree utilities -------------------------------------------------

def strip_or_tags(registry: Registry, name: Keyword, tree: Value) -> Value:
    """Undo conform: remove the or tags from a conformed tree.

    Walks the spec and the tree together, so plain 2-element vectors in the
    data are never mistaken for tags. strip_or_tags(conform(v).tree) == v.
    """
    return _strip(registry, registry.resolve(name), tree)


def _strip(registry: Registry, form: SpecForm, tree: Value) -> Value:
    if isinstance(form, Pred):
        return tree
    if isinstance(form, Ref):
        return _strip(registry, registry.resolve(form.target), tree)
    if isinstance(form, Or):
        tag, subtree = tree
        for branch_tag, child in form.branches:
            if branch_tag == tag:
                return _strip(registry, child, subtree)
        raise ValueError(f"tag {tag} is not a branch of the or form")
    if isinstance(form, And):
        return _strip(registry, form.children[0], tree)
    if isinstance(form, Keys):
        out = dict(tree)
        for key in (*form.required, *form.optional):
            if key in out:
                out[key] = _strip(registry, registry.resolve(key), out[key])
        return out
    if isinstance(form, CollOf):
        return [_strip(registry, form.child, item) for item in tree]
    if isinstance(form, WithGen):
        return _strip(registry, form.child, tree)
    raise TypeError(f"not a spec form: {form!r}")
