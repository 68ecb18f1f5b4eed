"""Ruleset files: the on-disk JSON form of a registry plus its root.

Layout::

    {
      "namespace": "mmsr",
      "root": "::mmsr/report-file",
      "specs": {
        "::mmsr/transaction-type": {"op": "one-of", "values": ["BORR", "LEND"]},
        "::mmsr/trade-date": {"op": "or", "branches": [
            ["::mmsr/valid-date-time-ms", "::mmsr/valid-date-time-ms"], ...]},
        ...
      }
    }

Keywords are ``::``-prefixed strings resolved against the file namespace.
Wherever a child node is expected, a bare keyword string is shorthand for
``{"op": "ref", "target": ...}``. A spec entry may also carry
``source-text`` (the regulation quote) and ``opaque`` (hide internals from
the CNL abstraction); both land in registry metadata.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import RulesetParseError
from .forms import And, CollOf, Keys, Or, Pred, Ref, SpecForm, WithGen
from .keywords import Keyword, keyword
from .predicates import PredicateLibrary
from .registry import Registry
from .values import value_from_json, value_to_json


def load_ruleset(
    path: str | Path, lib: PredicateLibrary | None = None
) -> tuple[Registry, Keyword]:
    """Read a ruleset file into (registry, root).

    When a predicate library is given, every pred node is checked against
    it so an unknown predicate fails at load time, not mid-validation.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise RulesetParseError(f"cannot read ruleset {path}: {exc}") from exc
    registry, root = parse_ruleset(data)
    if lib is not None:
        for name in registry:
            _check_predicates(registry.resolve(name), lib)
    if root not in registry:
        registry.resolve(root)  # raises UnknownSpecError
    return registry, root


def parse_ruleset(data: object) -> tuple[Registry, Keyword]:
    if not isinstance(data, dict):
        raise RulesetParseError("ruleset must be a JSON object")
    namespace = data.get("namespace", "")
    if not isinstance(namespace, str):
        raise RulesetParseError("namespace must be a string")
    specs = data.get("specs")
    if not isinstance(specs, dict) or not specs:
        raise RulesetParseError("ruleset needs a non-empty specs object")
    if "root" not in data:
        raise RulesetParseError("ruleset needs a root")

    registry = Registry()
    for name_text, node in specs.items():
        name = _keyword(name_text, namespace)
        form = _parse_node(node, namespace)
        metadata = {}
        if isinstance(node, dict):
            if node.get("source-text") is not None:
                metadata["source-text"] = node["source-text"]
            if node.get("opaque"):
                metadata["opaque"] = True
        registry = registry.register(name, form, metadata)
    root = _keyword(data["root"], namespace)
    return registry, root


def _keyword(text: object, namespace: str) -> Keyword:
    if not isinstance(text, str):
        raise RulesetParseError(f"expected a keyword string, got {text!r}")
    try:
        return keyword(text, namespace)
    except ValueError as exc:
        raise RulesetParseError(str(exc)) from exc


def _parse_node(node: object, namespace: str) -> SpecForm:
    if isinstance(node, str):  # bare keyword = ref shorthand
        return Ref(_keyword(node, namespace))
    if not isinstance(node, dict):
        raise RulesetParseError(f"spec node must be an object or keyword: {node!r}")
    op = node.get("op")
    if op == "pred":
        name = node.get("name")
        if not isinstance(name, str):
            raise RulesetParseError("pred node needs a predicate name")
        return Pred(name, value_from_json(node.get("params")))
    if op == "one-of":
        values = node.get("values")
        if not isinstance(values, list):
            raise RulesetParseError("one-of node needs a values array")
        return Pred("one-of", value_from_json(values))
    if op == "ref":
        return Ref(_keyword(node.get("target"), namespace))
    if op == "or":
        branches = node.get("branches")
        if not isinstance(branches, list) or not branches:
            raise RulesetParseError("or node needs branches")
        parsed = []
        for branch in branches:
            if not isinstance(branch, list) or len(branch) != 2:
                raise RulesetParseError("or branch must be a [tag, child] pair")
            parsed.append((_keyword(branch[0], namespace), _parse_node(branch[1], namespace)))
        return Or(parsed)
    if op == "and":
        children = node.get("children")
        if not isinstance(children, list) or not children:
            raise RulesetParseError("and node needs children")
        return And([_parse_node(child, namespace) for child in children])
    if op == "keys":
        required = node.get("required", [])
        optional = node.get("optional", [])
        if not isinstance(required, list) or not isinstance(optional, list):
            raise RulesetParseError("keys node needs required/optional arrays")
        return Keys(
            [_keyword(k, namespace) for k in required],
            [_keyword(k, namespace) for k in optional],
        )
    if op == "coll-of":
        if "child" not in node:
            raise RulesetParseError("coll-of node needs a child")
        return CollOf(
            _parse_node(node["child"], namespace),
            node.get("min-count"),
            node.get("max-count"),
        )
    if op == "with-gen":
        generator = node.get("generator")
        if "child" not in node or not isinstance(generator, str):
            raise RulesetParseError("with-gen node needs a child and a generator")
        return WithGen(
            _parse_node(node["child"], namespace),
            generator,
            value_from_json(node.get("params")),
        )
    raise RulesetParseError(f"unknown spec op: {op!r}")


def _check_predicates(form: SpecForm, lib: PredicateLibrary) -> None:
    if isinstance(form, Pred):
        lib.get(form.name)  # raises UnknownPredicateError
    elif isinstance(form, Or):
        for _, child in form.branches:
            _check_predicates(child, lib)
    elif isinstance(form, And):
        for child in form.children:
            _check_predicates(child, lib)
    elif isinstance(form, (CollOf, WithGen)):
        _check_predicates(form.child, lib)


def dump_node(form: SpecForm, namespace: str = "") -> object:
    """Inverse of _parse_node, used to serve rulesets over the API."""
    def kw(k: Keyword) -> str:
        return f"::{k.name}" if namespace and k.namespace == namespace else k.text

    if isinstance(form, Pred):
        if form.name == "one-of":
            return {"op": "one-of", "values": value_to_json(form.params)}
        out = {"op": "pred", "name": form.name}
        if form.params is not None:
            out["params"] = value_to_json(form.params)
        return out
    if isinstance(form, Ref):
        return kw(form.target)
    if isinstance(form, Or):
        return {
            "op": "or",
            "branches": [[kw(tag), dump_node(child, namespace)] for tag, child in form.branches],
        }
    if isinstance(form, And):
        return {"op": "and", "children": [dump_node(c, namespace) for c in form.children]}
    if isinstance(form, Keys):
        out = {"op": "keys", "required": [kw(k) for k in form.required]}
        if form.optional:
            out["optional"] = [kw(k) for k in form.optional]
        return out
    if isinstance(form, CollOf):
        out = {"op": "coll-of", "child": dump_node(form.child, namespace)}
        if form.min_count is not None:
            out["min-count"] = form.min_count
        if form.max_count is not None:
            out["max-count"] = form.max_count
        return out
    if isinstance(form, WithGen):
        out = {
            "op": "with-gen",
            "child": dump_node(form.child, namespace),
            "generator": form.generator_name,
        }
        if form.params is not None:
            out["params"] = value_to_json(form.params)
        return out
    raise TypeError(f"not a spec form: {form!r}")


def dump_ruleset(registry: Registry, root: Keyword, namespace: str = "") -> dict:
    """Registry -> ruleset JSON object (metadata included)."""
    def kw(k: Keyword) -> str:
        return f"::{k.name}" if namespace and k.namespace == namespace else k.text

    specs = {}
    for name in registry:
        node = dump_node(registry.resolve(name), namespace)
        if isinstance(node, str):  # bare ref shorthand: re-wrap to carry metadata
            node = {"op": "ref", "target": node}
        metadata = registry.metadata(name)
        if metadata.get("source-text") is not None:
            node["source-text"] = metadata["source-text"]
        if metadata.get("opaque"):
            node["opaque"] = True
        specs[kw(name)] = node
    out = {"specs": specs, "root": kw(root)}
    if namespace:
        out["namespace"] = namespace
    return out
