"""The controlled natural language bridging domain experts and contracts.

A document is a sequence of template sentences, one per line, each either
declaring an atomic element (internals deliberately hidden) or a compound
element built from named children with one of four combinators. The
templates are fixed verbatim; nothing else parses. That strictness is the
point: the language must be unambiguous.

    namespace: mmsr
    The contract ::valid-date must hold.
    The contract ::trade-date holds, if at least one of the contracts
        ::valid-date-time-ms, ::valid-date-time-no-ms, ::valid-date holds.
    The root contract is ::report-file.

(shown wrapped; real documents keep each sentence on one line). ``source:``
lines attach the regulation quote to the preceding element, ``#`` starts a
comment. ``::name`` resolves against the namespace directive.

Beyond parse/render, this module ties the CNL to a registry:

* ``abstract``        registry subtree -> document (structure only, no
                      predicate internals -- the CNL is an abstraction)
* ``soundness_check`` document vs registry -> findings; an empty list
                      means every structural claim the document makes
                      holds of the registered contracts
* ``traceback``       validation problems -> the innermost CNL element
                      their via chain touches, with sentence and quote
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    CnlRenderError,
    CnlSyntaxError,
    CyclicReferenceError,
    DanglingSourceError,
    DuplicateNameError,
    MultipleRootsError,
)
from .engine import Problem
from .forms import And, CollOf, Keys, Or, Pred, Ref, SpecForm, WithGen
from .keywords import Keyword, keyword
from .registry import Registry


class Combinator(str, Enum):
    OR = "or"
    AND = "and"
    KEYS = "keys"
    COLL_OF = "coll-of"


ATOMIC = "atomic"


@dataclass(frozen=True)
class CnlElement:
    """One named element: atomic, or a compound over named children."""

    name: Keyword
    combinator: Combinator | None = None  # None means atomic
    children: tuple = ()  # of Keyword, empty for atomic
    is_root: bool = False
    source_text: str | None = None
    line: int = field(default=0, compare=False)

    @property
    def kind(self) -> str:
        return ATOMIC if self.combinator is None else self.combinator.value

    def __post_init__(self):
        if self.combinator is None and self.children:
            raise ValueError("atomic elements have no children")
        if self.combinator is Combinator.COLL_OF and len(self.children) != 1:
            raise ValueError("coll-of elements have exactly one child")
        if self.combinator in (Combinator.OR, Combinator.AND, Combinator.KEYS):
            if not self.children:
                raise ValueError(f"{self.combinator.value} elements need children")


@dataclass(frozen=True)
class CnlDocument:
    namespace: str | None = None
    elements: tuple = ()  # of CnlElement, in document order
    root: Keyword | None = None
    notes: tuple = field(default=(), compare=False)  # informational, e.g. shared subtrees

    def element(self, name: Keyword) -> CnlElement | None:
        for el in self.elements:
            if el.name == name:
                return el
        return None

    def names(self) -> set[Keyword]:
        return {el.name for el in self.elements}

    def to_json(self) -> dict:
        return {
            "namespace": self.namespace,
            "root": self.root.text if self.root else None,
            "elements": [
                {
                    "name": el.name.text,
                    "kind": el.kind,
                    "children": [c.text for c in el.children],
                    "is-root": el.is_root,
                    "source-text": el.source_text,
                    "line": el.line,
                }
                for el in self.elements
            ],
        }


# --- parsing ------------------------------------------------------------------

_K = r"::(?:[A-Za-z][A-Za-z0-9_.-]*/)?[A-Za-z][A-Za-z0-9_-]*"
_KLIST = rf"{_K}(?:, {_K})*"

_TEMPLATES = {
    "atomic": re.compile(rf"The contract ({_K}) must hold\.\Z"),
    "or": re.compile(
        rf"The contract ({_K}) holds, if at least one of the contracts ({_KLIST}) holds\.\Z"
    ),
    "and": re.compile(
        rf"The contract ({_K}) holds, if all of the contracts ({_KLIST}) hold\.\Z"
    ),
    "keys": re.compile(
        rf"The contract ({_K}) holds, if for the keys and values of this map "
        rf"the contracts ({_KLIST}) hold\.\Z"
    ),
    "coll-of": re.compile(
        rf"The contract ({_K}) holds, if for the members of this collection "
        rf"the contract ({_K}) holds\.\Z"
    ),
    "root": re.compile(rf"The root contract is ({_K})\.\Z"),
}
_NAMESPACE_RE = re.compile(r"namespace: ([A-Za-z][A-Za-z0-9_.-]*)\Z")
_SOURCE_RE = re.compile(r'source: "((?:[^"\\]|\\.)*)"\Z')

_SENTENCES = {
    "atomic": "The contract <k> must hold.",
    "or": "The contract <k> holds, if at least one of the contracts <k1>, ..., <kn> holds.",
    "and": "The contract <k> holds, if all of the contracts <k1>, ..., <kn> hold.",
    "keys": (
        "The contract <k> holds, if for the keys and values of this map "
        "the contracts <k1>, ..., <kn> hold."
    ),
    "coll-of": (
        "The contract <k> holds, if for the members of this collection "
        "the contract <k1> holds."
    ),
    "root": "The root contract is <k>.",
    "namespace": "namespace: <ident>",
    "source": 'source: "<quote>"',
}

_COMBINATORS = {
    "or": Combinator.OR,
    "and": Combinator.AND,
    "keys": Combinator.KEYS,
    "coll-of": Combinator.COLL_OF,
}


def _expected_for(line: str) -> str:
    """Best-effort template suggestion for a line that matched nothing."""
    if line.startswith("namespace:"):
        return _SENTENCES["namespace"]
    if line.startswith("source:"):
        return _SENTENCES["source"]
    if line.startswith("The root contract"):
        return _SENTENCES["root"]
    if "at least one of" in line:
        return _SENTENCES["or"]
    if "all of the contracts" in line:
        return _SENTENCES["and"]
    if "keys and values" in line:
        return _SENTENCES["keys"]
    if "members of this collection" in line:
        return _SENTENCES["coll-of"]
    if line.startswith("The contract"):
        return _SENTENCES["atomic"]
    return "one of the contract sentence templates"


def parse(text: str) -> CnlDocument:
    """Parse CNL text into a document; raises the Cnl* error family."""
    namespace: str | None = None
    elements: list[CnlElement] = []
    seen: dict[Keyword, int] = {}
    root: Keyword | None = None
    root_line = 0
    saw_content = False

    def kw(token: str) -> Keyword:
        return keyword(token, namespace or "")

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        m = _NAMESPACE_RE.match(line)
        if m:
            if saw_content or namespace is not None:
                raise CnlSyntaxError(
                    line_no, "namespace directive only before the first sentence"
                )
            namespace = m.group(1)
            continue
        saw_content = True

        m = _SOURCE_RE.match(line)
        if m:
            if not elements:
                raise DanglingSourceError("source line with no preceding element", line_no)
            quote = re.sub(r"\\(.)", r"\1", m.group(1))
            last = elements[-1]
            if last.source_text is not None:
                raise DanglingSourceError(
                    "element already has a source line", line_no
                )
            elements[-1] = _with_source(last, quote)
            continue

        m = _TEMPLATES["root"].match(line)
        if m:
            if root is not None:
                raise MultipleRootsError("document already declares a root", line_no)
            root = kw(m.group(1))
            root_line = line_no
            continue

        m = _TEMPLATES["atomic"].match(line)
        if m:
            _add(elements, seen, CnlElement(kw(m.group(1)), line=line_no), line_no)
            continue

        matched = False
        for kind, combinator in _COMBINATORS.items():
            m = _TEMPLATES[kind].match(line)
            if m:
                name = kw(m.group(1))
                children = tuple(kw(tok) for tok in m.group(2).split(", "))
                _add(
                    elements,
                    seen,
                    CnlElement(name, combinator, children, line=line_no),
                    line_no,
                )
                matched = True
                break
        if matched:
            continue

        raise CnlSyntaxError(line_no, _expected_for(line))

    _check_acyclic(elements)
    if root is not None:
        elements = [
            _as_root(el, root_line) if el.name == root else el for el in elements
        ]
    return CnlDocument(namespace, tuple(elements), root)


def _add(elements: list, seen: dict, element: CnlElement, line_no: int) -> None:
    if element.name in seen:
        raise DuplicateNameError(
            f"element {element.name.text} already defined on line {seen[element.name]}",
            line_no,
        )
    seen[element.name] = line_no
    elements.append(element)


def _with_source(el: CnlElement, quote: str) -> CnlElement:
    return CnlElement(el.name, el.combinator, el.children, el.is_root, quote, el.line)


def _as_root(el: CnlElement, root_line: int) -> CnlElement:
    return CnlElement(el.name, el.combinator, el.children, True, el.source_text, el.line)


def _check_acyclic(elements: list[CnlElement]) -> None:
    defined = {el.name: el for el in elements}
    state: dict[Keyword, int] = {}  # 1 visiting, 2 done

    def visit(name: Keyword, trail: list[Keyword]) -> None:
        if state.get(name) == 2 or name not in defined:
            return
        if state.get(name) == 1:
            cycle = trail[trail.index(name):] + [name]
            raise CyclicReferenceError(cycle)
        state[name] = 1
        for child in defined[name].children:
            visit(child, trail + [name])
        state[name] = 2

    for el in elements:
        visit(el.name, [])


# --- rendering ------------------------------------------------------------------

def render(doc: CnlDocument) -> str:
    """Deterministic text for a document; parse(render(doc)) == doc."""
    lines: list[str] = []
    if doc.namespace:
        lines.append(f"namespace: {doc.namespace}")
    for el in doc.elements:
        lines.append(render_sentence(el, doc.namespace))
        if el.source_text is not None:
            if "\n" in el.source_text or "\r" in el.source_text:
                raise CnlRenderError(
                    f"source text of {el.name.text} contains a line break"
                )
            quote = el.source_text.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'source: "{quote}"')
    if doc.root is not None:
        lines.append(f"The root contract is {_kw_text(doc.root, doc.namespace)}.")
    return "\n".join(lines) + "\n"


def render_sentence(el: CnlElement, namespace: str | None = None) -> str:
    """The single CNL sentence for one element."""
    name = _kw_text(el.name, namespace)
    if el.combinator is None:
        return f"The contract {name} must hold."
    children = ", ".join(_kw_text(c, namespace) for c in el.children)
    if el.combinator is Combinator.OR:
        return (
            f"The contract {name} holds, if at least one of the contracts "
            f"{children} holds."
        )
    if el.combinator is Combinator.AND:
        return f"The contract {name} holds, if all of the contracts {children} hold."
    if el.combinator is Combinator.KEYS:
        return (
            f"The contract {name} holds, if for the keys and values of this map "
            f"the contracts {children} hold."
        )
    return (
        f"The contract {name} holds, if for the members of this collection "
        f"the contract {children} holds."
    )


def _kw_text(kw: Keyword, namespace: str | None) -> str:
    if namespace and kw.namespace == namespace:
        return f"::{kw.name}"
    if namespace and not kw.namespace:
        raise CnlRenderError(
            f"{kw.text} has no namespace and cannot be written under "
            f"a namespace directive"
        )
    return kw.text


# --- abstraction ------------------------------------------------------------------

def _structure_of(form: SpecForm) -> tuple[Combinator | None, tuple]:
    """(combinator, child names) at CNL granularity, or (None, ()) for a leaf.

    A node only counts as compound when every child is a Ref (or, for keys,
    a key name): the CNL can only speak about named contracts, so inline
    children push the whole node below its granularity. With-gen wrappers
    are invisible -- attached generators are exactly the kind of detail the
    abstraction hides. A bare Ref alias is a leaf for the same reason.
    """
    while isinstance(form, WithGen):
        form = form.child
    if isinstance(form, Or):
        children = [c for _, c in form.branches]
        if all(isinstance(c, Ref) for c in children):
            return Combinator.OR, tuple(c.target for c in children)
        return None, ()
    if isinstance(form, And):
        if all(isinstance(c, Ref) for c in form.children):
            return Combinator.AND, tuple(c.target for c in form.children)
        return None, ()
    if isinstance(form, Keys):
        return Combinator.KEYS, (*form.required, *form.optional)
    if isinstance(form, CollOf):
        if isinstance(form.child, Ref):
            return Combinator.COLL_OF, (form.child.target,)
        return None, ()
    return None, ()  # Pred or bare Ref alias


def abstract(registry: Registry, root: Keyword, namespace: str | None = None) -> CnlDocument:
    """Project the registry subtree under root onto a CNL document.

    Children appear before parents (the order a reader builds the tree up
    in), each shared contract once; sharing is recorded in doc.notes.
    Registered source-text metadata becomes source lines.
    """
    if root not in registry:
        registry.resolve(root)  # raises UnknownSpecError
    if namespace is None:
        namespace = root.namespace or None

    elements: list[CnlElement] = []
    emitted: set[Keyword] = set()
    notes: list[str] = []

    def visit(name: Keyword) -> None:
        if name in emitted:
            notes.append(f"shared subtree: {name.text} is reused by several parents")
            return
        emitted.add(name)
        combinator, children = (
            _registry_structure(registry, name) if name in registry else (None, ())
        )
        for child in children:
            visit(child)
        elements.append(
            CnlElement(
                name,
                combinator,
                children,
                is_root=name == root,
                source_text=registry.metadata(name).get("source-text")
                if name in registry
                else None,
            )
        )

    visit(root)
    return CnlDocument(namespace, tuple(elements), root, tuple(notes))


# --- soundness ------------------------------------------------------------------

class FindingKind(str, Enum):
    MISSING_SPEC = "MissingSpec"
    COMBINATOR_MISMATCH = "CombinatorMismatch"
    CHILDREN_MISMATCH = "ChildrenMismatch"
    ROOT_MISMATCH = "RootMismatch"
    UNREACHABLE_ELEMENT = "UnreachableElement"


@dataclass(frozen=True)
class Finding:
    kind: FindingKind
    severity: str  # "error" | "warning" | "info"
    name: Keyword | None
    message: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "severity": self.severity,
            "name": self.name.text if self.name else None,
            "message": self.message,
        }


def soundness_check(
    doc: CnlDocument, registry: Registry, expected_root: Keyword | None = None
) -> list[Finding]:
    """Every structural claim the document makes, checked against the registry.

    Returns findings, empty when sound. Order-sensitive child comparison for
    or/and/coll-of (conform output depends on branch order); set comparison
    for keys (the CNL abstracts required/optional away, so it cannot claim
    an order). An element the root cannot reach is only a warning.
    """
    findings: list[Finding] = []

    for el in doc.elements:
        in_registry = el.name in registry
        if not in_registry:
            findings.append(
                Finding(
                    FindingKind.MISSING_SPEC,
                    "error",
                    el.name,
                    f"{el.name.text} names no registered contract",
                )
            )
        # children defined nowhere at all are missing too
        for child in el.children:
            if doc.element(child) is None and child not in registry:
                findings.append(
                    Finding(
                        FindingKind.MISSING_SPEC,
                        "error",
                        child,
                        f"{child.text} (child of {el.name.text}) names no "
                        f"registered contract",
                    )
                )
        if el.combinator is None or not in_registry:
            continue  # an atomic element claims nothing about internals

        actual_comb, actual_children = _registry_structure(registry, el.name)
        if actual_comb is not el.combinator:
            findings.append(
                Finding(
                    FindingKind.COMBINATOR_MISMATCH,
                    "error",
                    el.name,
                    f"{el.name.text} is {el.kind} in the CNL but "
                    f"{actual_comb.value if actual_comb else ATOMIC} in the registry",
                )
            )
            continue
        if el.combinator is Combinator.KEYS:
            same = set(el.children) == set(actual_children)
        else:
            same = el.children == actual_children
        if not same:
            expected = ", ".join(c.text for c in el.children)
            actual = ", ".join(c.text for c in actual_children)
            findings.append(
                Finding(
                    FindingKind.CHILDREN_MISMATCH,
                    "error",
                    el.name,
                    f"{el.name.text} children differ: CNL [{expected}] "
                    f"vs registry [{actual}]",
                )
            )

    if expected_root is not None and doc.root != expected_root:
        declared = doc.root.text if doc.root else "none"
        findings.append(
            Finding(
                FindingKind.ROOT_MISMATCH,
                "error",
                doc.root,
                f"document root is {declared}, registry root is {expected_root.text}",
            )
        )

    findings.extend(_unreachable(doc))
    return findings


def _registry_structure(registry: Registry, name: Keyword) -> tuple[Combinator | None, tuple]:
    if registry.metadata(name).get("opaque"):
        return None, ()
    return _structure_of(registry.resolve(name))


def _unreachable(doc: CnlDocument) -> list[Finding]:
    if doc.root is None or doc.element(doc.root) is None:
        return []
    reachable: set[Keyword] = set()
    stack = [doc.root]
    while stack:
        name = stack.pop()
        if name in reachable:
            continue
        reachable.add(name)
        el = doc.element(name)
        if el is not None:
            stack.extend(el.children)
    return [
        Finding(
            FindingKind.UNREACHABLE_ELEMENT,
            "warning",
            el.name,
            f"{el.name.text} is not reachable from the root element",
        )
        for el in doc.elements
        if el.name not in reachable
    ]


def error_findings(findings: list[Finding]) -> list[Finding]:
    return [f for f in findings if f.severity == "error"]


# --- problem traceback -------------------------------------------------------------

BELOW_GRANULARITY = "below CNL granularity"


@dataclass(frozen=True)
class TracebackEntry:
    """Where in the CNL a validation problem points."""

    problem: Problem
    element: CnlElement | None
    sentence: str
    source_text: str | None
    below_granularity: bool = False

    def to_json(self) -> dict:
        return {
            "problem": self.problem.to_json(),
            "element": self.element.name.text if self.element else None,
            "line": self.element.line if self.element else None,
            "sentence": self.sentence,
            "source-text": self.source_text,
            "below-cnl-granularity": self.below_granularity,
        }


def traceback(doc: CnlDocument, problems: list[Problem]) -> list[TracebackEntry]:
    """Map each problem to the innermost element its via chain names.

    Problems whose entire via chain is absent from the document fall back
    to the root element, marked below CNL granularity.
    """
    names = doc.names()
    entries = []
    for problem in problems:
        element = None
        for name in reversed(problem.via):
            if name in names:
                element = doc.element(name)
                break
        if element is not None:
            entries.append(
                TracebackEntry(
                    problem,
                    element,
                    render_sentence(element, doc.namespace),
                    element.source_text,
                )
            )
            continue
        root_el = doc.element(doc.root) if doc.root else None
        entries.append(
            TracebackEntry(
                problem,
                root_el,
                BELOW_GRANULARITY,
                root_el.source_text if root_el else None,
                below_granularity=True,
            )
        )
    return entries
