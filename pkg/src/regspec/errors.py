"""Exception hierarchy shared by all regspec modules.

Every error raised by the library derives from RegspecError so callers can
catch the whole family at an API or CLI boundary.
"""


class RegspecError(Exception):
    """Base class for all regspec errors."""


class MalformedSpecError(RegspecError):
    """A spec form violates a structural invariant (empty or, bad counts, ...)."""


class CyclicDefinitionError(RegspecError):
    """Registering this spec would introduce a pure-ref cycle."""


class UnknownSpecError(RegspecError):
    """A spec name was used but never registered."""

    def __init__(self, name):
        super().__init__(f"unknown spec: {name}")
        self.name = name


class UnknownPredicateError(RegspecError):
    """A pred node names a predicate that is not in the library."""

    def __init__(self, name: str):
        super().__init__(f"unknown predicate: {name}")
        self.name = name


class DuplicatePredicateError(RegspecError):
    """A predicate with this name is already registered."""


class DuplicateGeneratorError(RegspecError):
    """A generator with this name is already registered."""


class NoGeneratorError(RegspecError):
    """A pred has no default generator and no with-gen override."""


class RetryExhaustedError(RegspecError):
    """An `and` filter rejected every candidate within the retry budget."""


class DepthExceededError(RegspecError):
    """Generation recursed past the configured depth budget."""


class MessageFormatError(RegspecError):
    """A JSON message does not fit the value interchange format."""


class RulesetParseError(RegspecError):
    """A ruleset file is not valid JSON or not a valid spec-node tree."""


class CnlError(RegspecError):
    """Base class for CNL parse/render errors; carries a line number."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class CnlSyntaxError(CnlError):
    """A line matches no sentence template."""

    def __init__(self, line: int, expected: str):
        super().__init__(f"expected {expected}", line)
        self.expected = expected


class DuplicateNameError(CnlError):
    """Two elements in one document share a name."""


class DanglingSourceError(CnlError):
    """A source: line has no element to attach to."""


class MultipleRootsError(CnlError):
    """More than one root declaration in a document."""


class CyclicReferenceError(CnlError):
    """In-document element references form a cycle."""

    def __init__(self, names):
        cycle = " -> ".join(str(n) for n in names)
        super().__init__(f"cyclic element references: {cycle}")
        self.names = tuple(names)


class CnlRenderError(CnlError):
    """A document cannot be rendered under its namespace directive."""
