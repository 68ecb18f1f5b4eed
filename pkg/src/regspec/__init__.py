"""regspec: regulations as composable software contracts.

Contracts are registered under namespaced keywords, validated, conformed
(with or-branch tags), explained (path-addressed problems), and used to
generate seeded test data. A controlled natural language abstracts the
contract tree for domain experts, with a soundness checker and a problem
traceback tying the two representations together.
"""

from .cnl import (
    CnlDocument,
    CnlElement,
    Combinator,
    Finding,
    FindingKind,
    TracebackEntry,
    abstract,
    parse,
    render,
    render_sentence,
    soundness_check,
    traceback,
)
from .datagen import (
    BUILTIN_GENERATORS,
    GenContext,
    GeneratorDef,
    GeneratorLibrary,
    generate,
    register_generator,
    sample,
)
from .engine import (
    Conformed,
    ConformResult,
    Invalid,
    Problem,
    conform,
    explain,
    resolve,
    strip_or_tags,
    validate,
)
from .errors import (
    CnlError,
    CnlRenderError,
    CnlSyntaxError,
    CyclicDefinitionError,
    CyclicReferenceError,
    DanglingSourceError,
    DepthExceededError,
    DuplicateGeneratorError,
    DuplicateNameError,
    DuplicatePredicateError,
    MalformedSpecError,
    MessageFormatError,
    MultipleRootsError,
    NoGeneratorError,
    RegspecError,
    RetryExhaustedError,
    RulesetParseError,
    UnknownPredicateError,
    UnknownSpecError,
)
from .forms import And, CollOf, Keys, Or, Pred, Ref, SpecForm, WithGen
from .keywords import Keyword, keyword
from .predicates import BUILTINS, PredicateDef, PredicateLibrary, eval_predicate
from .registry import Registry, register
from .ruleset import dump_ruleset, load_ruleset
from .values import Value, value_from_json, value_to_json, values_equal

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
