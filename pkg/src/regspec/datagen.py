"""Seeded, sized random generation of values that satisfy a contract.

Generation is a pure function of (registry, libraries, context): the same
seed always yields the same value, and sample() derives one sub-seed per
item so the items are independent but reproducible.

Strategy per form: ``one-of`` picks uniformly; ``or`` picks a branch
uniformly; ``and`` generates from its first child and keeps the candidate
only if the remaining children validate, retrying up to max_retries;
``keys`` generates every required key and includes each optional key with
probability 1/2; ``coll-of`` draws a length uniformly between the bounds
(0 and ctx.size standing in for missing ones); ``with-gen`` delegates to
the named generator. Failure is always loud: NoGenerator, RetryExhausted
or DepthExceeded, never a silently invalid value.
"""

from __future__ import annotations

import calendar
import datetime
from dataclasses import dataclass
from typing import Callable, Mapping

from .engine import _check
from .errors import (
    DepthExceededError,
    DuplicateGeneratorError,
    NoGeneratorError,
    RetryExhaustedError,
)
from .forms import And, CollOf, Keys, Or, Pred, Ref, SpecForm, WithGen
from .keywords import Keyword
from .predicates import BUILTINS, PredicateLibrary
from .regexgen import sample_regex
from .registry import Registry
from .rng import Rng
from .values import Value


@dataclass(frozen=True)
class GenContext:
    """Everything that parameterizes one deterministic generation run."""

    seed: int
    size: int = 8
    max_retries: int = 100
    max_depth: int = 16

    def __post_init__(self):
        if self.size < 1 or self.max_retries < 1 or self.max_depth < 1:
            raise ValueError("size, max_retries and max_depth must be positive")


@dataclass(frozen=True)
class GeneratorDef:
    """A named producer: (params, rng, size) -> value."""

    name: str
    produce: Callable[[Value, Rng, int], Value]


class GeneratorLibrary:
    """Immutable name -> GeneratorDef store; register returns a new library."""

    def __init__(self, defs: Mapping[str, GeneratorDef] | None = None):
        self._defs = dict(defs or {})

    def register(self, generator: GeneratorDef) -> "GeneratorLibrary":
        if generator.name in self._defs:
            raise DuplicateGeneratorError(f"generator already defined: {generator.name}")
        merged = dict(self._defs)
        merged[generator.name] = generator
        return GeneratorLibrary(merged)

    def get(self, name: str) -> GeneratorDef:
        try:
            return self._defs[name]
        except KeyError:
            raise NoGeneratorError(f"no generator named {name}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._defs

    def names(self) -> list[str]:
        return sorted(self._defs)


def generate(
    registry: Registry,
    name: Keyword,
    ctx: GenContext,
    lib: PredicateLibrary = BUILTINS,
    gens: "GeneratorLibrary | None" = None,
) -> Value:
    """One random value for the spec registered under name; always valid."""
    gens = gens if gens is not None else BUILTIN_GENERATORS
    rng = Rng(ctx.seed)
    return _generate(registry, lib, gens, registry.resolve(name), rng, ctx, depth=0)


def sample(
    registry: Registry,
    name: Keyword,
    count: int,
    ctx: GenContext,
    lib: PredicateLibrary = BUILTINS,
    gens: "GeneratorLibrary | None" = None,
) -> list[Value]:
    """count independent generations from sub-seeds of ctx.seed."""
    if count < 0:
        raise ValueError("count must be non-negative")
    gens = gens if gens is not None else BUILTIN_GENERATORS
    root = Rng(ctx.seed)
    out = []
    for _ in range(count):
        rng = root.split()
        out.append(_generate(registry, lib, gens, registry.resolve(name), rng, ctx, depth=0))
    return out


def register_generator(gens: GeneratorLibrary, generator: GeneratorDef) -> GeneratorLibrary:
    """Functional alias for GeneratorLibrary.register."""
    return gens.register(generator)


def _generate(
    registry: Registry,
    lib: PredicateLibrary,
    gens: GeneratorLibrary,
    form: SpecForm,
    rng: Rng,
    ctx: GenContext,
    depth: int,
) -> Value:
    if depth > ctx.max_depth:
        raise DepthExceededError(f"generation deeper than {ctx.max_depth}")

    if isinstance(form, WithGen):
        return gens.get(form.generator_name).produce(form.params, rng, ctx.size)

    if isinstance(form, Pred):
        definition = lib.get(form.name)
        if definition.default_generator is None:
            raise NoGeneratorError(
                f"predicate {form.name} has no default generator; wrap it in with-gen"
            )
        return gens.get(definition.default_generator).produce(form.params, rng, ctx.size)

    if isinstance(form, Ref):
        return _generate(
            registry, lib, gens, registry.resolve(form.target), rng, ctx, depth + 1
        )

    if isinstance(form, Or):
        _, child = rng.choice(form.branches)
        return _generate(registry, lib, gens, child, rng, ctx, depth + 1)

    if isinstance(form, And):
        rest = form.children[1:]
        for _ in range(ctx.max_retries):
            candidate = _generate(registry, lib, gens, form.children[0], rng, ctx, depth + 1)
            if all(_check(registry, lib, child, candidate) for child in rest):
                return candidate
        raise RetryExhaustedError(
            f"no candidate satisfied all conjuncts in {ctx.max_retries} tries"
        )

    if isinstance(form, Keys):
        out: dict[Keyword, Value] = {}
        for key in form.required:
            out[key] = _generate(
                registry, lib, gens, registry.resolve(key), rng, ctx, depth + 1
            )
        for key in form.optional:
            if rng.chance(0.5):
                out[key] = _generate(
                    registry, lib, gens, registry.resolve(key), rng, ctx, depth + 1
                )
        return out

    if isinstance(form, CollOf):
        lo = form.min_count if form.min_count is not None else 0
        hi = form.max_count if form.max_count is not None else max(lo, ctx.size)
        length = rng.randint(lo, hi)
        return [
            _generate(registry, lib, gens, form.child, rng, ctx, depth + 1)
            for _ in range(length)
        ]

    raise TypeError(f"not a spec form: {form!r}")


# --- built-in generators ------------------------------------------------------

_ALNUM = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"


def _gen_choose(params: Value, rng: Rng, size: int) -> Value:
    if not isinstance(params, list) or not params:
        raise NoGeneratorError("choose needs a non-empty vector of values")
    return rng.choice(params)


def _gen_regex(params: Value, rng: Rng, size: int) -> Value:
    if not isinstance(params, str):
        raise NoGeneratorError("regex-sampler needs a pattern string")
    return sample_regex(params, rng, size)


def _gen_int_range(params: Value, rng: Rng, size: int) -> Value:
    lo, hi = params
    return rng.randint(int(lo), int(hi))


def _gen_number_range(params: Value, rng: Rng, size: int) -> Value:
    lo, hi = params
    return lo + (hi - lo) * rng.random()


def _gen_string_length(params: Value, rng: Rng, size: int) -> Value:
    lo, hi = params
    return _alnum(rng, rng.randint(lo, hi))


def _alnum(rng: Rng, length: int) -> str:
    return "".join(rng.choice(_ALNUM) for _ in range(length))


def _gen_type(params: Value, rng: Rng, size: int) -> Value:
    kind = params
    if kind == "null":
        return None
    if kind == "bool":
        return rng.chance(0.5)
    if kind == "int":
        return rng.randint(-1000 * size, 1000 * size)
    if kind == "float":
        return (rng.random() - 0.5) * 2000 * size
    if kind == "number":
        if rng.chance(0.5):
            return rng.randint(-1000 * size, 1000 * size)
        return (rng.random() - 0.5) * 2000 * size
    if kind == "string":
        return _alnum(rng, rng.randint(0, size))
    if kind == "keyword":
        return Keyword("", "k" + _alnum(rng, rng.randint(1, max(size // 2, 1))))
    if kind == "vector":
        return [rng.randint(0, 9) for _ in range(rng.randint(0, size))]
    if kind == "map":
        return {
            Keyword("", "k" + str(i)): rng.randint(0, 9)
            for i in range(rng.randint(0, size))
        }
    raise NoGeneratorError(f"type-gen cannot produce kind {kind!r}")


def _random_date(rng: Rng) -> datetime.date:
    year = rng.randint(2000, 2099)
    month = rng.randint(1, 12)
    day = rng.randint(1, _days_in(year, month))
    return datetime.date(year, month, day)


def _days_in(year: int, month: int) -> int:
    return calendar.monthrange(year, month)[1]


def _gen_iso_date(params: Value, rng: Rng, size: int) -> Value:
    return _random_date(rng).isoformat()


def _offset(rng: Rng) -> str:
    sign = rng.choice("+-")
    return f"{sign}{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}"


def _gen_iso_datetime_no_ms(params: Value, rng: Rng, size: int) -> Value:
    date = _random_date(rng)
    return (
        f"{date.isoformat()}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}"
        f":{rng.randint(0, 59):02d}{_offset(rng)}"
    )


def _gen_iso_datetime_ms(params: Value, rng: Rng, size: int) -> Value:
    date = _random_date(rng)
    return (
        f"{date.isoformat()}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}"
        f":{rng.randint(0, 59):02d}.{rng.randint(0, 999):03d}{_offset(rng)}"
    )


def _gen_even(params: Value, rng: Rng, size: int) -> Value:
    return rng.randint(-1000 * size, 1000 * size) * 2


def _gen_positive_number(params: Value, rng: Rng, size: int) -> Value:
    if rng.chance(0.5):
        return rng.randint(1, 1000 * size)
    return rng.random() * 1000 * size + 1e-9


def _gen_non_blank_string(params: Value, rng: Rng, size: int) -> Value:
    return _alnum(rng, rng.randint(1, max(size, 1)))


_BUILTIN_GEN_DEFS = [
    GeneratorDef("choose", _gen_choose),
    GeneratorDef("regex-sampler", _gen_regex),
    GeneratorDef("int-range-gen", _gen_int_range),
    GeneratorDef("number-range-gen", _gen_number_range),
    GeneratorDef("string-length-gen", _gen_string_length),
    GeneratorDef("type-gen", _gen_type),
    GeneratorDef("iso-date-gen", _gen_iso_date),
    GeneratorDef("iso-datetime-no-ms-gen", _gen_iso_datetime_no_ms),
    GeneratorDef("iso-datetime-ms-gen", _gen_iso_datetime_ms),
    GeneratorDef("even-gen", _gen_even),
    GeneratorDef("positive-number-gen", _gen_positive_number),
    GeneratorDef("non-blank-string-gen", _gen_non_blank_string),
]

BUILTIN_GENERATORS = GeneratorLibrary({d.name: d for d in _BUILTIN_GEN_DEFS})
