import re

import pytest

from regspec import (
    And,
    BUILTIN_GENERATORS,
    BUILTINS,
    CollOf,
    DepthExceededError,
    DuplicateGeneratorError,
    GenContext,
    GeneratorDef,
    Keys,
    Keyword,
    NoGeneratorError,
    Or,
    Pred,
    Ref,
    Registry,
    RetryExhaustedError,
    WithGen,
    generate,
    register_generator,
    sample,
    validate,
)
from regspec.regexgen import sample_regex
from regspec.rng import Rng

VEG = Keyword("demo", "veg")


@pytest.fixture
def veg_registry():
    return Registry().register(VEG, Pred("one-of", ["carrot", "cucumber"]))


def test_generate_one_of(veg_registry):
    for seed in range(20):
        assert generate(veg_registry, VEG, GenContext(seed)) in {"carrot", "cucumber"}


def test_generate_deterministic(veg_registry):
    ctx = GenContext(seed=42, size=5)
    assert generate(veg_registry, VEG, ctx) == generate(veg_registry, VEG, ctx)


def test_or_branch_coverage(veg_registry):
    # over 1000 seeds both branches of a 2-way or must appear
    a, b, either = Keyword("t", "a"), Keyword("t", "b"), Keyword("t", "either")
    reg = (
        Registry()
        .register(a, Pred("one-of", ["left"]))
        .register(b, Pred("one-of", ["right"]))
        .register(either, Or([(a, Ref(a)), (b, Ref(b))]))
    )
    seen = {generate(reg, either, GenContext(seed)) for seed in range(1000)}
    assert seen == {"left", "right"}


def test_sample_counts_and_determinism(veg_registry):
    ctx = GenContext(seed=1)
    values = sample(veg_registry, VEG, 4, ctx)
    assert len(values) == 4
    assert all(v in {"carrot", "cucumber"} for v in values)
    assert sample(veg_registry, VEG, 4, ctx) == values
    assert sample(veg_registry, VEG, 0, ctx) == []


def test_sample_items_vary(veg_registry):
    values = sample(veg_registry, VEG, 200, GenContext(seed=7))
    assert {"carrot", "cucumber"} == set(values)


def test_and_generates_from_first_child_filtered():
    k = Keyword("t", "k")
    reg = Registry().register(k, And([Pred("type-is", "int"), Pred("even")]))
    for seed in range(50):
        value = generate(reg, k, GenContext(seed))
        assert isinstance(value, int) and value % 2 == 0


def test_and_retry_exhausted_is_loud():
    k = Keyword("t", "k")
    reg = Registry().register(k, And([Pred("one-of", ["a"]), Pred("one-of", ["b"])]))
    with pytest.raises(RetryExhaustedError):
        generate(reg, k, GenContext(seed=1))


def test_keys_required_always_optional_sometimes():
    name, flag, rec = Keyword("t", "name"), Keyword("t", "flag"), Keyword("t", "rec")
    reg = (
        Registry()
        .register(name, Pred("non-blank-string"))
        .register(flag, Pred("one-of", ["Y", "N"]))
        .register(rec, Keys([name], [flag]))
    )
    with_flag = 0
    for seed in range(400):
        value = generate(reg, rec, GenContext(seed))
        assert name in value
        if flag in value:
            with_flag += 1
        assert validate(reg, rec, value)
    assert 100 < with_flag < 300  # ~1/2 inclusion


def test_coll_of_lengths_respect_bounds_and_size():
    item, coll = Keyword("t", "item"), Keyword("t", "coll")
    reg = (
        Registry()
        .register(item, Pred("even"))
        .register(coll, CollOf(Ref(item), 2, 5))
    )
    lengths = {len(generate(reg, coll, GenContext(seed))) for seed in range(200)}
    assert lengths == {2, 3, 4, 5}
    unbounded = Keyword("t", "unbounded")
    reg = reg.register(unbounded, CollOf(Ref(item)))
    lengths = {len(generate(reg, unbounded, GenContext(seed, size=3))) for seed in range(200)}
    assert lengths == {0, 1, 2, 3}


def test_with_gen_overrides():
    k = Keyword("t", "k")
    reg = Registry().register(k, WithGen(Pred("non-blank-string"), "choose", ["fixed"]))
    assert generate(reg, k, GenContext(seed=9)) == "fixed"


def test_pred_without_generator_fails_loud():
    from regspec import PredicateDef, PredicateLibrary

    lib = BUILTINS.register(
        PredicateDef("ungeneratable", "none", lambda p, v: True, "anything")
    )
    k = Keyword("t", "k")
    reg = Registry().register(k, Pred("ungeneratable"))
    with pytest.raises(NoGeneratorError):
        generate(reg, k, GenContext(seed=1), lib)


def test_register_generator():
    gens = register_generator(
        BUILTIN_GENERATORS, GeneratorDef("always-seven", lambda p, rng, size: 7)
    )
    k = Keyword("t", "k")
    reg = Registry().register(k, WithGen(Pred("type-is", "int"), "always-seven"))
    assert generate(reg, k, GenContext(seed=1), gens=gens) == 7
    with pytest.raises(DuplicateGeneratorError):
        register_generator(gens, GeneratorDef("always-seven", lambda p, rng, size: 8))


def test_recursion_depth_exceeded():
    tree = Keyword("t", "tree")
    reg = Registry().register(tree, CollOf(Ref(tree), 1, 2))  # never bottoms out
    with pytest.raises(DepthExceededError):
        generate(reg, tree, GenContext(seed=1, max_depth=8))


def test_iso_generators_satisfy_their_predicates():
    for pred_name in ("iso-date", "iso-datetime-no-ms", "iso-datetime-ms"):
        k = Keyword("t", pred_name)
        reg = Registry().register(k, Pred(pred_name))
        for seed in range(200):
            value = generate(reg, k, GenContext(seed))
            assert validate(reg, k, value), (pred_name, value)


def test_builtin_generators_satisfy_their_predicates():
    cases = [
        Pred("int-range", [5, 9]),
        Pred("number-range", [-1.0, 1.0]),
        Pred("string-length", [2, 4]),
        Pred("type-is", "string"),
        Pred("type-is", "number"),
        Pred("even"),
        Pred("positive-number"),
        Pred("non-blank-string"),
        Pred("string-regex", "[A-Z]{2}[0-9]{3}"),
    ]
    for index, form in enumerate(cases):
        k = Keyword("t", f"case-{index}")
        reg = Registry().register(k, form)
        for seed in range(100):
            value = generate(reg, k, GenContext(seed))
            assert validate(reg, k, value), (form, value)


# --- regex sampler -------------------------------------------------------------


@pytest.mark.parametrize(
    "pattern",
    [
        "[A-Z0-9]{18}[0-9]{2}",
        "[A-Z]{2}[A-Z0-9]{9}[0-9]",
        "[A-Z0-9]{1,52}",
        "a|bc|def",
        "x?y+z*",
        r"\d{3}-\d{2}",
        "(ab|cd){2}e",
        "[^0-9]{4}",
    ],
)
def test_regex_sampler_outputs_match(pattern):
    rng = Rng(123)
    for _ in range(100):
        out = sample_regex(pattern, rng, size=6)
        assert re.fullmatch(pattern, out), (pattern, out)


def test_regex_sampler_rejects_unsupported():
    with pytest.raises(ValueError):
        sample_regex("a(?=b)", Rng(1))
    with pytest.raises(ValueError):
        sample_regex("(a", Rng(1))


# --- rng ------------------------------------------------------------------------


def test_rng_is_reproducible_and_splits():
    a, b = Rng(99), Rng(99)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    child_a, child_b = a.split(), b.split()
    assert child_a.next_u64() == child_b.next_u64()
    # splitting advances the parent identically
    assert a.next_u64() == b.next_u64()


def test_rng_known_values():
    # splitmix64 stream for seed 0, frozen after hand-stepping the published
    # algorithm (state += golden gamma; two xor-multiply mixes; final xor);
    # pins cross-platform reproducibility of every generated corpus
    rng = Rng(0)
    assert rng.next_u64() == 0xC329812D1D820396
    assert rng.next_u64() == 0x777A8E89A21F7D3F
    assert rng.next_u64() == 0x98422BF551912D1F


def test_rng_randint_bounds():
    rng = Rng(5)
    draws = [rng.randint(3, 7) for _ in range(500)]
    assert set(draws) == {3, 4, 5, 6, 7}


def test_gen_context_validation():
    with pytest.raises(ValueError):
        GenContext(seed=1, size=0)
    with pytest.raises(ValueError):
        GenContext(seed=1, max_retries=0)
