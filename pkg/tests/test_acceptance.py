"""The acceptance gate: one test per criterion, run at full scale.

Each test prints its measured numbers so a reviewer can see margins, and
conftest.py prints a one-line PASS/FAIL per criterion in the summary.
"""

import itertools
import json
import time

import pytest
from click.testing import CliRunner

from regspec import (
    And,
    CollOf,
    Combinator,
    Conformed,
    GenContext,
    Invalid,
    Keys,
    Keyword,
    Or,
    Pred,
    Ref,
    Registry,
    UnknownSpecError,
    conform,
    explain,
    generate,
    parse,
    render,
    soundness_check,
    validate,
)
from regspec import mmsr
from regspec.bench import run_benchmarks
from regspec.cli import main as cli_main
from regspec.rng import Rng

from randstructs import random_document, random_registry, random_value

LIB = mmsr.predicate_library()


@pytest.fixture(scope="module")
def bundle():
    return mmsr.load_bundle()


# --- criterion: the register/validate/compose/conform/generate walkthrough -------


def test_core_walkthrough():
    fruit = Keyword("demo", "fruit")
    veg = Keyword("demo", "veg")
    fruit_or_veg = Keyword("demo", "fruit-or-veg")
    registry = (
        Registry()
        .register(fruit, Pred("one-of", ["apple", "pear", "cherry"]))
        .register(veg, Pred("one-of", ["carrot", "cucumber"]))
        .register(fruit_or_veg, Or([(fruit, Ref(fruit)), (veg, Ref(veg))]))
    )
    assert validate(registry, fruit, "apple") is True
    assert conform(registry, fruit_or_veg, "carrot") == Conformed([veg, "carrot"])
    outputs = {generate(registry, veg, GenContext(seed)) for seed in range(64)}
    assert outputs == {"carrot", "cucumber"}
    for seed in range(64):
        assert generate(registry, veg, GenContext(seed)) in {"carrot", "cucumber"}


# --- criterion: trade-date suite -------------------------------------------------

VALID_FORMS = {
    "2017-04-10T09:30:00+01:00": "valid-date-time-no-ms",
    "2017-04-10T09:30:00.000+01:00": "valid-date-time-ms",
    "2017-04-10": "valid-date",
}

# per-form corruptions; each names the atomic spec whose failure it must explain
CORRUPTED = [
    # ms form mutations
    ("2017-04-10T09:30:00.000", "valid-date-time-ms"),  # missing offset
    ("2017-04-10T09:30:00.00+01:00", "valid-date-time-ms"),  # 2 fractional digits
    ("2017-04-10T09:30:00.0000+01:00", "valid-date-time-ms"),  # 4 fractional digits
    ("2017-13-10T09:30:00.000+01:00", "valid-date-time-ms"),  # month 13
    ("2017-02-30T09:30:00.000+01:00", "valid-date-time-ms"),  # 30 February
    ("2017-04-10t09:30:00.000+01:00", "valid-date-time-ms"),  # lowercase t
    # no-ms form mutations
    ("2017-04-10T09:30:00", "valid-date-time-no-ms"),  # missing offset
    ("2017-13-10T09:30:00+01:00", "valid-date-time-no-ms"),  # month 13
    ("2017-02-30T09:30:00+01:00", "valid-date-time-no-ms"),  # 30 February
    ("2017-04-10t09:30:00+01:00", "valid-date-time-no-ms"),  # lowercase t
    ("2017-04-10T09:30:00+24:00", "valid-date-time-no-ms"),  # offset hour 24
    ("2017-04-10T24:30:00+01:00", "valid-date-time-no-ms"),  # hour 24
    # date form mutations
    ("2017-13-40", "valid-date"),  # month 13
    ("2017-02-30", "valid-date"),  # 30 February
    ("2017-4-10", "valid-date"),  # unpadded month
]


def test_trade_date_suite(bundle):
    registry, _ = bundle
    for text, tag in VALID_FORMS.items():
        assert validate(registry, mmsr.TRADE_DATE, text, LIB), text
        result = conform(registry, mmsr.TRADE_DATE, text, LIB)
        assert result.tree == [Keyword("mmsr", tag), text]
    assert len(CORRUPTED) >= 12
    for text, derived_from in CORRUPTED:
        assert not validate(registry, mmsr.TRADE_DATE, text, LIB), text
        problems = explain(registry, mmsr.TRADE_DATE, text, LIB)
        assert len(problems) == 3, text  # every branch rejects and reports
        endings = {p.via[-1] for p in problems}
        assert Keyword("mmsr", derived_from) in endings, text
        assert endings == {
            Keyword("mmsr", "valid-date-time-ms"),
            Keyword("mmsr", "valid-date-time-no-ms"),
            Keyword("mmsr", "valid-date"),
        }
    print(f"\ntrade-date suite: 3 accepted forms, {len(CORRUPTED)} corrupted variants rejected")


# --- criterion: equivalence law over 10k random pairs ------------------------------


def test_equivalence_law_10k_pairs():
    started = time.perf_counter()
    pairs = 0
    for registry_seed in range(500):
        rng = Rng(registry_seed * 2654435761 + 17)
        registry, names = random_registry(rng)
        for _ in range(20):
            name = rng.choice(names)
            value = random_value(rng, key_pool=names)
            ok = validate(registry, name, value)
            result = conform(registry, name, value)
            problems = explain(registry, name, value)
            assert ok == isinstance(result, Conformed)
            assert ok == (problems == [])
            if not ok:
                assert isinstance(result, Invalid) and len(result.problems) >= 1
            pairs += 1
    elapsed = time.perf_counter() - started
    print(f"\nequivalence law: {pairs} pairs in {elapsed:.2f}s")
    assert pairs >= 10_000
    assert elapsed < 60.0


# --- criterion: gen->validate soundness over the bundle ----------------------------


def test_gen_validate_soundness(bundle):
    registry, _ = bundle
    started = time.perf_counter()
    checked = 0
    for name in registry.names():
        for seed in range(1000):
            value = generate(registry, name, GenContext(seed=seed, size=4), LIB)
            assert validate(registry, name, value, LIB), (name.text, seed)
            checked += 1
    elapsed = time.perf_counter() - started
    print(f"\ngen->validate: {checked} generations across {len(registry)} specs "
          f"in {elapsed:.2f}s, all valid")
    assert checked == 1000 * len(registry)


# --- criterion: CNL round-trips ------------------------------------------------------


def test_cnl_round_trip():
    for seed in range(1000):
        doc = random_document(Rng(seed * 48271 + 3))
        assert parse(render(doc)) == doc, seed
    shipped = mmsr.cnl_path().read_text(encoding="utf-8")
    assert render(parse(shipped)) == shipped
    print("\ncnl round-trip: 1000 random documents + shipped file")


# --- criterion: mutation kill-rate ----------------------------------------------------


def _non_identity_permutations(items):
    return [p for p in itertools.permutations(items) if list(p) != list(items)]


def _rebuild(form, combinator, children):
    """A compound form of the given kind over named children."""
    refs = [Ref(c) for c in children]
    if combinator is Combinator.OR:
        return Or(list(zip(children, refs)))
    if combinator is Combinator.AND:
        return And(refs)
    if combinator is Combinator.KEYS:
        return Keys(children)
    return CollOf(refs[0])


def build_mutants(registry, doc):
    """Every single-edit structural mutation visible at CNL granularity."""
    mutants = []  # (description, mutated registry)
    for name in registry.names():
        mutants.append((f"delete {name.text}", registry.without(name)))
    for el in doc.elements:
        if el.combinator is None:
            continue
        children = list(el.children)
        for target in (Combinator.OR, Combinator.AND, Combinator.KEYS, Combinator.COLL_OF):
            if target is el.combinator:
                continue
            if target is Combinator.COLL_OF and len(children) != 1:
                continue
            mutants.append((
                f"swap {el.name.text} {el.combinator.value}->{target.value}",
                registry.register(el.name, _rebuild(None, target, children)),
            ))
        if len(children) > 1:
            for index in range(len(children)):
                remaining = children[:index] + children[index + 1:]
                mutants.append((
                    f"drop child {children[index].text} of {el.name.text}",
                    registry.register(el.name, _rebuild(None, el.combinator, remaining)),
                ))
        if el.combinator in (Combinator.OR, Combinator.AND) and len(children) > 1:
            for perm in _non_identity_permutations(children):
                mutants.append((
                    f"reorder {el.name.text} to {[c.name for c in perm]}",
                    registry.register(el.name, _rebuild(None, el.combinator, list(perm))),
                ))
    return mutants


def test_soundness_mutation_kill_rate(bundle):
    registry, root = bundle
    doc = mmsr.load_cnl()
    assert soundness_check(doc, registry, expected_root=root) == []
    mutants = build_mutants(registry, doc)
    assert len(mutants) >= 50
    survivors = []
    for description, mutated in mutants:
        findings = soundness_check(doc, mutated, expected_root=root)
        if not findings:
            survivors.append(description)
    print(f"\nmutation kill-rate: {len(mutants) - len(survivors)}/{len(mutants)} killed")
    assert survivors == [], survivors


# --- criterion: performance thresholds ---------------------------------------------------


def test_performance_thresholds(bundle):
    registry, _ = bundle
    message = mmsr.canonical_example()
    results = run_benchmarks(
        registry, mmsr.SECURED_REPORT, message, LIB,
        iterations=300, warmup=100,
    )
    by_name = {r.name: r for r in results}
    validation = by_name["Validation"].mean_s
    generation = by_name["Generation"].mean_s
    print("\nperformance:")
    for r in results:
        print(f"  {r.name}: mean {r.mean_s * 1e6:.1f} us, stdev {r.stdev_s * 1e6:.1f} us")
    assert validation <= 1e-3, f"validation mean {validation * 1e3:.3f} ms > 1 ms"
    assert generation <= 50e-3, f"generation mean {generation * 1e3:.3f} ms > 50 ms"
    assert validation < generation
    throughput_per_10s = 10.0 / validation
    print(f"  throughput: {throughput_per_10s:,.0f} validations / 10 s")
    assert throughput_per_10s >= 100 * 100  # target rate with 100x headroom


# --- criterion: CLI exit-code contract -----------------------------------------------------


def test_cli_exit_code_contract(tmp_path):
    runner = CliRunner()
    ruleset = str(mmsr.ruleset_path())
    valid = str(mmsr.example_message_path())

    result = runner.invoke(
        cli_main,
        ["validate", "--ruleset", ruleset, "--spec", "::mmsr/secured-report", "--in", valid],
        catch_exceptions=False,
    )
    assert result.exit_code == 0

    invalid_inputs = sorted(
        p for p in mmsr.invalid_messages_dir().glob("*.json")
        if not p.name.endswith(".expected.json")
    )
    assert len(invalid_inputs) >= 3
    for path in invalid_inputs:
        result = runner.invoke(
            cli_main,
            ["validate", "--ruleset", ruleset, "--spec", "::mmsr/secured-report",
             "--in", str(path)],
            catch_exceptions=False,
        )
        assert result.exit_code == 1, path.name

    malformed = tmp_path / "malformed.json"
    malformed.write_text("{this is not json")
    cases_exit_2 = [
        ["validate", "--ruleset", ruleset, "--in", str(malformed)],
        ["validate", "--ruleset", ruleset, "--spec", "::mmsr/absent", "--in", valid],
        ["validate", "--ruleset", str(tmp_path / "missing.json"), "--in", valid],
    ]
    for args in cases_exit_2:
        result = runner.invoke(cli_main, args, catch_exceptions=False)
        assert result.exit_code == 2, args
    result = runner.invoke(cli_main, ["validate", "--in", valid], env={"REGSPEC_RULESET": None})
    assert result.exit_code == 2
    print("\ncli contract: exit 0 (valid), 1 x"
          f"{len(invalid_inputs)} (invalid), 2 x{len(cases_exit_2) + 1} (usage/io)")
