"""Timing harness for the five message-processing scenarios.

Measures validation of the example message, conformance of it, generation
of a fresh message, and the two generate-then-check combinations. Each
scenario runs a warmup phase first, then the timed iterations; mean and
sample standard deviation are reported. Absolute numbers are hardware-
dependent; only orderings and coarse thresholds are asserted anywhere.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from .datagen import BUILTIN_GENERATORS, GenContext, GeneratorLibrary, generate
from .engine import conform, validate
from .keywords import Keyword
from .predicates import PredicateLibrary
from .registry import Registry
from .values import Value

SCENARIOS = (
    "Validation",
    "Conform",
    "Generation",
    "Generation+Validation",
    "Generation+Conformance",
)


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    iterations: int
    mean_s: float
    stdev_s: float

    def to_json(self) -> dict:
        return {
            "scenario": self.name,
            "iterations": self.iterations,
            "mean-us": self.mean_s * 1e6,
            "stdev-us": self.stdev_s * 1e6,
        }


def run_benchmarks(
    registry: Registry,
    spec: Keyword,
    message: Value,
    lib: PredicateLibrary,
    gens: GeneratorLibrary | None = None,
    iterations: int = 1000,
    warmup: int = 1000,
    size: int = 8,
) -> list[ScenarioResult]:
    gens = gens if gens is not None else BUILTIN_GENERATORS

    def ctx(seed: int) -> GenContext:
        return GenContext(seed=seed, size=size)

    scenarios = {
        "Validation": lambda i: validate(registry, spec, message, lib),
        "Conform": lambda i: conform(registry, spec, message, lib),
        "Generation": lambda i: generate(registry, spec, ctx(i), lib, gens),
        "Generation+Validation": lambda i: validate(
            registry, spec, generate(registry, spec, ctx(i), lib, gens), lib
        ),
        "Generation+Conformance": lambda i: conform(
            registry, spec, generate(registry, spec, ctx(i), lib, gens), lib
        ),
    }
    return [
        _run_one(name, scenarios[name], iterations, warmup) for name in SCENARIOS
    ]


def _run_one(name: str, fn, iterations: int, warmup: int) -> ScenarioResult:
    for i in range(warmup):
        fn(i)
    timings = []
    for i in range(iterations):
        start = time.perf_counter()
        fn(i)
        timings.append(time.perf_counter() - start)
    mean = statistics.fmean(timings)
    stdev = statistics.stdev(timings) if len(timings) > 1 else 0.0
    return ScenarioResult(name, iterations, mean, stdev)


def format_table(results: list[ScenarioResult]) -> str:
    """Aligned text table, times in microseconds."""
    rows = [("Scenario", "Exec. Mean", "Std-Deviation", "Iterations")]
    for r in results:
        rows.append(
            (r.name, _us(r.mean_s), _us(r.stdev_s), str(r.iterations))
        )
    widths = [max(len(row[col]) for row in rows) for col in range(4)]
    lines = []
    for index, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[col]) for col, cell in enumerate(row)).rstrip())
        if index == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _us(seconds: float) -> str:
    return f"{seconds * 1e6:.3f} us"
