"""Timing the five message-processing scenarios.

Validation and conformance run in tens of microseconds on the example
report; generation costs more (it builds a fresh message field by field)
but stays comfortably interactive. Numbers vary with hardware; run the
`regspec bench` command for the full warmed-up version.
"""

from regspec.bench import format_table, run_benchmarks
from regspec import mmsr

registry, _ = mmsr.load_bundle()
results = run_benchmarks(
    registry,
    mmsr.SECURED_REPORT,
    mmsr.canonical_example(),
    mmsr.predicate_library(),
    iterations=300,
    warmup=100,
)
print(format_table(results))

validation = next(r for r in results if r.name == "Validation")
print(f"\nthat is {10.0 / validation.mean_s:,.0f} validations per 10 seconds")
