"""The date-time rules of the shipped money-market ruleset.

A trade date must be in one of three ISO 8601 forms. The ruleset encodes
each form as its own atomic contract and composes them with `or`, so a
failing date is explained once per form, each explanation naming the
contract that rejected it.
"""

from regspec import conform, explain, validate
from regspec import mmsr

registry, root = mmsr.load_bundle()
lib = mmsr.predicate_library()

forms = [
    "2017-04-10",                        # date only
    "2017-04-10T09:30:00+01:00",         # date-time
    "2017-04-10T09:30:00.000+01:00",     # date-time with milliseconds
]
for text in forms:
    result = conform(registry, mmsr.TRADE_DATE, text, lib)
    print(f"{text!r:42} -> matched branch {result.tree[0].text}")

# calendar validity is enforced, not just shape
for text in ["2017-02-29", "2017-13-40", "2017-04-10T09:30:00.00+01:00"]:
    print(f"\n{text!r} valid: {validate(registry, mmsr.TRADE_DATE, text, lib)}")
    for problem in explain(registry, mmsr.TRADE_DATE, text, lib):
        print(f"  rejected by {problem.via[-1].text}: {problem.pred}")

# the same rules guard the whole report: one bad field, one precise problem
message = dict(mmsr.canonical_example())
message[mmsr.TRADE_DATE] = "10/04/2017"
print("\nreport with slashed date:")
for problem in explain(registry, mmsr.SECURED_REPORT, message, lib):
    print(f"  at {problem.in_path[0].text}: {problem.pred}")
