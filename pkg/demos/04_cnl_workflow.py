"""The controlled-natural-language loop for domain experts.

The CNL is a fixed-template English abstraction of the contract tree. A
document can be written by hand or projected from a registry; the
soundness checker proves every structural claim it makes against the
executable contracts, and validation failures trace back to sentences.
"""

from regspec import (
    abstract,
    explain,
    parse,
    render,
    soundness_check,
    traceback,
)
from regspec import mmsr

registry, root = mmsr.load_bundle()
lib = mmsr.predicate_library()

# project the executable contracts onto their CNL abstraction
doc = abstract(registry, root)
print(render(doc))

# the abstraction is sound by construction
print("findings against own registry:", soundness_check(doc, registry, expected_root=root))

# a domain expert writes (or edits) the same language by hand
handwritten = parse(
    "namespace: mmsr\n"
    "The contract ::valid-date must hold.\n"
    'source: "YYYY-MM-DD"\n'
    "The contract ::trade-date holds, if at least one of the contracts "
    "::valid-date holds.\n"
)
# ... but this document under-claims trade-date's branches: the checker says how
for finding in soundness_check(handwritten, registry):
    print(f"{finding.severity}: {finding.message}")

# validation failures are pinpointed to CNL sentences with their regulation quotes
problems = explain(registry, mmsr.TRADE_DATE, "2017-13-40", lib)
for entry in traceback(doc, problems):
    print(f"\nfailed: {entry.sentence}")
    if entry.source_text:
        print(f"  regulation: {entry.source_text}")
