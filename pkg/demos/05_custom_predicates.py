"""Extending the predicate library without touching the engine.

Any function from (params, value) to bool is a predicate. The bundle ships
`lei-checksum` this way: ISO 17442 structure plus the mod 97-10 check
digit scheme, stricter than the shape-only regex the ruleset uses.
"""

from regspec import Keyword, Pred, PredicateDef, Registry, explain, validate
from regspec import mmsr

lib = mmsr.predicate_library()  # built-ins + lei-checksum

strict_lei = Keyword("demo", "strict-lei")
registry = Registry().register(strict_lei, Pred("lei-checksum"))

print("real LEI:     ", validate(registry, strict_lei, "5493000IBP32UQZ0KL24", lib))
print("tampered LEI: ", validate(registry, strict_lei, "5493000IBP32UQZ0KL25", lib))

# regex alone would accept the tampered one; the checksum predicate explains
for problem in explain(registry, strict_lei, "5493000IBP32UQZ0KL25", lib):
    print("problem:", problem.pred)

# registering your own is one dataclass
def is_iban_like(params, value):
    return isinstance(value, str) and 15 <= len(value) <= 34 and value[:2].isalpha()

lib = lib.register(
    PredicateDef("iban-shape", "none", is_iban_like, "looks like an IBAN")
)
iban = Keyword("demo", "iban")
registry = registry.register(iban, Pred("iban-shape"))
print("iban shape:   ", validate(registry, iban, "NL91ABNA0417164300", lib))
