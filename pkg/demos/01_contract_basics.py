"""Registering, validating, composing and conforming contracts.

The smallest possible tour: two enumerated contracts, one tagged-union
composition, and the four ways to ask questions about a value.
"""

from regspec import (
    Conformed,
    Keyword,
    Or,
    Pred,
    Ref,
    Registry,
    conform,
    explain,
    validate,
)

# contracts live in a registry under namespaced keywords
fruit = Keyword("demo", "fruit")
veg = Keyword("demo", "veg")
fruit_or_veg = Keyword("demo", "fruit-or-veg")

registry = (
    Registry()
    .register(fruit, Pred("one-of", ["apple", "pear", "cherry"]))
    .register(veg, Pred("one-of", ["carrot", "cucumber"]))
    # composition: a tagged union over the two registered contracts
    .register(fruit_or_veg, Or([(fruit, Ref(fruit)), (veg, Ref(veg))]))
)

# validating answers yes or no
print("apple is a fruit:", validate(registry, fruit, "apple"))
print("carrot is a fruit:", validate(registry, fruit, "carrot"))

# conforming additionally tells WHICH branch matched, as [tag, value]
result = conform(registry, fruit_or_veg, "carrot")
assert isinstance(result, Conformed)
print("carrot conforms as:", result.tree)

# explaining a failure gives path-addressed problems
for problem in explain(registry, fruit_or_veg, 42):
    print("problem:", problem.to_json())

# registries are immutable values: re-registration returns a new registry,
# so you can refine contracts iteratively without touching shared state
refined = registry.register(veg, Pred("one-of", ["carrot", "cucumber", "leek"]))
print("leek in old registry:", validate(registry, veg, "leek"))
print("leek in new registry:", validate(refined, veg, "leek"))
