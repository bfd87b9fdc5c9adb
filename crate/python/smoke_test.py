#!/usr/bin/env python3
"""Smoke test for the `ruleblame` extension module.

Build the module first, then run this script from anywhere:

    cargo build -p ruleblame-python
    python3 python/smoke_test.py

Set RULEBLAME_SO to point at a specific shared object if it lives outside
the workspace target directory.
"""

import importlib.machinery
import importlib.util
import os
import pathlib
import sys
from fractions import Fraction


def load_module():
    override = os.environ.get("RULEBLAME_SO")
    root = pathlib.Path(__file__).resolve().parents[1]
    names = ("libruleblame_python.so", "libruleblame_python.dylib")
    candidates = (
        [pathlib.Path(override)]
        if override
        else [
            root / "target" / profile / name
            for profile in ("debug", "release")
            for name in names
        ]
    )
    for path in candidates:
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("ruleblame", str(path))
            spec = importlib.util.spec_from_loader("ruleblame", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("extension not found - run `cargo build -p ruleblame-python` first")


rb = load_module()

B1_PRIME = """
customer.
mentalCondition.
platinumCustomer.
customer -> contractuallyCapable.
mentalCondition -> !contractuallyCapable.
mentalCondition -> !platinumCustomer.
"""

TOP_RULE = "mentalCondition -> !platinumCustomer."

# Registry introspection.
assert rb.measure_names() == [
    "drastic",
    "mi",
    "problematic",
    "contension",
    "rb-drastic",
    "rb-mi",
    "rb-problematic",
    "rb-contension",
]
assert "rule-emphasis" in rb.postulate_names()

# Parsing, canonical text, and the data model.
base = rb.RuleBase(B1_PRIME)
assert len(base) == 6
assert len(base.facts()) == 3
assert len(base.rules()) == 3
assert base.signature() == [
    "contractuallyCapable",
    "customer",
    "mentalCondition",
    "platinumCustomer",
]
assert not base.is_consistent()
assert base == rb.RuleBase.parse(base.to_text())
assert "contractuallyCapable" in " ".join(base.minimal_model())

# Conflict listings.
assert len(base.mi()) == 2
assert len(base.mi_without_facts()) == 2
assert base.free_formulas() == []

# The eight measures, exactly.
expected = {
    "drastic": Fraction(1),
    "mi": Fraction(2),
    "problematic": Fraction(6),
    "contension": Fraction(1),
    "rb-drastic": Fraction(1),
    "rb-mi": Fraction(2),
    "rb-problematic": Fraction(3),
    "rb-contension": Fraction(1),
}
for name, value in expected.items():
    got = base.measure(name)
    assert got == value, f"{name}: {got} != {value}"
    assert isinstance(got, Fraction)

# Shapley analysis of the worked example.
classical = dict(base.shapley("rb-drastic"))
assert classical["mentalCondition."] == Fraction(5, 12)
assert classical[TOP_RULE] == Fraction(1, 6)
adjusted = dict(base.adjusted_shapley("rb-drastic"))
assert adjusted[TOP_RULE] == Fraction(5, 9)
assert adjusted["customer."] == 0
assert base.max_adjusted("rb-mi") == Fraction(8, 9)
ranking = base.ranking("rb-mi")
assert ranking[0] == (TOP_RULE, Fraction(8, 9))
assert [value for _, value in ranking[-3:]] == [0, 0, 0]

# The regression base: every element of the only rule-involving conflict
# carries 1/3, the isolated fact carries nothing.
b7 = rb.RuleBase("a. !a. a -> b. a -> !b.")
for element, value in b7.shapley("rb-mi"):
    assert value == (0 if element == "!a." else Fraction(1, 3)), element

# A fact can never outrank a rule, and a lone culpable rule takes the
# whole measure value.
b5 = rb.RuleBase("a. !b. a -> b.")
assert dict(b5.adjusted_shapley("rb-drastic"))["a -> b."] == 1
assert b5.max_adjusted("rb-drastic") == 1

# Editing returns new bases; the original is untouched.
grown = b5.with_element("c.")
assert len(grown) == 4 and len(b5) == 3
assert grown.without_element("c.") == b5

# Full report as plain Python objects.
report = base.report(classical_shapley=True)
assert report["schema"] == 1
assert report["measures"]["rb-problematic"]["fraction"] == "3"
assert report["input"]["consistent"] is False
assert len(report["shapley"]["rb-drastic"]["classical"]) == 6

# Seeded generation is deterministic and parseable.
first = rb.generate(seed=42, atoms=3, facts=2, rules=2)
second = rb.generate(seed=42, atoms=3, facts=2, rules=2)
assert first.to_text() == second.to_text()
assert rb.RuleBase(first.to_text()) == first

# Postulate campaigns.
clean = rb.check("rb-problematic", "RC", budget=60)
assert clean["violated"] == 0
assert clean["first_violation"] is None
witness = rb.check("rb-drastic", "RE", budget=1)
assert witness["violated"] == 1
assert witness["first_violation"]["index"] == 0
assert witness["first_violation"]["check"]["element"] == "b -> !b."

# Errors surface as ValueError.
for bad in (lambda: rb.RuleBase("a ->"), lambda: base.measure("bogus")):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

print("smoke test passed")
