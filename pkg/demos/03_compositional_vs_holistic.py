"""
Compositional versus holistic languages
=======================================

TopSim correlates attribute edit distances with message edit distances over
all sample pairs.  A language with one dedicated position per attribute
scores a perfect 1.0; a language that assigns every combination an unrelated
random message scores near zero, and its rule table collapses: either into a
single empty rule (nothing is constant within any group) or, when each
message names a single concept, into full-width one-rule-per-value
combinations.
"""

from emlang import (
    concept_schema,
    extract_rules,
    gen_compositional,
    gen_holistic,
    moprd_schema,
    topsim,
)

schema = moprd_schema()

compositional, truth = gen_compositional(schema, message_length=10, vocab_size=20, seed=7)
print("compositional:", topsim(compositional))
print("  ground-truth rules:", truth.rule_count)
print("  recovered exactly:", extract_rules(compositional) == truth)
print()

holistic = gen_holistic(schema, message_length=10, vocab_size=20, seed=20240)
print("holistic:      ", topsim(holistic))
table = extract_rules(holistic)
print("  rules found:", table.rule_count, "(the lone empty rule)")
print("  globally constant positions:", table.global_constants.positions)
print()

# One concept per message: each value groups a single sample, so every rule
# becomes a combination over all eight variable positions.
concepts = gen_holistic(concept_schema(100), message_length=10, vocab_size=20, seed=20240)
concept_table = extract_rules(concepts)
widths = {len(rule.pattern.positions) for rule in concept_table.rules}
print("concept-per-message: rules =", concept_table.rule_count, "pattern widths =", widths)
