"""
Extracting semantic rules from a message corpus
===============================================

We handcraft a language over the two-shapes schema: ten-token messages in
which seven positions never change and positions 2, 8, 9 encode the fill
status of the shapes.  The detector groups samples by each property value,
intersects the group's messages position by position, removes the
corpus-wide constants, and reports the surviving position-token
combinations together with the property values that produced them.
"""

from emlang import build_corpus, extract_rules, moprd_schema, render_rule_table

schema = moprd_schema()
FILLED = {"■", "●"}
EMPTY_ORDER = ["□", "○", "×"]


def encode(s1, s2):
    both_filled = s1 in FILLED and s2 in FILLED
    x2 = 10 if both_filled else 12
    x8 = 11 if (s1, s2) in {("○", "■"), ("■", "○")} else 10
    if s1 in FILLED or s2 in FILLED:
        x9 = 10
    else:
        x9 = 14 if (EMPTY_ORDER.index(s1) + EMPTY_ORDER.index(s2)) % 2 == 0 else 15
    return (13, 12, x2, 10, 10, 10, 10, 10, x8, x9)


records = []
index = 0
for s1 in schema.domain("shape1"):
    for s2 in schema.domain("shape2"):
        for rel in schema.domain("relationship"):
            attrs = {"shape1": s1, "shape2": s2, "relationship": rel}
            records.append((f"{index:02d}", attrs, encode(s1, s2), 1))
            index += 1

corpus = build_corpus(schema, vocab_size=16, message_length=10, records=records)
table = extract_rules(corpus, threshold=0.15)

print(render_rule_table(table, "markdown", schema=schema))
# The empty-pattern row at the bottom is the detector saying: no position
# carries the relationship; those samples share no marker beyond the skeleton.
