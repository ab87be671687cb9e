"""Ground-truth language generators.

Each generator is a pure function of its arguments and seed and emits a
corpus in the standard format.  The compositional generator also returns the
exact rule table the detector must recover, built from the codebook's
semantics alone (it never scans the emitted messages), so it can serve as an
oracle for the extraction pipeline.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .corpus import AnnotatedCorpus, CorpusEntry, Message, build_corpus
from .errors import CapacityError
from .rules import Pattern, RuleTable, SemanticRule, canonical_evidence, rule_sort_key
from .schema import Attribute, AttributeSchema, Sample, eval_property, parse_schema

MOPRD_SCHEMA_DOCUMENT = """\
{
  "attributes": [
    {"name": "shape1", "values": ["□", "○", "■", "●", "×"]},
    {"name": "shape2", "values": ["□", "○", "■", "●", "×"]},
    {"name": "relationship", "values": ["→", "↗", "↑", "↖"]}
  ],
  "hyperattributes": [
    {"name": "fill1", "expr": "shape1 in {■, ●}"},
    {"name": "fill2", "expr": "shape2 in {■, ●}"},
    {"name": "all_fill", "expr": "fill1 and fill2"},
    {"name": "all_empty", "expr": "not fill1 and not fill2"},
    {"name": "aligned", "expr": "relationship in {→, ↑}"}
  ]
}
"""


def moprd_schema() -> AttributeSchema:
    """Two-shapes-plus-relationship schema (5 x 5 x 4 = 100 combinations)."""
    return parse_schema(MOPRD_SCHEMA_DOCUMENT)


def concept_schema(value_count: int) -> AttributeSchema:
    """Single-attribute schema whose values enumerate standalone concepts.

    Models languages in which every message names one concept: each property
    value then groups exactly one sample.
    """
    width = len(str(value_count - 1)) if value_count > 1 else 1
    values = tuple(f"c{i:0{width}d}" for i in range(value_count))
    return AttributeSchema(attributes=(Attribute(name="concept", domain=values),))


def all_combinations(schema: AttributeSchema) -> list[dict[str, str]]:
    """Every attribute assignment, in attribute-major domain order."""
    names = schema.attribute_names
    domains = [schema.domain(n) for n in names]
    return [dict(zip(names, combo)) for combo in itertools.product(*domains)]


def combination_ids(schema: AttributeSchema) -> list[str]:
    count = len(all_combinations(schema))
    width = len(str(count - 1)) if count > 1 else 1
    return [f"{i:0{width}d}" for i in range(count)]


@dataclass(frozen=True)
class Codebook:
    """Sample-to-message map: fixed filler cells plus per-attribute encoders.

    ``encoders[attr][value]`` is a (positions, tokens) pair; encoder position
    blocks are pairwise disjoint and disjoint from the fixed cells.  ``noise``
    optionally lists alternative messages with probabilities per sample id.
    """

    schema: AttributeSchema
    message_length: int
    fixed: Pattern
    encoders: dict[str, dict[str, tuple[tuple[int, ...], tuple[int, ...]]]]
    noise: dict[str, tuple[tuple[Message, float], ...]] | None = None

    __hash__ = None

    def encode(self, values: dict[str, str]) -> Message:
        message = [0] * self.message_length
        for pos, tok in self.fixed.cells:
            message[pos] = tok
        for attr, value in values.items():
            positions, tokens = self.encoders[attr][value]
            for pos, tok in zip(positions, tokens):
                message[pos] = tok
        return tuple(message)


def gen_compositional(
    schema: AttributeSchema,
    message_length: int,
    vocab_size: int,
    seed: int,
) -> tuple[AnnotatedCorpus, RuleTable]:
    """One dedicated position per attribute, injective token codes.

    Emits one message per attribute combination and the exact rule table the
    detector must find.  When the vocabulary is large enough the value codes
    are drawn disjointly across attributes and kept apart from the filler
    tokens, which makes the Levenshtein distance between any two messages
    equal their attribute edit distance.
    """
    rng = random.Random(seed)
    names = schema.attribute_names
    if message_length < len(names):
        raise CapacityError(
            f"message length {message_length} cannot host {len(names)} attributes"
        )
    max_domain = max(len(schema.domain(n)) for n in names)
    if vocab_size < max_domain + 1:
        raise CapacityError(
            f"vocabulary of {vocab_size} too small for a domain of {max_domain}"
        )

    positions = rng.sample(range(message_length), len(names))
    total_values = sum(len(schema.domain(n)) for n in names)
    disjoint = vocab_size >= total_values + 1

    encoders: dict[str, dict[str, tuple[tuple[int, ...], tuple[int, ...]]]] = {}
    if disjoint:
        pool = list(range(vocab_size))
        rng.shuffle(pool)
        cursor = 0
        for name, pos in zip(names, positions):
            domain = schema.domain(name)
            codes = pool[cursor : cursor + len(domain)]
            cursor += len(domain)
            encoders[name] = {v: ((pos,), (codes[i],)) for i, v in enumerate(domain)}
        filler_pool = pool[cursor:]
    else:
        for name, pos in zip(names, positions):
            domain = schema.domain(name)
            codes = rng.sample(range(vocab_size), len(domain))
            encoders[name] = {v: ((pos,), (codes[i],)) for i, v in enumerate(domain)}
        filler_pool = list(range(vocab_size))

    fixed = Pattern.from_dict(
        {
            pos: rng.choice(filler_pool)
            for pos in range(message_length)
            if pos not in positions
        }
    )
    codebook = Codebook(
        schema=schema, message_length=message_length, fixed=fixed, encoders=encoders
    )

    combos = all_combinations(schema)
    records = [
        (sample_id, combo, codebook.encode(combo), 1)
        for sample_id, combo in zip(combination_ids(schema), combos)
    ]
    corpus = build_corpus(schema, vocab_size, message_length, records)
    return corpus, ground_truth_table(codebook)


def ground_truth_table(codebook: Codebook) -> RuleTable:
    """Rule table implied by a single-position-per-attribute codebook.

    Works purely on the codebook's semantics over the full combination
    space: a group's pattern fixes an attribute's cell exactly when every
    combination in the group shares that attribute's value, and a pattern
    covers exactly the combinations carrying its constrained values (token
    codes are injective, so cell and value constraints coincide).
    Attributes with one-value domains are globally constant and belong to
    the skeleton.
    """
    schema = codebook.schema
    combos = all_combinations(schema)
    ids = combination_ids(schema)
    samples = [
        Sample(id=sample_id, values=combo) for sample_id, combo in zip(ids, combos)
    ]

    global_cells = dict(codebook.fixed.cells)
    variable_attrs = []
    decode: dict[tuple[int, int], tuple[str, str]] = {}
    for name in schema.attribute_names:
        domain = schema.domain(name)
        (pos,), (first_token,) = codebook.encoders[name][domain[0]]
        if len(domain) == 1:
            global_cells[pos] = first_token
            continue
        variable_attrs.append((name, pos))
        for value in domain:
            _, (token,) = codebook.encoders[name][value]
            decode[(pos, token)] = (name, value)

    candidates: dict[Pattern, set[tuple[str, str]]] = {}
    for prop in schema.property_names:
        for value in schema.domain(prop):
            group = [s for s in samples if eval_property(schema, s, prop) == value]
            if not group:
                continue
            cells = {}
            for attr, pos in variable_attrs:
                observed = {s.values[attr] for s in group}
                if len(observed) == 1:
                    (shared,) = observed
                    cells[pos] = codebook.encoders[attr][shared][1][0]
            candidates.setdefault(Pattern.from_dict(cells), set()).add((prop, value))

    rules = []
    for pattern, evidence in candidates.items():
        constraints = dict(decode[cell] for cell in pattern.cells)
        covered = [
            s
            for s in samples
            if all(s.values[attr] == value for attr, value in constraints.items())
        ]
        coverage = {}
        for prop in schema.property_names:
            observed = {eval_property(schema, s, prop) for s in covered}
            coverage[prop] = tuple(v for v in schema.domain(prop) if v in observed)
        rules.append(
            SemanticRule(
                pattern=pattern,
                evidence=canonical_evidence(schema, evidence),
                coverage=tuple(coverage.items()),
                support=len(covered),
            )
        )

    return RuleTable(
        message_length=codebook.message_length,
        global_constants=Pattern.from_dict(global_cells),
        rules=tuple(sorted(rules, key=rule_sort_key)),
    )


def gen_holistic(
    schema: AttributeSchema,
    message_length: int,
    vocab_size: int,
    seed: int,
    fixed_positions: int = 2,
) -> AnnotatedCorpus:
    """A unique uniformly drawn message per combination, collision-free.

    The first ``fixed_positions`` positions form a shared prefix; all
    remaining positions are drawn independently with rejection on repeats,
    so no sub-message structure relates similar combinations.
    """
    rng = random.Random(seed)
    combos = all_combinations(schema)
    variable = message_length - fixed_positions
    if variable < 1:
        raise CapacityError("need at least one variable position")
    if vocab_size**variable < len(combos):
        raise CapacityError(
            f"{vocab_size}^{variable} messages cannot cover {len(combos)} combinations"
        )
    prefix = tuple(rng.randrange(vocab_size) for _ in range(fixed_positions))
    seen: set[Message] = set()
    records = []
    for sample_id, combo in zip(combination_ids(schema), combos):
        while True:
            body = tuple(rng.randrange(vocab_size) for _ in range(variable))
            if body not in seen:
                seen.add(body)
                break
        records.append((sample_id, combo, prefix + body, 1))
    return build_corpus(schema, vocab_size, message_length, records)


def gen_noisy(
    base: AnnotatedCorpus,
    synonym_count: int,
    minority_share: float,
    seed: int,
) -> AnnotatedCorpus:
    """Add low-frequency synonym messages to every sample.

    Base messages keep their counts; the synonyms' combined count comes as
    close to ``minority_share`` of the enlarged sample total as integer
    counts allow (exact whenever ``share/(1-share) * total_count`` divides
    evenly), split as evenly as possible across synonyms.  Each synonym is a
    perturbation of the sample's first message, distinct from everything the
    sample already holds.
    """
    if not 0.0 < minority_share < 1.0:
        raise CapacityError(f"minority share must lie in (0, 1), got {minority_share}")
    if synonym_count < 1:
        raise CapacityError("need at least one synonym")
    rng = random.Random(seed)
    entries = []
    for entry in base.entries:
        total = entry.total_count()
        synonym_total = max(
            synonym_count, round(minority_share / (1.0 - minority_share) * total)
        )
        per_synonym, leftover = divmod(synonym_total, synonym_count)
        existing = {message for message, _ in entry.messages}
        template = entry.messages[0][0]
        new_messages = dict(entry.messages)
        for k in range(synonym_count):
            synonym = _perturb(template, base.vocab_size, existing, rng)
            existing.add(synonym)
            new_messages[synonym] = per_synonym + (1 if k < leftover else 0)
        entries.append(
            CorpusEntry(sample=entry.sample, messages=tuple(sorted(new_messages.items())))
        )
    return AnnotatedCorpus(
        schema=base.schema,
        vocab_size=base.vocab_size,
        message_length=base.message_length,
        entries=tuple(entries),
    )


def _perturb(
    template: Message, vocab_size: int, existing: set[Message], rng: random.Random
) -> Message:
    if vocab_size < 2:
        raise CapacityError("cannot perturb messages over a one-token vocabulary")
    for _ in range(1000):
        pos = rng.randrange(len(template))
        token = rng.randrange(vocab_size - 1)
        if token >= template[pos]:
            token += 1
        candidate = template[:pos] + (token,) + template[pos + 1 :]
        if candidate not in existing:
            return candidate
    raise CapacityError("could not find a distinct synonym message")
