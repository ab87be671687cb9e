"""Toolkit for interpreting emergent-communication message corpora.

Builds attribute schemas with derived properties, loads annotated message
corpora, extracts position-token semantic rules, scores languages with
topographic similarity and referential-game accuracy, and generates
synthetic languages with known ground truth.
"""

from .corpus import (
    AnnotatedCorpus,
    CorpusEntry,
    Message,
    build_corpus,
    filter_by_frequency,
    load_corpus,
    representative_message,
    serialize_corpus,
)
from .game import CodebookSpeaker, CorpusListener, CorpusSpeaker, GameConfig, run_lewis_game
from .metrics import (
    AccuracyMatrix,
    TopSimReport,
    accuracy_per_speaker,
    attribute_edit_distance,
    levenshtein,
    spearman,
    topsim,
)
from .report import (
    general_pattern,
    parse_metrics,
    parse_rule_table,
    render_metrics,
    render_rule_table,
)
from .rules import (
    Pattern,
    RuleTable,
    SemanticRule,
    constant_positions,
    coverage_summary,
    extract_rules,
    global_constants,
)
from .schema import (
    AttributeSchema,
    Attribute,
    HyperattributeDef,
    Sample,
    ValueMap,
    eval_property,
    parse_schema,
    property_domain,
    render_schema,
    validate_sample,
)
from .synth import (
    Codebook,
    all_combinations,
    concept_schema,
    gen_compositional,
    gen_holistic,
    gen_noisy,
    ground_truth_table,
    moprd_schema,
)

__all__ = [
    "AnnotatedCorpus",
    "AccuracyMatrix",
    "Attribute",
    "AttributeSchema",
    "Codebook",
    "CodebookSpeaker",
    "CorpusEntry",
    "CorpusListener",
    "CorpusSpeaker",
    "GameConfig",
    "HyperattributeDef",
    "Message",
    "Pattern",
    "RuleTable",
    "Sample",
    "SemanticRule",
    "TopSimReport",
    "ValueMap",
    "accuracy_per_speaker",
    "all_combinations",
    "attribute_edit_distance",
    "build_corpus",
    "concept_schema",
    "constant_positions",
    "coverage_summary",
    "eval_property",
    "extract_rules",
    "filter_by_frequency",
    "gen_compositional",
    "gen_holistic",
    "gen_noisy",
    "general_pattern",
    "global_constants",
    "ground_truth_table",
    "levenshtein",
    "load_corpus",
    "moprd_schema",
    "parse_metrics",
    "parse_rule_table",
    "parse_schema",
    "property_domain",
    "render_metrics",
    "render_rule_table",
    "render_schema",
    "representative_message",
    "run_lewis_game",
    "serialize_corpus",
    "spearman",
    "topsim",
    "validate_sample",
]
