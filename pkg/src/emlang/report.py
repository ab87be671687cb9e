"""Canonical serialization and human-readable rendering of result objects.

The structured format is one JSON object (UTF-8) with a ``kind``
discriminator; it is lossless and byte-identical across runs, and
``parse_structured(render(...))`` returns an equal object.  Markdown and CSV
renderings mirror the position/attribute/hyperattribute table layout, list
the evidence values in the property cells, report coverage in a secondary
block, and close with the general message pattern: fixed tokens literal,
variable positions shown as doubled-letter placeholders (XX, YY, ZZ, ...).
Floats are printed with 4 decimals in markdown/CSV; the structured format
keeps full precision so round-trips are exact.
"""

from __future__ import annotations

import csv
import io
import json

from .errors import DocumentSyntaxError
from .metrics import AccuracyMatrix, TopSimReport, accuracy_per_speaker
from .rules import Pattern, RuleTable, SemanticRule
from .schema import AttributeSchema

_PLACEHOLDER_LETTERS = "XYZABCDEFGHIJKLMNOPQRSTUVW"


def placeholders(count: int) -> list[str]:
    """XX, YY, ZZ, AA, ... wrapping with a numeric suffix beyond one cycle."""
    names = []
    for i in range(count):
        letter = _PLACEHOLDER_LETTERS[i % len(_PLACEHOLDER_LETTERS)]
        cycle = i // len(_PLACEHOLDER_LETTERS)
        names.append(letter * 2 + (str(cycle + 1) if cycle else ""))
    return names


def general_pattern(table: RuleTable) -> str:
    """The corpus-wide skeleton, e.g. ``13-12-XX-10-10-10-10-10-YY-ZZ``."""
    fixed = dict(table.global_constants.cells)
    variable = [p for p in range(table.message_length) if p not in fixed]
    marks = dict(zip(variable, placeholders(len(variable))))
    return "-".join(
        str(fixed[p]) if p in fixed else marks[p] for p in range(table.message_length)
    )


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _pattern_to_json(pattern: Pattern) -> list[list[int]]:
    return [[pos, tok] for pos, tok in pattern.cells]


def _pattern_from_json(data) -> Pattern:
    try:
        return Pattern(cells=tuple((int(p), int(t)) for p, t in data))
    except (TypeError, ValueError):
        raise DocumentSyntaxError("pattern must be a list of [position, token] pairs") from None


# ---------------------------------------------------------------------------
# Rule tables
# ---------------------------------------------------------------------------

def render_rule_table(table: RuleTable, format: str = "structured",
                      schema: AttributeSchema | None = None) -> str:
    """Render a rule table; markdown/csv need the schema for column order."""
    if format == "structured":
        return _rule_table_structured(table)
    if format == "markdown":
        return _rule_table_markdown(table, _require_schema(schema))
    if format == "csv":
        return _rule_table_csv(table, _require_schema(schema))
    raise DocumentSyntaxError(f"unknown format {format!r}")


def _require_schema(schema: AttributeSchema | None) -> AttributeSchema:
    if schema is None:
        raise DocumentSyntaxError("markdown/csv rendering requires the schema")
    return schema


def _rule_table_structured(table: RuleTable) -> str:
    return _dumps(
        {
            "kind": "rule_table",
            "message_length": table.message_length,
            "rule_count": table.rule_count,
            "global_constants": _pattern_to_json(table.global_constants),
            "rules": [
                {
                    "pattern": _pattern_to_json(rule.pattern),
                    "evidence": [[p, v] for p, v in rule.evidence],
                    "coverage": {p: list(vs) for p, vs in rule.coverage},
                    "support": rule.support,
                }
                for rule in table.rules
            ],
        }
    )


def parse_rule_table(text: str) -> RuleTable:
    doc = _load_structured(text, "rule_table")
    try:
        rules = tuple(
            SemanticRule(
                pattern=_pattern_from_json(r["pattern"]),
                evidence=tuple((str(p), str(v)) for p, v in r["evidence"]),
                coverage=tuple(
                    (str(p), tuple(str(v) for v in vs)) for p, vs in r["coverage"].items()
                ),
                support=int(r["support"]),
            )
            for r in doc["rules"]
        )
        table = RuleTable(
            message_length=int(doc["message_length"]),
            global_constants=_pattern_from_json(doc["global_constants"]),
            rules=rules,
        )
    except (KeyError, TypeError, AttributeError):
        raise DocumentSyntaxError("malformed rule table document") from None
    if doc.get("rule_count") != table.rule_count:
        raise DocumentSyntaxError("rule_count does not match the number of rules")
    return table


def _variable_positions(table: RuleTable) -> list[int]:
    fixed = {pos for pos, _ in table.global_constants.cells}
    return [p for p in range(table.message_length) if p not in fixed]


def _rule_cells(table: RuleTable, schema: AttributeSchema) -> tuple[list[str], list[list[str]]]:
    """Header and one row per rule: position tokens, then evidence per property."""
    positions = _variable_positions(table)
    attrs = list(schema.attribute_names)
    hypers = [h.name for h in schema.hyperattributes]
    header = [f"pos {p}" for p in positions] + attrs + hypers
    rows = []
    for rule in table.rules:
        cells = dict(rule.pattern.cells)
        row = [str(cells[p]) if p in cells else "" for p in positions]
        by_prop: dict[str, list[str]] = {}
        for prop, value in rule.evidence:
            by_prop.setdefault(prop, []).append(value)
        row += [" ".join(by_prop.get(prop, [])) for prop in attrs + hypers]
        rows.append(row)
    return header, rows


def _coverage_lines(table: RuleTable, schema: AttributeSchema) -> list[str]:
    """Informative coverage only: value sets that are proper domain subsets."""
    lines = []
    for index, rule in enumerate(table.rules, start=1):
        informative = [
            f"{prop} in {{{', '.join(values)}}}"
            for prop, values in rule.coverage
            if 0 < len(values) < len(schema.domain(prop))
        ]
        pattern = (
            " ".join(f"{pos}={tok}" for pos, tok in rule.pattern.cells) or "(none)"
        )
        summary = "; ".join(informative) if informative else "no proper subset"
        lines.append(f"- rule {index} [{pattern}] support={rule.support}: {summary}")
    return lines


def _rule_table_markdown(table: RuleTable, schema: AttributeSchema) -> str:
    header, rows = _rule_cells(table, schema)
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    lines.append("")
    lines.append(f"Rules: {table.rule_count}")
    lines.append("")
    lines.append("Coverage (value sets over covered samples):")
    lines.extend(_coverage_lines(table, schema))
    lines.append("")
    lines.append(f"General pattern: {general_pattern(table)}")
    return "\n".join(lines) + "\n"


def _rule_table_csv(table: RuleTable, schema: AttributeSchema) -> str:
    header, rows = _rule_cells(table, schema)
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    writer.writerow(["general pattern", general_pattern(table)])
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# Metric reports
# ---------------------------------------------------------------------------

def render_metrics(report: TopSimReport | AccuracyMatrix, format: str = "structured") -> str:
    if isinstance(report, TopSimReport):
        if format == "structured":
            return _dumps(
                {
                    "kind": "topsim_report",
                    "rho": report.rho,
                    "pair_count": report.pair_count,
                    "sampled": report.sampled,
                    "seed": report.seed,
                }
            )
        if format == "markdown":
            mode = f"sampled, seed={report.seed}" if report.sampled else "exact"
            return f"TopSim: {report.rho:.4f} ({report.pair_count} pairs, {mode})\n"
        raise DocumentSyntaxError(f"unknown format {format!r}")
    if isinstance(report, AccuracyMatrix):
        if format == "structured":
            return _dumps(
                {
                    "kind": "accuracy_matrix",
                    "episodes_per_cell": report.episodes_per_cell,
                    "values": [list(row) for row in report.values],
                }
            )
        if format == "markdown":
            lines = [f"Accuracy over {report.episodes_per_cell} episodes per pair:"]
            for i, row in enumerate(report.values):
                lines.append(
                    f"- speaker {i}: " + " ".join(f"{v:.4f}" for v in row)
                )
            means = accuracy_per_speaker(report)
            lines.append("Per-speaker mean: " + " ".join(f"{m:.4f}" for m in means))
            return "\n".join(lines) + "\n"
        raise DocumentSyntaxError(f"unknown format {format!r}")
    raise DocumentSyntaxError(f"cannot render {type(report).__name__}")


def parse_metrics(text: str) -> TopSimReport | AccuracyMatrix:
    doc = _load_structured(text, None)
    kind = doc.get("kind")
    try:
        if kind == "topsim_report":
            return TopSimReport(
                rho=float(doc["rho"]),
                pair_count=int(doc["pair_count"]),
                sampled=bool(doc["sampled"]),
                seed=None if doc["seed"] is None else int(doc["seed"]),
            )
        if kind == "accuracy_matrix":
            return AccuracyMatrix(
                values=tuple(tuple(float(v) for v in row) for row in doc["values"]),
                episodes_per_cell=int(doc["episodes_per_cell"]),
            )
    except (KeyError, TypeError):
        raise DocumentSyntaxError("malformed metrics document") from None
    raise DocumentSyntaxError(f"unknown document kind {kind!r}")


def _load_structured(text: str, expected_kind: str | None) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"structured document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentSyntaxError("structured document must be a JSON object")
    if expected_kind is not None and doc.get("kind") != expected_kind:
        raise DocumentSyntaxError(f"expected a {expected_kind} document")
    return doc
