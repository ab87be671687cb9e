"""Attribute schemas, derived properties, and their evaluation.

A schema declares *attributes* (named, finite, ordered value domains) and
*hyperattributes* (properties derived from attributes or from earlier
hyperattributes).  A hyperattribute body is either a boolean expression over
property values, with domain ``(F, T)``, or an explicit value map that
relabels one property's values.

Expression grammar (whitespace-insensitive around operators)::

    expr     := or_expr
    or_expr  := and_expr ('or' and_expr)*
    and_expr := not_expr ('and' not_expr)*
    not_expr := 'not' not_expr | atom
    atom     := '(' expr ')'
              | name '==' value
              | name 'in' '{' value (',' value)* '}'
              | name                # boolean property, shorthand for name == T

Identifiers and values are arbitrary UTF-8 words not containing whitespace
or the reserved characters ``( ) { } , =``.

Schemas and samples are immutable after construction; evaluation is pure, so
all operations here are safe to call concurrently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    AttributeMismatch,
    CycleError,
    DocumentSyntaxError,
    DomainError,
    UnknownReference,
)

BOOL_DOMAIN = ("F", "T")

_RESERVED = set("(){},=")
_KEYWORDS = {"and", "or", "not", "in"}


# ---------------------------------------------------------------------------
# Expression trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ref:
    """Bare reference to a boolean property; true iff the property is T."""

    name: str


@dataclass(frozen=True)
class Equals:
    prop: str
    value: str


@dataclass(frozen=True)
class Member:
    prop: str
    values: tuple[str, ...]


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Ref | Equals | Member | Not | And | Or


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "=":
            if text[i : i + 2] != "==":
                raise DocumentSyntaxError(f"expected '==' at position {i} in expression {text!r}")
            tokens.append("==")
            i += 2
        elif ch in _RESERVED:
            tokens.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in _RESERVED:
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise DocumentSyntaxError(f"unexpected end of expression {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise DocumentSyntaxError(f"expected {tok!r} but found {got!r} in expression {self.text!r}")

    def take_word(self) -> str:
        tok = self.take()
        if tok in _KEYWORDS or tok in _RESERVED or tok == "==":
            raise DocumentSyntaxError(
                f"expected an identifier but found {tok!r} in expression {self.text!r}"
            )
        return tok

    def parse(self) -> Expr:
        expr = self.or_expr()
        if self.peek() is not None:
            raise DocumentSyntaxError(f"trailing tokens after expression {self.text!r}")
        return expr

    def or_expr(self) -> Expr:
        node = self.and_expr()
        while self.peek() == "or":
            self.take()
            node = Or(node, self.and_expr())
        return node

    def and_expr(self) -> Expr:
        node = self.not_expr()
        while self.peek() == "and":
            self.take()
            node = And(node, self.not_expr())
        return node

    def not_expr(self) -> Expr:
        if self.peek() == "not":
            self.take()
            return Not(self.not_expr())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.take()
        if tok == "(":
            node = self.or_expr()
            self.expect(")")
            return node
        if tok in _KEYWORDS or tok in _RESERVED or tok == "==":
            raise DocumentSyntaxError(f"unexpected token {tok!r} in expression {self.text!r}")
        name = tok
        nxt = self.peek()
        if nxt == "==":
            self.take()
            return Equals(name, self.take_word())
        if nxt == "in":
            self.take()
            self.expect("{")
            values = [self.take_word()]
            while self.peek() == ",":
                self.take()
                values.append(self.take_word())
            self.expect("}")
            return Member(name, tuple(values))
        return Ref(name)


def parse_expression(text: str) -> Expr:
    """Parse an expression string; raises DocumentSyntaxError on bad syntax."""
    return _ExprParser(text).parse()


def render_expression(expr: Expr) -> str:
    """Canonical text form; ``parse_expression(render_expression(e)) == e``."""

    def render(node: Expr, parent: str) -> str:
        if isinstance(node, Ref):
            return node.name
        if isinstance(node, Equals):
            return f"{node.prop} == {node.value}"
        if isinstance(node, Member):
            return f"{node.prop} in {{{', '.join(node.values)}}}"
        if isinstance(node, Not):
            inner = render(node.operand, "not")
            return f"not {inner}"
        if isinstance(node, And):
            text = f"{render(node.left, 'and')} and {render(node.right, 'and_rhs')}"
            return f"({text})" if parent in ("not", "and_rhs") else text
        text = f"{render(node.left, 'or')} or {render(node.right, 'or_rhs')}"
        return f"({text})" if parent in ("not", "and", "and_rhs", "or_rhs") else text

    return render(expr, "top")


# ---------------------------------------------------------------------------
# Schema types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Attribute:
    name: str
    domain: tuple[str, ...]


@dataclass(frozen=True)
class ValueMap:
    """Relabels each value of ``source`` via ``cases`` (a total, ordered map)."""

    source: str
    cases: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class HyperattributeDef:
    name: str
    body: Expr | ValueMap


@dataclass(frozen=True)
class AttributeSchema:
    """Validated, immutable property declarations.

    Hyperattributes may reference attributes and earlier hyperattributes
    only; construction rejects unknown names, forward references, and value
    maps that do not cover their source domain exactly once.
    """

    attributes: tuple[Attribute, ...]
    hyperattributes: tuple[HyperattributeDef, ...] = ()
    _domains: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.attributes:
            raise DocumentSyntaxError("schema declares no attributes")
        domains: dict[str, tuple[str, ...]] = {}
        for attr in self.attributes:
            if attr.name in domains:
                raise DomainError(f"duplicate property name {attr.name!r}")
            if not attr.domain:
                raise DomainError(f"attribute {attr.name!r} has an empty domain")
            if len(set(attr.domain)) != len(attr.domain):
                raise DomainError(f"attribute {attr.name!r} has duplicate values")
            domains[attr.name] = tuple(attr.domain)
        attribute_names = set(domains)
        for hyper in self.hyperattributes:
            if hyper.name in domains:
                raise DomainError(f"duplicate property name {hyper.name!r}")
            later = {h.name for h in self.hyperattributes} - set(domains) - attribute_names
            domains[hyper.name] = _check_hyper(hyper, domains, later | {hyper.name})
        object.__setattr__(self, "_domains", domains)

    # -- lookups ----------------------------------------------------------

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    @property
    def property_names(self) -> tuple[str, ...]:
        """Attributes then hyperattributes, in declaration order."""
        return self.attribute_names + tuple(h.name for h in self.hyperattributes)

    def is_attribute(self, name: str) -> bool:
        return any(a.name == name for a in self.attributes)

    def domain(self, prop: str) -> tuple[str, ...]:
        try:
            return self._domains[prop]
        except KeyError:
            raise UnknownReference(f"unknown property {prop!r}") from None

    def domain_index(self, prop: str, value: str) -> int:
        dom = self.domain(prop)
        try:
            return dom.index(value)
        except ValueError:
            raise DomainError(f"value {value!r} not in domain of {prop!r}") from None


def _check_hyper(hyper: HyperattributeDef, known: dict[str, tuple[str, ...]],
                 unresolved: set[str]) -> tuple[str, ...]:
    """Validate one hyperattribute body; returns its domain."""

    def resolve(name: str) -> tuple[str, ...]:
        if name in known:
            return known[name]
        if name in unresolved:
            raise CycleError(f"{hyper.name!r} references {name!r} before it is defined")
        raise UnknownReference(f"{hyper.name!r} references undefined property {name!r}")

    if isinstance(hyper.body, ValueMap):
        source_domain = resolve(hyper.body.source)
        sources = [value for value, _ in hyper.body.cases]
        if sorted(sources) != sorted(source_domain):
            raise DomainError(
                f"value map for {hyper.name!r} must cover every value of "
                f"{hyper.body.source!r} exactly once"
            )
        labels: list[str] = []
        for _, label in hyper.body.cases:
            if label not in labels:
                labels.append(label)
        return tuple(labels)

    def check(expr: Expr) -> None:
        if isinstance(expr, Ref):
            if resolve(expr.name) != BOOL_DOMAIN:
                raise DomainError(
                    f"bare reference to {expr.name!r} requires a boolean property"
                )
        elif isinstance(expr, (Equals, Member)):
            dom = resolve(expr.prop)
            values = (expr.value,) if isinstance(expr, Equals) else expr.values
            for value in values:
                if value not in dom:
                    raise DomainError(
                        f"value {value!r} not in domain of {expr.prop!r}"
                    )
        elif isinstance(expr, Not):
            check(expr.operand)
        else:
            check(expr.left)
            check(expr.right)

    check(hyper.body)
    return BOOL_DOMAIN


@dataclass(frozen=True)
class Sample:
    """One annotated input: an id plus one value per schema attribute."""

    id: str
    values: dict[str, str]

    __hash__ = None  # dict field; identity lives in .id


def validate_sample(schema: AttributeSchema, sample_id: str, values: dict[str, str]) -> Sample:
    expected = schema.attribute_names
    if tuple(sorted(values)) != tuple(sorted(expected)):
        raise AttributeMismatch(
            f"sample {sample_id!r} must assign exactly the attributes {list(expected)}"
        )
    for name in expected:
        if values[name] not in schema.domain(name):
            raise AttributeMismatch(
                f"sample {sample_id!r}: value {values[name]!r} not in domain of {name!r}"
            )
    return Sample(id=sample_id, values={name: values[name] for name in expected})


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_property(schema: AttributeSchema, sample: Sample, prop: str) -> str:
    """Value of an attribute or hyperattribute on a sample.

    Total and deterministic: the result always lies in ``property_domain``.
    """
    if schema.is_attribute(prop):
        return sample.values[prop]
    for hyper in schema.hyperattributes:
        if hyper.name == prop:
            if isinstance(hyper.body, ValueMap):
                source_value = eval_property(schema, sample, hyper.body.source)
                return dict(hyper.body.cases)[source_value]
            return "T" if _eval_bool(schema, sample, hyper.body) else "F"
    raise UnknownReference(f"unknown property {prop!r}")


def _eval_bool(schema: AttributeSchema, sample: Sample, expr: Expr) -> bool:
    if isinstance(expr, Ref):
        return eval_property(schema, sample, expr.name) == "T"
    if isinstance(expr, Equals):
        return eval_property(schema, sample, expr.prop) == expr.value
    if isinstance(expr, Member):
        return eval_property(schema, sample, expr.prop) in expr.values
    if isinstance(expr, Not):
        return not _eval_bool(schema, sample, expr.operand)
    if isinstance(expr, And):
        return _eval_bool(schema, sample, expr.left) and _eval_bool(schema, sample, expr.right)
    return _eval_bool(schema, sample, expr.left) or _eval_bool(schema, sample, expr.right)


def property_domain(schema: AttributeSchema, prop: str) -> tuple[str, ...]:
    """Ordered value list: declared domain, ``(F, T)``, or value-map labels."""
    return schema.domain(prop)


# ---------------------------------------------------------------------------
# Document parsing and rendering
# ---------------------------------------------------------------------------

def parse_schema(text: str) -> AttributeSchema:
    """Parse a schema document (one JSON object, UTF-8).

    Top-level keys: ``attributes`` (list of ``{"name", "values"}``) and
    optional ``hyperattributes`` (list of ``{"name", "expr"}`` or
    ``{"name", "map": {"source", "cases"}}``).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"schema document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "attributes" not in doc:
        raise DocumentSyntaxError("schema document must be an object with an 'attributes' key")

    attributes = []
    for item in _expect_list(doc["attributes"], "attributes"):
        name = _expect_str(item, "name", "attribute")
        values = _expect_list(item.get("values"), f"values of attribute {name!r}")
        if not all(isinstance(v, str) for v in values):
            raise DocumentSyntaxError(f"attribute {name!r} values must be strings")
        attributes.append(Attribute(name=name, domain=tuple(values)))

    hyperattributes = []
    for item in _expect_list(doc.get("hyperattributes", []), "hyperattributes"):
        name = _expect_str(item, "name", "hyperattribute")
        if "expr" in item and "map" in item:
            raise DocumentSyntaxError(f"hyperattribute {name!r} has both 'expr' and 'map'")
        if "expr" in item:
            if not isinstance(item["expr"], str):
                raise DocumentSyntaxError(f"hyperattribute {name!r} 'expr' must be a string")
            body: Expr | ValueMap = parse_expression(item["expr"])
        elif "map" in item:
            mapping = item["map"]
            if not isinstance(mapping, dict) or "source" not in mapping or "cases" not in mapping:
                raise DocumentSyntaxError(f"hyperattribute {name!r} 'map' needs 'source' and 'cases'")
            cases = mapping["cases"]
            if not isinstance(cases, dict) or not all(
                isinstance(k, str) and isinstance(v, str) for k, v in cases.items()
            ):
                raise DocumentSyntaxError(f"hyperattribute {name!r} 'cases' must map strings to strings")
            body = ValueMap(source=str(mapping["source"]), cases=tuple(cases.items()))
        else:
            raise DocumentSyntaxError(f"hyperattribute {name!r} needs 'expr' or 'map'")
        hyperattributes.append(HyperattributeDef(name=name, body=body))

    return AttributeSchema(attributes=tuple(attributes), hyperattributes=tuple(hyperattributes))


def _expect_list(value, what: str) -> list:
    if not isinstance(value, list):
        raise DocumentSyntaxError(f"{what} must be a list")
    return value


def _expect_str(item, key: str, what: str) -> str:
    if not isinstance(item, dict) or not isinstance(item.get(key), str):
        raise DocumentSyntaxError(f"each {what} must be an object with a string {key!r}")
    return item[key]


def render_schema(schema: AttributeSchema) -> str:
    """Canonical serialization; ``parse_schema(render_schema(s)) == s``."""
    doc = {
        "attributes": [
            {"name": a.name, "values": list(a.domain)} for a in schema.attributes
        ],
        "hyperattributes": [
            {"name": h.name, "map": {"source": h.body.source, "cases": dict(h.body.cases)}}
            if isinstance(h.body, ValueMap)
            else {"name": h.name, "expr": render_expression(h.body)}
            for h in schema.hyperattributes
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
