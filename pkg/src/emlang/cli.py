"""Batch command-line interface.

Subcommands: ``extract`` (rule detection), ``topsim`` (compositionality),
``game`` (referential-game accuracy), ``synth`` (corpus generators),
``distance`` (message edit distance), ``render`` (re-render structured
results).  Exit status 0 on success, 2 on usage errors, 1 on data or
validation errors with the stable error code on stderr.

Identical invocations produce byte-identical output; stochastic subcommands
require an explicit seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import report as report_mod
from .errors import DocumentSyntaxError, EmlangError, NotFoundError
from .game import GameConfig, CorpusListener, CorpusSpeaker, run_lewis_game
from .metrics import levenshtein, topsim
from .rules import RuleTable, extract_rules
from .schema import AttributeSchema, parse_schema
from .synth import gen_compositional, gen_holistic, gen_noisy, moprd_schema


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise NotFoundError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _load_schema(value: str) -> AttributeSchema:
    if value == "moprd":
        return moprd_schema()
    return parse_schema(_read(value))


def _load_corpus(path: str, schema: AttributeSchema):
    return corpus_mod.load_corpus(_read(path), schema)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse_tokens(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok != "")
    except ValueError:
        raise DocumentSyntaxError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emlang",
        description="Semantic rule extraction and metrics for message corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="detect semantic rules in a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--schema", required=True, help="schema file, or 'moprd' for the builtin")
    p.add_argument("--min-freq", type=float, default=0.15)
    p.add_argument("--out")
    p.add_argument("--format", choices=["structured", "markdown", "csv"], default="structured")

    p = sub.add_parser("topsim", help="topographic similarity of a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--max-pairs", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--format", choices=["structured", "markdown"], default="structured")

    p = sub.add_parser("game", help="referential-game accuracy matrix")
    p.add_argument("--corpus", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--candidates", type=int, default=20)
    p.add_argument("--episodes", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--speakers", type=int, default=1, help="population size")
    p.add_argument("--listeners", type=int, default=1, help="population size")
    p.add_argument("--out")
    p.add_argument("--format", choices=["structured", "markdown"], default="structured")

    p = sub.add_parser("synth", help="generate a ground-truth corpus")
    p.add_argument("--kind", choices=["compositional", "holistic", "noisy"], required=True)
    p.add_argument("--schema", help="schema file or 'moprd'; ignored for noisy")
    p.add_argument("--msg-len", type=int, default=10)
    p.add_argument("--vocab", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--corpus", help="base corpus (noisy only)")
    p.add_argument("--synonyms", type=int, default=1, help="per-sample synonyms (noisy only)")
    p.add_argument("--minority-share", type=float, default=0.10, help="noisy only")
    p.add_argument("--truth-out", help="write the generated rule table (compositional only)")

    p = sub.add_parser("distance", help="edit distance between two messages")
    p.add_argument("--a", required=True, help="comma-separated tokens")
    p.add_argument("--b", required=True, help="comma-separated tokens")

    p = sub.add_parser("render", help="re-render a structured result document")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=["structured", "markdown", "csv"], required=True)
    p.add_argument("--schema", help="needed to lay out rule tables as markdown/csv")
    p.add_argument("--out")
    return parser


def _cmd_extract(args) -> None:
    schema = _load_schema(args.schema)
    loaded = _load_corpus(args.corpus, schema)
    table = extract_rules(loaded, threshold=args.min_freq)
    _emit(report_mod.render_rule_table(table, args.format, schema=schema), args.out)


def _cmd_topsim(args) -> None:
    schema = _load_schema(args.schema)
    loaded = _load_corpus(args.corpus, schema)
    result = topsim(loaded, max_pairs=args.max_pairs, seed=args.seed)
    _emit(report_mod.render_metrics(result, args.format), args.out)


def _cmd_game(args) -> None:
    schema = _load_schema(args.schema)
    loaded = _load_corpus(args.corpus, schema)
    config = GameConfig(
        seed=args.seed,
        candidate_count=args.candidates,
        episodes=args.episodes,
        speakers=tuple(CorpusSpeaker(loaded) for _ in range(args.speakers)),
        listeners=tuple(CorpusListener(loaded) for _ in range(args.listeners)),
    )
    matrix = run_lewis_game(loaded, config)
    _emit(report_mod.render_metrics(matrix, args.format), args.out)


def _cmd_synth(args) -> None:
    if args.kind == "noisy":
        if not args.corpus or not args.schema:
            raise DocumentSyntaxError("synth --kind noisy needs --corpus and --schema")
        schema = _load_schema(args.schema)
        base = _load_corpus(args.corpus, schema)
        result = gen_noisy(base, args.synonyms, args.minority_share, args.seed)
    else:
        if not args.schema:
            raise DocumentSyntaxError("synth needs --schema")
        schema = _load_schema(args.schema)
        if args.kind == "compositional":
            result, truth = gen_compositional(schema, args.msg_len, args.vocab, args.seed)
            if args.truth_out:
                Path(args.truth_out).write_text(
                    report_mod.render_rule_table(truth, "structured"), encoding="utf-8"
                )
        else:
            result = gen_holistic(schema, args.msg_len, args.vocab, args.seed)
    _emit(corpus_mod.serialize_corpus(result), args.out)


def _cmd_distance(args) -> None:
    print(levenshtein(_parse_tokens(args.a), _parse_tokens(args.b)))


def _cmd_render(args) -> None:
    text = _read(args.input)
    try:
        obj: object = report_mod.parse_rule_table(text)
    except DocumentSyntaxError:
        obj = report_mod.parse_metrics(text)
    if isinstance(obj, RuleTable):
        schema = _load_schema(args.schema) if args.schema else None
        rendered = report_mod.render_rule_table(obj, args.format, schema=schema)
    else:
        rendered = report_mod.render_metrics(obj, args.format)
    _emit(rendered, args.out)


_COMMANDS = {
    "extract": _cmd_extract,
    "topsim": _cmd_topsim,
    "game": _cmd_game,
    "synth": _cmd_synth,
    "distance": _cmd_distance,
    "render": _cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except EmlangError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
