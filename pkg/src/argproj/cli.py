"""Command-line entry point wiring the projection pipeline stages together.

Every stage reads and writes plain files (CoNLL corpora, tokenized text,
Pharaoh alignments, JSON reports), so pipelines compose through the shell:

    argproj align-train  -> model.json
    argproj align        -> corpus.pharaoh
    argproj project      -> projected.conll + report.json
    argproj postprocess  -> corrected.conll + report.json (auto_corrections)
    argproj serve        -> manual review over HTTP

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from argproj.alignment import (
    TranslationTable,
    align_with_table,
    serialize_pharaoh,
    symmetrize,
    train_model1,
)
from argproj.corpus import (
    Corpus,
    RelationLabel,
    parse_conll,
    parse_relations,
    serialize_conll,
)
from argproj.datasetops import distribution_report, export_relations, merge_corpora
from argproj.evaluate import compare_variants, score_components, score_relations
from argproj.postprocess import DEFAULT_RULE_ORDER, RulePipelineConfig, run_pipeline
from argproj.projection import ProjectionConfig, project_corpus

SEED_ENV = "ARGPROJ_SEED"


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _read_corpus(path: str, mode: str) -> Corpus:
    return parse_conll(_read_text(path), mode=mode, name=Path(path).stem)


def _read_lines(path: str) -> list[str]:
    text = _read_text(path)
    return text.split("\n")[:-1] if text.endswith("\n") else text.split("\n") if text else []


def _read_pairs(src_path: str, tgt_path: str) -> list[tuple[list[str], list[str]]]:
    src_lines = _read_lines(src_path)
    tgt_lines = _read_lines(tgt_path)
    if len(src_lines) != len(tgt_lines):
        raise ValueError(
            f"parallel files differ in length: {len(src_lines)} vs {len(tgt_lines)} lines")
    return [(s.split(), t.split()) for s, t in zip(src_lines, tgt_lines)]


def _write_json(data: dict, path: str | None) -> None:
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _named_paths(values: list[str]) -> dict[str, str]:
    """Parse repeated [NAME=]PATH arguments; name defaults to the file stem."""
    out: dict[str, str] = {}
    for value in values:
        name, sep, path = value.partition("=")
        if not sep:
            name, path = Path(value).stem, value
        if name in out:
            raise ValueError(f"duplicate split name {name!r}")
        out[name] = path
    return out


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    return int(env) if env else 0


# --- subcommand handlers -----------------------------------------------------


def cmd_stats(args: argparse.Namespace) -> int:
    corpora = {name: _read_corpus(path, args.iob)
               for name, path in _named_paths(args.corpus).items()} or None
    relations = {name: parse_relations(_read_text(path))
                 for name, path in _named_paths(args.relations).items()} or None
    if corpora is None and relations is None:
        raise ValueError("nothing to report: pass --corpus and/or --relations")
    _write_json(distribution_report(corpora, relations), args.out)
    return 0


def cmd_align_train(args: argparse.Namespace) -> int:
    pairs = _read_pairs(args.src_text, args.tgt_text)
    table = train_model1(pairs, iterations=args.iterations,
                         epsilon=args.epsilon, lowercase=args.lowercase)
    Path(args.model).write_text(table.dumps(), encoding="utf-8")
    print(f"trained on {len(pairs)} pairs; "
          f"log-likelihood {table.log_likelihoods[0]:.4f} -> {table.log_likelihoods[-1]:.4f}",
          file=sys.stderr)
    return 0


def cmd_align(args: argparse.Namespace) -> int:
    table = TranslationTable.loads(_read_text(args.model))
    pairs = _read_pairs(args.src_text, args.tgt_text)
    forward = [align_with_table(table, pair) for pair in pairs]
    if args.reverse_model:
        reverse_table = TranslationTable.loads(_read_text(args.reverse_model))
        reversed_pairs = [(tgt, src) for src, tgt in pairs]
        reverse = [align_with_table(reverse_table, pair).transposed()
                   for pair in reversed_pairs]
        forward = [symmetrize(f, r, method=args.method) for f, r in zip(forward, reverse)]
    lines = "".join(serialize_pharaoh(a) + "\n" for a in forward)
    Path(args.out).write_text(lines, encoding="utf-8")
    return 0


def cmd_project(args: argparse.Namespace) -> int:
    src = _read_corpus(args.src, args.iob)
    cfg = ProjectionConfig(
        gap_tolerance=args.gap,
        include_punctuation=not args.exclude_punctuation,
        on_unprojectable=args.on_unprojectable,
    )
    projected, report = project_corpus(
        src, _read_lines(args.tgt), _read_lines(args.align), cfg, jobs=args.jobs)
    Path(args.out).write_text(serialize_conll(projected), encoding="utf-8")
    if args.report:
        _write_json(report.to_json(), args.report)
    return 0


def cmd_postprocess(args: argparse.Namespace) -> int:
    src = _read_corpus(args.src, args.src_iob)
    tgt = _read_corpus(args.tgt, args.tgt_iob)
    lexicon = (frozenset(w.strip() for w in _read_lines(args.articles) if w.strip())
               if args.articles else None)
    cfg = RulePipelineConfig(
        rules=tuple(args.rules.split(",")) if args.rules else DEFAULT_RULE_ORDER,
        article_lexicon=lexicon if lexicon is not None else RulePipelineConfig().article_lexicon,
        cover_punctuation=not args.no_cover_punctuation,
    )
    corrected, report = run_pipeline(src, tgt, cfg)
    Path(args.out).write_text(serialize_conll(corrected), encoding="utf-8")
    if args.report:
        # Appends to an existing projection report when one is already there.
        merged: dict = {}
        report_path = Path(args.report)
        if report_path.exists():
            merged = json.loads(report_path.read_text(encoding="utf-8"))
        merged["auto_corrections"] = report.to_json()
        _write_json(merged, args.report)
    return 0


def _read_relation_labels(path: str) -> list[RelationLabel]:
    by_name = {label.value: label for label in RelationLabel}
    labels = []
    for i, line in enumerate(_read_text(path).splitlines(), 1):
        if "\t" in line:
            labels.extend(inst.label for inst in parse_relations(line))
            continue
        name = line.strip()
        if name.startswith("__label__"):
            name = name[len("__label__"):]
        if name not in by_name:
            raise ValueError(f"{path}:{i}: unknown relation label {name!r}")
        labels.append(by_name[name])
    return labels


def cmd_eval(args: argparse.Namespace) -> int:
    if args.compare:
        reports = {}
        for value in args.compare:
            name, sep, path = value.partition("=")
            if not sep:
                name, path = Path(value).stem, value
            data = json.loads(_read_text(path))
            from argproj.evaluate import ClassMetrics, EvalReport
            reports[name] = EvalReport(
                mode=data["mode"],
                per_class={k: ClassMetrics(**v) for k, v in data["per_class"].items()},
                headline_f1=data["headline_f1"],
            )
        table = compare_variants(reports)
        sys.stdout.write(table.render())
        if args.out:
            _write_json(table.to_json(), args.out)
        return 0
    if args.gold_relations or args.pred_relations:
        if not (args.gold_relations and args.pred_relations):
            raise ValueError("relation eval needs both --gold-relations and --pred-relations")
        gold = parse_relations(_read_text(args.gold_relations))
        pred = _read_relation_labels(args.pred_relations)
        _write_json(score_relations(gold, pred).to_json(), args.out)
        return 0
    if not (args.gold and args.pred):
        raise ValueError("component eval needs both --gold and --pred")
    gold = _read_corpus(args.gold, args.iob)
    pred = _read_corpus(args.pred, "repair")
    _write_json(score_components(gold, pred, mode=args.mode).to_json(), args.out)
    return 0


def cmd_merge(args: argparse.Namespace) -> int:
    corpora = [_read_corpus(path, args.iob) for path in args.corpus]
    merged = merge_corpora(corpora, seed=_resolve_seed(args), name=args.name)
    Path(args.out).write_text(serialize_conll(merged), encoding="utf-8")
    return 0


def cmd_export_relations(args: argparse.Namespace) -> int:
    instances = []
    for path in args.inputs:
        instances.extend(parse_relations(_read_text(path)))
    export_relations(instances, args.out)
    print(f"wrote {len(instances)} instances to {args.out}", file=sys.stderr)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from argproj.review.server import run_server
    from argproj.review.store import ReviewQueueConfig, ReviewStore

    session = Path(args.session)
    if not (session / "initial.json").exists():
        if not (args.src and args.tgt):
            raise ValueError(
                f"{session} is not initialized; pass --src and --tgt to create it")
        ReviewStore.initialize(
            session,
            _read_corpus(args.src, args.iob),
            _read_corpus(args.tgt, "repair"),
            ReviewQueueConfig(skip_full_components=not args.include_full_components),
        )
        print(f"initialized review session in {session}", file=sys.stderr)
    store = ReviewStore(session)
    run_server(store, host=args.host, port=args.port, token=args.token, ui_dir=args.ui_dir)
    return 0


# --- parser ---------------------------------------------------------------------


def _add_iob_flag(parser: argparse.ArgumentParser, default: str = "strict",
                  flag: str = "--iob") -> None:
    parser.add_argument(flag, choices=("strict", "repair"), default=default,
                        help=f"IOB handling for corpus input (default: {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argproj",
        description="Cross-lingual annotation projection toolkit for argument mining corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="label distribution of corpora / relation files")
    p.add_argument("--corpus", action="append", default=[], metavar="[NAME=]PATH")
    p.add_argument("--relations", action="append", default=[], metavar="[NAME=]PATH")
    p.add_argument("--out", help="write JSON report here (default: stdout)")
    _add_iob_flag(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("align-train", help="train an IBM Model 1 translation table")
    p.add_argument("--src-text", required=True, help="tokenized source text, one sentence per line")
    p.add_argument("--tgt-text", required=True, help="tokenized target text, line-aligned")
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--lowercase", action="store_true", help="case-fold all tokens")
    p.add_argument("--model", required=True, help="output JSON model path")
    p.set_defaults(func=cmd_align_train)

    p = sub.add_parser("align", help="write Pharaoh alignments for parallel text")
    p.add_argument("--model", required=True)
    p.add_argument("--reverse-model", help="optional model trained in the opposite direction")
    p.add_argument("--method", choices=("intersection", "union"), default="intersection",
                   help="symmetrization method when --reverse-model is given")
    p.add_argument("--src-text", required=True)
    p.add_argument("--tgt-text", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("project", help="project span annotations across alignments")
    p.add_argument("--src", required=True, help="annotated source corpus (CoNLL)")
    p.add_argument("--tgt", required=True, help="tokenized target text, line-aligned")
    p.add_argument("--align", required=True, help="Pharaoh alignment file, line-aligned")
    p.add_argument("--out", required=True, help="projected CoNLL output")
    p.add_argument("--report", help="JSON projection report")
    p.add_argument("--gap", type=int, default=2,
                   help="max unaligned-token run absorbed inside a span (default: 2)")
    p.add_argument("--exclude-punctuation", action="store_true",
                   help="strip punctuation from projected span edges")
    p.add_argument("--on-unprojectable", choices=("drop", "error"), default="drop")
    p.add_argument("--jobs", type=int, default=1, help="sentence-level parallelism")
    _add_iob_flag(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("postprocess", help="apply automatic correction rules")
    p.add_argument("--src", required=True, help="annotated source corpus (CoNLL)")
    p.add_argument("--tgt", required=True, help="projected target corpus (CoNLL)")
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="JSON report; appended under 'auto_corrections' if file exists")
    p.add_argument("--rules", help=f"comma-separated rule order (default: {','.join(DEFAULT_RULE_ORDER)})")
    p.add_argument("--articles", help="article lexicon file, one word per line")
    p.add_argument("--no-cover-punctuation", action="store_true",
                   help="full-component spans stop before edge punctuation")
    _add_iob_flag(p, default="strict", flag="--src-iob")
    _add_iob_flag(p, default="repair", flag="--tgt-iob")
    p.set_defaults(func=cmd_postprocess)

    p = sub.add_parser("eval", help="score components or relations")
    p.add_argument("--gold", help="gold CoNLL corpus")
    p.add_argument("--pred", help="predicted CoNLL corpus (parsed in repair mode)")
    p.add_argument("--mode", choices=("token", "span"), default="token")
    p.add_argument("--gold-relations", help="gold relation instance file")
    p.add_argument("--pred-relations", help="predicted labels (instance file or one label per line)")
    p.add_argument("--compare", action="append", default=[], metavar="[NAME=]REPORT.json",
                   help="compare saved eval reports instead of scoring")
    p.add_argument("--out")
    _add_iob_flag(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("merge", help="merge corpora with a document-level shuffle")
    p.add_argument("--corpus", action="append", required=True, metavar="PATH")
    p.add_argument("--seed", type=int, default=None,
                   help=f"shuffle seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--name", default="merged")
    p.add_argument("--out", required=True)
    _add_iob_flag(p)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("export-relations", help="concatenate and re-emit relation files")
    p.add_argument("--in", dest="inputs", action="append", required=True, metavar="PATH")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_relations)

    p = sub.add_parser("serve", help="run the manual-review HTTP server")
    p.add_argument("--session", required=True, help="session directory (created on first run)")
    p.add_argument("--src", help="annotated source corpus, required to initialize")
    p.add_argument("--tgt", help="post-processed target corpus, required to initialize")
    p.add_argument("--include-full-components", action="store_true",
                   help="do not drop source full-component sentences from the queue")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--token", help="require this value in the X-Review-Token header")
    p.add_argument("--ui-dir", help="serve a static review UI from this directory at /ui")
    _add_iob_flag(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors / --help itself
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as err:
        print(f"argproj: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
