"""Command line front door.

Subcommands wire the library into one audit run or expose the
individual stages (matrix export, coverage stats, structure dumps,
payload mutation, single-category classification).

Exit codes: 0 success, 1 input or parse failure, 2 when findings exist
and --fail-on-findings was given.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from urllib.parse import quote

from . import classify, corpus as corpus_mod, matcher, mutate, normalize, report, stats, structural
from .errors import AuditError


def _add_shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--signatures", type=Path, help="signature file (default: bundled set)")
    parser.add_argument("--vectors", type=Path, help="vector file (default: bundled set)")
    parser.add_argument("--pipeline", type=Path, help="pipeline JSON file (default: stock pipeline)")
    parser.add_argument("--raw", action="store_true", help="use the empty pipeline")
    parser.add_argument("--format", default="json", choices=["json", "text", "csv"])
    parser.add_argument("--seed", type=int, default=0, help="PRNG seed for mutation probing")
    parser.add_argument("--jobs", type=int, default=1, help="matrix worker bound (output identical for any value)")
    parser.add_argument("--case-sensitive", action="store_true", help="disable case-insensitive matching")


def _load_corpus(args) -> corpus_mod.Corpus:
    if args.signatures is None and args.vectors is None:
        return corpus_mod.bundled_corpus()
    if args.signatures is None or args.vectors is None:
        raise AuditError("--signatures and --vectors must be given together")
    fmt = "json" if str(args.signatures).endswith(".json") else "tsv"
    return corpus_mod.load_corpus(args.signatures, args.vectors, format=fmt)


def _load_pipeline(args) -> normalize.Pipeline:
    if args.raw:
        return normalize.RAW_PIPELINE
    if args.pipeline is not None:
        return normalize.Pipeline.from_json(args.pipeline.read_text(encoding="utf-8"))
    return normalize.default_pipeline()


def _families(args):
    if getattr(args, "families", None) is None:
        return None
    return classify.default_families() + classify.load_families(args.families)


def _cmd_audit(args) -> int:
    rep = report.run_audit(
        sig_path=args.signatures,
        vec_path=args.vectors,
        pipeline_path=args.pipeline,
        raw=args.raw,
        set_a_path=args.set_a,
        families=_families(args),
        seed=args.seed,
        jobs=args.jobs,
        case_sensitive=args.case_sensitive,
    )
    sys.stdout.buffer.write(report.render(rep, args.format))
    if args.fail_on_findings and rep.findings:
        return 2
    return 0


def _cmd_matrix(args) -> int:
    corpus = _load_corpus(args)
    pipeline = _load_pipeline(args)
    m = matcher.detection_matrix(
        corpus, pipeline, case_sensitive=args.case_sensitive, jobs=args.jobs
    )
    if args.format == "csv":
        sys.stdout.write(m.to_csv())
    else:
        sys.stdout.write(m.to_json() + "\n")
    return 0


def _cmd_stats(args) -> int:
    if args.matrix:
        m = matcher.DetectionMatrix.from_json(args.matrix.read_text(encoding="utf-8"))
    else:
        corpus = _load_corpus(args)
        m = matcher.detection_matrix(
            corpus, _load_pipeline(args), case_sensitive=args.case_sensitive, jobs=args.jobs
        )
    profile = stats.contribution(m)
    doc = {"profile": profile.to_dict()}
    set_a = None
    if args.set_a:
        set_a = [
            l.strip()
            for l in args.set_a.read_text(encoding="utf-8").splitlines()
            if l.strip() and not l.startswith("#")
        ]
    elif set(corpus_mod.bundled_set_a()) <= set(m.signature_ids):
        set_a = corpus_mod.bundled_set_a()
    if set_a:
        a, b = stats.partition(m, ids=set_a)
        doc["partition"] = {"set_a": sorted(a), "set_b": sorted(b)}
        doc["overlap"] = stats.overlap(m, a, b).to_dict()
    if args.histogram:
        lines = ["signature,count"]
        lines += [f"{e.signature_id},{e.count}" for e in profile.entries]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_structure(args) -> int:
    corpus = _load_corpus(args)
    try:
        sig = corpus.signature(args.sig_id)
    except KeyError:
        raise AuditError(f"no such signature: {args.sig_id}") from None
    tokenized = structural.extract_operators(sig)
    subs = structural.expand_subrules(sig)
    bounds = structural.bounded_specials(sig)
    doc = {
        "signature": sig.id,
        "pattern": sig.pattern_source,
        "operators": sorted(tokenized.operators),
        "subrules": list(subs.subrules),
        "expansion_complete": subs.expansion_complete,
        "bounds": [
            {
                "position": b.position,
                "char_class": b.char_class,
                "max_occurrences": b.max_occurrences,
            }
            for b in bounds
        ],
    }
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_mutate(args) -> int:
    schemes = tuple(mutate.parse_scheme(tok) for tok in args.schemes.split(",")) if args.schemes else mutate.DEFAULT_SCHEMES
    config = mutate.MutationConfig(schemes=schemes, budget=args.budget, seed=args.seed)
    for mutant, _scheme in mutate.generate(args.payload, config):
        sys.stdout.write(quote(mutant, safe="") + "\n")
    return 0


def _cmd_classify(args) -> int:
    rep = report.run_audit(
        sig_path=args.signatures,
        vec_path=args.vectors,
        pipeline_path=args.pipeline,
        raw=args.raw,
        families=_families(args),
        seed=args.seed,
        jobs=args.jobs,
        case_sensitive=args.case_sensitive,
    )
    wanted = {tok.strip().lower() for tok in args.only.split(",")} if args.only else None
    rows = [
        dict(f.to_dict(), corpus_fingerprint=rep.corpus_fingerprint,
             pipeline_fingerprint=rep.pipeline_fingerprint)
        for f in rep.findings
        if wanted is None or f.label.value.lower() in wanted
    ]
    sys.stdout.write(json.dumps(rows, sort_keys=True, indent=2) + "\n")
    if args.fail_on_findings and rows:
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sig-audit",
        description="Audit a regex signature set against an attack-vector corpus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="full audit run")
    _add_shared(p)
    p.add_argument("--set-a", type=Path, help="file listing the generic signature set")
    p.add_argument("--families", type=Path, help="JSON file with extra related-operator families")
    p.add_argument("--fail-on-findings", action="store_true", help="exit 2 when any finding exists")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("matrix", help="export the detection matrix")
    _add_shared(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("stats", help="contribution and overlap statistics")
    _add_shared(p)
    p.add_argument("--matrix", type=Path, help="previously exported matrix JSON")
    p.add_argument("--set-a", type=Path)
    p.add_argument("--histogram", action="store_true", help="emit a per-signature count CSV")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("structure", help="operators, sub-rules and bounds of one signature")
    _add_shared(p)
    p.add_argument("sig_id")
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("mutate", help="print url-encoded mutants of a payload")
    p.add_argument("--payload", required=True)
    p.add_argument("--schemes", help="comma list, e.g. case_toggle,comment_inject")
    p.add_argument("--budget", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("classify", help="findings only, optionally one category")
    _add_shared(p)
    p.add_argument("--only", help="comma list of labels, e.g. redundant,susceptible")
    p.add_argument("--families", type=Path, help="JSON file with extra related-operator families")
    p.add_argument("--fail-on-findings", action="store_true")
    p.set_defaults(func=_cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AuditError, OSError, ValueError) as exc:
        print(f"sig-audit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
