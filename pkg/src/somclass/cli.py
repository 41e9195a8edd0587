"""``somclass`` command line.

Subcommands mirror the pipeline stages and can be chained through the files
they write, or run in one go with ``pipeline``. Exit codes: 0 success,
1 numerical failure, 2 usage or validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import persist
from .errors import SomclassError, ValidationError
from .evaluation import ClusterMapping, ConfusionMatrix, accuracy
from .features import FeatureMatrix
from .pipeline import Evaluation, PipelineConfig, evaluate, extract_features, run_pipeline, select, stage
from .report import render_comparison, render_csv, render_text
from .som import SomConfig, SomModel, train
from .synth import SynthSpec, generate

HISTOGRAMS = "histograms.csv"
MANIFEST = "manifest.csv"
SELECTION = "selection_model.json"
FEATURES = "features.csv"
SOM = "som_model.json"
TRACE = "train_trace.csv"
ASSIGNMENTS = "assignments.csv"
EVALUATION = "evaluation.json"
REPORT_TXT = "report.txt"
REPORT_CSV = "report.csv"


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _out_dir(path) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def write_selection(model, projected: FeatureMatrix, out: str) -> None:
    persist.save_model(model, os.path.join(out, SELECTION))
    persist.write_cache(projected, os.path.join(out, FEATURES))


def write_training(som: SomModel, out: str) -> None:
    persist.save_model(som, os.path.join(out, SOM))
    header = "epoch,rate,max_delta," + ",".join(f"wins_{j}" for j in range(som.config.clusters))
    rows = [header] + [
        f"{t.epoch},{t.rate!r},{t.max_delta!r}," + ",".join(str(w) for w in t.win_counts)
        for t in som.trace
    ]
    _write_text(os.path.join(out, TRACE), "\n".join(rows) + "\n")


def write_evaluation(ev: Evaluation, ids, out: str) -> None:
    cm, mapping, report = ev.confusion, ev.mapping, ev.report
    rows = ["image_id,cluster,true_class,mapped_class"]
    for image_id, p, t in zip(ids, ev.predicted, ev.truth):
        mapped = mapping.cluster_to_class[p]
        rows.append(
            f"{image_id},{int(p)},{cm.class_names[t]},{'' if mapped is None else cm.class_names[mapped]}"
        )
    _write_text(os.path.join(out, ASSIGNMENTS), "\n".join(rows) + "\n")
    persist.write_document(
        "evaluation",
        {"clusters": cm.clusters, "classes": cm.classes},
        {
            "class_names": list(cm.class_names),
            "counts": cm.counts.tolist(),
            "cluster_to_class": list(mapping.cluster_to_class),
            "truncate": report.truncate,
        },
        os.path.join(out, EVALUATION),
    )
    _write_text(os.path.join(out, REPORT_TXT), render_text(cm, report))
    _write_text(os.path.join(out, REPORT_CSV), render_csv(report))


def load_evaluation(run_dir: str):
    doc = persist.read_document(os.path.join(run_dir, EVALUATION), kind="evaluation")
    p = doc["payload"]
    cm = ConfusionMatrix(np.array(p["counts"], dtype=np.int64), tuple(p["class_names"]))
    mapping = ClusterMapping(tuple(p["cluster_to_class"]))
    return cm, accuracy(cm, mapping, bool(p["truncate"]))


def _run_label(run_dir: str) -> str:
    path = os.path.join(run_dir, SELECTION)
    if os.path.isfile(path):
        doc = persist.read_document(path)
        return f"{doc['model_kind'].upper()}/{doc['dims']['k']}"
    return os.path.basename(os.path.normpath(run_dir))


def _labels(manifest_path: str, features: FeatureMatrix):
    manifest = persist.read_manifest(manifest_path)
    return manifest.labels_for(features.column_ids), manifest.class_names


def cmd_extract(args) -> int:
    with stage("extract"):
        manifest = persist.read_manifest(args.manifest)
        features = extract_features(manifest)
        persist.write_cache(features, args.out)
    print(f"wrote {features.cols} histograms to {args.out}")
    return 0


def cmd_synth(args) -> int:
    with stage("synth"):
        spec = SynthSpec(
            classes=args.classes,
            per_class=args.per_class,
            dim=args.dim,
            separation=args.separation,
            noise=args.noise,
            seed=args.seed,
        )
        features, labels, names = generate(spec)
        out = _out_dir(args.out)
        persist.write_cache(features, os.path.join(out, HISTOGRAMS))
        persist.write_manifest(
            [(i, names[c]) for i, c in zip(features.column_ids, labels)], os.path.join(out, MANIFEST)
        )
    print(f"wrote {features.cols} synthetic histograms to {out}")
    return 0


def cmd_select(args) -> int:
    with stage("select"):
        features = persist.read_cache(args.cache)
        model, projected = select(features, args.method, args.k)
        write_selection(model, projected, _out_dir(args.out))
    print(f"{args.method} k={args.k}: wrote {SELECTION} and {FEATURES} to {args.out}")
    return 0


def cmd_train(args) -> int:
    with stage("train"):
        projected = persist.read_cache(args.cache)
        config = SomConfig(
            dim=projected.rows,
            clusters=args.clusters,
            initial_rate=args.alpha,
            epochs=args.epochs,
            seed=args.seed,
            convergence_eps=args.eps,
        )
        som = train(projected, config)
        write_training(som, _out_dir(args.out))
    state = "converged" if som.converged else "stopped"
    print(f"{state} after {som.epochs_run} epochs; dead clusters: {list(som.dead_clusters)}")
    return 0


def cmd_evaluate(args) -> int:
    with stage("evaluate"):
        projected = persist.read_cache(args.cache)
        som = persist.load_model(args.model)
        if not isinstance(som, SomModel):
            raise ValidationError(f"{args.model}: not a SOM model")
        truth, names = _labels(args.manifest, projected)
        ev = evaluate(som, projected, truth, names, not args.no_truncate)
        write_evaluation(ev, projected.column_ids, _out_dir(args.out))
    sys.stdout.write(render_text(ev.confusion, ev.report))
    return 0


def cmd_pipeline(args) -> int:
    if args.cache is None and args.manifest is None:
        raise ValidationError("pipeline needs --manifest, or --cache with --manifest for labels")
    if args.manifest is None:
        raise ValidationError("--manifest is required to supply ground-truth classes")
    config = PipelineConfig(
        method=args.method,
        k=args.k,
        clusters=args.clusters,
        alpha=args.alpha,
        epochs=args.epochs,
        seed=args.seed,
        eps=args.eps,
        truncate=not args.no_truncate,
    )
    out = _out_dir(args.out)
    with stage("extract"):
        if args.cache is not None:
            features = persist.read_cache(args.cache)
        else:
            features = extract_features(persist.read_manifest(args.manifest))
            persist.write_cache(features, os.path.join(out, HISTOGRAMS))
        truth, names = _labels(args.manifest, features)
    result = run_pipeline(features, truth, names, config)
    with stage("write"):
        write_selection(result.selection, result.projected, out)
        write_training(result.som, out)
        write_evaluation(result.evaluation, result.projected.column_ids, out)
    sys.stdout.write(render_text(result.evaluation.confusion, result.evaluation.report))
    return 0


def cmd_report(args) -> int:
    with stage("report"):
        runs = [load_evaluation(d) for d in args.runs]
        labels = [_run_label(d) for d in args.runs]
    if args.csv:
        for label, (_, report) in zip(labels, runs):
            sys.stdout.write(f"# {label}\n" + render_csv(report))
        return 0
    if len(runs) == 1:
        cm, report = runs[0]
        sys.stdout.write(f"{labels[0]}\n" + render_text(cm, report))
    else:
        sys.stdout.write(render_comparison([r for _, r in runs], labels) + "\n")
    return 0


def _add_som_flags(p) -> None:
    p.add_argument("--clusters", type=int, default=5, help="number of clusters j (default 5)")
    p.add_argument("--alpha", type=float, default=0.5, help="initial learning rate (default 0.5)")
    p.add_argument("--epochs", type=int, default=500, help="maximum epochs (default 500)")
    p.add_argument("--seed", type=int, default=0, help="64-bit PRNG seed for weight init")
    p.add_argument("--eps", type=float, default=1e-6, help="convergence threshold on max weight change")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="somclass", description="Histogram + PCA/LSA + SOM image clustering")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="histogram the images listed in a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="histogram cache file to write")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("synth", help="write a synthetic histogram cache and manifest")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--classes", type=int, default=5)
    p.add_argument("--per-class", type=int, default=50)
    p.add_argument("--dim", type=int, default=256)
    p.add_argument("--separation", type=float, default=SynthSpec.separation)
    p.add_argument("--noise", type=float, default=SynthSpec.noise)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("select", help="fit PCA or LSA and project the cache")
    p.add_argument("--cache", required=True)
    p.add_argument("--method", choices=("pca", "lsa"), default="pca")
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("train", help="train the SOM on projected features")
    p.add_argument("--cache", required=True, help="projected features (features.csv)")
    _add_som_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="assign clusters and score them against the manifest")
    p.add_argument("--cache", required=True, help="projected features (features.csv)")
    p.add_argument("--model", required=True, help="trained SOM model file")
    p.add_argument("--manifest", required=True)
    p.add_argument("--no-truncate", action="store_true", help="show percents to 2 decimals")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    p.add_argument("--manifest")
    p.add_argument("--cache", help="start from a histogram cache instead of images")
    p.add_argument("--method", choices=("pca", "lsa"), default="pca")
    p.add_argument("--k", type=int, default=100)
    _add_som_flags(p)
    p.add_argument("--no-truncate", action="store_true", help="show percents to 2 decimals")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("report", help="render saved evaluations (several runs side by side)")
    p.add_argument("--from", dest="runs", action="append", required=True, metavar="DIR")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SomclassError as exc:
        where = getattr(exc, "stage", None)
        prefix = f"{where}: " if where else ""
        print(f"somclass: {prefix}{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"somclass: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
