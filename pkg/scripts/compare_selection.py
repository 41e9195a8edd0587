"""Six-run comparison on synthetic data: PCA and LSA at k = 50, 100, 150.

Mirrors the layout of the published comparison table (per-class correct
counts, their sum and the truncated percent per run) on the synthetic
5 x 50 histogram corpus.

    python scripts/compare_selection.py [--seed 0] [--clusters 5]
"""

import argparse

from somclass.pipeline import PipelineConfig, run_pipeline
from somclass.report import render_comparison
from somclass.synth import SynthSpec, generate


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--clusters", type=int, default=5)
    args = parser.parse_args()

    features, labels, names = generate(SynthSpec(seed=args.seed))
    reports, run_labels = [], []
    for method in ("pca", "lsa"):
        for k in (50, 100, 150):
            config = PipelineConfig(method=method, k=k, clusters=args.clusters, seed=args.seed)
            result = run_pipeline(features, labels, names, config)
            reports.append(result.evaluation.report)
            run_labels.append(f"{method.upper()}/{k}")
            dead = result.som.dead_clusters
            print(f"{method}/{k}: {result.som.epochs_run} epochs, dead clusters {list(dead)}")
    print()
    print(render_comparison(reports, run_labels))


if __name__ == "__main__":
    main()
