"""Show why the winner-take-all SOM keeps a single live cluster on the
synthetic protocol.

Prints, per method, the scale of the projected features next to the scale
of the [0, 1) initial weights, the distance from each initial weight row to
the data, and the per-cluster win counts of the first epochs.

    python scripts/diagnose_som_collapse.py [--seed 0] [--k 100]
"""

import argparse

import numpy as np

from somclass.pipeline import select
from somclass.som import SomConfig, init_som, train
from somclass.synth import SynthSpec, generate


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--k", type=int, default=100)
    args = parser.parse_args()

    features, _, _ = generate(SynthSpec(seed=args.seed))
    for method in ("pca", "lsa"):
        _, projected = select(features, method, args.k)
        y = projected.data
        config = SomConfig(dim=args.k, clusters=5, seed=args.seed)
        w0 = init_som(config).weights
        spread = np.linalg.norm(y - y.mean(axis=1, keepdims=True), axis=0)
        to_data = np.linalg.norm(w0[:, :, None] - y[None, :, :], axis=1).min(axis=1)
        print(f"[{method}] k={args.k}")
        print(f"  feature column norms: max {np.linalg.norm(y, axis=0).max():.3f}, spread about mean max {spread.max():.3f}")
        print(f"  initial weight row norms: {np.round(np.linalg.norm(w0, axis=1), 3).tolist()}")
        print(f"  nearest-sample distance per initial row: {np.round(to_data, 3).tolist()}")
        model = train(projected, config)
        for rec in model.trace[:3]:
            print(f"  epoch {rec.epoch}: rate {rec.rate}, wins {list(rec.win_counts)}")
        print(f"  dead clusters after {model.epochs_run} epochs: {list(model.dead_clusters)}")


if __name__ == "__main__":
    main()
