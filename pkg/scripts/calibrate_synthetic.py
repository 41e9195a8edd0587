"""Run the straight-line reference pipeline over the synthetic protocol and
record the observed accuracies and the acceptance thresholds derived from them.

Protocol: 5 classes x 50 histograms (256 bins), selection k=100, SOM with
5 clusters, alpha 0.5, 500 epochs, seeds 0..9 (data seed == SOM seed).
The nominal targets are 90 (PCA) and 80 (LSA); when the reference falls
short, the threshold becomes the reference minimum minus 5 points.

    python scripts/calibrate_synthetic.py [--out tests/data/synthetic_calibration.json]
"""

import argparse
import json
import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from somclass.synth import SynthSpec, generate  # noqa: E402
from tests import reference  # noqa: E402

NOMINAL = {"pca": 90, "lsa": 80}
SEEDS = range(10)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(ROOT, "tests", "data", "synthetic_calibration.json"))
    args = parser.parse_args()

    observed = {m: [] for m in NOMINAL}
    for seed in SEEDS:
        x, y, _ = generate(SynthSpec(seed=seed))
        for method in NOMINAL:
            acc = reference.run(x.data, y, method, k=100, clusters=5, seed=seed)
            observed[method].append(acc)
            print(f"seed {seed} {method}: {acc}%")

    result = {"spec": SynthSpec().__dict__ | {"seed": "0..9"}, "k": 100, "clusters": 5, "methods": {}}
    for method, nominal in NOMINAL.items():
        accs = observed[method]
        # the nominal bar holds if 9 of 10 seeds reach it
        meets = sum(a >= nominal for a in accs) >= 9
        threshold = nominal if meets else min(accs) - 5
        result["methods"][method] = {
            "observed": accs,
            "nominal": nominal,
            "nominal_met": meets,
            "threshold": threshold,
        }
        print(f"{method}: observed {accs} -> threshold {threshold} (nominal {nominal}, met={meets})")
    with open(args.out, "w") as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
