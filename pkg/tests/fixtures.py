"""Published result tables used as fixtures.

PCA100_COUNTS is the 100-vector PCA confusion table as printed: one row per
true class, one column per predicted class. SUM_ROW holds the correct counts
of the six PCA/LSA runs (50, 100, 150 vectors each) out of 250 images, and
DISPLAY_ROW the percents printed beneath them.
"""

CLASS_NAMES = ("Flower", "Animal", "Car", "River", "Mountain")

PCA100_COUNTS = (
    (47, 1, 2, 0, 0),
    (3, 44, 1, 1, 1),
    (0, 2, 47, 0, 1),
    (1, 3, 1, 40, 5),
    (1, 1, 0, 4, 44),
)

RUN_LABELS = ("PCA/50", "PCA/100", "PCA/150", "LSA/50", "LSA/100", "LSA/150")
PER_CLASS_CORRECT = (
    (42, 47, 43, 40, 41, 46),
    (41, 44, 41, 33, 39, 35),
    (39, 47, 42, 34, 38, 42),
    (29, 40, 35, 22, 33, 25),
    (27, 44, 39, 24, 35, 30),
)
SUM_ROW = (178, 222, 200, 153, 186, 178)
DISPLAY_ROW = (71, 88, 80, 61, 74, 71)
IMAGES = 250


def pca100_labels():
    """(predicted, truth) label sequences reproducing PCA100_COUNTS."""
    predicted, truth = [], []
    for t, row in enumerate(PCA100_COUNTS):
        for p, n in enumerate(row):
            predicted += [p] * n
            truth += [t] * n
    return predicted, truth
