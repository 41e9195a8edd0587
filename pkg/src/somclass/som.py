"""Winner-take-all self-organizing map.

Training presents the columns of the feature matrix in order. For each
sample the row of ``W`` with the smallest squared distance wins and moves a
fraction ``rate`` of the way towards the sample. Only the winner moves; there
is no neighbourhood. The rate is halved after every epoch, and training stops
early once an epoch changes no weight by ``convergence_eps`` or more.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, InvalidConfig, ModelNotTrained
from .features import FeatureMatrix
from .rng import SplitMix64

_U64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class SomConfig:
    dim: int
    clusters: int = 5
    initial_rate: float = 0.5
    epochs: int = 500
    seed: int = 0
    convergence_eps: float = 1e-6

    def __post_init__(self):
        for name in ("dim", "clusters", "epochs", "seed"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise InvalidConfig(f"{name} must be an integer, got {value!r}")
        if self.dim < 1 or self.clusters < 1 or self.epochs < 1:
            raise InvalidConfig("dim, clusters and epochs must all be >= 1")
        if not 0.0 < self.initial_rate <= 1.0:
            raise InvalidConfig(f"initial rate must be in (0, 1], got {self.initial_rate}")
        if not self.convergence_eps > 0.0:
            raise InvalidConfig(f"convergence_eps must be > 0, got {self.convergence_eps}")
        if not 0 <= self.seed <= _U64_MAX:
            raise InvalidConfig(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class EpochTrace:
    epoch: int
    rate: float
    max_delta: float
    win_counts: tuple[int, ...]


@dataclass(frozen=True)
class SomModel:
    config: SomConfig
    weights: np.ndarray
    trained: bool = False
    epochs_run: int = 0
    final_rate: float = 0.0
    converged: bool = False
    trace: tuple[EpochTrace, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.weights.shape != (self.config.clusters, self.config.dim):
            raise DimensionMismatch(
                f"weights shape {self.weights.shape} does not match "
                f"({self.config.clusters}, {self.config.dim})"
            )
        if not np.all(np.isfinite(self.weights)):
            raise InvalidConfig("weights must be finite")
        if self.epochs_run > self.config.epochs:
            raise InvalidConfig("epochs_run exceeds the configured epochs")

    @property
    def dead_clusters(self) -> tuple[int, ...]:
        """Clusters that never won a sample during training."""
        if not self.trace:
            return ()
        totals = np.sum([t.win_counts for t in self.trace], axis=0)
        return tuple(int(j) for j in np.flatnonzero(totals == 0))


def init_som(config: SomConfig) -> SomModel:
    """Untrained model with weights uniform in [0, 1), drawn row-major from the seed."""
    weights = SplitMix64(config.seed).uniform_array((config.clusters, config.dim))
    return SomModel(config=config, weights=weights, final_rate=config.initial_rate)


def winner(weights: np.ndarray, sample: np.ndarray) -> int:
    """Index of the row nearest to ``sample`` in squared distance; lowest index on ties."""
    sample = np.asarray(sample, dtype=np.float64)
    if weights.ndim != 2 or sample.shape != (weights.shape[1],):
        raise DimensionMismatch(f"sample of shape {sample.shape} vs weights {weights.shape}")
    diff = weights - sample
    return int(np.argmin(np.einsum("ij,ij->i", diff, diff)))


def update_winner(weights: np.ndarray, index: int, sample: np.ndarray, rate: float) -> np.ndarray:
    """Return a copy of ``weights`` with row ``index`` moved towards ``sample``."""
    if not 0 <= index < weights.shape[0]:
        raise IndexOutOfRange(f"winner {index} outside [0, {weights.shape[0]})")
    if not 0.0 < rate <= 1.0:
        raise InvalidConfig(f"rate must be in (0, 1], got {rate}")
    out = np.array(weights, dtype=np.float64)
    out[index] = out[index] + rate * (sample - out[index])
    return out


def decay_rate(rate: float) -> float:
    if not rate > 0.0:
        raise InvalidConfig(f"rate must be positive, got {rate}")
    return 0.5 * rate


def train(x: FeatureMatrix, config: SomConfig, initial_weights: np.ndarray | None = None) -> SomModel:
    """Train on the columns of ``x``; ``initial_weights`` overrides the seeded init."""
    if x.rows != config.dim:
        raise DimensionMismatch(f"config.dim={config.dim} but features have {x.rows} rows")
    if initial_weights is None:
        weights = init_som(config).weights
    else:
        weights = np.array(initial_weights, dtype=np.float64)
        if weights.shape != (config.clusters, config.dim):
            raise DimensionMismatch(f"initial weights shape {weights.shape}")

    samples = np.ascontiguousarray(x.data.T)
    rate = config.initial_rate
    trace = []
    converged = False
    epoch = 0
    while epoch < config.epochs:
        epoch += 1
        start = weights.copy()
        wins = np.zeros(config.clusters, dtype=np.int64)
        for sample in samples:
            diff = weights - sample
            j = int(np.argmin(np.einsum("ij,ij->i", diff, diff)))
            weights[j] = weights[j] + rate * (sample - weights[j])
            wins[j] += 1
        delta = float(np.max(np.abs(weights - start)))
        trace.append(EpochTrace(epoch, rate, delta, tuple(int(w) for w in wins)))
        rate = decay_rate(rate)
        if delta < config.convergence_eps:
            converged = True
            break

    return SomModel(
        config=config,
        weights=weights,
        trained=True,
        epochs_run=epoch,
        final_rate=rate,
        converged=converged,
        trace=tuple(trace),
    )


def assign(model: SomModel, x: FeatureMatrix) -> np.ndarray:
    """Cluster label (0-based) of every column."""
    if not model.trained:
        raise ModelNotTrained("assign needs a trained model")
    if x.rows != model.weights.shape[1]:
        raise DimensionMismatch(f"model has dim {model.weights.shape[1]}, features {x.rows}")
    # direct differences, not the expanded |w|^2 - 2w.x + |x|^2 form, so ties stay exact
    return np.array([winner(model.weights, col) for col in x.data.T], dtype=np.int64)
