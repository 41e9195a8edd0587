"""On-disk formats: dataset manifests, histogram caches and checksummed model files.

Manifest: one ``path,class_name`` record per line (UTF-8). Blank lines and
lines starting with ``#`` are skipped. The path is everything before the
last comma.

Histogram cache: a ``records=<m>,dim=<d>`` header, then one
``image_id,v0,...,v<d-1>`` line per column, with reals written as shortest
round-trip decimals.

Model file: one JSON object with keys ``format_version``, ``model_kind``,
``dims``, ``payload`` and ``checksum``. The checksum is
``sha256:<hex>`` over the compact, key-sorted JSON encoding of the other four
keys.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import CorruptFile, DuplicateId, EmptyInput, MissingFile, ValidationError, VersionMismatch
from .features import FeatureMatrix
from .lsa import LsaModel
from .pca import PcaModel
from .som import EpochTrace, SomConfig, SomModel

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Manifest:
    entries: tuple[tuple[str, str], ...]
    base_dir: str = "."

    @property
    def class_names(self) -> tuple[str, ...]:
        """Class names in order of first appearance."""
        return tuple(dict.fromkeys(name for _, name in self.entries))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(path for path, _ in self.entries)

    def resolve(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def labels_for(self, ids) -> np.ndarray:
        index = {name: i for i, name in enumerate(self.class_names)}
        by_id = dict(self.entries)
        missing = [i for i in ids if i not in by_id]
        if missing:
            raise ValidationError(f"{len(missing)} ids have no manifest entry, first: {missing[0]!r}")
        return np.array([index[by_id[i]] for i in ids], dtype=np.int64)


def _check_id(image_id: str, where: str) -> None:
    if not image_id or "," in image_id or "\n" in image_id or image_id != image_id.strip():
        raise ValidationError(f"{where}: unusable image id {image_id!r}")


def read_manifest(path) -> Manifest:
    if not os.path.isfile(path):
        raise MissingFile(f"{path}: no such manifest")
    entries = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "," not in line:
                raise ValidationError(f"{path}:{lineno}: expected 'path,class_name'")
            image, name = (part.strip() for part in line.rsplit(",", 1))
            _check_id(image, f"{path}:{lineno}")
            if not name:
                raise ValidationError(f"{path}:{lineno}: empty class name")
            if image in seen:
                raise DuplicateId(f"{path}:{lineno}: duplicate path {image!r}")
            seen.add(image)
            entries.append((image, name))
    if not entries:
        raise EmptyInput(f"{path}: manifest has no entries")
    return Manifest(tuple(entries), os.path.dirname(os.path.abspath(path)))


def write_manifest(entries, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for image, name in entries:
            fh.write(f"{image},{name}\n")


def write_cache(features: FeatureMatrix, path) -> None:
    lines = [f"records={features.cols},dim={features.rows}"]
    for image_id, column in zip(features.column_ids, features.data.T):
        _check_id(image_id, str(path))
        lines.append(image_id + "," + ",".join(repr(v) for v in column.tolist()))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_cache(path) -> FeatureMatrix:
    if not os.path.isfile(path):
        raise MissingFile(f"{path}: no such cache file")
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise CorruptFile(f"{path}: empty cache file")
    try:
        head = dict(part.split("=", 1) for part in lines[0].split(","))
        records, dim = int(head["records"]), int(head["dim"])
    except (KeyError, ValueError):
        raise CorruptFile(f"{path}: bad header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != records:
        raise CorruptFile(f"{path}: header promises {records} records, found {len(body)}")
    ids, cols = [], []
    for lineno, line in enumerate(body, 2):
        fields = line.split(",")
        if len(fields) != dim + 1:
            raise CorruptFile(f"{path}:{lineno}: expected {dim} values, got {len(fields) - 1}")
        try:
            cols.append([float(v) for v in fields[1:]])
        except ValueError:
            raise CorruptFile(f"{path}:{lineno}: non-numeric value") from None
        ids.append(fields[0])
    if records == 0:
        raise EmptyInput(f"{path}: cache has no records")
    return FeatureMatrix(np.array(cols, dtype=np.float64).T, tuple(ids))


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def write_document(kind: str, dims: dict, payload: dict, path) -> None:
    body = {"format_version": FORMAT_VERSION, "model_kind": kind, "dims": dims, "payload": payload}
    digest = hashlib.sha256(_canonical(body).encode("utf-8")).hexdigest()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_canonical({**body, "checksum": f"sha256:{digest}"}) + "\n")


def read_document(path, kind: str | None = None) -> dict:
    if not os.path.isfile(path):
        raise MissingFile(f"{path}: no such model file")
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptFile(f"{path}: unreadable model file ({exc})") from None
    if not isinstance(doc, dict) or not {"format_version", "model_kind", "dims", "payload", "checksum"} <= doc.keys():
        raise CorruptFile(f"{path}: missing model file fields")
    if doc["format_version"] != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: format version {doc['format_version']!r}, expected {FORMAT_VERSION}")
    body = {k: doc[k] for k in ("format_version", "model_kind", "dims", "payload")}
    digest = hashlib.sha256(_canonical(body).encode("utf-8")).hexdigest()
    if doc["checksum"] != f"sha256:{digest}":
        raise CorruptFile(f"{path}: checksum mismatch")
    if kind is not None and doc["model_kind"] != kind:
        raise ValidationError(f"{path}: expected a {kind} file, got {doc['model_kind']!r}")
    return doc


def _som_payload(model: SomModel) -> dict:
    cfg = model.config
    return {
        "config": {
            "dim": cfg.dim,
            "clusters": cfg.clusters,
            "initial_rate": cfg.initial_rate,
            "epochs": cfg.epochs,
            "seed": cfg.seed,
            "convergence_eps": cfg.convergence_eps,
        },
        "weights": model.weights.tolist(),
        "trained": model.trained,
        "epochs_run": model.epochs_run,
        "final_rate": model.final_rate,
        "converged": model.converged,
        "trace": [[t.epoch, t.rate, t.max_delta, list(t.win_counts)] for t in model.trace],
    }


def save_model(model, path) -> None:
    if isinstance(model, PcaModel):
        write_document(
            "pca",
            {"dim": model.dim, "k": model.k},
            {
                "mean": model.mean.tolist(),
                "basis": model.basis.tolist(),
                "eigenvalues": model.eigenvalues.tolist(),
                "spectrum": model.spectrum.tolist(),
            },
            path,
        )
    elif isinstance(model, LsaModel):
        write_document(
            "lsa",
            {"dim": model.dim, "k": model.k},
            {"u_k": model.u_k.tolist(), "s_k": model.s_k.tolist()},
            path,
        )
    elif isinstance(model, SomModel):
        write_document(
            "som",
            {"clusters": model.config.clusters, "dim": model.config.dim},
            _som_payload(model),
            path,
        )
    else:
        raise TypeError(f"cannot persist {type(model).__name__}")


def _array(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.shape != tuple(shape):
        raise CorruptFile(f"payload array has shape {arr.shape}, expected {tuple(shape)}")
    return arr


def load_model(path):
    doc = read_document(path)
    kind, dims, p = doc["model_kind"], doc["dims"], doc["payload"]
    try:
        if kind == "pca":
            d, k = dims["dim"], dims["k"]
            return PcaModel(
                mean=_array(p["mean"], (d,)),
                basis=_array(p["basis"], (d, k)),
                eigenvalues=_array(p["eigenvalues"], (k,)),
                spectrum=_array(p["spectrum"], (d,)),
            )
        if kind == "lsa":
            d, k = dims["dim"], dims["k"]
            return LsaModel(u_k=_array(p["u_k"], (d, k)), s_k=_array(p["s_k"], (k,)))
        if kind == "som":
            cfg = SomConfig(**p["config"])
            return SomModel(
                config=cfg,
                weights=_array(p["weights"], (cfg.clusters, cfg.dim)),
                trained=bool(p["trained"]),
                epochs_run=int(p["epochs_run"]),
                final_rate=float(p["final_rate"]),
                converged=bool(p["converged"]),
                trace=tuple(EpochTrace(int(e), float(r), float(d), tuple(w)) for e, r, d, w in p["trace"]),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFile(f"{path}: bad {kind} payload ({exc})") from None
    raise CorruptFile(f"{path}: unknown model kind {kind!r}")
