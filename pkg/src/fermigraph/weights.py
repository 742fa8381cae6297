"""Nearest-neighbour exchange constants.

A :class:`WeightSet` carries the ``N - 1`` exchange constants ``alpha_k``
between sites ``k`` and ``k + 1``.  They depend only on the trap and on
``N``.  The box trap has a closed form; harmonic, quartic or any other trap
values are read from files produced elsewhere.

Weight file formats
-------------------
JSON::

    {"n": 5, "potential": "harmonic", "L_or_omega": 1.0,
     "alphas": [a1, a2, a3, a4], "source": "where the numbers came from"}

CSV, header ``k,alpha`` followed by rows ``k = 1 .. N-1``.  Lines starting
with ``#`` are ignored; ``# key: value`` comment lines set metadata.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Sequence

import numpy as np

PROVENANCES = ("uniform", "box", "file", "random")
DEFAULT_RANDOM_RANGE = (0.1, 10.0)


class WeightFileError(ValueError):
    """Malformed weight file; the message names the offending line or field."""


@dataclass(frozen=True)
class WeightSet:
    alphas: tuple[float, ...]
    provenance: str = "uniform"
    potential: str = ""
    l_or_omega: float | None = None
    source: str = ""
    units: str = ""
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        if not alphas:
            raise ValueError("need at least one exchange constant (N >= 2)")
        for k, a in enumerate(alphas, start=1):
            if not math.isfinite(a) or a <= 0:
                raise ValueError(f"alpha_{k} must be finite and > 0, got {a!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "alphas", alphas)

    @property
    def n(self) -> int:
        return len(self.alphas) + 1

    @property
    def d(self) -> float:
        """Total weight ``sum(alpha_k)``; the degree of every vertex of the Cayley graph."""
        return math.fsum(self.alphas)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.alphas, dtype=float)

    def __getitem__(self, k: int) -> float:
        """1-based access, ``w[k] == alpha_k``."""
        if not 1 <= k <= len(self.alphas):
            raise IndexError(k)
        return self.alphas[k - 1]

    def __len__(self) -> int:
        return len(self.alphas)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "potential": self.potential or self.provenance,
            "L_or_omega": self.l_or_omega,
            "alphas": list(self.alphas),
            "source": self.source,
        }


def uniform_weights(n: int, alpha: float = 1.0) -> WeightSet:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return WeightSet((float(alpha),) * (n - 1), provenance="uniform", potential="uniform")


def box_alpha(n: int, length: float) -> float:
    """Exchange constant of ``n`` fermions in a hard-wall box of size ``length``.

    All bonds carry the same value ``pi^2 n (n+1) (2n+1) / (6 L^3)``.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not length > 0:
        raise ValueError(f"box length must be positive, got {length}")
    return math.pi**2 * n * (n + 1) * (2 * n + 1) / (6.0 * length**3)


def box_weights(n: int, length: float = 1.0) -> WeightSet:
    alpha = box_alpha(n, length)
    return WeightSet((alpha,) * (n - 1), provenance="box", potential="box", l_or_omega=float(length),
                     source="closed form for a hard-wall box")


def random_weights(n: int, seed: int, range: tuple[float, float] = DEFAULT_RANDOM_RANGE) -> WeightSet:
    """Log-uniform draws in ``range``, reproducible from ``seed``."""
    lo, hi = range
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 < lo <= hi or not math.isfinite(hi):
        raise ValueError(f"invalid range {range}")
    rng = np.random.default_rng(seed)
    alphas = np.exp(rng.uniform(math.log(lo), math.log(hi), size=n - 1))
    return WeightSet(tuple(alphas.tolist()), provenance="random", potential="random",
                     source=f"log-uniform[{lo}, {hi}] seed={seed}", meta={"seed": seed})


def _validate_alphas(values: Sequence, where: str, start: int = 1) -> tuple[float, ...]:
    out = []
    for k, raw in enumerate(values, start=start):
        try:
            a = float(raw)
        except (TypeError, ValueError):
            raise WeightFileError(f"{where}: alpha_{k} is not a number: {raw!r}") from None
        if not math.isfinite(a) or a <= 0:
            raise WeightFileError(f"{where}: alpha_{k} must be finite and > 0, got {raw!r}")
        out.append(a)
    return tuple(out)


def _load_json(text: str, name: str) -> WeightSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WeightFileError(f"{name}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise WeightFileError(f"{name}: top level must be an object")
    for key in ("n", "alphas"):
        if key not in doc:
            raise WeightFileError(f"{name}: missing field {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise WeightFileError(f"{name}: field 'n' must be an integer >= 2, got {n!r}")
    if not isinstance(doc["alphas"], list):
        raise WeightFileError(f"{name}: field 'alphas' must be a list")
    alphas = _validate_alphas(doc["alphas"], f"{name}: field 'alphas'")
    if len(alphas) != n - 1:
        raise WeightFileError(f"{name}: field 'alphas' has {len(alphas)} entries, expected n-1 = {n - 1}")
    lw = doc.get("L_or_omega")
    if lw is not None and not isinstance(lw, (int, float)):
        raise WeightFileError(f"{name}: field 'L_or_omega' must be a number or null")
    return WeightSet(alphas, provenance="file", potential=str(doc.get("potential", "")),
                     l_or_omega=None if lw is None else float(lw), source=str(doc.get("source", "")),
                     units=str(doc.get("units", "")), meta={"path": name})


def _load_csv(text: str, name: str) -> WeightSet:
    meta: dict[str, str] = {}
    body = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, sep, value = stripped[1:].partition(":")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        body.append((lineno, line))
    if not body:
        raise WeightFileError(f"{name}: empty CSV")
    header_line, header = body[0]
    cols = [c.strip() for c in next(csv.reader([header]))]
    if cols != ["k", "alpha"]:
        raise WeightFileError(f"{name}: line {header_line}: header must be 'k,alpha', got {header.strip()!r}")
    alphas = []
    for expected_k, (lineno, line) in enumerate(body[1:], start=1):
        row = [c.strip() for c in next(csv.reader([line]))]
        if len(row) != 2:
            raise WeightFileError(f"{name}: line {lineno}: expected 2 fields, got {len(row)}")
        try:
            k = int(row[0])
        except ValueError:
            raise WeightFileError(f"{name}: line {lineno}: k is not an integer: {row[0]!r}") from None
        if k != expected_k:
            raise WeightFileError(f"{name}: line {lineno}: expected k={expected_k}, got k={k}")
        alphas.extend(_validate_alphas([row[1]], f"{name}: line {lineno}", start=k))
    if not alphas:
        raise WeightFileError(f"{name}: no data rows")
    if "n" in meta and int(meta["n"]) != len(alphas) + 1:
        raise WeightFileError(f"{name}: header declares n={meta['n']} but has {len(alphas)} rows")
    lw = meta.get("L_or_omega")
    return WeightSet(tuple(alphas), provenance="file", potential=meta.get("potential", ""),
                     l_or_omega=float(lw) if lw not in (None, "", "null") else None,
                     source=meta.get("source", ""), units=meta.get("units", ""), meta={"path": name})


def load_weights(source: str | Path | IO[str], fmt: str | None = None) -> WeightSet:
    """Read a weight file; the format follows the extension unless ``fmt`` is given."""
    if hasattr(source, "read"):
        text = source.read()
        name = getattr(source, "name", "<stream>")
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise WeightFileError(f"{path}: {exc.strerror}") from None
        name = str(path)
        fmt = fmt or path.suffix.lstrip(".").lower()
    fmt = (fmt or "json").lower()
    if fmt == "json":
        return _load_json(text, name)
    if fmt == "csv":
        return _load_csv(text, name)
    raise WeightFileError(f"{name}: unsupported weight file format {fmt!r}")


def dump_weights(w: WeightSet, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(w.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# n: {w.n}\n")
        if w.potential:
            buf.write(f"# potential: {w.potential}\n")
        if w.l_or_omega is not None:
            buf.write(f"# L_or_omega: {w.l_or_omega!r}\n")
        if w.source:
            buf.write(f"# source: {w.source}\n")
        buf.write("k,alpha\n")
        for k, a in enumerate(w.alphas, start=1):
            buf.write(f"{k},{a!r}\n")
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def save_weights(w: WeightSet, path: str | Path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "json"
    path.write_text(dump_weights(w, fmt), encoding="utf-8")
    return path


def parse_weight_source(spec: str, n: int) -> WeightSet:
    """Resolve a ``kind:value`` weight source string for ``n`` particles.

    ``uniform:1.5``, ``box:1``, ``random:7`` and ``file:path`` are understood.
    File paths may contain ``{n}``, which is replaced by the particle count.
    """
    kind, sep, value = spec.partition(":")
    kind = kind.strip().lower()
    if not sep:
        raise ValueError(f"weight source must look like kind:value, got {spec!r}")
    if kind == "uniform":
        return uniform_weights(n, float(value))
    if kind == "box":
        return box_weights(n, float(value))
    if kind == "random":
        return random_weights(n, int(value))
    if kind == "file":
        path = Path(value.replace("{n}", str(n)))
        if path.is_dir():
            return _weights_from_dir(path, n)
        w = load_weights(path)
        if w.n != n:
            raise WeightFileError(f"{path}: file is for n={w.n}, needed n={n}")
        return w
    raise ValueError(f"unknown weight source kind {kind!r}")


def _weights_from_dir(directory: Path, n: int) -> WeightSet:
    for path in sorted(directory.iterdir()):
        if path.suffix.lower() not in (".json", ".csv"):
            continue
        w = load_weights(path)
        if w.n == n:
            return w
    raise WeightFileError(f"{directory}: no weight file for n={n}")
