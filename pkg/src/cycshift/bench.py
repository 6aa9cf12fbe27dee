"""Monte-Carlo benchmark harness: success rates over a noise sweep.

Each trial plants a uniform random shift on a fresh Gaussian signal,
adds white Gaussian noise at the requested SNR, and asks an estimator
for the shift back. SNR is defined as ||signal||^2 / (n * sigma^2);
the sentinel value ``inf`` gives the noiseless row.

Determinism: every trial draws from its own generator seeded by
(master seed, trial index), so results do not depend on the order the
(snr, method) cells run in and trials of the same index share signal,
shift and raw noise across cells. Elapsed-time columns are the one
inherently non-reproducible output; set ``measure_time=False`` to zero
them when byte-identical files matter.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass

import numpy as np

from . import compressive, retrieval
from .errors import IdentifiabilityError

__all__ = ["METHODS", "COMPRESSIVE_METHODS", "ExperimentConfig", "config_from_file",
           "parse_snr", "noise_sigma", "run_bench", "rows_to_csv", "rows_to_json"]

METHODS = ("crosscorr", "ratio", "single_bin", "compressive_argmax", "compressive_ratio")
COMPRESSIVE_METHODS = ("compressive_argmax", "compressive_ratio")
CSV_COLUMNS = ("snr_db", "method", "n", "m", "trials", "success_rate", "mean_elapsed_us")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one benchmark sweep."""

    n: int
    trials: int
    seed: int
    snr_db_grid: tuple[float, ...]
    methods: tuple[str, ...] = METHODS
    sensing: tuple[int, ...] | None = None
    output: str | None = None
    fmt: str = "csv"
    measure_time: bool = True

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.snr_db_grid:
            raise ValueError("snr_db_grid is empty")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; choose from {METHODS}")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        if any(m in COMPRESSIVE_METHODS for m in self.methods):
            if self.sensing is None:
                raise ValueError("compressive methods need a sensing index list")
            compressive.SensingSet(self.n, self.sensing)  # raises if invalid


def parse_snr(token: str) -> float:
    """Parse one SNR token; the sentinel 'inf' means noiseless."""
    token = token.strip().lower()
    if token in ("inf", "+inf", "infinity"):
        return float("inf")
    return float(token)


def config_from_file(path) -> ExperimentConfig:
    """Load a config from JSON or from flat key=value lines.

    Recognized keys: n, trials, seed, snr_db_grid (or snr_db), methods,
    sensing, output (or out), format, measure_time. List values are
    comma-separated in the flat form.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            raw[key.strip()] = val.strip()
    return _config_from_mapping(raw)


def _split(val) -> list[str]:
    if isinstance(val, str):
        return [tok for tok in val.split(",") if tok.strip()]
    return list(val)


def _config_from_mapping(raw) -> ExperimentConfig:
    known = {"n", "trials", "seed", "snr_db", "snr_db_grid", "methods", "method",
             "sensing", "output", "out", "format", "measure_time"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "n" not in raw or "trials" not in raw or "seed" not in raw:
        raise ValueError("config needs at least n, trials and seed")
    snr_raw = raw.get("snr_db_grid", raw.get("snr_db"))
    if snr_raw is None:
        raise ValueError("config needs snr_db_grid (comma list; 'inf' for noiseless)")
    snr = tuple(parse_snr(str(tok)) for tok in _split(snr_raw))
    methods_raw = raw.get("methods", raw.get("method"))
    methods = tuple(str(m).strip() for m in _split(methods_raw)) if methods_raw else METHODS
    sensing_raw = raw.get("sensing")
    sensing = tuple(int(k) for k in _split(sensing_raw)) if sensing_raw else None
    measure_raw = raw.get("measure_time", True)
    if isinstance(measure_raw, str):
        measure_raw = measure_raw.strip().lower() not in ("0", "false", "no", "off")
    return ExperimentConfig(
        n=int(raw["n"]),
        trials=int(raw["trials"]),
        seed=int(raw["seed"]),
        snr_db_grid=snr,
        methods=methods,
        sensing=sensing,
        output=raw.get("output", raw.get("out")),
        fmt=str(raw.get("format", "csv")),
        measure_time=bool(measure_raw),
    )


def noise_sigma(x: np.ndarray, snr_db: float) -> float:
    """Per-sample noise std for the given SNR; 0 for the inf sentinel."""
    if np.isinf(snr_db):
        return 0.0
    snr = 10.0 ** (snr_db / 10.0)
    return float(np.sqrt(np.dot(x, x) / (x.size * snr)))


def _estimate(method: str, x, y, sensing_set):
    if method == "crosscorr":
        return retrieval.shift_by_crosscorr(x, y).shift
    if method == "ratio":
        return retrieval.shift_by_ratio(x, y).shift
    if method == "single_bin":
        return retrieval.shift_single_bin(x, y).shift
    v = compressive.measure(x, sensing_set)
    z = compressive.measure(y, sensing_set)
    if method == "compressive_argmax":
        return compressive.shift_by_compressive_argmax(z, v).shift
    if method == "compressive_ratio":
        return compressive.shift_by_compressive_ratio(z, v).shift
    raise ValueError(f"unknown method {method!r}")


def run_bench(config: ExperimentConfig) -> list[dict]:
    """Run the sweep and return one row dict per (snr, method) cell."""
    config.validate()
    sensing_set = (
        compressive.SensingSet(config.n, config.sensing) if config.sensing else None
    )
    rows = []
    for snr_db in config.snr_db_grid:
        for method in config.methods:
            successes = 0
            elapsed = 0.0
            for trial in range(config.trials):
                rng = np.random.default_rng([config.seed, trial])
                x = rng.standard_normal(config.n)
                s_true = int(rng.integers(config.n))
                y = np.roll(x, s_true)
                sigma = noise_sigma(x, snr_db)
                if sigma > 0.0:
                    y = y + sigma * rng.standard_normal(config.n)
                t0 = time.perf_counter()
                try:
                    s_hat = _estimate(method, x, y, sensing_set)
                except IdentifiabilityError:
                    s_hat = None  # counted as a miss
                elapsed += time.perf_counter() - t0
                successes += int(s_hat == s_true)
            rows.append({
                "snr_db": snr_db,
                "method": method,
                "n": config.n,
                "m": sensing_set.m if (method in COMPRESSIVE_METHODS and sensing_set) else config.n,
                "trials": config.trials,
                "success_rate": successes / config.trials,
                "mean_elapsed_us": (
                    int(round(elapsed / config.trials * 1e6)) if config.measure_time else 0
                ),
            })
    return rows


def _fmt_snr(value: float) -> str:
    return "inf" if np.isinf(value) else repr(float(value))


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            _fmt_snr(row["snr_db"]), row["method"], row["n"], row["m"],
            row["trials"], repr(float(row["success_rate"])), row["mean_elapsed_us"],
        ])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    out = [dict(row, snr_db=_fmt_snr(row["snr_db"])) for row in rows]
    return json.dumps(out, indent=2) + "\n"
