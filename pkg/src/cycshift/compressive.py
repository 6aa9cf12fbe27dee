"""Shift retrieval from partial-Fourier measurements.

A measurement keeps only m <= n entries of the unitary spectrum, chosen
by a :class:`SensingSet` of frequency indices. Because cyclic delays
act on each spectral entry as a pure phase, the shift between two
signals survives this compression: a single well-chosen bin is enough.

The m-by-n sensing matrix is conceptually a row subset of the Fourier
matrix but is never formed in production paths; :func:`measure`
evaluates the needed transform entries directly. Only the test-scale
:func:`argmax_identity_check` materializes matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .circulant import make_shift
from .errors import IdentifiabilityError
from .oracle import materialize
from .retrieval import ZERO_BIN_TOL, ShiftEstimate
from .spectral import dft, dft_entry, fourier_column

__all__ = [
    "SensingSet",
    "Measurement",
    "SensingReport",
    "measure",
    "embed",
    "check_sensing_conditions",
    "shift_by_compressive_argmax",
    "shift_by_compressive_ratio",
    "argmax_identity_check",
]

# Two measurement columns closer than this (sup norm) count as duplicates.
DUPLICATE_COLUMN_TOL = 1e-9


@dataclass(frozen=True)
class SensingSet:
    """Strictly increasing frequency indices retained by a measurement."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise ValueError(f"ambient dimension must be positive, got {n}")
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("sensing set is empty")
        if any(not 0 <= i < n for i in idx):
            raise ValueError(f"sensing indices {idx} out of range 0..{n - 1}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"sensing indices must be strictly increasing, got {idx}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "indices", idx)

    @property
    def m(self) -> int:
        return len(self.indices)


@dataclass(frozen=True, eq=False)
class Measurement:
    """Compressed spectrum: complex values at the sensing indices."""

    values: np.ndarray
    sensing: SensingSet

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.size != self.sensing.m:
            raise ValueError(
                f"expected {self.sensing.m} measurement values, got shape {vals.shape}"
            )
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


def measure(x, sensing: SensingSet) -> Measurement:
    """Measure a signal: unitary-DFT entries at the sensing indices.

    Each entry is evaluated directly in O(n); the sensing matrix is
    never materialized.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (sensing.n,):
        raise ValueError(f"signal shape {x.shape} does not match ambient dimension {sensing.n}")
    vals = np.array([dft_entry(x, k) for k in sensing.indices])
    return Measurement(vals, sensing)


def embed(values, sensing: SensingSet) -> np.ndarray:
    """Scatter m values into a length-n complex vector, zeros elsewhere."""
    vals = np.asarray(values, dtype=np.complex128)
    if vals.ndim != 1 or vals.size != sensing.m:
        raise ValueError(f"expected {sensing.m} values, got shape {vals.shape}")
    out = np.zeros(sensing.n, dtype=np.complex128)
    out[list(sensing.indices)] = vals
    return out


def _phase_table(sensing: SensingSet, rows: np.ndarray | None = None) -> np.ndarray:
    """exp(-2j*pi*k*s/n) for sensing indices k (rows) and shifts s (columns)."""
    n = sensing.n
    k = np.asarray(sensing.indices if rows is None else rows, dtype=np.int64)[:, None]
    s = np.arange(n, dtype=np.int64)[None, :]
    return np.exp((-2j * np.pi / n) * (k * s % n))


def _duplicate_groups(values: np.ndarray, indices, n: int,
                      tol: float = DUPLICATE_COLUMN_TOL) -> tuple[tuple[int, ...], ...]:
    """Group shifts whose measurement columns coincide within tol.

    Column s of the (conceptual) measured-shift matrix is
    values * exp(-2j*pi*k*s/n); two shifts in the same group cannot be
    told apart from these measurements.
    """
    idx = np.asarray(indices, dtype=np.int64)
    cols = np.asarray(values)[:, None] * _phase_table(SensingSet(n, tuple(idx)), idx)
    groups = []
    assigned = np.zeros(n, dtype=bool)
    for s in range(n):
        if assigned[s]:
            continue
        close = np.abs(cols - cols[:, [s]]).max(axis=0) <= tol
        members = np.flatnonzero(close & ~assigned)
        assigned[members] = True
        groups.append(tuple(int(v) for v in members))
    return tuple(groups)


@dataclass(frozen=True)
class SensingReport:
    """Diagnostics for a (signal, sensing set) pair.

    ``guarantee_holds`` is true iff some retained bin both carries
    energy and is coprime with n; such a bin pins down the shift
    uniquely. ``frame_alpha`` reports the tight-frame constant (always
    1 for rows of a unitary matrix). ``duplicate_shift_groups`` lists
    the groups of shifts, larger than a singleton, whose measurements
    coincide; ``ambiguous`` is true when any exist.
    """

    n: int
    indices: tuple[int, ...]
    qualifying_bins: tuple[int, ...]
    guarantee_holds: bool
    frame_alpha: float
    frame_ok: bool
    ambiguous: bool
    duplicate_shift_groups: tuple[tuple[int, ...], ...]


def check_sensing_conditions(x, sensing: SensingSet) -> SensingReport:
    """Check whether a sensing set can recover shifts of this signal.

    Three conditions are evaluated: (a) existence of a retained bin k
    with nonzero spectrum and gcd(k, n) = 1, which guarantees exact
    recovery; (b) the tight-frame property alpha * A A^H = I, which
    holds with alpha = 1 by construction for distinct rows of the
    unitary Fourier matrix; (c) absence of shift ambiguity, i.e. all n
    columns of the measured-shift matrix pairwise distinct beyond
    ``DUPLICATE_COLUMN_TOL``. Purely diagnostic: never raises.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (sensing.n,):
        raise ValueError(f"signal shape {x.shape} does not match ambient dimension {sensing.n}")
    n = sensing.n
    xs = dft(x)
    peak = np.abs(xs).max()
    qualifying = tuple(
        k for k in sensing.indices
        if gcd(k, n) == 1 and abs(xs[k]) > ZERO_BIN_TOL * peak
    )
    v = measure(x, sensing).values
    groups = _duplicate_groups(v, sensing.indices, n)
    dup = tuple(g for g in groups if len(g) > 1)
    return SensingReport(
        n=n,
        indices=sensing.indices,
        qualifying_bins=qualifying,
        guarantee_holds=bool(qualifying),
        frame_alpha=1.0,
        frame_ok=True,
        ambiguous=bool(dup),
        duplicate_shift_groups=dup,
    )


def _common_sensing(z: Measurement, v: Measurement) -> SensingSet:
    if not isinstance(z, Measurement) or not isinstance(v, Measurement):
        raise TypeError("expected Measurement inputs")
    if z.sensing != v.sensing:
        raise ValueError("measurements use different sensing sets")
    return z.sensing


def _ambiguity_flag(values: np.ndarray, indices, n: int, shift: int) -> tuple[str, ...]:
    groups = _duplicate_groups(values, indices, n)
    for g in groups:
        if shift in g:
            return ("ambiguous",) if len(g) > 1 else ()
    return ()


def shift_by_compressive_argmax(z: Measurement, v: Measurement) -> ShiftEstimate:
    """Correlation test on compressed measurements.

    Scores each candidate shift s with
    Re( sum_i conj(z_i) * v_i * exp(-2j*pi*k_i*s/n) ) and returns the
    argmax. With z measured from a delayed copy of v's signal every
    term peaks simultaneously at the true shift. If the winning shift
    sits in a duplicate measurement class the estimate is flagged
    ``"ambiguous"``.
    """
    sensing = _common_sensing(z, v)
    w = np.conj(z.values) * v.values
    scores = (w @ _phase_table(sensing)).real
    s = int(np.argmax(scores))
    flags = _ambiguity_flag(v.values, sensing.indices, sensing.n, s)
    return ShiftEstimate("compressive_argmax", sensing.n, s, float(scores[s]), scores, flags)


def shift_by_compressive_ratio(z: Measurement, v: Measurement) -> ShiftEstimate:
    """Ratio test on compressed measurements.

    On bins where the reference measurement is nonzero, rho_i = z_i/v_i
    must equal the unit phase exp(-2j*pi*k_i*s/n) of the true shift;
    the estimator returns the s whose phase vector is nearest to rho in
    least squares. ``scores`` holds the n match residuals (argmin
    semantics) and ``score`` the winning residual, which is ~0 for
    exactly shifted pairs.

    Bins with |v_i| at or below the relative zero threshold are dropped
    (flag ``"dropped_bins"``); if the survivors cannot distinguish all
    shifts the estimate is additionally flagged ``"ambiguous"``.
    """
    sensing = _common_sensing(z, v)
    mags = np.abs(v.values)
    peak = mags.max()
    if peak == 0.0:
        raise IdentifiabilityError("every reference measurement bin is zero")
    keep = mags > ZERO_BIN_TOL * peak
    if not keep.any():
        raise IdentifiabilityError("every reference measurement bin was dropped as zero")
    kept_idx = np.asarray(sensing.indices, dtype=np.int64)[keep]
    rho = z.values[keep] / v.values[keep]
    table = _phase_table(sensing, kept_idx)
    residuals = np.linalg.norm(rho[:, None] - table, axis=0)
    s = int(np.argmin(residuals))
    flags = list(_ambiguity_flag(v.values[keep], kept_idx, sensing.n, s))
    if not keep.all():
        flags.append("dropped_bins")
    return ShiftEstimate(
        "compressive_ratio", sensing.n, s, float(residuals[s]), residuals, tuple(flags)
    )


def argmax_identity_check(z: Measurement, v: Measurement, shift: int,
                          *, max_n: int = 64) -> tuple[float, float]:
    """Evaluate both sides of the compressed-correlation identity.

    The left side materializes the sensing matrix A and the shift
    matrix P and evaluates Re(z^H A P^shift A^H v) with dense products.
    The right side uses no matrices at all: it embeds conj(z) * v into
    the ambient dimension and takes its inner product against
    sqrt(n) times the Fourier column of the shift. The two must agree;
    this is a test-scale operation (n <= ``max_n``).
    """
    sensing = _common_sensing(z, v)
    n = sensing.n
    if n > max_n:
        raise ValueError(f"identity check materializes {n}x{n} matrices; limit is {max_n}")
    if not 0 <= shift < n:
        raise ValueError(f"shift {shift} out of range 0..{n - 1}")

    rows = np.asarray(sensing.indices, dtype=np.int64)
    A = np.exp((-2j * np.pi / n) * (np.outer(rows, np.arange(n)) % n)) / np.sqrt(n)
    P = materialize(make_shift(n, shift))
    lhs = float(np.vdot(z.values, A @ (P @ (A.conj().T @ v.values))).real)

    r = embed(np.conj(z.values) * v.values, sensing)
    rhs = float((r @ (np.sqrt(n) * fourier_column(n, shift + 1))).real)
    return lhs, rhs
