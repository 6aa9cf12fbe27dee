"""Cyclic-shift estimation between two equal-length real signals.

Four estimators are provided, trading robustness against work:

* :func:`shift_by_crosscorr` scores every candidate delay with the
  circular cross-correlation (always well defined, O(n log n)).
* :func:`shift_by_ratio` divides the spectra bin-by-bin; for exactly
  shifted pairs the inverse transform of the ratio is a unit impulse
  sitting at the shift.
* :func:`shift_single_bin` reads the phase of a single spectral ratio
  and inverts it modularly, using only O(n) work and two transform
  entries.
* :func:`shift_affine` extends the ratio method to pairs related by a
  gain and a constant offset, y = alpha * delay(x) + beta.

Shift direction convention: estimate s means y is x delayed by s
positions, i.e. y[t] = x[(t - s) mod n].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import IdentifiabilityError
from .spectral import dft, dft_entry, idft

__all__ = [
    "ShiftEstimate",
    "AffineShiftModel",
    "shift_by_crosscorr",
    "shift_by_ratio",
    "select_bin",
    "shift_single_bin",
    "shift_affine",
]

# Relative magnitude below which a spectral bin counts as zero.
ZERO_BIN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ShiftEstimate:
    """Recovered cyclic delay together with its diagnostic score(s).

    ``scores``, when present, holds one value per candidate shift;
    ``shift`` is its argmax (argmin for the residual-based
    ``compressive_ratio`` method). Ties always resolve to the smallest
    index. ``flags`` carries soft diagnostics such as ``"ambiguous"``
    or ``"model_misfit"`` that do not prevent an estimate from being
    returned.
    """

    method: str
    n: int
    shift: int
    score: float
    scores: np.ndarray | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.scores is not None:
            arr = np.array(self.scores, dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, "scores", arr)


@dataclass(frozen=True)
class AffineShiftModel:
    """Model y = alpha * delay(x, shift) + beta recovered by shift_affine."""

    shift: int
    alpha: float
    beta: float
    flags: tuple[str, ...] = ()


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("signals must be one-dimensional")
    if x.size == 0:
        raise ValueError("signals are empty")
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return x, y


def shift_by_crosscorr(x, y) -> ShiftEstimate:
    """Classic estimator: peak of the circular cross-correlation.

    The score vector is computed as sqrt(n) * idft(conj(dft(x)) * dft(y)),
    whose entry s equals the alignment inner product
    sum_t x[(t-s) mod n] * y[t]. For y an exact delay of x the peak
    value is ||x||^2.
    """
    x, y = _pair(x, y)
    if not x.any() or not y.any():
        raise IdentifiabilityError("cross-correlation needs nonzero signals")
    n = x.size
    scores = (np.sqrt(n) * idft(np.conj(dft(x)) * dft(y))).real
    s = int(np.argmax(scores))
    return ShiftEstimate("crosscorr", n, s, float(scores[s]), scores)


def shift_by_ratio(x, y) -> ShiftEstimate:
    """Ratio estimator: impulse position of the inverse spectral ratio.

    Divides the spectra on every usable bin (|X[i]| above the relative
    zero threshold), zeros the rest, and inverse-transforms with a 1/n
    scale so an exactly shifted pair with no excluded bin yields the
    unit impulse e_{s+1}. With excluded bins the impulse degrades but
    its argmax still marks the shift for generic signals.
    """
    x, y = _pair(x, y)
    n = x.size
    xs, ys = dft(x), dft(y)
    peak = np.abs(xs).max()
    if peak == 0.0:
        raise IdentifiabilityError("reference signal has no usable spectral bin (all zero)")
    usable = np.abs(xs) > ZERO_BIN_TOL * peak
    rho = np.zeros(n, dtype=np.complex128)
    rho[usable] = ys[usable] / xs[usable]
    d = (idft(rho) / np.sqrt(n)).real
    s = int(np.argmax(d))
    return ShiftEstimate("ratio", n, s, float(d[s]), d)


def select_bin(xspec) -> int:
    """Pick the strongest spectral bin able to disambiguate every shift.

    A bin i can distinguish all n cyclic shifts from its phase alone iff
    gcd(i, n) = 1; in particular bins 0 and n/2 (n even) carry only a
    sign for n > 2 and are never eligible. Among eligible bins with
    magnitude above the relative zero threshold, the largest one wins.

    Raises
    ------
    IdentifiabilityError
        If no bin is both nonzero and coprime with n (e.g. a constant
        signal, whose spectrum lives entirely in bin 0).
    """
    xs = np.asarray(xspec)
    if xs.ndim != 1 or xs.size < 2:
        raise ValueError("spectrum must be 1-D with length >= 2")
    n = xs.size
    mags = np.abs(xs)
    eligible = (np.gcd(np.arange(n), n) == 1) & (mags > ZERO_BIN_TOL * mags.max())
    if not eligible.any():
        raise IdentifiabilityError(
            "no usable bin: every nonzero bin fails the gcd(i, n) = 1 "
            "disambiguation condition (excluded bins cannot identify the shift)"
        )
    return int(np.argmax(np.where(eligible, mags, -1.0)))


def shift_single_bin(x, y, i: int | None = None, *, misfit_tol: float = 1e-6,
                     column_scan: bool = False) -> ShiftEstimate:
    """One-measurement estimator: invert the phase of a single ratio.

    Computes rho = Y[i]/X[i] from two directly evaluated transform
    entries (O(n) work, no full transform) and recovers the shift from
    the phase: with i coprime to n, the congruence i*s = t (mod n) has
    the unique solution s = t * i^{-1} mod n, where t is the phase of
    rho expressed in grid steps of 2*pi/n.

    Parameters
    ----------
    x, y : array_like
        Equal-length real signals.
    i : int, optional
        Spectral bin to use. Must satisfy gcd(i, n) = 1 and carry
        energy. When omitted, the best bin is chosen from the full
        spectrum of x (convenience path; costs a full transform).
    misfit_tol : float
        If ``abs(|rho| - 1)`` exceeds this, the estimate is flagged
        ``"model_misfit"`` (y is not a pure delay of x) but still
        returned.
    column_scan : bool
        Debug mode: recover the shift by scanning all n candidate
        phases for the nearest match instead of the modular inversion.
        Fills ``scores`` with negated distances.

    The estimate's score is |rho|, which equals 1 for exact shifts.
    """
    x, y = _pair(x, y)
    n = x.size
    if i is None:
        xs = dft(x)
        i = select_bin(xs) if n >= 2 else 0
        xi = complex(xs[i])
        if xi == 0.0:
            raise IdentifiabilityError("reference signal is zero")
        yi = complex(dft_entry(y, i))
    else:
        i = int(i)
        if not 0 <= i < n:
            raise ValueError(f"bin index i={i} out of range 0..{n - 1}")
        if gcd(i, n) != 1:
            raise IdentifiabilityError(
                f"bin {i} cannot disambiguate all {n} shifts: gcd({i}, {n}) != 1"
            )
        xi = complex(dft_entry(x, i))
        if abs(xi) <= ZERO_BIN_TOL * np.linalg.norm(x):
            raise IdentifiabilityError(f"bin {i} of the reference spectrum is numerically zero")
        yi = complex(dft_entry(y, i))

    rho = yi / xi
    flags = ("model_misfit",) if abs(abs(rho) - 1.0) > misfit_tol else ()

    if column_scan:
        cand = np.exp((-2j * np.pi / n) * (i * np.arange(n, dtype=np.int64) % n))
        dist = np.abs(rho - cand)
        s = int(np.argmin(dist))
        return ShiftEstimate("single_bin", n, s, float(abs(rho)), -dist, flags)

    t = int(np.round(-np.angle(rho) * n / (2 * np.pi))) % n
    s = (t * pow(i, -1, n)) % n if n > 1 else 0
    return ShiftEstimate("single_bin", n, int(s), float(abs(rho)), None, flags)


def shift_affine(x, y) -> tuple[AffineShiftModel, float]:
    """Fit y = alpha * delay(x, s) + beta * ones.

    The inverse spectral ratio of such a pair is alpha * e_{s+1} plus
    the constant beta/sum(x): a spike riding on a pedestal. The spike
    position is the entry furthest from the mean (robust to the sign of
    alpha); alpha and beta then follow from the spike height over the
    leave-one-out mean and from the pedestal itself.

    Requires sum(x) != 0 (otherwise beta is unidentifiable) and at
    least one usable bin with gcd(i, n) = 1. When |alpha| is negligible
    the shift is meaningless and the model is flagged
    ``"alpha_unidentifiable"``.

    Returns
    -------
    (AffineShiftModel, float)
        The fitted model and the reconstruction residual
        ||y - alpha * delay(x, s) - beta||_2.
    """
    x, y = _pair(x, y)
    n = x.size
    if n < 2:
        raise ValueError("affine shift fit needs n >= 2")
    total = float(x.sum())
    if abs(total) <= ZERO_BIN_TOL * n * max(1.0, float(np.abs(x).max())):
        raise IdentifiabilityError("sum(x) is numerically zero: the offset term is unidentifiable")

    xs, ys = dft(x), dft(y)
    mags = np.abs(xs)
    usable = mags > ZERO_BIN_TOL * mags.max()
    usable[0] = True  # guaranteed nonzero by the sum(x) check
    if not (usable & (np.gcd(np.arange(n), n) == 1)).any():
        raise IdentifiabilityError("no usable coprime bin: the shift part is unidentifiable")

    rho = np.zeros(n, dtype=np.complex128)
    rho[usable] = ys[usable] / xs[usable]
    d = (idft(rho) / np.sqrt(n)).real

    s = int(np.argmax(np.abs(d - d.mean())))
    pedestal = float(np.delete(d, s).mean())
    alpha = float(d[s] - pedestal)
    beta = pedestal * total

    flags: tuple[str, ...] = ()
    if abs(alpha) <= 1e-9 * max(1.0, float(np.abs(y).max())):
        flags = ("alpha_unidentifiable",)

    residual = float(np.linalg.norm(y - alpha * np.roll(x, s) - beta))
    return AffineShiftModel(s, alpha, beta, flags), residual
