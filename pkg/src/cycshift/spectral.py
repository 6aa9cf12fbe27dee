"""Unitary discrete Fourier transform primitives.

Every transform in this package uses the unitary convention: both the
forward and the inverse transform carry a 1/sqrt(n) factor, so the
transform matrix F satisfies F^H F = F F^H = I and the 2-norm of a
vector is preserved. The forward kernel is exp(-2j*pi*a*b/n) for
0-based indices a, b. Any length n >= 1 is supported, including primes.

All functions are pure and never modify their inputs.
"""

from __future__ import annotations

import numpy as np

__all__ = ["dft", "idft", "fourier_column", "dft_entry"]

# Above this length dft_entry switches to a blocked evaluation that only
# needs O(sqrt(n)) complex exponentials instead of n.
_ENTRY_BLOCK = 2048


def _as_vector(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    return arr


def dft(x) -> np.ndarray:
    """Unitary discrete Fourier transform of a 1-D real or complex vector.

    Parameters
    ----------
    x : array_like
        Input vector of length n >= 1.

    Returns
    -------
    numpy.ndarray
        Complex spectrum X with X[a] = (1/sqrt(n)) * sum_b x[b] *
        exp(-2j*pi*a*b/n).
    """
    return np.fft.fft(_as_vector(x), norm="ortho")


def idft(X) -> np.ndarray:
    """Inverse of :func:`dft` under the same unitary convention.

    Uses the conjugate kernel with the identical 1/sqrt(n) scale, so
    ``idft(dft(x))`` reproduces ``x`` to machine precision.
    """
    return np.fft.ifft(_as_vector(X, "X"), norm="ortho")


def fourier_column(n: int, q: int) -> np.ndarray:
    """Column ``q`` (1-based) of the n-point unitary Fourier matrix.

    Row ``a`` holds (1/sqrt(n)) * exp(-2j*pi*a*(q-1)/n); the result
    equals ``dft(e_q)`` for the q-th standard basis vector. The 1-based
    ``q`` mirrors the usual linear-algebra column numbering.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 1 <= q <= n:
        raise ValueError(f"column index q={q} out of range 1..{n}")
    rows = np.arange(n, dtype=np.int64)
    return np.exp((-2j * np.pi / n) * ((q - 1) * rows % n)) / np.sqrt(n)


def dft_entry(x, k: int):
    """Single entry of the unitary DFT, evaluated directly in O(n).

    Computes ``dft(x)[k]`` without forming the full transform, which is
    what makes one-bin shift estimation a linear-time operation. Accepts
    a 1-D signal or a 2-D stack of signals (one per row; the entry is
    taken along the last axis, and the per-signal phase table is shared).

    For long inputs the kernel is built from O(sqrt(n)) exponentials via
    a block decomposition; all phase arguments are reduced mod n before
    exponentiation, so no accuracy is lost to large trig arguments.

    Returns a complex scalar for 1-D input, a complex vector for 2-D.
    """
    arr = np.asarray(x)
    if arr.ndim not in (1, 2) or arr.shape[-1] == 0:
        raise ValueError("x must be a nonempty 1-D vector or 2-D stack of vectors")
    n = arr.shape[-1]
    if not 0 <= k < n:
        raise ValueError(f"bin index k={k} out of range 0..{n - 1}")
    if not np.iscomplexobj(arr):
        arr = arr.astype(np.float64, copy=False)

    if n <= 2 * _ENTRY_BLOCK:
        phases = np.exp((-2j * np.pi / n) * (k * np.arange(n, dtype=np.int64) % n))
        return (arr @ phases) / np.sqrt(n)

    b = _ENTRY_BLOCK
    m = -(-n // b)
    padded = np.zeros(arr.shape[:-1] + (m * b,), dtype=arr.dtype)
    padded[..., :n] = arr
    within = np.exp((-2j * np.pi / n) * (k * np.arange(b, dtype=np.int64) % n))
    across = np.exp(
        (-2j * np.pi / n) * ((k * b % n) * np.arange(m, dtype=np.int64) % n)
    )
    partial = padded.reshape(arr.shape[:-1] + (m, b)) @ within
    return (partial @ across) / np.sqrt(n)
