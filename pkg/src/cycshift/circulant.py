"""Circulant matrices: shift operators, fast application, least-squares fit.

A circulant matrix is determined by its first column; column j of the
dense matrix is that column cyclically shifted down by j. The Fourier
matrix diagonalizes every circulant, which gives O(n log n) products
and a closed-form least-squares fit of a circulant to data pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import dft, idft

__all__ = ["Circulant", "make_shift", "ls_circulant_fit"]

# Relative cutoff below which a spectral row counts as zero.
ZERO_ROW_TOL = 1e-12
# Allowed imaginary leakage (relative to the input norm) in apply().
_IMAG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Circulant:
    """Real circulant matrix stored by its first column.

    Storage is O(n); the dense matrix is never formed here (see
    :func:`cycshift.oracle.materialize` for an explicit version).
    Instances are immutable and safe to share between threads.
    """

    first_column: np.ndarray

    def __post_init__(self):
        col = np.array(self.first_column, dtype=np.float64)
        if col.ndim != 1 or col.size == 0:
            raise ValueError("first_column must be a nonempty 1-D real vector")
        col.flags.writeable = False
        object.__setattr__(self, "first_column", col)

    @property
    def n(self) -> int:
        return self.first_column.size

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sqrt(n) * dft(first_column), ordered by Fourier mode.

        For a real circulant the vector is conjugate-symmetric: entry 0
        is real, entry n-k is the conjugate of entry k, and entry n/2 is
        real when n is even.
        """
        return np.sqrt(self.n) * dft(self.first_column)

    def apply(self, x) -> np.ndarray:
        """Multiply by a real vector via the Fourier diagonalization.

        Computes idft(eigenvalues * dft(x)) and strips the (numerically
        tiny) imaginary part. A large imaginary residual would mean the
        eigenvalue bookkeeping is inconsistent, so it raises rather than
        silently truncating.
        """
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"dimension mismatch: matrix is {self.n}, vector has shape {x.shape}")
        y = idft(self.eigenvalues() * dft(x))
        if np.linalg.norm(y.imag) > _IMAG_TOL * np.linalg.norm(x):
            raise RuntimeError(
                "circulant application produced a non-real result; "
                "eigenvalue/transform conventions are inconsistent"
            )
        return y.real


def make_shift(n: int, s: int) -> Circulant:
    """Cyclic delay by ``s`` positions as an n-by-n circulant.

    Applying the result maps x[t] to x[(t - s) mod n]; s=0 gives the
    identity. The dense form is an orthonormal permutation matrix.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= s < n:
        raise ValueError(f"shift s={s} out of range 0..{n - 1}")
    col = np.zeros(n)
    col[s] = 1.0
    return Circulant(col)


def ls_circulant_fit(X, Y) -> tuple[Circulant, float]:
    """Circulant C minimizing the Frobenius error ||Y - C X||_F.

    The problem separates row-wise in the Fourier domain: each
    eigenvalue is the least-squares complex gain mapping the k-th
    spectral row of X onto the same row of Y,

        sigma_k = <x_row_k, y_row_k> / ||x_row_k||^2.

    Only the first floor(n/2)+1 eigenvalues are computed; the rest are
    mirrored as conjugates so the recovered first column is exactly
    real. Rows of X with negligible energy (relative threshold
    ``ZERO_ROW_TOL``) get a zero eigenvalue, which is the minimum-norm
    choice among the equally optimal ones.

    Parameters
    ----------
    X, Y : array_like
        Real matrices of identical shape (n, N); 1-D inputs are treated
        as single columns.

    Returns
    -------
    (Circulant, float)
        The fitted circulant and the residual ||Y - C X||_F, evaluated
        in the Fourier domain where the spectra are already available.
    """
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if Y.ndim == 1:
        Y = Y[:, None]
    if X.ndim != 2 or X.shape != Y.shape or X.size == 0:
        raise ValueError(f"X and Y must be real matrices of identical shape, got {X.shape} vs {Y.shape}")
    n = X.shape[0]

    Xs = np.fft.fft(X, axis=0, norm="ortho")
    Ys = np.fft.fft(Y, axis=0, norm="ortho")
    energy = np.sum(np.abs(Xs) ** 2, axis=1)
    cross = np.sum(np.conj(Xs) * Ys, axis=1)

    sigma = np.zeros(n, dtype=np.complex128)
    half = n // 2 + 1
    live = energy[:half] > ZERO_ROW_TOL * energy.max()
    sigma[:half][live] = cross[:half][live] / energy[:half][live]
    sigma[0] = sigma[0].real
    if n % 2 == 0:
        sigma[n // 2] = sigma[n // 2].real
    if half < n:
        sigma[half:] = np.conj(sigma[1 : n - half + 1][::-1])

    col = (idft(sigma) / np.sqrt(n)).real  # symmetry makes the imaginary part vanish
    residual = np.linalg.norm(Ys - sigma[:, None] * Xs)  # Frobenius norm is unitarily invariant
    return Circulant(col), float(residual)
