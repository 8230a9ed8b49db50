"""Toeplitz difference matrices and grid-operator application.

The weighted-shifted difference approximations act on a uniform grid
``x_i = a + i h`` as lower-Hessenberg Toeplitz matrices: with diagonal-shift
one (all schemes used by the solvers have largest shift ``p = 1``), the
matrix entry at (i, j) is ``w_{i-j+1}``, so the superdiagonal carries
``w_0`` and the main diagonal ``w_1``.  This module assembles those
matrices, applies the left/right operators directly to grid functions
(stencil-wise, without forming a matrix — the redundancy lets tests catch
indexing mistakes), builds the boundary contribution vector for two-level
time stepping, and provides quadratic-cost and FFT-accelerated Toeplitz
matrix-vector products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import weights as wt
from .errors import ParameterError

__all__ = [
    "GridFunction1D",
    "ToeplitzOperator",
    "assemble_wsgd_matrix",
    "assemble_3wsgd_matrix",
    "assemble_shifted_pair_matrix",
    "operator_weights",
    "apply_left_wsgd",
    "apply_right_wsgd",
    "boundary_vector",
    "toeplitz_matvec_direct",
    "toeplitz_matvec_fft",
]


@dataclass(frozen=True)
class GridFunction1D:
    """Nodal values of a function on the uniform grid ``x_i = a + i h``.

    ``values`` holds all ``N + 1`` nodes including both endpoints.
    """

    values: np.ndarray
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 3:
            raise ParameterError("a 1D grid function needs at least 3 nodes (N >= 2)")
        if not self.b > self.a:
            raise ParameterError(f"domain must satisfy b > a, got [{self.a}, {self.b}]")
        object.__setattr__(self, "values", values)

    @property
    def n_intervals(self) -> int:
        return self.values.size - 1

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_intervals


@dataclass(frozen=True)
class ToeplitzOperator:
    """A Toeplitz matrix stored by its first column and first row."""

    first_col: np.ndarray = field(repr=False)
    first_row: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        col = np.asarray(self.first_col, dtype=float)
        row = np.asarray(self.first_row, dtype=float)
        if col.ndim != 1 or row.ndim != 1 or col.size != row.size or col.size < 1:
            raise ParameterError("first column and first row must be 1D and equally long")
        if col[0] != row[0]:
            raise ParameterError("first column and first row must share the corner entry")
        object.__setattr__(self, "first_col", col)
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return self.first_col.size

    def to_dense(self) -> np.ndarray:
        return scipy.linalg.toeplitz(self.first_col, self.first_row)

    def transpose(self) -> "ToeplitzOperator":
        return ToeplitzOperator(self.first_row, self.first_col)

    @property
    def T(self) -> "ToeplitzOperator":
        return self.transpose()


def operator_weights(alpha: float, scheme: str, count: int) -> np.ndarray:
    """Difference weights for any scheme tag, as a plain array.

    ``"gl"`` gives the raw first-order coefficients used with shift 1; the
    other tags give the second/third-order combinations.
    """
    if scheme == wt.GL:
        return wt.grunwald_coefficients(alpha, count).values
    if scheme in (wt.P1Q0, wt.P1QM1):
        return wt.wsgd2_weights(alpha, scheme, count).values
    if scheme == wt.PQR:
        return wt.wsgd3_weights(alpha, count).values
    raise ParameterError(f"unsupported scheme {scheme!r}; expected one of {wt.SCHEME_TAGS!r}")


def _shift_one_toeplitz(w: np.ndarray, n: int) -> ToeplitzOperator:
    """Toeplitz matrix with entry (i, j) = w_{i-j+1} (shift-one layout)."""
    if w.size < n + 1:
        raise ParameterError("not enough weights for the requested matrix order")
    col = w[1:n + 1].copy()
    row = np.zeros(n)
    row[0] = w[1]
    if n > 1:
        row[1] = w[0]
    return ToeplitzOperator(col, row)


def assemble_wsgd_matrix(alpha: float, scheme: str, n: int) -> ToeplitzOperator:
    """Second-order difference matrix of order n: entry (i, j) = ``w_{i-j+1}``.

    The superdiagonal carries ``w_0``, the main diagonal ``w_1``, the k-th
    subdiagonal ``w_{k+1}``; everything above the superdiagonal is zero.
    """
    if n < 2:
        raise ParameterError(f"matrix order must be at least 2, got {n}")
    if scheme not in (wt.P1Q0, wt.P1QM1):
        raise ParameterError(f"expected scheme {wt.P1Q0!r} or {wt.P1QM1!r}, got {scheme!r}")
    w = wt.wsgd2_weights(alpha, scheme, n + 1).values
    return _shift_one_toeplitz(w, n)


def assemble_3wsgd_matrix(alpha: float, n: int) -> ToeplitzOperator:
    """Third-order difference matrix for shifts (1, 0, -1), same layout."""
    if n < 3:
        raise ParameterError(f"matrix order must be at least 3, got {n}")
    mu = wt.wsgd3_weights(alpha, n + 1).values
    return _shift_one_toeplitz(mu, n)


def assemble_shifted_pair_matrix(alpha: float, p: int, q: int, n: int) -> ToeplitzOperator:
    """Difference matrix for an arbitrary shift pair: entry (i, j) = ``v_{i-j+p}``.

    Weights with negative index are zero, so ``p`` controls how many
    superdiagonals are populated.
    """
    if n < 2:
        raise ParameterError(f"matrix order must be at least 2, got {n}")
    p, q = int(p), int(q)
    count = max(n + p, n, 3 + abs(p - q))
    v = wt.shifted_pair_weights(alpha, p, q, count).values

    def entry(idx: int) -> float:
        return v[idx] if 0 <= idx < v.size else 0.0

    col = np.array([entry(k + p) for k in range(n)])
    row = np.array([entry(p - k) for k in range(n)])
    return ToeplitzOperator(col, row)


def _scheme_weights_for_grid(alpha: float, scheme: str, count: int) -> np.ndarray:
    w = operator_weights(alpha, scheme, max(count, 4))
    return w[:count]


def apply_left_wsgd(u: GridFunction1D, alpha: float, scheme: str) -> np.ndarray:
    """Left-sided fractional difference at the interior nodes.

    Returns ``r_i = h^{-alpha} * sum_{k=0}^{i+1} w_k u_{i-k+1}`` for
    ``i = 1 .. N-1``.  The stencil reaches both endpoint values, so no
    separate boundary handling is needed here.
    """
    n_nodes = u.values.size
    w = _scheme_weights_for_grid(alpha, scheme, n_nodes)
    full = np.convolve(w, u.values)
    return full[2:n_nodes] / u.h**alpha


def apply_right_wsgd(u: GridFunction1D, alpha: float, scheme: str) -> np.ndarray:
    """Right-sided fractional difference at the interior nodes.

    Returns ``r_i = h^{-alpha} * sum_{k=0}^{N-i+1} w_k u_{i+k-1}`` for
    ``i = 1 .. N-1`` — the mirror image of :func:`apply_left_wsgd`.
    """
    n_nodes = u.values.size
    w = _scheme_weights_for_grid(alpha, scheme, n_nodes)
    full = np.convolve(w, u.values[::-1])
    return full[2:n_nodes][::-1] / u.h**alpha


def boundary_columns(alpha: float, scheme: str, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Stencil coefficients multiplying the two endpoint values.

    For the interior system of size ``n = N - 1``, the left-sided operator
    couples row i to ``u_0`` through ``w_{i+1}`` and to ``u_N`` only in the
    last row through ``w_0``; the right-sided operator mirrors this.
    Returns ``(left_of_u0, right_of_u0, left_of_uN, right_of_uN)``.
    """
    if n < 1:
        raise ParameterError(f"interior size must be positive, got {n}")
    w = _scheme_weights_for_grid(alpha, scheme, n + 2)
    left_u0 = w[2:n + 2].copy()
    right_u0 = np.zeros(n)
    right_u0[0] = w[0]
    left_uN = np.zeros(n)
    left_uN[-1] = w[0]
    right_uN = w[2:n + 2][::-1].copy()
    return left_u0, right_u0, left_uN, right_uN


def boundary_vector(
    alpha: float,
    scheme: str,
    n: int,
    K1: float,
    K2: float,
    u0_sum: float,
    uN_sum: float,
    tau: float,
    h: float,
) -> np.ndarray:
    """Boundary contribution to one two-level time step.

    With ``u0_sum = U_0^n + U_0^{n+1}`` and ``uN_sum = U_N^n + U_N^{n+1}``,
    returns ``tau / (2 h^alpha) * (c0 * u0_sum + cN * uN_sum)`` where ``c0``
    and ``cN`` combine the endpoint stencil columns of the left and right
    operators weighted by the diffusion coefficients.
    """
    left_u0, right_u0, left_uN, right_uN = boundary_columns(alpha, scheme, n)
    c0 = K1 * left_u0 + K2 * right_u0
    cN = K1 * left_uN + K2 * right_uN
    return tau / (2.0 * h**alpha) * (c0 * u0_sum + cN * uN_sum)


def toeplitz_matvec_direct(T: ToeplitzOperator, v: np.ndarray) -> np.ndarray:
    """Exact quadratic-cost Toeplitz matrix-vector product."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size != T.n:
        raise ParameterError(f"vector length {v.size} does not match operator order {T.n}")
    n = T.n
    diags = np.concatenate((T.first_row[::-1], T.first_col[1:]))
    return np.convolve(diags, v)[n - 1:2 * n - 1]


def _next_pow2(m: int) -> int:
    return 1 << (m - 1).bit_length()


def toeplitz_matvec_fft(T: ToeplitzOperator, v: np.ndarray) -> np.ndarray:
    """Toeplitz matrix-vector product via circulant embedding and the FFT.

    The operator is embedded in a circulant of length ``2**ceil(log2(2n-1))``
    whose action is diagonal in Fourier space.  Agrees with
    :func:`toeplitz_matvec_direct` to high relative accuracy.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size != T.n:
        raise ParameterError(f"vector length {v.size} does not match operator order {T.n}")
    n = T.n
    if n == 1:
        return T.first_col[0] * v
    L = _next_pow2(2 * n - 1)
    c = np.zeros(L)
    c[:n] = T.first_col
    c[L - (n - 1):] = T.first_row[1:][::-1]
    vv = np.zeros(L)
    vv[:n] = v
    y = np.fft.irfft(np.fft.rfft(c) * np.fft.rfft(vv), L)
    return y[:n]
