"""Dense complex linear algebra and time-evolution primitives.

Everything downstream (gates, holonomy checks, noise averaging) is built on
plain complex ``numpy`` arrays.  Matrices are kept small (dimension cap 64,
the six-ion register), so Hermitian eigendecomposition is the method of
choice for matrix exponentials: it preserves unitarity to machine precision
and never needs scaling-and-squaring heuristics.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

# Largest system handled anywhere in this package is six two-level ions.
DIM_CAP = 64

DEFAULT_TOL = 1e-10


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2D complex ndarray without copying when possible."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {a.ndim}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conjugate(m.T)


def frobenius_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius-norm distance between two equally shaped matrices."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return frobenius_norm(m - dagger(m)) <= tol


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    eye = np.eye(m.shape[0])
    return frobenius_norm(dagger(m) @ m - eye) <= tol


def norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(v, dtype=complex)))


def is_normalized(v: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return abs(norm(v) - 1.0) <= tol


def expm_hermitian(h: np.ndarray, t: float = 1.0, *, tol: float = 1e-12) -> np.ndarray:
    """exp(-i*h*t) for a Hermitian generator ``h``, via eigendecomposition.

    ``t`` is the evolution duration (or pulse area when ``h`` carries a unit
    envelope).  Raises ``ValueError`` for non-square, non-Hermitian, or
    over-cap input.
    """
    h = as_complex_matrix(h)
    n, m = h.shape
    if n != m:
        raise ValueError(f"generator must be square, got {h.shape}")
    if n > DIM_CAP:
        raise ValueError(f"dimension {n} exceeds cap {DIM_CAP}")
    if not is_hermitian(h, tol):
        raise ValueError("generator is not Hermitian within tolerance")
    w, v = np.linalg.eigh(h)
    phases = np.exp(-1j * w * t)
    return (v * phases) @ dagger(v)


def time_ordered_product(
    segments: Sequence[tuple[np.ndarray, float]], dim: int | None = None
) -> np.ndarray:
    """Product of segment evolutions, later segments applied on the left.

    ``segments`` is an ordered list of (Hermitian generator, area) pairs;
    the first entry acts first in time, so the result is
    ``exp(-i g_n a_n) ... exp(-i g_1 a_1)``.  An empty list yields the
    identity, in which case ``dim`` must be given.
    """
    segments = list(segments)
    if not segments:
        if dim is None:
            raise ValueError("empty schedule needs an explicit dimension")
        return np.eye(dim, dtype=complex)
    if dim is None:
        dim = as_complex_matrix(segments[0][0]).shape[0]
    u = np.eye(dim, dtype=complex)
    for gen, area in segments:
        gen = as_complex_matrix(gen)
        if gen.shape != (dim, dim):
            raise ValueError(f"segment dimension mismatch: {gen.shape} vs {(dim, dim)}")
        u = expm_hermitian(gen, area) @ u
    return u
