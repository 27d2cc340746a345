"""Dense complex linear algebra kernel used everywhere else in the package.

Everything operates on C-ordered ``numpy`` arrays of dtype complex128 and is a
pure function of its inputs.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, HermiticityError, SingularityError


def as_matrix(A) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    M = np.ascontiguousarray(A, dtype=np.complex128)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={M.ndim}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return M


def dagger(A: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return A.conj().T


def kron(A, B) -> np.ndarray:
    """Tensor product; the first factor indexes subsystem one."""
    return np.kron(as_matrix(A), as_matrix(B))


def frobenius_norm(A) -> float:
    """sqrt(sum |entry|^2), equal to sqrt(tr(A^dagger A))."""
    return float(np.linalg.norm(as_matrix(A)))


def trace_norm(A) -> float:
    """Sum of singular values (Ky Fan norm). Requires a square matrix."""
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"trace norm needs a square matrix, got {M.shape}")
    return float(np.linalg.svd(M, compute_uv=False).sum())


def hermitian_spectrum(A, tol: float = 1e-10) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, in descending order.

    Rejects inputs whose Hermiticity residual ||A - A^dagger||_F exceeds tol.
    The spectral decomposition is verified to reconstruct the Hermitian part
    to 1e-10 * ||A||_F.
    """
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"spectrum needs a square matrix, got {M.shape}")
    residual = float(np.linalg.norm(M - dagger(M)))
    if residual > tol:
        raise HermiticityError(
            f"Hermiticity residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    H = (M + dagger(M)) / 2
    w, V = np.linalg.eigh(H)
    scale = float(np.linalg.norm(M))
    rebuilt = (V * w) @ dagger(V)
    if float(np.linalg.norm(rebuilt - H)) > 1e-10 * max(scale, 1.0):
        raise ArithmeticError("spectral decomposition failed to reconstruct input")
    return w[::-1].copy()


def nearest_unitary(G) -> np.ndarray:
    """Unitary polar factor of G, the maximizer of Re tr(U^dagger G).

    Computed as V W^dagger from the singular decomposition G = V S W^dagger.
    Requires full rank: the smallest singular value must exceed 1e-12.
    """
    M = as_matrix(G)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"polar projection needs a square matrix, got {M.shape}")
    V, s, Wh = np.linalg.svd(M)
    if s[-1] <= 1e-12:
        raise SingularityError(
            f"matrix is rank deficient (smallest singular value {s[-1]:.3e})"
        )
    return V @ Wh


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary: polar factor of a complex Ginibre draw."""
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return nearest_unitary(Z)
