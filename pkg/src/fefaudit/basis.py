"""Operator bases on C^d.

Two families are built here:

* the principal basis, d^2 unitary clock-and-shift matrices
  ``A[i, j] = sum_m w^(i m) E[m, m+j]`` with ``w = exp(2 pi i / d)`` and all
  indices mod d, orthogonal under the trace form, tr(A_ij A_kl^dagger) = d
  exactly when (i, j) = (k, l);
* the generalized Gell-Mann basis, d^2 - 1 traceless Hermitian matrices with
  tr(lambda_i lambda_j) = 2 delta_ij, used for Bloch decompositions.

Tables are immutable and cached per dimension; construction re-verifies the
defining identities so downstream code can rely on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError
from .linalg import dagger

# Convention fixed once for the whole package: the primitive root used in
# every phase is exp(2 pi i / d), and negative indices reduce into 0..d-1.


def _phases(d: int, exponents: np.ndarray) -> np.ndarray:
    """w^exponents with the exponent reduced mod d before exponentiation."""
    return np.exp(2j * np.pi * (np.asarray(exponents) % d) / d)


@dataclass(frozen=True, eq=False)
class PrincipalBasisTable:
    """All d^2 principal matrices for one dimension, indexed by (i, j)."""

    d: int
    omega: complex
    matrices: np.ndarray  # shape (d, d, d, d); matrices[i, j] is A_ij

    def matrix(self, i: int, j: int) -> np.ndarray:
        """A_ij with indices reduced mod d (negative indices welcome)."""
        return self.matrices[i % self.d, j % self.d]


@dataclass(frozen=True, eq=False)
class GellMannBasis:
    """The d^2 - 1 generalized Gell-Mann matrices in a fixed order.

    Order: d - 1 diagonal matrices (l = 0 .. d-2), then the symmetric pairs
    |j><k| + |k><j| for j < k in lexicographic (j, k) order, then the
    antisymmetric pairs -i(|j><k| - |k><j|) in the same order.
    """

    d: int
    matrices: np.ndarray  # shape (d^2 - 1, d, d)


def principal_matrix(d: int, i: int, j: int) -> np.ndarray:
    """Single principal matrix A_ij: entry w^(i m) at (m, (m + j) mod d)."""
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    i %= d
    j %= d
    A = np.zeros((d, d), dtype=np.complex128)
    m = np.arange(d)
    A[m, (m + j) % d] = _phases(d, i * m)
    return A


@lru_cache(maxsize=None)
def principal_basis_table(d: int) -> PrincipalBasisTable:
    """Build and self-check the full principal basis for dimension d.

    Construction verifies unitarity, trace orthogonality, the product rule
    A_ij A_kl = w^(j k) A_(i+k)(j+l) and the adjoint rule
    A_ij^dagger = w^(i j) A_(-i)(-j) on every index pair.
    """
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    mats = np.zeros((d, d, d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            mats[i, j] = principal_matrix(d, i, j)
    mats.setflags(write=False)
    table = PrincipalBasisTable(d=d, omega=complex(np.exp(2j * np.pi / d)), matrices=mats)

    res = principal_identity_residuals(table)
    if res["identity_exact"] != 0.0:
        raise ArithmeticError("A_00 is not exactly the identity")
    if res["unitarity"] > 1e-12:
        raise ArithmeticError(f"principal basis unitarity residual {res['unitarity']:.3e}")
    checks = ("orthogonality", "product_rule", "dagger_rule", "trace_rule")
    worst = max(res[name] for name in checks)
    if worst > 1e-10:
        raise ArithmeticError(f"principal basis identity residual {worst:.3e}")
    return table


def principal_identity_residuals(table: PrincipalBasisTable) -> dict[str, float]:
    """Max residual of each defining identity; all should sit at float noise."""
    d = table.d
    flat = table.matrices.reshape(d * d, d, d)
    ivals = np.arange(d * d) // d
    jvals = np.arange(d * d) % d
    eye = np.eye(d)

    res: dict[str, float] = {}
    res["identity_exact"] = float(np.abs(table.matrices[0, 0] - eye).max())
    res["unitarity"] = float(
        max(np.linalg.norm(dagger(A) @ A - eye) for A in flat)
    )

    # tr(A_a A_b^dagger) = d when a = b else 0
    gram = np.einsum("aij,bij->ab", flat, flat.conj())
    res["orthogonality"] = float(np.abs(gram - d * np.eye(d * d)).max())

    # A_a A_b = w^(j_a i_b) A_(i_a + i_b)(j_a + j_b)
    products = np.einsum("aij,bjk->abik", flat, flat)
    phase = _phases(d, np.outer(jvals, ivals))
    target_idx = ((ivals[:, None] + ivals[None, :]) % d) * d + (
        (jvals[:, None] + jvals[None, :]) % d
    )
    expected = phase[:, :, None, None] * flat[target_idx]
    diff = products - expected
    res["product_rule"] = float(np.sqrt((np.abs(diff) ** 2).sum(axis=(2, 3))).max())

    # A_a^dagger = w^(i_a j_a) A_(-i_a)(-j_a)
    adj = flat.conj().transpose(0, 2, 1)
    neg_idx = ((-ivals) % d) * d + ((-jvals) % d)
    expected_adj = _phases(d, ivals * jvals)[:, None, None] * flat[neg_idx]
    res["dagger_rule"] = float(
        np.sqrt((np.abs(adj - expected_adj) ** 2).sum(axis=(1, 2))).max()
    )

    traces = np.einsum("aii->a", flat)
    expected_tr = np.zeros(d * d, dtype=np.complex128)
    expected_tr[0] = d
    res["trace_rule"] = float(np.abs(traces - expected_tr).max())

    # dual pairing tr(A_ij * (w^(i j)/d) A_(-i)(-j)) = 1
    paired = np.einsum("aij,aji->a", flat, flat[neg_idx])
    dual = _phases(d, ivals * jvals) / d * paired
    res["dual_pairing"] = float(np.abs(dual - 1.0).max())

    # inverse Fourier recovers every unit matrix
    worst = 0.0
    for k in range(d):
        for j in range(d):
            E = np.zeros((d, d), dtype=np.complex128)
            E[k, (k + j) % d] = 1.0
            worst = max(worst, float(np.linalg.norm(unit_from_principal(table, k, j) - E)))
    res["inverse_fourier"] = worst
    return res


def unit_from_principal(table: PrincipalBasisTable, k: int, j: int) -> np.ndarray:
    """Unit matrix E_(k)(k+j) recovered as (1/d) sum_l w^(-k l) A_lj."""
    d = table.d
    k %= d
    j %= d
    coeff = _phases(d, -k * np.arange(d)) / d
    return np.einsum("l,lmn->mn", coeff, table.matrices[:, j])


@lru_cache(maxsize=None)
def gell_mann_basis(d: int) -> GellMannBasis:
    """Generalized Gell-Mann matrices for dimension d, in the package order."""
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    mats = []
    for l in range(d - 1):
        diag = np.zeros(d)
        diag[: l + 1] = 1.0
        diag[l + 1] = -(l + 1)
        mats.append(np.sqrt(2.0 / ((l + 1) * (l + 2))) * np.diag(diag).astype(np.complex128))
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        M = np.zeros((d, d), dtype=np.complex128)
        M[j, k] = M[k, j] = 1.0
        mats.append(M)
    for j, k in pairs:
        M = np.zeros((d, d), dtype=np.complex128)
        M[j, k] = -1j
        M[k, j] = 1j
        mats.append(M)
    stack = np.stack(mats)
    stack.setflags(write=False)
    return GellMannBasis(d=d, matrices=stack)


def gell_mann_identity_residuals(basis: GellMannBasis) -> dict[str, float]:
    """Hermiticity, tracelessness, orthogonality and completeness residuals."""
    d = basis.d
    L = basis.matrices
    n = d * d - 1
    res: dict[str, float] = {}
    res["hermiticity"] = float(
        np.sqrt((np.abs(L - L.conj().transpose(0, 2, 1)) ** 2).sum(axis=(1, 2))).max()
    )
    res["tracelessness"] = float(np.abs(np.einsum("aii->a", L)).max())
    gram = np.einsum("aij,bji->ab", L, L)
    res["orthogonality"] = float(np.abs(gram - 2.0 * np.eye(n)).max())

    # {I/sqrt(d)} + {lambda/sqrt(2)} must be orthonormal under tr(X^dagger Y)
    full = np.concatenate(
        [np.eye(d, dtype=np.complex128)[None] / np.sqrt(d), L / np.sqrt(2.0)]
    )
    gram_full = np.einsum("aij,bij->ab", full.conj(), full)
    res["completeness"] = float(np.abs(gram_full - np.eye(d * d)).max())
    return res
