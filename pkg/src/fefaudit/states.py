"""Bipartite states on H (x) H and their validation.

Subsystem ordering convention: basis ket |i j> = |i> (x) |j> with i on the
first subsystem, so the row index of the d^2 x d^2 matrix is i*d + j.

Every constructor returns a DensityState carrying a measured validation
record.  Constructors of physical families enforce the record; the printed
variant of the Werner operator deliberately does not, because the point of
that variant is that it fails positivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError, PhysicalityError
from .linalg import as_matrix, dagger

# Eigensolvers on rank-deficient states land slightly below zero.
PSD_FLOOR = -1e-9


@dataclass(frozen=True)
class ValidationRecord:
    """Measured physicality data: never a judgement, always the numbers."""

    hermiticity_residual: float
    trace: complex
    min_eigenvalue: float
    physical: bool


@dataclass(frozen=True, eq=False)
class DensityState:
    """A d^2 x d^2 operator on H (x) H plus its validation record."""

    d: int
    matrix: np.ndarray
    validation: ValidationRecord


def validate_density(M, tol: float = 1e-10) -> ValidationRecord:
    """Measure Hermiticity residual, trace and minimum eigenvalue of (M+M^dagger)/2.

    Reports on any square input, physical or not.  The `physical` flag is
    evaluated at the given tol for Hermiticity and trace, with the fixed
    PSD floor of -1e-9 on the minimum eigenvalue.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"density validation needs a square matrix, got {A.shape}")
    residual = float(np.linalg.norm(A - dagger(A)))
    trace = complex(np.trace(A))
    herm = (A + dagger(A)) / 2
    min_eig = float(np.linalg.eigvalsh(herm)[0])
    physical = (
        residual <= tol and abs(trace - 1.0) <= tol and min_eig >= PSD_FLOOR
    )
    return ValidationRecord(
        hermiticity_residual=residual,
        trace=trace,
        min_eigenvalue=min_eig,
        physical=physical,
    )


def state_from_matrix(M, tol: float = 1e-10, enforce: bool = True) -> DensityState:
    """Wrap a d^2 x d^2 matrix as a DensityState, inferring d.

    With enforce=True (the default) a failed validation raises
    PhysicalityError; with enforce=False the state is returned with its
    (failing) record attached, for audit use.
    """
    A = as_matrix(M)
    n = A.shape[0]
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"state matrix must be square, got {A.shape}")
    d = math.isqrt(n)
    if d * d != n or d < 2:
        raise DimensionError(
            f"matrix size {n} is not d^2 for an integer subsystem dimension d >= 2"
        )
    record = validate_density(A, tol=tol)
    if enforce and not record.physical:
        raise PhysicalityError(
            "operator fails density-matrix validation: "
            f"hermiticity residual {record.hermiticity_residual:.3e}, "
            f"trace {record.trace:.12g}, min eigenvalue {record.min_eigenvalue:.3e}"
        )
    A = A.copy()
    A.setflags(write=False)
    return DensityState(d=d, matrix=A, validation=record)


def max_entangled_vector(d: int) -> np.ndarray:
    """The maximally entangled unit vector (1/sqrt(d)) sum_i |ii>."""
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    v = np.zeros(d * d, dtype=np.complex128)
    v[np.arange(d) * d + np.arange(d)] = 1.0 / np.sqrt(d)
    return v


def max_entangled_projector(d: int) -> DensityState:
    """Rank-one projector onto the maximally entangled vector.

    Entrywise this is (1/d) sum_ij E_ij (x) E_ij, filled directly so the
    nonzero entries are exactly 1/d (the outer product of the unit vector
    would square 1/sqrt(d) and pick up rounding).
    """
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    M = np.zeros((d * d, d * d), dtype=np.complex128)
    diag = np.arange(d) * d + np.arange(d)
    M[np.ix_(diag, diag)] = 1.0 / d
    return state_from_matrix(M)


def isotropic_window(d: int) -> tuple[float, float]:
    """Admissible mixing interval [-1/(d^2-1), 1] for the isotropic family."""
    return (-1.0 / (d * d - 1), 1.0)


def isotropic_state(d: int, p: float) -> DensityState:
    """Mixture ((1-p)/d^2) I + p P_+ of white noise with the entangled projector.

    Spectrum: (1-p)/d^2 + p once, (1-p)/d^2 with multiplicity d^2 - 1, so the
    state is PSD exactly on the window p in [-1/(d^2-1), 1].
    """
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    lo, hi = isotropic_window(d)
    if not (lo <= p <= hi):
        raise ParameterError(
            f"isotropic parameter p={p} outside the PSD window [{lo}, {hi}]"
        )
    n = d * d
    M = ((1.0 - p) / n) * np.eye(n, dtype=np.complex128)
    M += p * max_entangled_projector(d).matrix
    return state_from_matrix(M)


def swap_operator(d: int) -> np.ndarray:
    """The flip P|ab> = |ba>, i.e. sum_ij E_ij (x) E_ji."""
    n = d * d
    P = np.zeros((n, n), dtype=np.complex128)
    a, b = np.divmod(np.arange(n), d)
    P[a * d + b, b * d + a] = 1.0
    return P


def werner_state(d: int, variant: str = "swap") -> DensityState:
    """Werner-form operator ((d+1)/d^3) I - (1/d^2) P for two choices of P.

    variant="swap" uses the true flip operator and yields a physical state
    with spectrum {1/d^3 on the symmetric subspace, (2d+1)/d^3 on the
    antisymmetric}.  variant="paper" uses the printed form
    P = sum_ij E_ij (x) E_ij (which equals d P_+, not the flip); the result
    is Hermitian with unit trace but not PSD, and is returned as-is with its
    failing validation record so the discrepancy can be audited.
    """
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    if variant == "swap":
        P = swap_operator(d)
        enforce = True
    elif variant == "paper":
        P = d * max_entangled_projector(d).matrix
        enforce = False
    else:
        raise ParameterError(f"unknown werner variant {variant!r}; use 'swap' or 'paper'")
    n = d * d
    M = ((d + 1) / d**3) * np.eye(n, dtype=np.complex128) - P / n
    return state_from_matrix(M, enforce=enforce)


def horodecki_state(a: float) -> DensityState:
    """The one-parameter 9 x 9 bound-entangled family, a in [0, 1].

    Normalization 1/(8a+1); thirteen entries equal a (seven diagonal, six
    off-diagonal coupling |00>, |11>, |22>), two diagonal entries equal
    (1+a)/2 and the remaining symmetric pair equals sqrt(1-a^2)/2.
    """
    if not (0.0 <= a <= 1.0):
        raise ParameterError(f"horodecki parameter a={a} outside [0, 1]")
    M = np.zeros((9, 9), dtype=np.complex128)
    for k in (0, 1, 2, 3, 4, 5, 7):
        M[k, k] = a
    for r, c in ((0, 4), (0, 8), (4, 0), (4, 8), (8, 0), (8, 4)):
        M[r, c] = a
    M[6, 6] = M[8, 8] = (1.0 + a) / 2.0
    M[6, 8] = M[8, 6] = np.sqrt(1.0 - a * a) / 2.0
    M /= 8.0 * a + 1.0
    return state_from_matrix(M)


def random_density_state(d: int, seed: int) -> DensityState:
    """Seeded random full-rank state G G^dagger / tr(G G^dagger).

    G has independent standard complex Gaussian entries, (x + iy)/sqrt(2)
    with x, y standard normal, drawn from numpy's PCG64 generator seeded by
    `seed`; identical seeds give bit-identical states.
    """
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    n = d * d
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    M = G @ dagger(G)
    M /= np.trace(M).real
    return state_from_matrix(M)
