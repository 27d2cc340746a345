"""Fully entangled fraction: objective, upper bounds, lower estimate, audit.

The fully entangled fraction of a state rho on H (x) H is

    F(rho) = max_U <phi_U| rho |phi_U>,   |phi_U> = (I (x) U) |phi_+>,

the maximum taken over d x d unitaries U.  Four upper bounds are computed:

* ``theorem1``    : 1/d^2 + ((d - 1)/d) ||rho||_F, a published Frobenius-norm
                    bound reproduced exactly as printed.  The audit shows it
                    is violated already at rho = P_+ (it evaluates to 0.75 at
                    d = 2 while F(P_+) = 1); it is kept verbatim because this
                    package documents claims rather than repairing them.
* ``hoelder_sum`` : 1/d^2 + ((d^2 - 1)/d) ||rho||_F, the same Cauchy-Schwarz
                    argument carried out with the correct norm sqrt(d) for
                    every basis unitary.  Sound, often vacuous (> 1).
* ``lm``          : 1/d^2 + 4 ||m(rho)^T m(P_+)||_KF with m the Gell-Mann
                    correlation matrix and ||.||_KF the Ky Fan (trace) norm.
* ``spectral``    : lambda_max(rho); valid since the objective is a
                    unit-vector expectation of rho.

The lower estimate maximizes the objective by projected power iteration over
the unitary group; every iterate is feasible, so the value returned is a
certified lower bound on F(rho) regardless of convergence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .basis import principal_basis_table
from .decompose import bloch_coefficients
from .errors import ParameterError, SingularityError, UnitarityError
from .linalg import (
    dagger,
    frobenius_norm,
    haar_unitary,
    hermitian_spectrum,
    nearest_unitary,
    trace_norm,
)
from .states import DensityState, isotropic_window, max_entangled_projector

log = logging.getLogger(__name__)

BOUND_NAMES = ("theorem1", "hoelder_sum", "lm", "spectral")

# A bound is flagged only when the certified lower estimate clears it by
# more than this; well above accumulated double-precision error at d <= 8.
VIOLATION_TOLERANCE = 1e-8


@dataclass(frozen=True)
class OptimizerOptions:
    """Knobs of the lower-bound search; defaults are reproducible per seed.

    All randomness flows from `seed` through numpy's PCG64 generator.
    """

    restarts: int = 32
    max_iterations: int = 500
    tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ParameterError(f"restarts must be positive, got {self.restarts}")
        if self.max_iterations < 1:
            raise ParameterError(
                f"max_iterations must be positive, got {self.max_iterations}"
            )
        if not (self.tolerance >= 0):
            raise ParameterError(f"tolerance must be >= 0, got {self.tolerance}")


@dataclass(frozen=True)
class Violation:
    """One bound undercut by the certified lower estimate."""

    bound: str
    gap: float  # fef_lower - bound value, positive


@dataclass(frozen=True, eq=False)
class BoundReport:
    """Everything the audit measured for one state."""

    state_label: str
    d: int
    bounds: dict[str, float]
    fef_lower: float
    best_unitary: np.ndarray
    violations: list[Violation] = field(default_factory=list)


def _phi_of(U: np.ndarray) -> np.ndarray:
    # |phi_U>[(i, k)] = U[k, i] / sqrt(d)
    d = U.shape[0]
    return U.T.ravel() / np.sqrt(d)


def fef_objective(rho: DensityState, U) -> float:
    """<phi_U| rho |phi_U> for a unitary U acting on the second subsystem."""
    U = np.asarray(U, dtype=np.complex128)
    d = rho.d
    if U.shape != (d, d):
        raise UnitarityError(f"expected a {d} x {d} unitary, got shape {U.shape}")
    defect = float(np.linalg.norm(dagger(U) @ U - np.eye(d)))
    if defect > 1e-8:
        raise UnitarityError(f"unitarity defect {defect:.3e} exceeds 1e-8")
    phi = _phi_of(U)
    return float(np.vdot(phi, rho.matrix @ phi).real)


def theorem1_bound(rho: DensityState) -> float:
    """The printed Frobenius-norm bound 1/d^2 + ((d-1)/d) ||rho||_F."""
    d = rho.d
    return 1.0 / (d * d) + (d - 1) / d * frobenius_norm(rho.matrix)


def hoelder_sum_bound(rho: DensityState) -> float:
    """Corrected full-sum variant 1/d^2 + ((d^2-1)/d) ||rho||_F.

    May exceed 1; the vacuous region is reported as-is.
    """
    d = rho.d
    return 1.0 / (d * d) + (d * d - 1) / d * frobenius_norm(rho.matrix)


def _maxent_correlation(d: int) -> np.ndarray:
    return bloch_coefficients(max_entangled_projector(d)).m


def lm_bound(rho: DensityState) -> float:
    """Ky Fan correlation bound 1/d^2 + 4 ||m(rho)^T m(P_+)||_KF."""
    d = rho.d
    m_rho = bloch_coefficients(rho).m
    return 1.0 / (d * d) + 4.0 * trace_norm(m_rho.T @ _maxent_correlation(d))


def spectral_bound(rho: DensityState) -> float:
    """Largest eigenvalue of rho; the objective cannot exceed it."""
    return float(hermitian_spectrum(rho.matrix, tol=1e-8)[0])


def isotropic_fef_reference(d: int, p: float) -> float:
    """Exact fraction for the isotropic family, used as an optimizer oracle.

    The objective splits into (1-p)/d^2 + p |tr U|^2 / d^2; for p >= 0 the
    phase term is maximized at U = I, for p < 0 it is driven to zero by any
    traceless unitary, e.g. the first shift matrix.
    """
    lo, hi = isotropic_window(d)
    if not (lo <= p <= hi):
        raise ParameterError(
            f"isotropic parameter p={p} outside the PSD window [{lo}, {hi}]"
        )
    if p >= 0:
        return p + (1.0 - p) / (d * d)
    return (1.0 - p) / (d * d)


def _start_unitaries(rho: DensityState, opts: OptimizerOptions) -> list[np.ndarray]:
    """Deterministic restart prefix, padded to opts.restarts with Haar draws.

    Order: identity, the d^2 principal unitaries, the polar projection of the
    reshaped top eigenvector of rho (skipped if that reshape is singular),
    then seeded Haar unitaries.  The list for n restarts is a prefix of the
    list for n+1, which makes the estimate monotone in `restarts`.
    """
    d = rho.d
    starts: list[np.ndarray] = [np.eye(d, dtype=np.complex128)]
    table = principal_basis_table(d)
    for i in range(d):
        for j in range(d):
            starts.append(np.asarray(table.matrices[i, j]))
    H = (rho.matrix + dagger(rho.matrix)) / 2
    _, vecs = np.linalg.eigh(H)
    top = vecs[:, -1].reshape(d, d).T
    try:
        starts.append(nearest_unitary(top))
    except SingularityError:
        log.debug("top-eigenvector restart skipped: reshaped vector is singular")
    starts = starts[: opts.restarts]
    rng = np.random.default_rng(opts.seed)
    while len(starts) < opts.restarts:
        starts.append(haar_unitary(d, rng))
    return starts


def _ascend(
    Rm: np.ndarray, U: np.ndarray, max_iterations: int, tolerance: float
) -> tuple[float, np.ndarray]:
    """Projected power iteration from one start; monotone for PSD input."""
    d = U.shape[0]
    root = np.sqrt(d)
    phi = _phi_of(U)
    v = Rm @ phi
    f = float(np.vdot(phi, v).real)
    best_f, best_U = f, U
    for _ in range(max_iterations):
        G = root * v.reshape(d, d).T
        try:
            U = nearest_unitary(G)
        except SingularityError:
            log.debug("restart abandoned: gradient reshape is rank deficient")
            break
        phi = _phi_of(U)
        v = Rm @ phi
        f_new = float(np.vdot(phi, v).real)
        if f_new > best_f:
            best_f, best_U = f_new, U
        done = abs(f_new - f) < tolerance
        f = f_new
        if done:
            break
    return best_f, best_U


def fef_lower_estimate(
    rho: DensityState, opts: OptimizerOptions = OptimizerOptions()
) -> tuple[float, np.ndarray]:
    """Best objective value found over all restarts, with its unitary.

    Every evaluation happens at a feasible (unitary) point, so the returned
    value is a valid lower bound on F(rho) whether or not the iteration
    converged to the global maximum.
    """
    Rm = np.asarray(rho.matrix)
    best_f = -np.inf
    best_U = np.eye(rho.d, dtype=np.complex128)
    for U0 in _start_unitaries(rho, opts):
        f, U = _ascend(Rm, U0, opts.max_iterations, opts.tolerance)
        if f > best_f:
            best_f, best_U = f, U
    return best_f, best_U


def bound_audit(
    rho: DensityState,
    opts: OptimizerOptions = OptimizerOptions(),
    label: str = "",
) -> BoundReport:
    """Compute all four bounds and the lower estimate, flagging undercuts.

    A violation is a finding about the audited formula, not a failure of the
    audit, so nothing is raised.
    """
    bounds = {
        "theorem1": theorem1_bound(rho),
        "hoelder_sum": hoelder_sum_bound(rho),
        "lm": lm_bound(rho),
        "spectral": spectral_bound(rho),
    }
    fef_lower, best_U = fef_lower_estimate(rho, opts)
    violations = [
        Violation(bound=name, gap=fef_lower - value)
        for name, value in bounds.items()
        if fef_lower > value + VIOLATION_TOLERANCE
    ]
    return BoundReport(
        state_label=label,
        d=rho.d,
        bounds=bounds,
        fef_lower=fef_lower,
        best_unitary=best_U,
        violations=violations,
    )


def paper_example3_form(a: float) -> float:
    """Published closed-form curve 1/9 + sqrt(30a^2 + 4a + 2)/(24a + 3).

    Emitted alongside the bound-entangled sweeps for comparison.  It does not
    match direct evaluation of the theorem1 formula on that family (the gap
    is recorded by the sweep, not reconciled).
    """
    if not (0.0 <= a <= 1.0):
        raise ParameterError(f"horodecki parameter a={a} outside [0, 1]")
    return 1.0 / 9.0 + np.sqrt(30.0 * a * a + 4.0 * a + 2.0) / (24.0 * a + 3.0)
