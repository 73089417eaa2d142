"""Quantitative diagnostics: co-rotating-approximation error metric,
spectral gap of one-period propagators, CPTP validation, and density-matrix
sanity reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import eig, frobenius_norm
from .model import DIM, LDIM

DEGENERATE_GAP_TOL = 1e-12


def rwa_error(rho_rwa: np.ndarray, rho: np.ndarray) -> float:
    """Relative Frobenius deviation |rho_rwa - rho|_F / |rho|_F."""
    rho_rwa = np.asarray(rho_rwa, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if rho_rwa.shape != rho.shape:
        raise ValueError(f"shape mismatch: {rho_rwa.shape} vs {rho.shape}")
    denom = frobenius_norm(rho)
    if denom == 0.0:
        raise ValueError("reference state has zero norm")
    return frobenius_norm(rho_rwa - rho) / denom


@dataclass(frozen=True)
class GapReport:
    """Eigenvalue logs of a one-period propagator and the resulting decay
    gap.  gap is per period; gap_per_time additionally divides by the
    period when one was supplied."""

    eigen_logs: np.ndarray
    steady_index: int
    gap: float
    degenerate: bool
    gap_per_time: float | None = None


def spectral_gap(u_period: np.ndarray, period: float | None = None
                 ) -> GapReport:
    """Principal-branch logs of the eigenvalues of a one-period propagator.

    The steady eigenvalue is the one whose log has real part closest to
    zero; the gap is the smallest decay exponent -Re(log) among the rest.
    A map with all decay exponents below tolerance (e.g. a unitary) is
    reported with gap 0 and the degenerate flag set.
    """
    u_period = np.asarray(u_period, dtype=complex)
    logs = np.log(eig(u_period))
    order = np.argsort(np.abs(logs.real))
    steady = int(order[0])
    decays = -np.delete(logs.real, steady)
    if len(decays) == 0 or np.max(decays) <= DEGENERATE_GAP_TOL:
        return GapReport(eigen_logs=logs, steady_index=steady, gap=0.0,
                         degenerate=True,
                         gap_per_time=0.0 if period else None)
    gap = max(0.0, float(np.min(decays)))
    return GapReport(eigen_logs=logs, steady_index=steady, gap=gap,
                     degenerate=False,
                     gap_per_time=gap / period if period else None)


@dataclass(frozen=True)
class CptpReport:
    trace_preserving: bool
    trace_defect: float
    completely_positive: bool
    min_choi_eigenvalue: float
    choi_hermiticity_defect: float


def choi_matrix(m: np.ndarray) -> np.ndarray:
    """Reshuffle a 9x9 superoperator (row-major vectorization convention)
    into its Choi matrix; for a map built from a single Kraus operator A
    the result is the rank-1 projector vec(A) vec(A)^dag."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (LDIM, LDIM):
        raise ValueError(f"expected a {LDIM}x{LDIM} map, got {m.shape}")
    return m.reshape(DIM, DIM, DIM, DIM).transpose(0, 2, 1, 3).reshape(
        LDIM, LDIM)


def cptp_check(m: np.ndarray, trace_tol: float = 1e-10,
               choi_tol: float = 1e-9) -> CptpReport:
    """Trace preservation (left identity functional) and complete
    positivity (Choi minimum eigenvalue) of a 9x9 map.  Reports, never
    raises on failure."""
    m = np.asarray(m, dtype=complex)
    ident_functional = np.eye(DIM, dtype=complex).reshape(LDIM)
    trace_defect = float(np.max(np.abs(ident_functional @ m
                                       - ident_functional)))
    choi = choi_matrix(m)
    herm_defect = float(np.max(np.abs(choi - choi.conj().T)))
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (choi + choi.conj().T))))
    return CptpReport(
        trace_preserving=trace_defect <= trace_tol,
        trace_defect=trace_defect,
        completely_positive=min_eig >= -choi_tol,
        min_choi_eigenvalue=min_eig,
        choi_hermiticity_defect=herm_defect,
    )


@dataclass(frozen=True)
class DensityReport:
    trace_defect: float
    hermiticity_defect: float
    min_eigenvalue: float


def density_validity(rho: np.ndarray) -> DensityReport:
    """Raw defect report for a 3x3 state: trace, Hermiticity, minimum
    eigenvalue of the Hermitian part.  No thresholding."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"expected a {DIM}x{DIM} state, got {rho.shape}")
    herm = 0.5 * (rho + rho.conj().T)
    return DensityReport(
        trace_defect=float(abs(np.trace(rho).real - 1.0)),
        hermiticity_defect=float(np.max(np.abs(rho - rho.conj().T))),
        min_eigenvalue=float(np.min(np.linalg.eigvalsh(herm))),
    )
