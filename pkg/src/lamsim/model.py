"""Physical operators of the driven three-level lambda system.

Basis order is fixed as |1>, |2>, |3> (indices 0, 1, 2), with |2> the
highest-lying excited state.  Vectorization of 3x3 operators is row-major,
so a triple product A @ rho @ C maps to kron(A, C.T) @ vec(rho).

Units: hbar = 1; all energies, frequencies and rates share one unit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import DimensionError, kron
from .magnus import Generator

DIM = 3
LDIM = DIM * DIM

# Table of simulation presets used throughout: moderately strong fields (A),
# weak fields (B), very strong control field (C); suffix I is the closed
# (gamma = 0) variant, suffix II the dissipative one.  Note: the source table
# for these numbers labels its second rate column "gamma_13", but the master
# equation only contains |2>->|1> and |2>->|3> decay channels, so the value
# is interpreted as gamma_23 here.
_PRESET_TABLE = {
    "A": dict(rabi_c=1.12, rabi_p=1.00),
    "B": dict(rabi_c=0.20, rabi_p=0.20),
    "C": dict(rabi_c=10.0, rabi_p=1.00),
}
PRESET_NAMES = ("A-I", "A-II", "B-I", "B-II", "C-I", "C-II")


@dataclass(frozen=True)
class LambdaParams:
    """All physical parameters of one simulation case.

    e1/e2/e3 are level energies, omega_p/omega_c the probe/control field
    frequencies, rabi_p/rabi_c the Rabi frequencies, gamma_12/gamma_23 the
    |2>->|1> and |2>->|3> decay rates, and nbar_12/nbar_23 the bath
    occupation numbers (0 for a zero-temperature photonic bath).
    """

    e2: float
    e3: float
    omega_p: float
    omega_c: float
    rabi_p: float
    rabi_c: float
    gamma_12: float = 0.0
    gamma_23: float = 0.0
    nbar_12: float = 0.0
    nbar_23: float = 0.0
    e1: float = 0.0

    def __post_init__(self):
        if not (self.e2 > self.e1 and self.e2 > self.e3):
            raise ValueError("lambda ordering requires e2 > e1 and e2 > e3")
        if not (abs(self.e2 - self.e1) > abs(self.e1 - self.e3)
                and abs(self.e2 - self.e3) > abs(self.e1 - self.e3)):
            raise ValueError(
                "lambda ordering requires |e2-e1|, |e2-e3| > |e1-e3|")
        for name in ("rabi_p", "rabi_c", "gamma_12", "gamma_23",
                     "nbar_12", "nbar_23"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.omega_p <= 0 or self.omega_c <= 0:
            raise ValueError("field frequencies must be positive")

    @classmethod
    def tpr(cls, e2=6.0, e3=2.0, *, delta_omega_p=0.0, delta_omega_c=0.0,
            e1=0.0, **kwargs) -> "LambdaParams":
        """Two-photon-resonance constructor: field frequencies are set from
        the level spacings plus the given detunings."""
        return cls(e2=e2, e3=e3, e1=e1,
                   omega_p=e2 - e1 + delta_omega_p,
                   omega_c=e2 - e3 + delta_omega_c,
                   **kwargs)

    @property
    def is_dissipative(self) -> bool:
        return self.gamma_12 > 0 or self.gamma_23 > 0

    def with_(self, **kwargs) -> "LambdaParams":
        return replace(self, **kwargs)


def preset(name: str, *, delta_omega_p=0.0, delta_omega_c=0.0) -> LambdaParams:
    """Built-in parameter presets A-I ... C-II (see _PRESET_TABLE)."""
    try:
        letter, variant = name.split("-")
        fields = dict(_PRESET_TABLE[letter])
    except (ValueError, KeyError):
        raise KeyError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
    if variant == "II":
        fields.update(gamma_12=0.9, gamma_23=1.0)
    elif variant != "I":
        raise KeyError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
    return LambdaParams.tpr(delta_omega_p=delta_omega_p,
                            delta_omega_c=delta_omega_c, **fields)


def _op(i: int, j: int) -> np.ndarray:
    """|i><j| with 1-based state labels."""
    m = np.zeros((DIM, DIM), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return m


def h0(p: LambdaParams) -> np.ndarray:
    """Bare Hamiltonian diag(E1, E2, E3)."""
    return np.diag([p.e1, p.e2, p.e3]).astype(complex)


def h_sr(p: LambdaParams, t: float) -> np.ndarray:
    """Exact (counter-rotating included) drive Hamiltonian at time t."""
    h = np.zeros((DIM, DIM), dtype=complex)
    h[0, 1] = h[1, 0] = -p.rabi_p * np.cos(p.omega_p * t)
    h[1, 2] = h[2, 1] = -p.rabi_c * np.cos(p.omega_c * t)
    return h


def h_sr_rwa(p: LambdaParams, t: float) -> np.ndarray:
    """Co-rotating-only drive Hamiltonian at time t."""
    h = np.zeros((DIM, DIM), dtype=complex)
    h[1, 0] = -0.5 * p.rabi_p * np.exp(-1j * p.omega_p * t)
    h[0, 1] = np.conj(h[1, 0])
    h[1, 2] = -0.5 * p.rabi_c * np.exp(-1j * p.omega_c * t)
    h[2, 1] = np.conj(h[1, 2])
    return h


def hamiltonian(p: LambdaParams, t: float, rwa: bool) -> np.ndarray:
    """Full system Hamiltonian h0 + drive at time t."""
    return h0(p) + (h_sr_rwa(p, t) if rwa else h_sr(p, t))


def rwf_unitary(p: LambdaParams, t: float) -> np.ndarray:
    """Rotating-frame unitary diag(1, e^{-i w_p t}, e^{-i (w_p - w_c) t})."""
    return np.diag([1.0,
                    np.exp(-1j * p.omega_p * t),
                    np.exp(-1j * (p.omega_p - p.omega_c) * t)])


def h_rwf(p: LambdaParams) -> np.ndarray:
    """Time-independent Hamiltonian in the rotating frame (energies taken
    relative to E1)."""
    w2 = p.e2 - p.e1
    w3 = p.e3 - p.e1
    return 0.5 * np.array([
        [0.0, -p.rabi_p, 0.0],
        [-p.rabi_p, 2.0 * (w2 - p.omega_p), -p.rabi_c],
        [0.0, -p.rabi_c, 2.0 * (w3 - (p.omega_p - p.omega_c))],
    ], dtype=complex)


def rwf_transform(rho: np.ndarray, p: LambdaParams, t: float) -> np.ndarray:
    """Conjugate a density matrix into the rotating frame: W(t)^dag rho W(t).

    Diagonal elements are unchanged; off-diagonals pick up the drive phases.
    """
    w = rwf_unitary(p, t)
    return w.conj().T @ np.asarray(rho, dtype=complex) @ w


def jump_operators(p: LambdaParams) -> list[tuple[np.ndarray, float]]:
    """The four (operator, rate) dissipation channels: stimulated plus
    spontaneous decay |2>->|1| and |2>->|3>, and their bath-driven
    reverses."""
    return [
        (_op(1, 2), p.gamma_12 * (p.nbar_12 + 1.0)),
        (_op(2, 1), p.gamma_12 * p.nbar_12),
        (_op(3, 2), p.gamma_23 * (p.nbar_23 + 1.0)),
        (_op(2, 3), p.gamma_23 * p.nbar_23),
    ]


def vec(a: np.ndarray) -> np.ndarray:
    """Row-major vectorization of a 3x3 operator."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (DIM, DIM):
        raise DimensionError(f"vec expects a {DIM}x{DIM} matrix, got {a.shape}")
    return a.reshape(LDIM).copy()


def unvec(v: np.ndarray) -> np.ndarray:
    """Inverse of vec."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (LDIM,):
        raise DimensionError(f"unvec expects a length-{LDIM} vector, got {v.shape}")
    return v.reshape(DIM, DIM).copy()


def liouvillian(p: LambdaParams, t: float, rwa: bool = False) -> np.ndarray:
    """Hamiltonian commutator superoperator H ox I - I ox H^T (9x9)."""
    h = hamiltonian(p, t, rwa)
    ident = np.eye(DIM)
    return kron(h, ident) - kron(ident, h.T)


def lindbladian(p: LambdaParams) -> np.ndarray:
    """Time-independent dissipative superoperator (9x9):
    sum_k c_k (L ox L* - (L^dag L ox I + I ox L^T L*) / 2)."""
    ident = np.eye(DIM)
    d = np.zeros((LDIM, LDIM), dtype=complex)
    for op, rate in jump_operators(p):
        if rate == 0.0:
            continue
        ldl = op.conj().T @ op
        d += rate * (kron(op, op.conj())
                     - 0.5 * (kron(ldl, ident) + kron(ident, ldl.T)))
    return d


def ground_state() -> np.ndarray:
    """Initial condition |1><1| used throughout."""
    return _op(1, 1)


# ---------------------------------------------------------------------------
# Generator builders for the Magnus steppers
# ---------------------------------------------------------------------------

def _comm_super(h: np.ndarray) -> np.ndarray:
    """Commutator superoperator of h: kron(h, I) - kron(I, h.T)."""
    ident = np.eye(DIM)
    return kron(h, ident) - kron(ident, h.T)


def closed_generator(p: LambdaParams, rwa: bool = False) -> Generator:
    """3x3 Hilbert-space generator -i H(t) for unitary dynamics."""
    def func(t: float) -> np.ndarray:
        return -1j * hamiltonian(p, t, rwa)
    return Generator(func=func, dim=DIM, anti_hermitian=True)


def liouville_generator(p: LambdaParams, rwa: bool = False,
                        dissipative: bool | None = None) -> Generator:
    """9x9 Liouville-space generator -i L(t) (+ D when dissipative).

    The time-independent superoperator pieces are precomputed; each
    evaluation only rescales the drive terms, which keeps the propagator
    loops dominated by the matrix exponential.
    """
    if dissipative is None:
        dissipative = p.is_dissipative
    base = -1j * _comm_super(h0(p))
    if dissipative:
        base = base + lindbladian(p)
    if rwa:
        s21 = _comm_super(_op(2, 1))
        s12 = _comm_super(_op(1, 2))
        s23 = _comm_super(_op(2, 3))
        s32 = _comm_super(_op(3, 2))

        def func(t: float) -> np.ndarray:
            cp = -0.5 * p.rabi_p * np.exp(-1j * p.omega_p * t)
            cc = -0.5 * p.rabi_c * np.exp(-1j * p.omega_c * t)
            return base - 1j * (cp * s21 + np.conj(cp) * s12
                                + cc * s23 + np.conj(cc) * s32)
    else:
        sp = _comm_super(_op(2, 1) + _op(1, 2))
        sc = _comm_super(_op(2, 3) + _op(3, 2))

        def func(t: float) -> np.ndarray:
            return base - 1j * (-p.rabi_p * np.cos(p.omega_p * t) * sp
                                - p.rabi_c * np.cos(p.omega_c * t) * sc)
    return Generator(func=func, dim=LDIM, anti_hermitian=False)
