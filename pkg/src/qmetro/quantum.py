"""Two-qubit states, rotation unitaries, dephasing channels, and outcome probabilities.

Everything here is exact dense 4x4 (or 2x2) arithmetic on numpy arrays.
Basis ordering is (dd, du, ud, uu) with qubit 1 as the leading tensor
factor; states are complex 4-vectors, density matrices complex 4x4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BASIS_LABELS = ("dd", "du", "ud", "uu")

# (qubit-1 bit, qubit-2 bit) of each basis index
_BITS = np.array([(i >> 1, i & 1) for i in range(4)])

# number of qubits on which the basis labels of row r and column c differ
_DIFF_COUNT = (_BITS[:, None, :] != _BITS[None, :, :]).sum(axis=2)


@dataclass(frozen=True)
class NoiseModel:
    """Dephasing strength eta (1 = none, 0 = total) applied in n_steps slices."""

    eta: float = 1.0
    n_steps: int = 1

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must be in [0, 1], got {self.eta}")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")


NOISELESS = NoiseModel()


def probe_state(alpha: float) -> np.ndarray:
    """Probe family sqrt(alpha)|du> + sqrt(1-alpha)|ud>.

    alpha=0 and alpha=1 are separable; alpha=1/2 is the maximally
    entangled Bell state Psi+.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return np.array([0.0, np.sqrt(alpha), np.sqrt(1.0 - alpha), 0.0], dtype=complex)


def single_qubit_rotation(phi: float) -> np.ndarray:
    """Real 2x2 rotation [[cos(phi/2), sin(phi/2)], [-sin(phi/2), cos(phi/2)]]."""
    if not np.isfinite(phi):
        raise ValueError(f"phi must be finite, got {phi}")
    c, s = np.cos(phi / 2.0), np.sin(phi / 2.0)
    return np.array([[c, s], [-s, c]])


def rotation_unitary(phi: float) -> np.ndarray:
    """Two-qubit rotation R(phi) (x) R(phi), acting independently on each qubit."""
    r = single_qubit_rotation(phi)
    return np.kron(r, r).astype(complex)


def evolve_pure(state: np.ndarray, phi: float) -> np.ndarray:
    """Apply the two-qubit rotation to a pure state."""
    return rotation_unitary(phi) @ np.asarray(state, dtype=complex)


def pure_to_density(state: np.ndarray) -> np.ndarray:
    """Rank-1 density matrix |psi><psi|."""
    psi = np.asarray(state, dtype=complex)
    return np.outer(psi, psi.conj())


def dephasing_kraus(eta: float) -> tuple[np.ndarray, np.ndarray]:
    """Single-qubit dephasing Kraus pair (K0, K1) for strength eta."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must be in [0, 1], got {eta}")
    root = np.sqrt(eta)
    k0 = np.sqrt((1.0 + root) / 2.0) * np.eye(2)
    k1 = np.sqrt((1.0 - root) / 2.0) * np.diag([1.0, -1.0])
    return k0, k1


def _dephase_mask(eta: float) -> np.ndarray:
    # off-diagonal entry (r, c) shrinks by sqrt(eta) per differing qubit label
    return np.sqrt(eta) ** _DIFF_COUNT


def dephase_two_qubit(rho: np.ndarray, eta: float) -> np.ndarray:
    """Apply the 4-term tensor-product dephasing channel to a 4x4 density matrix.

    Equals sum_{j,l} (K_j (x) K_l) rho (K_j (x) K_l)^dagger; the diagonal is
    preserved exactly and each off-diagonal entry is scaled by sqrt(eta) per
    qubit on which the row and column basis labels differ.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must be in [0, 1], got {eta}")
    return np.asarray(rho, dtype=complex) * _dephase_mask(eta)


def noisy_rotation(rho: np.ndarray, phi: float, noise: NoiseModel) -> np.ndarray:
    """n_steps repetitions of [dephase by eta, then rotate by phi/n_steps]."""
    u = rotation_unitary(phi / noise.n_steps)
    mask = _dephase_mask(noise.eta)
    out = np.asarray(rho, dtype=complex)
    for _ in range(noise.n_steps):
        out = u @ (out * mask) @ u.conj().T
    return out


def _rotation_batch(phis: np.ndarray) -> np.ndarray:
    """Stack of two-qubit rotation matrices, shape (len(phis), 4, 4)."""
    c, s = np.cos(phis / 2.0), np.sin(phis / 2.0)
    r = np.empty((len(phis), 2, 2))
    r[:, 0, 0] = c
    r[:, 0, 1] = s
    r[:, 1, 0] = -s
    r[:, 1, 1] = c
    return np.einsum("gij,gkl->gikjl", r, r).reshape(len(phis), 4, 4)


def profile_grid(alpha: float, phis: np.ndarray, noise: NoiseModel = NOISELESS) -> np.ndarray:
    """Outcome probabilities for each angle in phis, shape (len(phis), 4).

    Noiseless probes go through the pure-amplitude path; noisy probes through
    the density-matrix channel. Rows are clamped to [0, 1].
    """
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    if not np.all(np.isfinite(phis)):
        raise ValueError("all angles must be finite")
    if noise.eta == 1.0:
        psi = probe_state(alpha)
        amps = _rotation_batch(phis) @ psi
        probs = np.abs(amps) ** 2
    else:
        rho = np.broadcast_to(pure_to_density(probe_state(alpha)), (len(phis), 4, 4)).copy()
        u = _rotation_batch(phis / noise.n_steps)
        ut = u.transpose(0, 2, 1)  # real, so transpose == conjugate transpose
        mask = _dephase_mask(noise.eta)
        for _ in range(noise.n_steps):
            rho = u @ (rho * mask) @ ut
        probs = np.diagonal(rho, axis1=1, axis2=2).real.copy()
    return np.clip(probs, 0.0, 1.0)


def measurement_probabilities(alpha: float, phi: float, noise: NoiseModel = NOISELESS) -> np.ndarray:
    """Probability of each computational-basis outcome after the noisy rotation."""
    return profile_grid(alpha, np.array([float(phi)]), noise)[0]
