"""First-principles model of the system-apparatus measurement.

The probabilities here come from plain matrix algebra on ``H_S (x) H_A``;
the closed-form statistics are only imported to compare against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bloch import BlochState
from .statistics import OUTCOMES, JointStats, MeasurementConfig, joint_stats, marginal_stats

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12
POSITIVITY_TOL = 1e-10

# Below this cos(phi) = sin(delta) the literal b+- formula loses precision to
# cancellation; the vectors are then replaced by their exact closed form.
_COS_PHI_FLOOR = 1e-3

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
FIDUCIAL = np.array([1, 0], dtype=complex)
KET_PLUS = np.array([1, 0], dtype=complex)
KET_MINUS = np.array([0, 1], dtype=complex)


@dataclass(frozen=True)
class ApparatusVectors:
    a_plus: np.ndarray
    a_minus: np.ndarray
    b_plus: np.ndarray
    b_minus: np.ndarray
    phi_angle: float

    def b(self, k: int) -> np.ndarray:
        return self.b_plus if k == 1 else self.b_minus


def build_apparatus(cfg: MeasurementConfig, phase: float = 0.0) -> ApparatusVectors:
    """Apparatus pointer states ``a+-`` and the minimum-noise projectors ``b+-``.

    ``a+- = e^{i phase} (cos(delta/2), +-sin(delta/2))``.  The ``b+-`` are built
    from the ``a+-`` with ``phi = pi/2 - delta``.
    """
    d = cfg.delta
    u = cmath.exp(1j * phase)
    a_plus = u * np.array([math.cos(d / 2), math.sin(d / 2)], dtype=complex)
    a_minus = u * np.array([math.cos(d / 2), -math.sin(d / 2)], dtype=complex)
    phi = math.pi / 2 - d
    cos_phi = math.cos(phi)
    if cos_phi >= _COS_PHI_FLOOR:
        c, s = math.cos(phi / 2), math.sin(phi / 2)
        b_plus = (c * a_plus - s * a_minus) / cos_phi
        b_minus = (-s * a_plus + c * a_minus) / cos_phi
    else:
        # exact limit of the expression above for the symmetric a+- choice
        r = u / math.sqrt(2.0)
        b_plus = r * np.array([1, 1], dtype=complex)
        b_minus = r * np.array([1, -1], dtype=complex)
    return ApparatusVectors(a_plus, a_minus, b_plus, b_minus, phi)


def _rotation_to(target: np.ndarray) -> np.ndarray:
    """Unitary whose first column is ``target``: maps ``(1, 0)`` to it."""
    x, y = target
    return np.array([[x, -np.conj(y)], [y, np.conj(x)]], dtype=complex)


def coupling_unitary(
    cfg: MeasurementConfig, phase: float = 0.0, apparatus: ApparatusVectors | None = None
) -> np.ndarray:
    """``U = |+><+| (x) U+ + |-><-| (x) U-`` with ``U+- |a> = |a+->``."""
    app = apparatus or build_apparatus(cfg, phase)
    u_plus = _rotation_to(app.a_plus)
    u_minus = _rotation_to(app.a_minus)
    return np.kron(np.outer(KET_PLUS, KET_PLUS), u_plus) + np.kron(
        np.outer(KET_MINUS, KET_MINUS), u_minus
    )


def sigma_x_projector(j: int) -> np.ndarray:
    return 0.5 * (IDENTITY2 + j * PAULI_X)


def oracle_joint_probs(
    state: BlochState, cfg: MeasurementConfig, phase: float = 0.0
) -> JointStats:
    """``Tr[U (rho (x) |a><a|) U^dag (Pi^x_j (x) |b_k><b_k|)]`` for every ``(j, k)``."""
    app = build_apparatus(cfg, phase)
    u = coupling_unitary(cfg, apparatus=app)
    initial = np.kron(state.density_matrix(), np.outer(FIDUCIAL, FIDUCIAL.conj()))
    final = u @ initial @ u.conj().T
    probs = []
    for j, k in OUTCOMES:
        b = app.b(k)
        effect = np.kron(sigma_x_projector(j), np.outer(b, b.conj()))
        # Tr(final @ effect) without forming the product
        probs.append(float(np.sum(final * effect.T).real))
    return JointStats(tuple(probs))


def random_ball_states(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` Bloch vectors drawn uniformly from the unit ball, shape ``(n, 3)``."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.random((n, 1)) ** (1.0 / 3.0)


def max_oracle_deviation(trials: int, seed: int) -> tuple[float, float]:
    """Largest disagreement between the matrix model and the closed-form statistics.

    Draws ``trials`` random states and ``delta`` values from ``seed`` and returns
    the max-norm deviation of the joint distribution and of the two marginals.
    """
    rng = np.random.default_rng(seed)
    vectors = random_ball_states(trials, rng)
    deltas = rng.uniform(0.0, math.pi / 2, trials)
    joint_dev = marg_dev = 0.0
    for v, d in zip(vectors, deltas):
        state, cfg = BlochState(*v), MeasurementConfig(float(d))
        oracle = oracle_joint_probs(state, cfg)
        joint_dev = max(joint_dev, float(np.max(np.abs(oracle.as_array() - joint_stats(state, cfg).as_array()))))
        mx, mz = marginal_stats(state, cfg)
        marg_dev = max(
            marg_dev,
            float(np.max(np.abs(oracle.marginal_x() - mx))),
            float(np.max(np.abs(oracle.marginal_z() - mz))),
        )
    return joint_dev, marg_dev


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def is_density_matrix(m: np.ndarray) -> bool:
    if not is_hermitian(m) or abs(np.trace(m) - 1.0) > HERMITIAN_TOL:
        return False
    return bool(np.linalg.eigvalsh(m).min() >= -POSITIVITY_TOL)
