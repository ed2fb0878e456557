"""Qubit states in the Bloch picture and the extreme/intermediate families."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PHYSICALITY_TOL = 1e-12


@dataclass(frozen=True)
class BlochState:
    """Bloch vector ``s`` of the density operator ``rho = (I + s . sigma) / 2``."""

    sx: float
    sy: float = 0.0
    sz: float = 0.0

    def __post_init__(self):
        for name in ("sx", "sy", "sz"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.sx**2 + self.sy**2 + self.sz**2 > 1.0 + PHYSICALITY_TOL:
            raise DomainError(f"unphysical Bloch vector with |s| = {self.norm!r} > 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.sx**2 + self.sy**2 + self.sz**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz])

    def density_matrix(self) -> np.ndarray:
        return 0.5 * np.array(
            [
                [1.0 + self.sz, self.sx - 1j * self.sy],
                [self.sx + 1j * self.sy, 1.0 - self.sz],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class StateAngles:
    """Polar angle ``theta``, azimuth ``phi`` (radians) and Bloch length ``smag``."""

    theta: float
    phi: float = 0.0
    smag: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise DomainError(f"phi must lie in [0, 2pi), got {self.phi!r}")
        if not 0.0 <= self.smag <= 1.0:
            raise DomainError(f"smag must lie in [0, 1], got {self.smag!r}")


def bloch_from_angles(angles: StateAngles) -> BlochState:
    r, th, ph = angles.smag, angles.theta, angles.phi
    return BlochState(
        r * math.sin(th) * math.cos(ph),
        r * math.sin(th) * math.sin(ph),
        r * math.cos(th),
    )


def xz_state(theta: float, smag: float = 1.0) -> BlochState:
    """State in the XZ plane (``phi = 0``) for any real ``theta``.

    ``theta`` is not range-restricted so that a full turn ``[0, 2pi)`` can be
    scanned; negative ``sx`` plays the role of ``phi = pi``.
    """
    if not 0.0 <= smag <= 1.0:
        raise DomainError(f"smag must lie in [0, 1], got {smag!r}")
    return BlochState(smag * math.sin(theta), 0.0, smag * math.cos(theta))


class FamilyKind(enum.Enum):
    EXTREME_X = "extreme-x"
    EXTREME_Z = "extreme-z"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class StateFamily:
    """Mixed extreme or intermediate state.

    ``sign1`` picks the eigenvalue sign; for intermediate states ``sign2``
    selects between the eigenstates of ``sigma_x + sigma_z`` (``+1``) and
    ``sigma_x - sigma_z`` (``-1``).  Extreme states ignore ``sign2``.
    """

    kind: FamilyKind
    sign1: int = 1
    sign2: int = 1
    smag: float = 1.0

    def __post_init__(self):
        if self.sign1 not in (1, -1) or self.sign2 not in (1, -1):
            raise DomainError("family signs must be +1 or -1")
        if not 0.0 <= self.smag <= 1.0:
            raise DomainError(f"smag must lie in [0, 1], got {self.smag!r}")


def family_state(f: StateFamily) -> BlochState:
    s = f.sign1 * f.smag
    if f.kind is FamilyKind.EXTREME_X:
        return BlochState(s, 0.0, 0.0)
    if f.kind is FamilyKind.EXTREME_Z:
        return BlochState(0.0, 0.0, s)
    c = s / math.sqrt(2.0)
    return BlochState(c, 0.0, f.sign2 * c)


def extreme_z(smag: float = 1.0, sign: int = 1) -> BlochState:
    return family_state(StateFamily(FamilyKind.EXTREME_Z, sign, 1, smag))


def extreme_x(smag: float = 1.0, sign: int = 1) -> BlochState:
    return family_state(StateFamily(FamilyKind.EXTREME_X, sign, 1, smag))


def intermediate(smag: float = 1.0, sign1: int = 1, sign2: int = 1) -> BlochState:
    return family_state(StateFamily(FamilyKind.INTERMEDIATE, sign1, sign2, smag))


def purity(state: BlochState) -> float:
    """``Tr(rho^2) = (1 + |s|^2) / 2``."""
    return 0.5 * (1.0 + state.sx**2 + state.sy**2 + state.sz**2)
