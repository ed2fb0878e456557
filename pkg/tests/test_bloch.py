import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointunc.bloch import (
    BlochState,
    FamilyKind,
    StateAngles,
    StateFamily,
    bloch_from_angles,
    family_state,
    purity,
    xz_state,
)
from jointunc.errors import DomainError

R2 = 1 / math.sqrt(2)


@pytest.mark.parametrize(
    "angles, expected",
    [
        (StateAngles(0.0, 0.0, 1.0), (0.0, 0.0, 1.0)),
        (StateAngles(math.pi / 4, 0.0, 1.0), (R2, 0.0, R2)),
        (StateAngles(math.pi / 2, 0.0, 0.5), (0.5, 0.0, 0.0)),
    ],
)
def test_bloch_from_angles(angles, expected):
    s = bloch_from_angles(angles)
    assert (s.sx, s.sy, s.sz) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [dict(theta=-0.1), dict(theta=3.2), dict(theta=1.0, phi=2 * math.pi), dict(theta=1.0, smag=1.01)],
)
def test_angles_out_of_range(kwargs):
    with pytest.raises(DomainError):
        StateAngles(**kwargs)


def test_unphysical_state_rejected():
    BlochState(1.0 + 5e-13, 0.0, 0.0)
    with pytest.raises(DomainError):
        BlochState(0.8, 0.0, 0.8)


@given(
    st.floats(0.0, math.pi),
    st.floats(0.0, 2 * math.pi, exclude_max=True),
    st.floats(0.0, 1.0),
)
def test_length_equals_smag(theta, phi, smag):
    s = bloch_from_angles(StateAngles(theta, phi, smag))
    assert abs(s.norm - smag) <= 1e-14


@pytest.mark.parametrize(
    "family, expected",
    [
        (StateFamily(FamilyKind.EXTREME_Z, 1, 1, 1.0), (0.0, 0.0, 1.0)),
        (StateFamily(FamilyKind.INTERMEDIATE, 1, 1, 1.0), (R2, 0.0, R2)),
        (StateFamily(FamilyKind.EXTREME_X, -1, 1, 0.4), (-0.4, 0.0, 0.0)),
    ],
)
def test_family_state(family, expected):
    s = family_state(family)
    assert (s.sx, s.sy, s.sz) == pytest.approx(expected, abs=1e-15)


@given(
    st.sampled_from(list(FamilyKind)),
    st.sampled_from([1, -1]),
    st.sampled_from([1, -1]),
    st.floats(0.0, 1.0),
)
def test_family_invariants(kind, s1, s2, smag):
    s = family_state(StateFamily(kind, s1, s2, smag))
    assert s.sy == 0.0
    if kind is FamilyKind.EXTREME_X:
        assert s.sz == 0.0 and abs(s.sx) == smag
    elif kind is FamilyKind.EXTREME_Z:
        assert s.sx == 0.0 and abs(s.sz) == smag
    else:
        assert abs(s.sx) == abs(s.sz)
        assert abs(s.sz) == smag / math.sqrt(2)


def test_invalid_family_sign():
    with pytest.raises(DomainError):
        StateFamily(FamilyKind.EXTREME_X, 2)


@pytest.mark.parametrize(
    "state, expected",
    [
        (BlochState(0, 0, 1), 1.0),
        (BlochState(0, 0, 0), 0.5),
        (BlochState(0.6, 0, 0.8), 1.0),
    ],
)
def test_purity(state, expected):
    assert purity(state) == pytest.approx(expected, abs=1e-15)


def test_purity_matches_trace_of_square():
    s = BlochState(0.3, -0.2, 0.5)
    rho = s.density_matrix()
    assert purity(s) == pytest.approx((rho @ rho).trace().real, abs=1e-15)


def test_purity_monotone_in_length():
    values = [purity(xz_state(0.7, r)) for r in [0.0, 0.2, 0.5, 0.9, 1.0]]
    assert values == sorted(values)
