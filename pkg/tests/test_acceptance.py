"""Acceptance suite. Each test records one pass/fail line shown in the pytest summary."""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from jointunc.bloch import BlochState, extreme_x, extreme_z, intermediate
from jointunc.duality import duality_report
from jointunc.entropy import (
    EntropyIndex,
    alpha_intrinsic,
    classify_theta,
    critical_indices,
    entropic_ur_bound_intrinsic,
    renyi,
    renyi_rows,
    theta_extrema,
)
from jointunc.hilbert import max_oracle_deviation
from jointunc.majorization import (
    Verdict,
    apply_noise,
    closed_form_bounds,
    compare,
    compute_bound_vector,
    joint_vs_intrinsic,
    ordered_family_vectors,
    purity_threshold_joint_vs_intrinsic,
)
from jointunc.statistics import (
    BALANCED,
    OUTCOMES,
    MeasurementConfig,
    StatisticsKind,
    joint_stats,
    product_distribution,
    sample_joint,
    statistics_grid,
    statistics_of,
)

R2 = math.sqrt(2)
PROPERTY_CASES = 1000


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def test_criterion_01_oracle_equivalence():
    start = time.perf_counter()
    joint_dev, marg_dev = max_oracle_deviation(1000, seed=0)
    elapsed = time.perf_counter() - start
    ok = joint_dev <= 1e-12 and marg_dev <= 1e-12 and elapsed < 1.0
    record(1, ok, f"oracle joint dev {joint_dev:.2e}, marginal dev {marg_dev:.2e}, {elapsed:.2f}s")


def test_criterion_02_bound_vectors():
    closed = closed_form_bounds()
    start = time.perf_counter()
    omegas = {k: compute_bound_vector(k, BALANCED) for k in StatisticsKind}
    elapsed = time.perf_counter() - start
    # closed forms typed out independently of the library constants
    expected = {
        StatisticsKind.JOINT: np.array([2, R2, 2 - R2, 0]) / 4,
        StatisticsKind.MARGINAL_PRODUCT: np.array([9 * R2, 8 - R2, 7 * R2 - 8, R2]) / (16 * R2),
        StatisticsKind.INTRINSIC_PRODUCT: np.array([3 + 2 * R2, 5 - 2 * R2, 0, 0]) / 8,
    }
    dev = max(float(np.max(np.abs(omegas[k] - expected[k]))) for k in StatisticsKind)
    lib_dev = max(float(np.max(np.abs(closed.of(k) - expected[k]))) for k in StatisticsKind)
    ok = dev <= 1e-6 and lib_dev <= 1e-15 and elapsed < 10.0
    record(2, ok, f"bound vectors max dev {dev:.2e}, {elapsed:.2f}s")


def test_criterion_03_majorization_verdicts():
    omega_j = compute_bound_vector(StatisticsKind.JOINT, BALANCED)
    omega_m = compute_bound_vector(StatisticsKind.MARGINAL_PRODUCT, BALANCED)
    omega_i = compute_bound_vector(StatisticsKind.INTRINSIC_PRODUCT, BALANCED)
    verdicts = [
        compare(omega_j, omega_i).verdict is Verdict.MAJORIZED_BY,
        compare(omega_m, omega_i).verdict is Verdict.MAJORIZED_BY,
        compare(omega_j, omega_m).verdict is Verdict.INCOMPARABLE,
    ]
    pairs = [
        compare(*ordered_family_vectors(kind, smag, BALANCED)).verdict is Verdict.INCOMPARABLE
        for kind in StatisticsKind
        for smag in (0.1, 0.5, 0.9, 1.0)
    ]
    ok = all(verdicts) and all(pairs)
    record(3, ok, f"bound verdicts {sum(verdicts)}/3, family pairs incomparable {sum(pairs)}/{len(pairs)}")


def test_criterion_04_critical_indices():
    roots = {k: critical_indices(k, BALANCED, 1.0).roots for k in StatisticsKind}
    marg, intr, joint = (
        roots[StatisticsKind.MARGINAL_PRODUCT],
        roots[StatisticsKind.INTRINSIC_PRODUCT],
        roots[StatisticsKind.JOINT],
    )
    ok = (
        len(marg) == 1
        and abs(marg[0] - 1.34) <= 0.01
        and len(intr) == 1
        and abs(intr[0] - 1.43) <= 0.01
        and len(joint) == 2
        and abs(joint[0] - 2) <= 1e-9
        and abs(joint[1] - 3) <= 1e-9
    )
    fmt = lambda r: ", ".join(f"{x:.10g}" for x in r)  # noqa: E731
    record(4, ok, f"roots marginal [{fmt(marg)}], intrinsic [{fmt(intr)}], joint [{fmt(joint)}]")


def test_criterion_05_purity_threshold():
    t = purity_threshold_joint_vs_intrinsic()
    err = abs(t - 2 * (R2 - 1))
    below = joint_vs_intrinsic(t - 1e-6).verdict
    above = joint_vs_intrinsic(t + 1e-6).verdict
    ok = err <= 1e-9 and below is Verdict.MAJORIZED_BY and above is Verdict.INCOMPARABLE
    record(5, ok, f"threshold {t:.12f} (err {err:.1e}), verdicts {below.value} -> {above.value}")


def test_criterion_06_minimizer_sets():
    expected = {
        (StatisticsKind.JOINT, 1.0): "intermediate",
        (StatisticsKind.JOINT, 2.5): "extreme",
        (StatisticsKind.MARGINAL_PRODUCT, 1.0): "extreme",
        (StatisticsKind.MARGINAL_PRODUCT, 2.5): "intermediate",
        (StatisticsKind.INTRINSIC_PRODUCT, 1.0): "extreme",
        (StatisticsKind.INTRINSIC_PRODUCT, 2.5): "intermediate",
    }
    q = math.pi / 4
    full_sets = {"intermediate": [q, 3 * q, 5 * q, 7 * q], "extreme": [0, 2 * q, 4 * q, 6 * q]}
    mismatches = []
    for (kind, alpha), label in expected.items():
        mins = theta_extrema(kind, EntropyIndex(alpha), BALANCED, 1.0).minimizers
        if not (len(mins) == 4 and np.allclose(mins, full_sets[label], atol=1e-6)):
            mismatches.append(f"{kind.value}@{alpha}: {[classify_theta(t) for t in mins]}")
    record(6, not mismatches, "all six minimizer sets match" if not mismatches else "; ".join(mismatches))


def test_criterion_07_entropic_ur():
    thetas = np.arange(200) * (2 * math.pi / 200)
    smags = np.linspace(0.0, 1.0, 50)
    tt, rr = np.meshgrid(thetas, smags, indexing="ij")
    stats = statistics_grid(StatisticsKind.INTRINSIC_PRODUCT, rr * np.sin(tt), rr * np.cos(tt), BALANCED)
    stats = stats.reshape(-1, 4)
    assert stats.shape[0] == 10_000
    a_i = alpha_intrinsic()
    failures, worst_slack, worst_gap = [], math.inf, 0.0
    for alpha in (0.5, 1.0, 1.43, 2.0, 5.0, math.inf):
        bound = entropic_ur_bound_intrinsic(alpha)
        slack = float(renyi_rows(stats, alpha).min()) - bound
        minimizer = extreme_z(1.0) if alpha <= a_i else intermediate(1.0)
        gap = renyi(statistics_of(StatisticsKind.INTRINSIC_PRODUCT, minimizer), alpha) - bound
        worst_slack, worst_gap = min(worst_slack, slack), max(worst_gap, gap)
        if slack < -1e-12 or gap > 1e-6:
            failures.append(f"alpha={alpha}: slack {slack:.2e}, gap {gap:.2e}")
    detail = f"min slack {worst_slack:.2e}, max gap at minimizer {worst_gap:.2e}"
    record(7, not failures, detail if not failures else "; ".join(failures))


def test_criterion_08_duality():
    worst = 0.0
    for theta in np.linspace(0.0, math.pi, 40):
        for delta in np.linspace(0.0, math.pi / 2, 25):
            worst = max(worst, abs(duality_report(float(theta), MeasurementConfig(float(delta))).sum_sq - 1))
    reports = [duality_report(float(t), BALANCED) for t in np.linspace(0.0, math.pi, 1001)]
    d_min = min(r.D for r in reports)
    v_max = max(r.V for r in reports)
    target = 1 / R2
    ok = worst <= 1e-12 and abs(d_min - target) <= 1e-12 and abs(v_max - target) <= 1e-12
    record(8, ok, f"max |D^2+V^2-1| {worst:.1e}, min D {d_min:.15f}, max V {v_max:.15f}")


def _random_prob(rng, n, floor=0.0):
    p = rng.dirichlet(np.full(n, rng.uniform(0.2, 3.0)))
    if floor:
        # zero out a random subset, keep the rest well above the additivity floor
        mask = rng.random(n) < 0.3
        mask[rng.integers(n)] = False
        p = np.where(mask, 0.0, np.maximum(p, floor))
        p /= p.sum()
    return p


def _birkhoff(p, rng):
    perms = [rng.permutation(len(p)) for _ in range(3)]
    w = rng.dirichlet(np.ones(3))
    return sum(wi * p[perm] for wi, perm in zip(w, perms))


ALPHAS = (0.0, 0.3, 0.5, 0.99, 1.0, 1.5, 2.0, 3.0, 7.0, 20.0, math.inf)


def test_criterion_09_property_suites():
    rng = np.random.default_rng(9)
    violations = {name: 0 for name in ("monotonicity", "additivity", "schur", "noise", "permutation")}
    for _ in range(PROPERTY_CASES):
        p = _random_prob(rng, int(rng.integers(2, 9)))
        values = [renyi(p, a) for a in ALPHAS]
        if any(b > a + 1e-12 for a, b in zip(values, values[1:])):
            violations["monotonicity"] += 1

        p, q = _random_prob(rng, 3, floor=1e-5), _random_prob(rng, 4, floor=1e-5)
        pq = product_distribution(p, q)
        if any(abs(renyi(pq, a) - renyi(p, a) - renyi(q, a)) > 1e-10 for a in ALPHAS):
            violations["additivity"] += 1

        q = _random_prob(rng, 5)
        mixed = _birkhoff(q, rng)
        verdict = compare(mixed, q).verdict
        if verdict not in (Verdict.MAJORIZED_BY, Verdict.EQUAL) or any(
            renyi(mixed, a) < renyi(q, a) - 1e-12 for a in ALPHAS
        ):
            violations["schur"] += 1

        p2, eta = _random_prob(rng, 2), rng.uniform(0.0, 1.0)
        noisy = apply_noise(p2, eta)
        if compare(noisy, p2).verdict not in (Verdict.MAJORIZED_BY, Verdict.EQUAL) or any(
            renyi(noisy, a) < renyi(p2, a) - 1e-12 for a in ALPHAS
        ):
            violations["noise"] += 1

        p = _random_prob(rng, 6)
        shuffled = p[rng.permutation(6)]
        if any(abs(renyi(shuffled, a) - renyi(p, a)) > 1e-12 for a in ALPHAS) or (
            compare(shuffled, p).verdict is not Verdict.EQUAL
        ):
            violations["permutation"] += 1
    ok = not any(violations.values())
    detail = ", ".join(f"{k} {v}" for k, v in violations.items())
    record(9, ok, f"violations over {PROPERTY_CASES} cases each: {detail}")


def test_criterion_10_sampler():
    state = BlochState(0.3, 0.2, -0.5)
    n = 1_000_000
    counts = sample_joint(state, BALANCED, n, seed=12345)
    expected = joint_stats(state, BALANCED)
    tv = 0.5 * sum(abs(counts[o] / n - expected.p(*o)) for o in OUTCOMES)
    record(10, tv <= 5e-3 and sum(counts.values()) == n, f"total variation {tv:.2e} at n={n}")


@pytest.mark.parametrize("make", [extreme_x, extreme_z])
def test_extreme_statistics_sanity(make):
    # guards the representative used in criterion 7
    p = statistics_of(StatisticsKind.INTRINSIC_PRODUCT, make(1.0))
    assert renyi(p, 1.0) == pytest.approx(math.log(2), abs=1e-15)
