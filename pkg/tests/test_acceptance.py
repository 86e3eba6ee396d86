"""Acceptance gates for the whole package, one test per criterion.

Each test prints a single verdict line with the measured values and then
asserts on it, so a verbose pytest run reads as a per-criterion scorecard.
Seeds are fixed; everything here is deterministic.
"""

import csv
import math
import time

import numpy as np
import pytest

from diaboli import (
    ArrowheadHamiltonian,
    DegenerateOnLoop,
    LoopPath,
    Schedule,
    ViolationDiagonal,
    brute_force_oracle,
    eigen_arrowhead,
    eigen_dense,
    evolve,
    fitted_level_coefficient,
    min_gap_on_segment,
    random_instance,
    solubility,
    solve,
    violation_diagonal,
    worst_case_diagonal,
)
from diaboli.cli import main


def _verdict(tag: str, ok: bool, detail: str) -> None:
    print(f"{tag}: {'PASS' if ok else 'FAIL'} [{detail}]")
    assert ok, f"{tag}: {detail}"


def _circular_distance(a: float, b: float) -> float:
    return abs((a - b + math.pi) % (2.0 * math.pi) - math.pi)


def _read_csv(path) -> list[dict[str, float]]:
    with open(path, newline="") as handle:
        return [
            {key: float(value) for key, value in row.items()}
            for row in csv.DictReader(handle)
        ]


def test_a1_second_order_coefficients():
    t0 = time.monotonic()
    diag = worst_case_diagonal(7, solution_index=0)
    ground = fitted_level_coefficient(diag, z=-1.0, variant="unscaled", level=0)
    first = fitted_level_coefficient(diag, z=-1.0, variant="unscaled", level=1)
    elapsed = time.monotonic() - t0
    ok = (
        abs(ground - (-2.0)) <= 0.02 * 2.0
        and abs(first - (-252.0)) <= 0.02 * 252.0
        and elapsed < 5.0
    )
    _verdict(
        "A1 second-order coefficients",
        ok,
        f"fit e0: {ground:.6f} (want -2 +/-2%), fit e1: {first:.4f} (want -252 +/-2%), {elapsed:.2f}s",
    )


def test_a2_minimum_gap_location():
    t0 = time.monotonic()
    diag = worst_case_diagonal(7, solution_index=0)
    point, gap = min_gap_on_segment(diag, "unscaled", "x", fixed=-1.0, lo=0.0, hi=0.2)
    elapsed = time.monotonic() - t0
    predicted = math.sqrt(1.0 / 500.0)
    location = abs(point.x)
    ok = (
        0.040 <= location <= 0.050
        and abs(location - predicted) <= 0.01
        and elapsed < 10.0
    )
    _verdict(
        "A2 minimum-gap location",
        ok,
        f"numeric |x*|={location:.6f} gap={gap:.6f}, predicted {predicted:.6f}, "
        f"window [0.040, 0.050], {elapsed:.2f}s",
    )


def test_a3_scaled_variants_keep_the_gap_constant():
    t0 = time.monotonic()
    locations = []
    gaps = []
    for n in range(3, 10):
        diag = worst_case_diagonal(n, solution_index=0)
        point, gap = min_gap_on_segment(diag, "z_scaled", "x", fixed=-1.0, lo=-0.5, hi=0.5)
        locations.append(abs(point.x))
        gaps.append(gap)
    coeffs = [
        abs(fitted_level_coefficient(worst_case_diagonal(n, 0), -1.0, "x_scaled", level=1))
        for n in range(3, 10)
    ]
    elapsed = time.monotonic() - t0
    variation = float(np.std(coeffs) / np.mean(coeffs))
    ok = (
        max(locations) <= 0.01
        and all(abs(g - 0.5) <= 0.05 for g in gaps)
        and variation < 0.10
        and elapsed < 60.0
    )
    _verdict(
        "A3 scaling variants",
        ok,
        f"z_scaled max|x*|={max(locations):.2e}, gap range [{min(gaps):.4f}, {max(gaps):.4f}] "
        f"(want 0.5 +/-0.05), x_scaled coefficient variation {variation:.2%} (<10%), {elapsed:.1f}s",
    )


def test_a4_phase_agrees_with_brute_force():
    t0 = time.monotonic()
    total = agreed = degenerate = 0
    saw_multi = saw_insoluble = 0
    for n in range(3, 9):
        rng = np.random.default_rng(1000 + n)
        for index in range(100):
            m = int(rng.integers(1, 5 * n + 1))
            diag = violation_diagonal(random_instance(n, m, rng))
            saw_multi += len(diag.solutions) > 1
            saw_insoluble += not diag.soluble
            total += 1
            try:
                phase_says = solubility(diag)
            except DegenerateOnLoop as exc:
                degenerate += 1
                print(f"A4 degenerate transport: n={n} draw={index} m={m}: {exc}")
                continue
            agreed += phase_says == diag.soluble
    elapsed = time.monotonic() - t0
    completed = total - degenerate
    ok = (
        agreed == completed
        and degenerate / total < 0.05
        and saw_multi > 0
        and saw_insoluble > 0
        and elapsed < 600.0
    )
    _verdict(
        "A4 phase vs brute force",
        ok,
        f"{agreed}/{completed} agreements, {degenerate}/{total} degenerate transports "
        f"({saw_multi} multi-solution, {saw_insoluble} insoluble draws), {elapsed:.0f}s",
    )


def _a5_instances() -> list[tuple[int, ViolationDiagonal]]:
    picked = []
    for n in range(3, 8):
        rng = np.random.default_rng(2000 + n)
        found = 0
        while found < 50:
            m = int(rng.integers(1, 3 * n + 1))
            diag = violation_diagonal(random_instance(n, m, rng))
            if diag.soluble:
                picked.append((n, diag))
                found += 1
    return picked


def _a5_insoluble() -> list[tuple[int, ViolationDiagonal]]:
    picked = [(n, worst_case_diagonal(n)) for n in range(3, 8)]
    for n in range(3, 8):
        rng = np.random.default_rng(2100 + n)
        found = tries = 0
        while found < 5 and tries < 400:
            tries += 1
            diag = violation_diagonal(random_instance(n, 10 * n, rng))
            if not diag.soluble:
                picked.append((n, diag))
                found += 1
    return picked


def test_a5_search_uses_exactly_n_oracle_calls():
    soluble = _a5_instances()
    insoluble = _a5_insoluble()

    t0 = time.monotonic()
    for n, diag in soluble:
        trace = solve(diag, oracle=brute_force_oracle)
        assert trace.oracle_calls == n and diag.entries[trace.result] == 0
    for n, diag in insoluble:
        trace = solve(diag, oracle=brute_force_oracle)
        assert trace.result is None and trace.total_oracle_calls == 1
    brute_elapsed = time.monotonic() - t0

    t0 = time.monotonic()
    berry_ok = True
    for n, diag in soluble:
        trace = solve(diag)
        berry_ok &= trace.oracle_calls == n and diag.entries[trace.result] == 0
    for n, diag in insoluble:
        trace = solve(diag)
        berry_ok &= trace.result is None and trace.total_oracle_calls == 1
    berry_elapsed = time.monotonic() - t0

    ok = berry_ok and brute_elapsed < 10.0 and berry_elapsed < 600.0
    _verdict(
        "A5 bisection search",
        ok,
        f"{len(soluble)} soluble + {len(insoluble)} insoluble instances; "
        f"brute {brute_elapsed:.1f}s (<10s), phase oracle {berry_elapsed:.0f}s (<600s)",
    )


def test_a6_eigensolver_equivalence():
    t0 = time.monotonic()
    rng = np.random.default_rng(3000)
    worst_err = 0.0
    checked = 0
    for dim in (9, 65, 129, 1025):
        for _ in range(50):
            body = rng.normal(size=dim - 1) * float(rng.choice([0.1, 1.0, 10.0]))
            repeats = dim // 4
            body[:repeats] = rng.choice(body[repeats:], size=repeats)
            border = float(rng.normal())
            head = float(rng.normal())
            ham = ArrowheadHamiltonian(body_diag=body, border=border, head_diag=head)
            fast = eigen_arrowhead(ham).eigenvalues
            dense = eigen_dense(ham, want_ground_vector=False).eigenvalues
            worst_err = max(worst_err, float(np.max(np.abs(fast - dense))))
            # pairwise interlacing against the sorted body diagonal
            d = np.sort(body)
            tol = 1e-9 * max(1.0, float(np.max(np.abs(d))))
            assert np.all(fast[:-1] <= d + tol) and np.all(d <= fast[1:] + tol)
            trace = float(np.sum(body) + head)
            assert np.sum(fast) == pytest.approx(trace, rel=1e-9, abs=1e-9)
            checked += 1
    elapsed = time.monotonic() - t0
    ok = worst_err <= 1e-10 and checked == 200 and elapsed < 60.0
    _verdict(
        "A6 eigensolver equivalence",
        ok,
        f"{checked} matrices, worst |fast - dense| = {worst_err:.2e} (<=1e-10), {elapsed:.1f}s",
    )


def test_a7_adiabatic_slowdown():
    t0 = time.monotonic()
    diag = worst_case_diagonal(3, solution_index=0)
    path = LoopPath.default_rectangle()

    def steps_for(total_time: float) -> int:
        return max(2000, min(10000, int(total_time)))

    slow = evolve(diag, "unscaled", path, Schedule(1e4, "gap_adaptive", steps=steps_for(1e4)))
    fast = evolve(diag, "unscaled", path, Schedule(10.0, "uniform", steps=2000))
    ladder = []
    for total_time in (10.0, 1e2, 1e3, 1e4):
        result = evolve(
            diag, "unscaled", path,
            Schedule(total_time, "gap_adaptive", steps=steps_for(total_time)),
        )
        ladder.append(result.ground_fidelity)
    elapsed = time.monotonic() - t0

    phase_err = _circular_distance(slow.geometric_phase_estimate, math.pi)
    worst_drop = max(ladder[i] - ladder[i + 1] for i in range(len(ladder) - 1))
    ok = (
        slow.ground_fidelity >= 0.99
        and phase_err <= 0.15
        and fast.ground_fidelity < slow.ground_fidelity
        and worst_drop <= 0.02
        and elapsed < 120.0
    )
    _verdict(
        "A7 adiabatic slow-down",
        ok,
        f"slow fidelity {slow.ground_fidelity:.4f} (>=0.99), phase error {phase_err:.3f} rad "
        f"(<=0.15), fast fidelity {fast.ground_fidelity:.4f}, ladder {[round(f, 4) for f in ladder]} "
        f"max drop {worst_drop:.4f} (<=0.02), {elapsed:.0f}s",
    )


def test_a8_figure_regeneration(tmp_path):
    crossing_csv = tmp_path / "crossing.csv"
    assert main([
        "spectrum", "wc:n=3,sol=0", "--sweep", "z", "--fixed", "0",
        "--range=-1:1", "--samples", "201", "--out", str(crossing_csv),
    ]) == 0
    rows = _read_csv(crossing_csv)
    by_z = {row["z"]: row for row in rows}
    crossing_ok = (
        by_z[0.0]["gap01"] <= 1e-12
        and by_z[-1.0]["gap01"] >= 0.4
        and by_z[1.0]["gap01"] >= 0.4
    )

    avoided_csv = tmp_path / "avoided.csv"
    assert main([
        "spectrum", "wc:n=7,sol=0", "--sweep", "x", "--fixed", "-1",
        "--range", "0:0.2", "--samples", "201", "--out", str(avoided_csv),
    ]) == 0
    rows = _read_csv(avoided_csv)
    gaps = [row["gap01"] for row in rows]
    k = int(np.argmin(gaps))
    avoided_ok = 0 < k < len(gaps) - 1 and gaps[k] > 1e-6 and gaps[0] > gaps[k] < gaps[-1]

    band_csv = tmp_path / "band.csv"
    assert main([
        "spectrum", "wc:n=7,sol=0", "--variant", "z_scaled", "--sweep", "x",
        "--fixed", "-1", "--range=-0.5:0.5", "--samples", "101", "--out", str(band_csv),
    ]) == 0
    rows = _read_csv(band_csv)
    band_ok = all(
        127.5 <= row[f"e{i}"] <= 128.5 for row in rows for i in range(2, 129)
    )

    ok = crossing_ok and avoided_ok and band_ok
    _verdict(
        "A8 figure regeneration",
        ok,
        f"crossing at z=0 gap {by_z[0.0]['gap01']:.1e}, avoided-crossing interior minimum "
        f"{gaps[k]:.4f} at sample {k}, scaled band inside [127.5, 128.5]: {band_ok}",
    )


def test_a8_note_gap_shrinks_with_problem_size():
    sizes = list(range(3, 10))
    gaps = []
    for n in sizes:
        diag = worst_case_diagonal(n, solution_index=0)
        _, gap = min_gap_on_segment(diag, "unscaled", "x", fixed=-1.0, lo=0.0, hi=0.2)
        gaps.append(gap)
    decreasing = all(a > b for a, b in zip(gaps, gaps[1:]))
    slope = float(np.polyfit(sizes, np.log(gaps), 1)[0])
    ok = decreasing and slope < 0.0
    _verdict(
        "A8n minimum gap vs problem size",
        ok,
        f"gaps {[f'{g:.4f}' for g in gaps]}, log-linear slope {slope:.3f} (<0)",
    )
