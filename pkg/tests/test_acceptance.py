"""End-to-end acceptance checks, one or more tests per numbered criterion."""
import itertools
import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import chisquare

from flrs import cli
from flrs.channel import make_rng, sample_error
from flrs.code import CodeParams, min_distance
from flrs.decoder import LIST, DecodeOutcome, decoding_radius, failure_bound
from flrs.errors import InvariantViolation
from flrs.simulation import SimulationConfig, radius_table, simulate

from oracles import TINY_CODES, brute_min_distance, brute_weight

REF = CodeParams.build(3, 6, 2, 3, 4, 2)
TESTS = Path(__file__).parent

# tabulated curve for h = 25, R = 0, 0.05, ..., 1
FIGURE_TAU = [
    0.9615384615384616, 0.8406593406593407, 0.7676470588235295, 0.7037037037037037,
    0.6447368421052632, 0.5892857142857143, 0.5357142857142857, 0.4861111111111111,
    0.4365079365079365, 0.39090909090909093, 0.34545454545454546, 0.3016304347826087,
    0.2608695652173913, 0.22010869565217392, 0.18055555555555555, 0.14583333333333334,
    0.1111111111111111, 0.0763888888888889, 0.05, 0.025, 0.0,
]


@pytest.fixture(scope="module")
def big_run():
    """One 10^5-trial run at t=2 shared by the failure-rate and KL checks."""
    cfg = SimulationConfig(REF, s=2, mu=1, t=2, trials=100_000, seed=2024)
    return simulate(cfg)


@pytest.mark.criterion(1)
@pytest.mark.parametrize("case", TINY_CODES, ids=str)
def test_c1_min_distance_oracle(case):
    p = CodeParams.build(*case)
    start = time.perf_counter()
    d = brute_min_distance(p)
    assert time.perf_counter() - start < 10
    assert d == p.N - -(-p.k // p.h) + 1 == min_distance(p)


@pytest.mark.criterion(1)
def test_c1_covers_required_sets():
    assert (2, 4, 1, 2, 2, 2) in TINY_CODES
    assert len(TINY_CODES) >= 4
    assert any(k % h for _, _, _, h, _, k in TINY_CODES)


@pytest.mark.criterion(2)
def test_c2_radius_arithmetic():
    assert decoding_radius(REF, 2, 1) == Fraction(13, 6)
    assert round(float(Fraction(13, 6)), 2) == 2.17
    assert decoding_radius(REF, 2, 2) == Fraction(2)


@pytest.mark.criterion(3)
@pytest.mark.slow
def test_c3_failure_rate_below_heuristic(big_run, criterion_note):
    criterion_note(f"{big_run.failures}/{big_run.trials} failures, "
                   f"bound {float(big_run.heuristic_bound):.3e}")
    assert big_run.trials >= 100_000
    assert big_run.heuristic_bound == failure_bound(2, 3, 6, 1)
    assert big_run.observed_rate <= Fraction(549, 100_000)
    assert big_run.observed_rate <= big_run.heuristic_bound


@pytest.mark.criterion(4)
@pytest.mark.parametrize("t", [0, 1])
def test_c4_below_unique_radius(t):
    # run_trial aborts on any wrong Unique result, so zero failures means
    # every trial returned Unique with the transmitted message
    rep = simulate(SimulationConfig(REF, s=2, mu=1, t=t, trials=10_000, seed=40 + t))
    assert rep.trials == 10_000 and rep.failures == 0


@pytest.mark.criterion(5)
def test_c5_list_completeness(criterion_note):
    rep = simulate(SimulationConfig(REF, s=2, mu=1, t=2, trials=1000, seed=50, mode=LIST))
    criterion_note(f"max list size {rep.max_list_size}")
    assert rep.failures == 0
    assert rep.max_list_size <= 3 ** (6 * (2 - 1))


@pytest.mark.criterion(6)
@pytest.mark.slow
def test_c6_kernel_bound_held_in_big_run(big_run, criterion_note):
    criterion_note(f"d_I histogram {big_run.d_I_hist}")
    # the harness raises InvariantViolation on the first trial below the bound
    assert sum(big_run.d_I_hist.values()) == big_run.trials
    assert min(big_run.d_I_hist) >= max(1, 2 * (4 - 2 + 1) - 2 * (3 - 2 + 1))


@pytest.mark.criterion(6)
def test_c6_violation_aborts_with_exit_two(tmp_path, monkeypatch, capsys):
    import json

    import flrs.simulation as sim
    params = tmp_path / "p.json"
    params.write_text(json.dumps(REF.to_dict()))

    def fake_decode(*args, **kwargs):
        return DecodeOutcome("Unique", [], diagnostics={"d_I": 0, "D": 4, "d_RF": 0})
    monkeypatch.setattr(sim, "decode", fake_decode)
    code = cli.main(["simulate", "--params", str(params), "--t", "2", "--s", "2",
                     "--trials", "5"])
    assert code == 2
    assert "invariant" in capsys.readouterr().err
    with pytest.raises(InvariantViolation):
        sim.run_trial(SimulationConfig(REF, s=2, t=2, trials=1), 0)


@pytest.mark.criterion(7)
@pytest.mark.slow
def test_c7_kl_divergence(big_run, criterion_note):
    criterion_note(f"KL = {big_run.kl_bits:.3e} bits")
    assert big_run.kl_bits <= 5e-3


@pytest.mark.criterion(8)
def test_c8_figure_reproduction():
    rows = radius_table(25, grid=21)
    assert [float(r["R"]) for r in rows] == pytest.approx([i / 20 for i in range(21)])
    for row, expected in zip(rows, FIGURE_TAU):
        assert abs(float(row["tau"]) - expected) <= 1e-9


@pytest.mark.criterion(9)
def test_c9_algebra_suites():
    start = time.perf_counter()
    files = [str(TESTS / f) for f in ("test_gf.py", "test_linalg.py", "test_skew.py")]
    res = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *files],
                         capture_output=True, text=True, cwd=TESTS.parent)
    assert res.returncode == 0, res.stdout[-2000:]
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(10)
def test_c10_channel_uniformity(criterion_note):
    p = CodeParams.build(2, 2, 1, 1, 2, 1)
    F = p.field
    cells = [w for w in itertools.product(range(F.order), repeat=2)
             if brute_weight(F, np.array(w).reshape(p.shape)) == 1]
    assert len(cells) == 9
    rng = make_rng(10)
    n = 100_000
    counts = Counter(tuple(sample_error(p, 1, rng).blocks.ravel().tolist()) for _ in range(n))
    assert set(counts) <= set(cells)
    observed = [counts[c] for c in cells]
    pvalue = chisquare(observed).pvalue
    criterion_note(f"chi-square p = {pvalue:.3f}")
    assert pvalue > 1e-3
