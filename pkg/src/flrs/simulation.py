"""Monte Carlo failure-rate harness, KL-divergence tracker and radius tables.

Every trial draws its own generator from ``seed ^ trial_index``, so results
do not depend on how trials are sharded across worker processes.
"""
from __future__ import annotations

import csv
import logging
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .channel import RNG_ALGORITHM, make_rng, max_weight, sample_error
from .code import CodeParams, encode, word_add
from .decoder import (LIST, UNIQUE, DecoderConfig, decode, failure_bound,
                      kernel_dim_bound)
from .errors import InvariantViolation, ParameterError

log = logging.getLogger(__name__)

PROGRESS_EVERY = 10_000


@dataclass
class SimulationConfig:
    params: CodeParams
    s: int
    mu: int = 1
    t: int = 0
    trials: int = 1000
    seed: int = 0
    mode: str = UNIQUE
    list_cap: int = 4096
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if self.mode not in (UNIQUE, LIST):
            raise ParameterError(f"unknown mode {self.mode!r}")
        if not 0 <= self.t <= max_weight(self.params):
            raise ParameterError(
                f"infeasible error weight t={self.t} (max {max_weight(self.params)})")
        self.decoder.check(self.params)

    @property
    def decoder(self) -> DecoderConfig:
        return DecoderConfig(self.s, self.mu, self.list_cap)


@dataclass
class _Tally:
    trials: int = 0
    failures: int = 0
    reasons: Counter = field(default_factory=Counter)
    d_I: Counter = field(default_factory=Counter)
    max_list: int = 0
    b0_hist: np.ndarray | None = None
    failed: list = field(default_factory=list)

    def merge(self, other: _Tally) -> _Tally:
        self.trials += other.trials
        self.failures += other.failures
        self.reasons += other.reasons
        self.d_I += other.d_I
        self.max_list = max(self.max_list, other.max_list)
        self.b0_hist = self.b0_hist + other.b0_hist
        self.failed += other.failed
        return self


def run_trial(config: SimulationConfig, trial: int):
    """One transmission.  Returns ``(message, outcome)``; raises on invariant violations."""
    params = config.params
    F = params.field
    rng = make_rng(config.seed ^ trial)
    f = [int(c) for c in F.random(rng, params.k)]
    R = word_add(F, encode(params, f), sample_error(params, config.t, rng))
    out = decode(params, config.decoder, R, config.mode)
    d = out.diagnostics
    floor_dI = max(config.mu, kernel_dim_bound(params, config.s, d["D"], config.t))
    if d["d_I"] < floor_dI:
        raise InvariantViolation(
            f"trial {trial}: d_I={d['d_I']} below the kernel-dimension bound {floor_dI}")
    if "d_RF" in d and d["d_RF"] > config.s - 1:
        raise InvariantViolation(f"trial {trial}: d_RF={d['d_RF']} exceeds s-1")
    if config.mode == UNIQUE and out.kind == "Unique" and out.messages[0].padded(params.k) != f:
        raise InvariantViolation(f"trial {trial}: wrong unique decoding result")
    return f, out


def _run_range(config: SimulationConfig, start: int, stop: int) -> _Tally:
    params = config.params
    tally = _Tally(b0_hist=np.zeros(params.field.order, dtype=np.int64))
    for trial in range(start, stop):
        f, out = run_trial(config, trial)
        tally.trials += 1
        tally.d_I[out.diagnostics["d_I"]] += 1
        if out.basis is not None:
            for c in out.basis.b0_coefficients(config.mu):
                tally.b0_hist[c] += 1
        if config.mode == UNIQUE:
            failed = out.kind == "Failure"
        else:
            tally.max_list = max(tally.max_list, len(out.messages))
            failed = all(g.padded(params.k) != f for g in out.messages)
        if failed:
            tally.failures += 1
            reason = out.reason or "message not in list"
            tally.reasons[reason] += 1
            diag = {k: v for k, v in out.diagnostics.items()}
            tally.failed.append({"trial": trial, "reason": reason, **diag})
        if (trial + 1) % PROGRESS_EVERY == 0:
            log.info("trial %d: %d failures so far", trial + 1, tally.failures)
    return tally


def _shards(trials: int, workers: int):
    step = math.ceil(trials / workers)
    return [(i, min(i + step, trials)) for i in range(0, trials, step)]


def kl_bits(counts, order: int) -> float:
    """D_KL(chi || uniform) in bits for a histogram over ``order`` cells."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total == 0:
        return 0.0
    chi = counts[counts > 0] / total
    return float(np.sum(chi * np.log2(chi * order)))


@dataclass
class SimulationReport:
    trials: int
    failures: int
    observed_rate: Fraction
    heuristic_bound: Fraction
    kl_bits: float
    seed: int
    wall_time: float
    reasons: dict = field(default_factory=dict)
    d_I_hist: dict = field(default_factory=dict)
    max_list_size: int = 0
    failure_log: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    SCALAR_FIELDS = ("trials", "failures", "observed_rate", "observed_rate_float",
                     "heuristic_bound", "heuristic_bound_float", "kl_bits", "seed",
                     "wall_time", "max_list_size")

    def row(self) -> dict:
        out = dict(self.config)
        out.update(
            trials=self.trials, failures=self.failures,
            observed_rate=str(self.observed_rate),
            observed_rate_float=repr(float(self.observed_rate)),
            heuristic_bound=str(self.heuristic_bound),
            heuristic_bound_float=repr(float(self.heuristic_bound)),
            kl_bits=repr(self.kl_bits), seed=self.seed, wall_time=repr(self.wall_time),
            max_list_size=self.max_list_size,
        )
        return out

    def write_csv(self, path):
        row = self.row()
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(row))
            w.writeheader()
            w.writerow(row)

    @classmethod
    def read_csv(cls, path) -> SimulationReport:
        with open(path, newline="") as fh:
            row = next(csv.DictReader(fh))
        config = {k: v for k, v in row.items() if k not in cls.SCALAR_FIELDS}
        return cls(
            trials=int(row["trials"]), failures=int(row["failures"]),
            observed_rate=Fraction(row["observed_rate"]),
            heuristic_bound=Fraction(row["heuristic_bound"]),
            kl_bits=float(row["kl_bits"]), seed=int(row["seed"]),
            wall_time=float(row["wall_time"]), max_list_size=int(row["max_list_size"]),
            config=config,
        )

    def write_failures_csv(self, path):
        keys = ["trial", "reason", "d_I", "rank_B", "d_RF", "D", "rank_S", "verified_count"]
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=keys, extrasaction="ignore")
            w.writeheader()
            for rec in self.failure_log:
                w.writerow(rec)

    def to_dict(self) -> dict:
        d = self.row()
        d.update(reasons=self.reasons, d_I_hist={str(k): v for k, v in self.d_I_hist.items()},
                 failure_log=self.failure_log)
        return d


def config_echo(config: SimulationConfig) -> dict:
    p = config.params
    return {
        "q": p.field.q, "m": p.field.m, "modulus": " ".join(map(str, p.field.modulus)),
        "gamma": p.field.gamma, "ell": p.ell, "h": p.h, "N": p.N, "k": p.k,
        "s": config.s, "mu": config.mu, "t": config.t, "mode": config.mode,
        "rng": RNG_ALGORITHM,
    }


def simulate(config: SimulationConfig) -> SimulationReport:
    """Run ``config.trials`` transmissions and tally decoding failures."""
    start = time.perf_counter()
    shards = _shards(config.trials, max(1, config.workers))
    if config.workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            parts = list(pool.map(_run_range, [config] * len(shards),
                                  [a for a, _ in shards], [b for _, b in shards]))
    else:
        parts = [_run_range(config, a, b) for a, b in shards]
    tally = parts[0]
    for part in parts[1:]:
        tally.merge(part)
    p = config.params
    return SimulationReport(
        trials=tally.trials,
        failures=tally.failures,
        observed_rate=Fraction(tally.failures, tally.trials),
        heuristic_bound=failure_bound(p.k, p.field.q, p.field.m, config.mu),
        kl_bits=kl_bits(tally.b0_hist, p.field.order),
        seed=config.seed,
        wall_time=time.perf_counter() - start,
        reasons=dict(tally.reasons),
        d_I_hist=dict(sorted(tally.d_I.items())),
        max_list_size=tally.max_list,
        failure_log=tally.failed,
        config=config_echo(config),
    )


def kl_track(config: SimulationConfig) -> float:
    """KL divergence (bits) of the B_0^(u), u <= mu, coefficient distribution from uniform."""
    order = config.params.field.order
    expected_hits = config.trials * config.s * config.mu
    if expected_hits < order:
        log.warning("only %d coefficient samples for %d histogram cells", expected_hits, order)
    return simulate(config).kl_bits


# -- normalized decoding radius ------------------------------------------------

def normalized_radius(R: Fraction, h: int) -> tuple[Fraction, int]:
    """max over s of s/(s+1) * (1 - R h / (h-s+1)), clamped at 0, and the best s.

    ``R`` is the rate k/n of the unfolded code.
    """
    best, best_s = Fraction(0), 1
    for s in range(1, h + 1):
        tau = Fraction(s, s + 1) * (1 - R * Fraction(h, h - s + 1))
        if tau > best:
            best, best_s = tau, s
    return best, best_s


def radius_table(h: int, grid: int = 21) -> list[dict]:
    if h < 1 or grid < 2:
        raise ParameterError("need h >= 1 and grid >= 2")
    rows = []
    for i in range(grid):
        R = Fraction(i, grid - 1)
        tau, s = normalized_radius(R, h)
        rows.append({"h": h, "R": repr(float(R)), "tau": repr(float(tau)), "best_s": s,
                     "lrs": repr(float((1 - R) / 2)), "singleton": repr(float(1 - R))})
    return rows


def write_rows_csv(rows: list[dict], path_or_file):
    if isinstance(path_or_file, str):
        with open(path_or_file, "w", newline="") as fh:
            return write_rows_csv(rows, fh)
    w = csv.DictWriter(path_or_file, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
