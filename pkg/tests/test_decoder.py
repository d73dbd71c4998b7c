from fractions import Fraction

import numpy as np
import pytest

from flrs.channel import make_rng, sample_error, sum_rank_distance
from flrs.code import CodeParams, encode, word_add
from flrs.decoder import (LIST, UNIQUE, DecoderConfig, RootFindingSystem,
                          build_interpolation_points, build_root_finding, decode,
                          decoding_radius, degree_constraint, evaluate_interpolation,
                          failure_bound, kernel_dim_bound, max_correctable,
                          solve_interpolation, solve_root_finding)
from flrs.errors import ParameterError
from flrs.skew import SkewPoly, skew_add, skew_mul

P = CodeParams.build(3, 6, 2, 3, 4, 2)
F = P.field
CFG = DecoderConfig(s=2, mu=1)


def random_message(rng):
    return rng.integers(0, F.order, size=P.k).tolist()


def received(rng, f, t):
    return word_add(F, encode(P, f), sample_error(P, t, rng))


def test_formula_examples():
    assert degree_constraint(P, 2, 1) == 4
    assert decoding_radius(P, 2, 1) == Fraction(13, 6)
    assert max_correctable(P, 2, 1) == 2
    assert decoding_radius(P, 2) == Fraction(7, 3)
    assert max_correctable(P, 2) == 2
    assert failure_bound(2, 3, 6, 1) == Fraction(4, 729)
    assert float(failure_bound(2, 3, 6, 1)) == pytest.approx(5.49e-3, rel=1e-3)
    assert failure_bound(2, 3, 6, 2) == 2 * Fraction(2, 729) ** 2
    assert kernel_dim_bound(P, 2, 4, 2) == 2 * 3 - 2 * 2
    with pytest.raises(ParameterError):
        failure_bound(2, 3, 6, 0)


def test_config_rejections():
    with pytest.raises(ParameterError):
        DecoderConfig(s=0)
    with pytest.raises(ParameterError):
        DecoderConfig(s=1, mu=0)
    with pytest.raises(ParameterError, match="exceeds"):
        DecoderConfig(s=4).check(P)
    with pytest.raises(ParameterError):
        decode(P, CFG, encode(P, [1, 2]), mode="bogus")


def test_point_count():
    R = encode(P, [1, 2])
    for s in (1, 2, 3):
        pts = build_interpolation_points(P, s, R)
        assert len(pts) == P.N * (P.h - s + 1)
        assert all(len(pt) == s + 1 for blk in pts.blocks for pt in blk)


def test_interpolation_basis_vanishes_on_points():
    rng = np.random.default_rng(0)
    for t in (0, 1, 2, 3):
        R = received(rng, random_message(rng), t)
        pts = build_interpolation_points(P, 2, R)
        basis = solve_interpolation(P, CFG, pts)
        for u in range(basis.d_I):
            Q = basis.polys(u)
            assert Q[0].degree < basis.D
            assert all(q.degree <= basis.D - P.k for q in Q[1:])
            for ai, blk in zip(P.a, pts.blocks):
                for pt in blk:
                    assert evaluate_interpolation(P, Q, pt, ai) == 0


def test_kernel_dimension_error_free():
    rng = np.random.default_rng(1)
    D, s, k = 4, 2, 2
    for _ in range(20):
        basis = solve_interpolation(P, CFG, build_interpolation_points(P, s, encode(P, random_message(rng))))
        assert basis.d_I == D * (s + 1) - s * (k - 1) - D
        assert basis.d_I >= kernel_dim_bound(P, s, D, 0)


def test_kernel_dimension_lower_bound():
    rng = np.random.default_rng(2)
    for _ in range(200):
        t = int(rng.integers(0, 5))
        basis = solve_interpolation(P, CFG, build_interpolation_points(P, 2, received(rng, random_message(rng), t)))
        assert basis.d_I >= max(1, kernel_dim_bound(P, 2, basis.D, t))


def _p_polynomial(Q, f):
    """Q_0 + sum_r Q_r * f * gamma^(r-1), as a skew polynomial."""
    acc = Q[0]
    for r, Qr in enumerate(Q[1:], start=1):
        shift = SkewPoly((F.gamma_pow(r - 1),))
        acc = skew_add(F, acc, skew_mul(F, Qr, skew_mul(F, f, shift)))
    return acc


def test_transmitted_message_is_a_root():
    rng = np.random.default_rng(3)
    for _ in range(100):
        t = int(rng.integers(0, 3))
        f = random_message(rng)
        basis = solve_interpolation(P, CFG, build_interpolation_points(P, 2, received(rng, f, t)))
        for u in range(basis.d_I):
            assert _p_polynomial(basis.polys(u), SkewPoly(tuple(f))).is_zero()
        # the twisted message solves the banded system
        sys_ = build_root_finding(P, CFG, basis)
        fhat = [F.frobenius(c, -j) for j, c in enumerate(f)]
        B = sys_.matrix()
        rhs = sys_.rhs(F)
        for row, b in zip(B, rhs):
            acc = 0
            for x, y in zip(row, fhat):
                acc = F.add(acc, F.mul(x, y))
            assert acc == b


def test_root_finding_band_structure():
    rng = np.random.default_rng(4)
    basis = solve_interpolation(P, CFG, build_interpolation_points(P, 2, received(rng, [5, 6], 2)))
    sys_ = build_root_finding(P, CFG, basis)
    B = sys_.matrix()
    assert len(B) == basis.D * basis.d_I and all(len(r) == P.k for r in B)
    for a in range(basis.D):
        for u in range(basis.d_I):
            for c in range(P.k):
                if not 0 <= a - c <= basis.D - P.k:
                    assert B[a * basis.d_I + u][c] == 0


def test_synthetic_rank_deficient_and_overflow():
    zero = RootFindingSystem(k=2, D=2, d_I=1, b={(0, 0): [0], (0, 1): [0], (1, 1): [0]}, q=[[0], [0]])
    out = solve_root_finding(F, zero, UNIQUE)
    assert out.kind == "Failure" and out.reason == "rank-deficient"
    out = solve_root_finding(F, zero, LIST, list_cap=4096)
    assert out.kind == "Failure" and out.reason == "list overflow"
    assert out.diagnostics["d_RF"] == 2
    full = solve_root_finding(F, zero, LIST, list_cap=729 ** 2)
    assert len(full.messages) == 729 ** 2 and full.kind == "List"


def test_synthetic_inconsistent():
    sys_ = RootFindingSystem(k=1, D=2, d_I=1, b={(0, 0): [1], (1, 1): [1]}, q=[[0], [1]])
    out = solve_root_finding(F, sys_, UNIQUE)
    assert out.kind == "Failure" and out.reason == "inconsistent"
    assert solve_root_finding(F, sys_, LIST).messages == []


@pytest.mark.parametrize("t", [0, 1])
def test_small_errors_always_unique(t):
    rng = make_rng(5 + t)
    for _ in range(300):
        f = random_message(rng)
        out = decode(P, CFG, received(rng, f, t))
        assert out.kind == "Unique"
        assert list(out.messages[0].padded(P.k)) == f


def test_unique_at_radius_never_wrong():
    rng = make_rng(7)
    kinds = {"Unique": 0, "Failure": 0}
    for _ in range(300):
        f = random_message(rng)
        R = received(rng, f, 2)
        out = decode(P, CFG, R)
        kinds[out.kind] += 1
        if out.kind == "Unique":
            assert list(out.messages[0].padded(P.k)) == f
        assert out.diagnostics["d_RF"] <= CFG.s - 1
    assert kinds["Unique"] >= 290


def test_list_mode_contains_message():
    cfg = DecoderConfig(s=3)
    assert max_correctable(P, 3) == 2
    rng = make_rng(8)
    for _ in range(100):
        f = random_message(rng)
        R = received(rng, f, 2)
        out = decode(P, cfg, R, mode=LIST)
        assert out.kind == "List"
        assert f in [list(g.padded(P.k)) for g in out.messages]
        assert out.diagnostics["d_RF"] <= cfg.s - 1
        for g in out.messages:
            assert sum_rank_distance(F, encode(P, g), R) <= 2


def test_outcome_serializes():
    import json
    out = decode(P, CFG, encode(P, [1, 2]))
    d = json.loads(json.dumps(out.to_dict()))
    assert d["kind"] == "Unique" and d["messages"] == [[1, 2]]
    assert {"d_I", "rank_B", "d_RF", "D", "rank_S", "verified_count"} <= set(d["diagnostics"])
