"""Sum-rank weight and the fixed-weight uniform sum-rank error channel.

The rank of a block is taken over F_q: each column of an h x c block over
F_{q^m} is expanded into its h*m coordinates over F_q.  A uniformly random
error of sum-rank weight t is drawn in two stages.  First the per-block rank
profile (t_1, ..., t_ell) is drawn with probability proportional to the number
of error matrices having that profile.  Then each block is drawn as A @ B over
F_q with A a uniform full-column-rank (h*m) x t_i matrix and B a uniform
full-row-rank t_i x c matrix, which is uniform over the rank-t_i matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod

import numpy as np

from .code import CodeParams, FoldedWord, word_add, word_sub
from .errors import ParameterError
from .gf import PrimeField
from .linalg import rank

RNG_ALGORITHM = "PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class ChannelSpec:
    t: int
    rng_seed: int = 0


def _fq_coordinates(F, block) -> list[list[int]]:
    """Rows = columns of ``block``, each expanded to h*m base-field digits."""
    D = F.digit_matrix
    arr = D[np.asarray(block, dtype=np.int64)]  # (h, c, m)
    return arr.transpose(1, 0, 2).reshape(arr.shape[1], -1).tolist()


def rank_q(F, block) -> int:
    """Number of F_q-linearly independent columns of a matrix over F_{q^m}."""
    block = np.asarray(block, dtype=np.int64)
    if block.size == 0 or not block.any():
        return 0
    return rank(_fq_coordinates(F, block), F.base)


def sum_rank_weight(F, X: FoldedWord) -> int:
    return sum(rank_q(F, block) for block in X.blocks)


def sum_rank_distance(F, X: FoldedWord, Y: FoldedWord) -> int:
    return sum_rank_weight(F, word_sub(F, X, Y))


def count_rank(rows: int, cols: int, r: int, q: int) -> int:
    """Number of rows x cols matrices over F_q of rank exactly r."""
    if r < 0 or r > min(rows, cols):
        return 0
    num = prod((q**rows - q**j) * (q**cols - q**j) for j in range(r))
    den = prod(q**r - q**j for j in range(r))
    return num // den


def max_weight(params: CodeParams) -> int:
    F = params.field
    return params.ell * min(params.h * F.m, params.NF)


def count_weight(params: CodeParams, t: int) -> int:
    """Number of folded words with sum-rank weight exactly t."""
    return sum(w for _, w in _profiles(params, t))


def _profiles(params: CodeParams, t: int):
    F = params.field
    return _profiles_cached(params.ell, params.h * F.m, params.NF, F.q, t)


@lru_cache(maxsize=None)
def _profiles_cached(ell, rows, cols, q, t):
    cap = min(rows, cols)
    out = []
    for profile in product(range(cap + 1), repeat=ell):
        if sum(profile) == t:
            w = prod(count_rank(rows, cols, ti, q) for ti in profile)
            out.append((profile, w))
    return tuple(out)


def _profile_sampler(params: CodeParams, t: int):
    profiles = _profiles(params, t)
    total = sum(w for _, w in profiles)
    # exact integer weights -> float probabilities (relative error ~1e-16)
    probs = np.array([w / total for _, w in profiles])
    probs /= probs.sum()
    return [p for p, _ in profiles], probs


def _full_rank_fq(rng, rows, cols, base, want):
    """Uniform rows x cols matrix over F_q of rank ``want`` (= rows or cols)."""
    while True:
        M = rng.integers(0, base.order, size=(rows, cols))
        if rank(M.tolist(), base) == want:
            return M


def _fq_matmul(A, B, base):
    if isinstance(base, PrimeField):
        return (A @ B) % base.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            acc = 0
            for a, b in zip(A[i].tolist(), B[:, j].tolist()):
                acc = base.add(acc, base.mul(a, b))
            out[i, j] = acc
    return out


def sample_error(params: CodeParams, t: int, rng) -> FoldedWord:
    """Uniformly random folded word of sum-rank weight exactly ``t``."""
    if not 0 <= t <= max_weight(params):
        raise ParameterError(f"infeasible error weight t={t} (max {max_weight(params)})")
    F = params.field
    ell, h, c = params.shape
    E = np.zeros(params.shape, dtype=np.int64)
    if t == 0:
        return FoldedWord(E)
    profiles, probs = _cached_sampler(params, t)
    profile = profiles[rng.choice(len(profiles), p=probs)]
    rows = h * F.m
    weights = F.q ** np.arange(F.m, dtype=np.int64)
    for i, ti in enumerate(profile):
        if ti == 0:
            continue
        A = _full_rank_fq(rng, rows, ti, F.base, ti)
        B = _full_rank_fq(rng, ti, c, F.base, ti)
        M = _fq_matmul(A, B, F.base)  # (h*m) x c over F_q
        E[i] = np.tensordot(M.reshape(h, F.m, c), weights, axes=([1], [0]))
    return FoldedWord(E)


_SAMPLERS: dict = {}


def _cached_sampler(params, t):
    key = (params, t)
    if key not in _SAMPLERS:
        _SAMPLERS[key] = _profile_sampler(params, t)
    return _SAMPLERS[key]


def apply_channel(params: CodeParams, codeword: FoldedWord, spec: ChannelSpec, rng=None):
    """Return ``(received, error)`` for a weight-``spec.t`` error."""
    rng = make_rng(spec.rng_seed) if rng is None else rng
    E = sample_error(params, spec.t, rng)
    return word_add(params.field, codeword, E), E
