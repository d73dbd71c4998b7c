"""Folded linearized Reed-Solomon codes in the sum-rank metric.

Quick start::

    from flrs import CodeParams, DecoderConfig, encode, decode
    params = CodeParams.build(q=3, m=6, ell=2, h=3, N=4, k=2)
    out = decode(params, DecoderConfig(s=2, mu=1), encode(params, [5, 7]))
"""
from .channel import (ChannelSpec, apply_channel, make_rng, rank_q, sample_error,
                      sum_rank_distance, sum_rank_weight)
from .code import (CodeParams, FoldedWord, encode, fold, is_msrd, min_distance,
                   unfold, word_add, word_sub)
from .decoder import (LIST, UNIQUE, DecodeOutcome, DecoderConfig, decode,
                      decoding_radius, degree_constraint, failure_bound)
from .errors import InvariantViolation, ParameterError
from .gf import GF
from .simulation import SimulationConfig, kl_track, radius_table, simulate
from .skew import SkewPoly, moore_matrix, op_evaluate, op_power, skew_add, skew_mul

__all__ = [
    "GF", "SkewPoly", "skew_add", "skew_mul", "op_power", "op_evaluate", "moore_matrix",
    "CodeParams", "FoldedWord", "encode", "fold", "unfold", "min_distance", "is_msrd",
    "word_add", "word_sub", "ChannelSpec", "apply_channel", "make_rng", "rank_q",
    "sample_error", "sum_rank_weight", "sum_rank_distance", "UNIQUE", "LIST", "DecoderConfig",
    "DecodeOutcome", "decode", "decoding_radius", "degree_constraint", "failure_bound",
    "SimulationConfig", "simulate", "kl_track", "radius_table", "ParameterError",
    "InvariantViolation",
]
