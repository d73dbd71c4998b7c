"""Folded linearized Reed-Solomon (FLRS) codes.

A codeword is stored as an integer array of shape ``(ell, h, N // ell)``:
block ``i`` holds the h x (N/ell) folded matrix whose entry ``(r, j)`` is the
evaluation of the message polynomial at the code locator ``gamma^(j*h + r)``
with respect to the conjugacy representative ``a_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import ceil

import numpy as np

from .errors import ParameterError
from .gf import GF
from .skew import SkewPoly, op_powers


@dataclass(frozen=True)
class CodeParams:
    """Parameters of an h-folded LRS code of folded length N and dimension k.

    Validated on construction; see :meth:`validate`.
    """

    field: GF
    ell: int
    h: int
    N: int
    k: int

    def __post_init__(self):
        self.validate()

    def validate(self):
        F = self.field
        if self.ell < 1 or self.h < 1 or self.N < 1:
            raise ParameterError("ell, h and N must be positive")
        if self.ell > F.q - 1:
            raise ParameterError(
                f"not enough conjugacy classes: ell={self.ell} > q-1={F.q - 1}")
        if self.N % self.ell:
            raise ParameterError(f"block count ell={self.ell} does not divide N={self.N}")
        n_i = self.h * self.N // self.ell
        if n_i % self.h:
            raise ParameterError(f"folding parameter h={self.h} does not divide n_i={n_i}")
        if n_i > F.m:
            raise ParameterError(f"block exceeds extension degree: n_i={n_i} > m={F.m}")
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"dimension k={self.k} outside [1, n={self.n}]")

    @property
    def n(self) -> int:
        """Unfolded length."""
        return self.h * self.N

    @property
    def n_i(self) -> int:
        """Unfolded block length."""
        return self.n // self.ell

    @property
    def NF(self) -> int:
        """Folded block length N / ell."""
        return self.N // self.ell

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.ell, self.h, self.NF)

    @cached_property
    def a(self) -> list[int]:
        return self.field.conjugacy_representatives(self.ell)

    @cached_property
    def locators(self) -> list[int]:
        """gamma^0, ..., gamma^(n_i - 1), shared by all blocks."""
        return [self.field.gamma_pow(w) for w in range(self.n_i)]

    @cached_property
    def _encode_powers(self):
        # [block][w] -> [D_{a_i}^j(gamma^w) for j < k]
        F = self.field
        return [[op_powers(F, ai, b, self.k) for b in self.locators] for ai in self.a]

    def to_dict(self) -> dict:
        d = self.field.to_dict()
        d.update(ell=self.ell, h=self.h, N=self.N, k=self.k)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> CodeParams:
        try:
            F = GF(int(d["q"]), int(d["m"]), modulus=d.get("modulus"),
                   gamma=d.get("gamma"))
            return cls(F, int(d["ell"]), int(d["h"]), int(d["N"]), int(d["k"]))
        except KeyError as exc:
            raise ParameterError(f"missing code parameter {exc}") from None

    @classmethod
    def build(cls, q, m, ell, h, N, k, modulus=None, gamma=None) -> CodeParams:
        return cls(GF(q, m, modulus=modulus, gamma=gamma), ell, h, N, k)


def validate(params: CodeParams) -> None:
    params.validate()


@dataclass
class FoldedWord:
    """ell blocks of h x N/ell matrices over F_{q^m} (integer encoded)."""

    blocks: np.ndarray

    def __post_init__(self):
        self.blocks = np.asarray(self.blocks, dtype=np.int64)
        if self.blocks.ndim != 3:
            raise ParameterError("a folded word needs shape (ell, h, N/ell)")

    @property
    def shape(self):
        return self.blocks.shape

    def __eq__(self, other):
        return isinstance(other, FoldedWord) and np.array_equal(self.blocks, other.blocks)

    def __repr__(self):
        return f"FoldedWord({self.blocks.tolist()})"

    def to_dict(self) -> dict:
        return {"blocks": self.blocks.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> FoldedWord:
        return cls(np.array(d["blocks"], dtype=np.int64))

    @classmethod
    def zeros(cls, params: CodeParams) -> FoldedWord:
        return cls(np.zeros(params.shape, dtype=np.int64))


def word_add(F, X: FoldedWord, Y: FoldedWord) -> FoldedWord:
    if X.shape != Y.shape:
        raise ParameterError(f"shape mismatch {X.shape} vs {Y.shape}")
    add = F.add
    out = [add(x, y) for x, y in zip(X.blocks.ravel().tolist(), Y.blocks.ravel().tolist())]
    return FoldedWord(np.array(out, dtype=np.int64).reshape(X.shape))


def word_sub(F, X: FoldedWord, Y: FoldedWord) -> FoldedWord:
    if X.shape != Y.shape:
        raise ParameterError(f"shape mismatch {X.shape} vs {Y.shape}")
    sub = F.sub
    out = [sub(x, y) for x, y in zip(X.blocks.ravel().tolist(), Y.blocks.ravel().tolist())]
    return FoldedWord(np.array(out, dtype=np.int64).reshape(X.shape))


def word_scale(F, c: int, X: FoldedWord) -> FoldedWord:
    out = [F.mul(c, x) for x in X.blocks.ravel().tolist()]
    return FoldedWord(np.array(out, dtype=np.int64).reshape(X.shape))


def _as_message(params: CodeParams, f) -> list[int]:
    if not isinstance(f, SkewPoly):
        f = SkewPoly(tuple(int(c) for c in f))
    if len(f) > params.k:
        raise ParameterError(f"message degree {f.degree} must be below k={params.k}")
    if any(not 0 <= c < params.field.order for c in f.coeffs):
        raise ParameterError("message coefficient outside the field")
    return f.padded(params.k)


def encode_unfolded(params: CodeParams, f) -> list[list[int]]:
    """Per block, the n_i evaluations f(gamma^w)_{a_i}, w = 0..n_i-1."""
    coeffs = _as_message(params, f)
    F = params.field
    mul, add = F.mul, F.add
    nz = [(j, c) for j, c in enumerate(coeffs) if c]
    out = []
    for powers in params._encode_powers:
        row = []
        for pw in powers:
            acc = 0
            for j, c in nz:
                acc = add(acc, mul(c, pw[j]))
            row.append(acc)
        out.append(row)
    return out


def encode(params: CodeParams, f) -> FoldedWord:
    """Codeword of the message polynomial ``f`` (a SkewPoly or coefficient list)."""
    flat = [v for block in encode_unfolded(params, f) for v in block]
    return fold(flat, params.h, params.ell)


def fold(v, h: int, ell: int = 1) -> FoldedWord:
    """Fold a length-n vector: entry w (1-based) of block i goes to row (w-1) % h,
    column (w-1) // h."""
    v = np.asarray(v, dtype=np.int64)
    if v.ndim != 1 or h < 1 or ell < 1 or len(v) % (h * ell):
        raise ParameterError(f"cannot fold length {len(v)} into {ell} blocks with h={h}")
    nf = len(v) // (h * ell)
    return FoldedWord(v.reshape(ell, nf, h).transpose(0, 2, 1))


def unfold(word: FoldedWord) -> np.ndarray:
    return word.blocks.transpose(0, 2, 1).reshape(-1).copy()


def min_distance(params: CodeParams) -> int:
    """N - ceil(k/h) + 1."""
    return params.N - ceil(params.k / params.h) + 1


def is_msrd(params: CodeParams) -> bool:
    """MSRD iff h divides k."""
    return params.k % params.h == 0
