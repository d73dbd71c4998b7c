"""Interpolation-based list and probabilistic-unique decoding of FLRS codes.

Pipeline: sliding-window interpolation points -> kernel of the interpolation
system (a basis Q^(1..d_I) of all admissible Q) -> banded root-finding system
B * fhat = -q in the twisted unknown fhat_j = sigma^(-j)(f_j) -> candidates,
each re-encoded and checked against the received word.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .channel import sum_rank_distance
from .code import CodeParams, FoldedWord, encode
from .errors import InvariantViolation, ParameterError
from .linalg import kernel_basis, rank, solve
from .skew import SkewPoly, op_evaluate, op_powers

UNIQUE = "unique"
LIST = "list"


@dataclass(frozen=True)
class DecoderConfig:
    s: int
    mu: int = 1
    list_cap: int = 4096

    def __post_init__(self):
        if self.s < 1:
            raise ParameterError("interpolation parameter s must be >= 1")
        if self.mu < 1:
            raise ParameterError("dimension threshold mu must be >= 1")
        if self.list_cap < 1:
            raise ParameterError("list_cap must be >= 1")

    def check(self, params: CodeParams):
        if self.s > params.h:
            raise ParameterError(f"s={self.s} exceeds folding parameter h={params.h}")
        D = degree_constraint(params, self.s, self.mu)
        if D < params.k:
            raise ParameterError(
                f"degree constraint D={D} < k={params.k}: no y-coefficients to interpolate")


def degree_constraint(params: CodeParams, s: int, mu: int = 1) -> int:
    """D = ceil((N(h-s+1) + s(k-1) + mu) / (s+1))."""
    N, h, k = params.N, params.h, params.k
    return -(-(N * (h - s + 1) + s * (k - 1) + mu) // (s + 1))


def decoding_radius(params: CodeParams, s: int, mu: int | None = None) -> Fraction:
    """Exact radius bound.

    With ``mu=None`` this is the list-decoding bound, to be met with strict
    inequality.  With a threshold ``mu`` it is the (non-strict) bound of the
    probabilistic unique decoder.
    """
    N, h, k = params.N, params.h, params.k
    w = h - s + 1
    r = Fraction(s, s + 1) * Fraction(N * w - k + 1, w)
    if mu is not None:
        r -= Fraction(mu, (s + 1) * w)
    return r


def max_correctable(params: CodeParams, s: int, mu: int | None = None) -> int:
    """Largest integer error weight covered by :func:`decoding_radius`."""
    r = decoding_radius(params, s, mu)
    if mu is None:
        return max(ceil(r) - 1, -1)
    return floor(r)


def kernel_dim_bound(params: CodeParams, s: int, D: int, t: int) -> int:
    """Lower bound s(D-k+1) - t(h-s+1) on the interpolation kernel dimension."""
    return s * (D - params.k + 1) - t * (params.h - s + 1)


def failure_bound(k: int, q: int, m: int, d_I: int) -> Fraction:
    """Heuristic failure probability k * (k / q^m)^d_I (exact rational)."""
    if d_I < 1:
        raise ParameterError("d_I must be >= 1")
    return k * Fraction(k, q**m) ** d_I


# -- interpolation -------------------------------------------------------------

@dataclass
class InterpolationPointSet:
    """blocks[i] = list of (gamma^(w-1), r_w, ..., r_{w+s-1}) for w in the window set."""

    s: int
    blocks: list
    windows: list

    def __len__(self):
        return sum(len(b) for b in self.blocks)


def window_starts(params: CodeParams, s: int) -> list[int]:
    """1-based starting positions (j-1)h + l, l = 1..h-s+1, in column order."""
    h = params.h
    return [(j - 1) * h + l for j in range(1, params.NF + 1) for l in range(1, h - s + 2)]


def build_interpolation_points(params: CodeParams, s: int, R: FoldedWord) -> InterpolationPointSet:
    if s > params.h:
        raise ParameterError(f"s={s} exceeds h={params.h}")
    if tuple(R.shape) != params.shape:
        raise ParameterError(f"received word shape {R.shape} != {params.shape}")
    F = params.field
    W = window_starts(params, s)
    h = params.h
    blocks = []
    for i in range(params.ell):
        # unfolded block: r_w at flat index w-1 (column-major)
        flat = R.blocks[i].T.reshape(-1).tolist()
        pts = [(F.gamma_pow(w - 1),) + tuple(flat[w - 1:w - 1 + s]) for w in W]
        blocks.append(pts)
    return InterpolationPointSet(s, blocks, W)


@dataclass
class InterpolationBasis:
    """Basis of all Q = Q_0 + sum_r Q_r y_r solving the interpolation problem.

    ``vectors[u]`` is the coefficient vector (q_{0,0..D-1} | q_{1,0..D-k} | ...).
    """

    D: int
    k: int
    s: int
    vectors: list
    rank_S: int

    @property
    def d_I(self) -> int:
        return len(self.vectors)

    def coefficient(self, u: int, r: int, j: int) -> int:
        """q_{r,j} of Q^(u)."""
        v = self.vectors[u]
        if r == 0:
            return v[j]
        width = self.D - self.k + 1
        return v[self.D + (r - 1) * width + j]

    def polys(self, u: int) -> list[SkewPoly]:
        """[Q_0, Q_1, ..., Q_s] of Q^(u)."""
        v = self.vectors[u]
        width = self.D - self.k + 1
        out = [SkewPoly(tuple(v[:self.D]))]
        for r in range(self.s):
            start = self.D + r * width
            out.append(SkewPoly(tuple(v[start:start + width])))
        return out

    def b0_coefficients(self, mu: int) -> list[int]:
        """Coefficients q_{1,0}, ..., q_{s,0} of B_0^(u) for u < min(mu, d_I)."""
        return [self.coefficient(u, r, 0)
                for u in range(min(mu, self.d_I)) for r in range(1, self.s + 1)]


def interpolation_matrix(params: CodeParams, D: int, pts: InterpolationPointSet):
    """Rows of S: one equation per interpolation point."""
    F = params.field
    width = D - params.k + 1
    rows = []
    for ai, block in zip(params.a, pts.blocks):
        for point in block:
            row = op_powers(F, ai, point[0], D)
            for r_val in point[1:]:
                row += op_powers(F, ai, r_val, width)
            rows.append(row)
    return rows


def solve_interpolation(params: CodeParams, config: DecoderConfig,
                        pts: InterpolationPointSet) -> InterpolationBasis:
    D = degree_constraint(params, config.s, config.mu)
    if D < params.k:
        raise ParameterError(f"degree constraint D={D} < k={params.k}")
    S = interpolation_matrix(params, D, pts)
    ncols = D + config.s * (D - params.k + 1)
    basis = kernel_basis(S, params.field, ncols=ncols)
    if not basis:
        raise InvariantViolation("interpolation kernel is empty")
    return InterpolationBasis(D, params.k, config.s, basis, ncols - len(basis))


def evaluate_interpolation(params: CodeParams, Q: list[SkewPoly], point, a: int) -> int:
    """E_Q at one point: Q_0(p_0)_a + sum_r Q_r(p_r)_a."""
    F = params.field
    acc = 0
    for poly, val in zip(Q, point):
        acc = F.add(acc, op_evaluate(F, poly, val, a))
    return acc


# -- root finding --------------------------------------------------------------

@dataclass
class RootFindingSystem:
    """B * fhat = -q with B of shape (D*d_I) x k, rows grouped in D blocks of d_I."""

    k: int
    D: int
    d_I: int
    b: dict  # (j, a) -> list of d_I values b_{j,a}
    q: list  # q[a] -> list of d_I values

    def matrix(self) -> list[list[int]]:
        k, D, d = self.k, self.D, self.d_I
        rows = []
        for a in range(D):
            for u in range(d):
                row = [0] * k
                for c in range(k):
                    j = a - c
                    if 0 <= j <= D - k:
                        row[c] = self.b[j, a][u]
                rows.append(row)
        return rows

    def rhs(self, F) -> list[int]:
        return [F.neg(v) for a in range(self.D) for v in self.q[a]]


def build_root_finding(params: CodeParams, config: DecoderConfig,
                       basis: InterpolationBasis) -> RootFindingSystem:
    if basis.d_I == 0:
        raise InvariantViolation("empty interpolation basis")
    F = params.field
    D, k, s = basis.D, params.k, config.s
    frob = F.frobenius
    b = {}
    for a in range(D):
        x = frob(F.gamma, a)
        xs = [1]
        for _ in range(s - 1):
            xs.append(F.mul(xs[-1], x))
        for j in range(max(0, a - k + 1), min(a, D - k) + 1):
            vals = []
            for u in range(basis.d_I):
                acc = 0
                for r in range(1, s + 1):
                    c = basis.coefficient(u, r, j)
                    if c:
                        acc = F.add(acc, F.mul(c, xs[r - 1]))
                vals.append(frob(acc, -a))
            b[j, a] = vals
    q = [[frob(basis.coefficient(u, 0, a), -a) for u in range(basis.d_I)] for a in range(D)]
    return RootFindingSystem(k, D, basis.d_I, b, q)


@dataclass
class DecodeOutcome:
    kind: str  # "Unique" | "List" | "Failure"
    messages: list = field(default_factory=list)
    reason: str | None = None
    diagnostics: dict = field(default_factory=dict)
    basis: InterpolationBasis | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.kind != "Failure"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "messages": [list(f.coeffs) for f in self.messages],
            "reason": self.reason,
            "diagnostics": dict(self.diagnostics),
        }


def _untwist(F, fhat) -> SkewPoly:
    return SkewPoly(tuple(F.frobenius(v, j) for j, v in enumerate(fhat)))


def _forward_substitution(F, sys: RootFindingSystem):
    """Solve column by column from the diagonal vectors b_{0,l}.

    Returns the unique solution when every diagonal vector is nonzero and the
    system is consistent, ``"inconsistent"`` when it is not, and ``None`` when
    some diagonal vector vanishes (caller falls back to full elimination).
    """
    k, D = sys.k, sys.D
    fhat = [0] * k
    for l in range(k):
        diag = sys.b[0, l]
        u = next((i for i, v in enumerate(diag) if v), None)
        if u is None:
            return None
        acc = sys.q[l][u]
        for c in range(max(0, l - (D - k)), l):
            acc = F.add(acc, F.mul(sys.b[l - c, l][u], fhat[c]))
        fhat[l] = F.neg(F.div(acc, diag[u]))
    for a in range(D):
        for u in range(sys.d_I):
            acc = sys.q[a][u]
            for c in range(max(0, a - (D - k)), min(a, k - 1) + 1):
                acc = F.add(acc, F.mul(sys.b[a - c, a][u], fhat[c]))
            if acc:
                return "inconsistent"
    return fhat


def solve_root_finding(F, sys: RootFindingSystem, mode: str = UNIQUE,
                       list_cap: int = 4096) -> DecodeOutcome:
    """Candidates from B * fhat = -q, before verification."""
    diag = {"d_I": sys.d_I}
    if mode == UNIQUE:
        fhat = _forward_substitution(F, sys)
        if isinstance(fhat, list):
            diag.update(rank_B=sys.k, d_RF=0)
            return DecodeOutcome("Unique", [_untwist(F, fhat)], diagnostics=diag)
        if fhat == "inconsistent":
            diag.update(rank_B=sys.k, d_RF=0)
            return DecodeOutcome("Failure", reason="inconsistent", diagnostics=diag)
    particular, kernel = solve(sys.matrix(), sys.rhs(F), F, ncols=sys.k)
    d_RF = len(kernel)
    diag.update(rank_B=sys.k - d_RF, d_RF=d_RF)
    if mode == UNIQUE:
        if d_RF:
            return DecodeOutcome("Failure", reason="rank-deficient", diagnostics=diag)
        if particular is None:
            return DecodeOutcome("Failure", reason="inconsistent", diagnostics=diag)
        return DecodeOutcome("Unique", [_untwist(F, particular)], diagnostics=diag)
    if mode != LIST:
        raise ParameterError(f"unknown decoding mode {mode!r}")
    if particular is None:
        return DecodeOutcome("List", [], diagnostics=diag)
    if F.order ** d_RF > list_cap:
        return DecodeOutcome("Failure", reason="list overflow", diagnostics=diag)
    out = []
    for coeffs in itertools.product(range(F.order), repeat=d_RF):
        x = list(particular)
        for c, vec in zip(coeffs, kernel):
            if c:
                x = [F.add(xi, F.mul(c, vi)) for xi, vi in zip(x, vec)]
        out.append(_untwist(F, x))
    return DecodeOutcome("List", out, diagnostics=diag)


def decode(params: CodeParams, config: DecoderConfig, R: FoldedWord,
           mode: str = UNIQUE, max_errors: int | None = None) -> DecodeOutcome:
    """Decode ``R``.

    Every candidate is re-encoded and kept only if its sum-rank distance to
    ``R`` is at most ``max_errors`` (default: the integer radius of ``mode``).
    """
    config.check(params)
    if mode not in (UNIQUE, LIST):
        raise ParameterError(f"unknown decoding mode {mode!r}")
    F = params.field
    if max_errors is None:
        max_errors = max_correctable(params, config.s, config.mu if mode == UNIQUE else None)
    pts = build_interpolation_points(params, config.s, R)
    basis = solve_interpolation(params, config, pts)
    system = build_root_finding(params, config, basis)
    out = solve_root_finding(F, system, mode, config.list_cap)
    out.diagnostics.update(D=basis.D, rank_S=basis.rank_S)
    out.basis = basis
    if out.kind == "Failure":
        out.diagnostics["verified_count"] = 0
        return out
    candidates = out.messages
    verified = [f for f in candidates
                if sum_rank_distance(F, encode(params, f), R) <= max_errors]
    out.diagnostics.update(candidates=len(candidates), verified_count=len(verified))
    if not verified:
        return DecodeOutcome("Failure", reason="no verified candidate",
                             diagnostics=out.diagnostics, basis=basis)
    if mode == UNIQUE and len(verified) > 1:
        return DecodeOutcome("Failure", reason="ambiguous", diagnostics=out.diagnostics,
                             basis=basis)
    out.messages = verified
    return out
