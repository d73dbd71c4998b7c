"""Skew polynomials over F_{q^m} with x*c = sigma(c)*x and zero derivation.

Ring operations take the field explicitly; :class:`SkewPoly` is a plain
value holding integer-encoded coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .linalg import kernel_basis  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class SkewPoly:
    """``sum_i coeffs[i] * x^i``; trailing zeros are stripped."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @property
    def degree(self):
        """Degree, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, k: int) -> list[int]:
        """Coefficient list of length ``k`` (raises if the degree is too large)."""
        if len(self.coeffs) > k:
            raise ParameterError(f"degree {self.degree} is not below {k}")
        return list(self.coeffs) + [0] * (k - len(self.coeffs))

    @classmethod
    def monomial(cls, c: int, i: int) -> SkewPoly:
        return cls((0,) * i + (c,))

    def __len__(self):
        return len(self.coeffs)


ZERO = SkewPoly()
ONE = SkewPoly((1,))
X = SkewPoly((0, 1))


def skew_add(F, f: SkewPoly, g: SkewPoly) -> SkewPoly:
    n = max(len(f), len(g))
    return SkewPoly(tuple(F.add(f.coeff(i), g.coeff(i)) for i in range(n)))


def skew_sub(F, f: SkewPoly, g: SkewPoly) -> SkewPoly:
    n = max(len(f), len(g))
    return SkewPoly(tuple(F.sub(f.coeff(i), g.coeff(i)) for i in range(n)))


def skew_scale(F, c: int, f: SkewPoly) -> SkewPoly:
    """Left scalar multiple c*f."""
    return SkewPoly(tuple(F.mul(c, v) for v in f.coeffs))


def skew_mul(F, f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """(sum f_i x^i)(sum g_j x^j) = sum f_i sigma^i(g_j) x^(i+j)."""
    if f.is_zero() or g.is_zero():
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(g.coeffs):
            if gj:
                out[i + j] = F.add(out[i + j], F.mul(fi, F.frobenius(gj, i)))
    return SkewPoly(tuple(out))


def op_power(F, a: int, b: int, i: int) -> int:
    """i-th power of the operator b -> sigma(b)*a."""
    if i < 0:
        raise ParameterError("operator power must be non-negative")
    for _ in range(i):
        b = F.mul(F.frobenius(b), a)
    return b


def op_powers(F, a: int, b: int, d: int) -> list[int]:
    """[D_a^0(b), ..., D_a^(d-1)(b)]."""
    out = [0] * d
    if d == 0:
        return out
    frob, mul = F.frobenius, F.mul
    out[0] = b
    for r in range(1, d):
        b = mul(frob(b), a)
        out[r] = b
    return out


def op_evaluate(F, f: SkewPoly, b: int, a: int) -> int:
    """Generalized operator evaluation f(b)_a = sum_i f_i D_a^i(b)."""
    acc = 0
    if b == 0:
        return 0
    frob, mul, add = F.frobenius, F.mul, F.add
    for i, fi in enumerate(f.coeffs):
        if i:
            b = mul(frob(b), a)
        if fi:
            acc = add(acc, mul(fi, b))
    return acc


def moore_matrix(F, d: int, x, a):
    """Generalized Moore matrix: ``d`` rows, blocks ``x[i]`` paired with ``a[i]``.

    Entry ``(r, j)`` of block ``i`` is ``D_{a_i}^r(x[i][j])``.
    """
    if len(x) != len(a):
        raise ParameterError(f"{len(x)} blocks but {len(a)} evaluation parameters")
    if len({len(block) for block in x}) > 1:
        raise ParameterError("all blocks must have the same length")
    cols = [op_powers(F, ai, xj, d) for block, ai in zip(x, a) for xj in block]
    return [[col[r] for col in cols] for r in range(d)]


def annihilator(F, points) -> SkewPoly:
    """Minimal monic skew polynomial p with p(b)_a = 0 for every (b, a) in ``points``.

    Built by left-multiplying with linear factors (x - sigma(v) a / v), where
    v is the current evaluation; points already annihilated add no degree.
    """
    p = ONE
    for b, a in points:
        v = op_evaluate(F, p, b, a)
        if v:
            c = F.div(F.mul(F.frobenius(v), a), v)
            p = skew_mul(F, SkewPoly((F.neg(c), 1)), p)
    return p
