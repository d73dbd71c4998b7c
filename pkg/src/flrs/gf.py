"""Finite fields F_q and F_{q^m} with integer-encoded elements.

An element of F_{q^m} is stored as a plain ``int`` in ``[0, q**m)``.  The
base-q digits of that integer are the coefficients of the element in the
polynomial basis ``1, z, ..., z^(m-1)`` (little-endian), so the encoding is
canonical and doubles as the text format used in JSON/CSV files.  The
subfield F_q sits inside as the integers ``0..q-1``.

Arithmetic is table driven (exp/log, Zech logarithms, Frobenius tables) for
fields with at most ``2**16`` elements, and falls back to coefficient-vector
arithmetic with extended-Euclid inversion above that.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np

from .errors import ParameterError

TABLE_LIMIT = 1 << 16
_FULL_ADD_LIMIT = 1024


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ParameterError(f"q={q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ParameterError(f"q={q} is not a prime power")
    p, e = ps[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


class PrimeField:
    """The prime field Z/pZ with the same method surface as :class:`GF`."""

    def __init__(self, p: int):
        if p < 2 or prime_factors(p) != [p]:
            raise ParameterError(f"{p} is not prime")
        self.p = self.q = self.order = self.characteristic = p
        self.m = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __repr__(self):
        return f"PrimeField({self.p})"


# -- polynomials over a base field, little-endian coefficient lists -----------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, mod, F):
    """Remainder of ``a`` modulo the monic polynomial ``mod``."""
    a = list(a)
    d = len(mod) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = F.sub(a[i - d + j], F.mul(c, mod[j]))
    return _poly_trim(a[:d])


def _poly_mul(a, b, F):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _poly_trim(out)


def _poly_divmod(a, b, F):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - len(b)
        quot[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = F.sub(a[shift + j], F.mul(c, y))
        _poly_trim(a)
    return _poly_trim(quot), a


def is_irreducible(poly, F) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _poly_trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(F.order), repeat=d):
            if not _poly_mod(poly, list(low) + [1], F):
                return False
    return True


class GF:
    """The extension field F_{q^m} = F_q[z]/(modulus).

    Parameters
    ----------
    q : prime power
    m : extension degree
    modulus : optional monic degree-m irreducible polynomial over F_q given
        as ``m + 1`` little-endian coefficients.  Defaults to the smallest
        monic primitive polynomial, ordering candidates by their base-q
        integer encoding.
    gamma : optional primitive element.  Defaults to ``z`` when ``z`` is
        primitive, otherwise the smallest primitive element.
    """

    def __init__(self, q: int, m: int = 1, modulus=None, gamma=None):
        if m < 1:
            raise ParameterError("extension degree m must be >= 1")
        self.p, e = _prime_power(q)
        self.q, self.m = q, m
        self.order = q**m
        self.characteristic = self.p
        self.base = PrimeField(q) if e == 1 else GF(self.p, e)
        if modulus is None:
            modulus = self._default_modulus()
        else:
            modulus = [int(c) for c in modulus]
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ParameterError("modulus must be monic of degree m")
            if any(not 0 <= c < q for c in modulus):
                raise ParameterError("modulus coefficients must lie in [0, q)")
            if not is_irreducible(modulus, self.base):
                raise ParameterError(f"modulus {modulus} is reducible over F_{q}")
        self.modulus = tuple(modulus)
        self._tabulated = self.order <= TABLE_LIMIT
        z = q if m > 1 else None
        if gamma is None:
            if z is not None and self._is_primitive_slow(z):
                gamma = z
            else:
                gamma = next(g for g in range(1, self.order) if self._is_primitive_slow(g))
        elif not (0 < gamma < self.order and self._is_primitive_slow(gamma)):
            raise ParameterError(f"gamma={gamma} is not primitive in F_{q}^{m}")
        self.gamma = gamma
        if self._tabulated:
            self._build_tables()

    # -- construction helpers ---------------------------------------------

    def _default_modulus(self):
        q, m = self.q, self.m
        if m == 1:
            # F_q itself, gamma found by search
            return [0, 1]
        for low in range(1, q**m):
            poly = self._digits(low) + [1]
            if poly[0] == 0 or not is_irreducible(poly, self.base):
                continue
            self.modulus = tuple(poly)
            if self._is_primitive_slow(q):
                return poly
        raise ParameterError("no primitive polynomial found")  # unreachable

    def _digits(self, a: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.m):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def _undigits(self, digits) -> int:
        a = 0
        for c in reversed(list(digits)):
            a = a * self.q + c
        return a

    def _mul_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return self.base.mul(a, b)
        prod = _poly_mul(_poly_trim(self._digits(a)), _poly_trim(self._digits(b)), self.base)
        r = _poly_mod(prod, self.modulus, self.base)
        return self._undigits(r + [0] * (self.m - len(r)))

    def _add_slow(self, a: int, b: int) -> int:
        B = self.base
        return self._undigits(B.add(x, y) for x, y in zip(self._digits(a), self._digits(b)))

    def _neg_slow(self, a: int) -> int:
        return self._undigits(self.base.neg(x) for x in self._digits(a))

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _is_primitive_slow(self, g: int) -> bool:
        n = self.order - 1
        if g == 0:
            return False
        if self._pow_slow(g, n) != 1:
            return False
        return all(self._pow_slow(g, n // p) != 1 for p in prime_factors(n))

    def inv_euclid(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on coefficient polynomials."""
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d^%d" % (self.q, self.m))
        if self.m == 1:
            return self.base.inv(a)
        B = self.base
        r0, r1 = list(self.modulus), _poly_trim(self._digits(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, B)
            qs = _poly_mul(quot, s1, B)
            n = max(len(s0), len(qs))
            s_new = _poly_trim([B.sub(s0[i] if i < len(s0) else 0, qs[i] if i < len(qs) else 0)
                                for i in range(n)])
            r0, r1, s0, s1 = r1, rem, s1, s_new
        # r0 is a nonzero constant
        c = B.inv(r0[0])
        s = _poly_mod([B.mul(c, x) for x in s0], self.modulus, B)
        return self._undigits(s + [0] * (self.m - len(s)))

    def _build_tables(self):
        n = self.order - 1
        g = self.gamma
        exp = [1] * n
        if self.m > 1 and g == self.q:
            mod = self.modulus
            B = self.base
            cur = [1] + [0] * (self.m - 1)
            for i in range(1, n):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [B.sub(c, B.mul(top, mod[j])) for j, c in enumerate(cur)]
                exp[i] = self._undigits(cur)
        else:
            for i in range(1, n):
                exp[i] = self._mul_slow(exp[i - 1], g)
        log = [-1] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp
        self._log = log

        digits = np.array([self._digits(a) for a in range(self.order)], dtype=np.int64).reshape(self.order, self.m)
        weights = self.q ** np.arange(self.m, dtype=np.int64)
        prime_base = isinstance(self.base, PrimeField)
        if prime_base:
            self._neg = (((-digits) % self.q) @ weights).tolist()
        else:
            self._neg = [self._neg_slow(a) for a in range(self.order)]

        # Zech logarithms: zech[d] = log(1 + gamma^d), -1 when 1 + gamma^d = 0
        B = self.base
        zech = [-1] * n
        for d in range(n):
            v = exp[d]
            one_plus = v - (v % self.q) + B.add(v % self.q, 1)
            zech[d] = log[one_plus] if one_plus else -1
        self._zech = zech

        if self.q == 2:
            self.add = self.sub = _xor
            self.neg = _identity
        elif prime_base and self.order <= _FULL_ADD_LIMIT:
            table = ((digits[:, None, :] + digits[None, :, :]) % self.q) @ weights
            add_rows = table.tolist()
            neg = self._neg
            self.add = lambda a, b: add_rows[a][b]
            self.sub = lambda a, b: add_rows[a][neg[b]]
        mul_exp, mul_log = self._exp, self._log

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return mul_exp[mul_log[a] + mul_log[b]]

        self.mul = mul

        # Frobenius tables sigma^i for i in [0, m)
        frob = [list(range(self.order))]
        for i in range(1, self.m):
            qi = self.q**i
            row = [0] * self.order
            for a in range(1, self.order):
                row[a] = exp[(log[a] * qi) % n]
            frob.append(row)
        self._frob = frob

    # -- public arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if not self._tabulated:
            return self._add_slow(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        z = self._zech[(log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if not self._tabulated:
            return self._neg_slow(a)
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d^%d" % (self.q, self.m))
        if not self._tabulated:
            return self.inv_euclid(a)
        la = self._log[a]
        return self._exp[(self.order - 1 - la) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        if not self._tabulated:
            if e < 0:
                a, e = self.inv(a), -e
            return self._pow_slow(a, e)
        n = self.order - 1
        return self._exp[(self._log[a] * e) % n]

    def gamma_pow(self, e: int) -> int:
        """gamma**e for any integer e."""
        return self.pow(self.gamma, e)

    def frobenius(self, a: int, i: int = 1) -> int:
        """sigma^i(a) = a^(q^i); negative i gives inverse powers."""
        i %= self.m
        if self._tabulated:
            return self._frob[i][a]
        return self._pow_slow(a, self.q**i)

    def frobenius_table(self, i: int) -> list[int]:
        """Lookup list for sigma^i (tabulated fields only)."""
        return self._frob[i % self.m]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def is_primitive(self, g: int) -> bool:
        return self._is_primitive_slow(g)

    def conjugate(self, a: int, c: int) -> int:
        """a^c = sigma(c) * a * c^{-1}."""
        if c == 0:
            raise ZeroDivisionError("conjugation by zero")
        return self.mul(self.mul(self.frobenius(c), a), self.inv(c))

    def conjugacy_representatives(self, ell: int) -> list[int]:
        """Representatives 1, gamma, ..., gamma^(ell-1) of distinct nontrivial classes."""
        if ell < 1:
            raise ParameterError("need at least one conjugacy representative")
        if ell > self.q - 1:
            raise ParameterError(
                f"not enough conjugacy classes: ell={ell} > q-1={self.q - 1}")
        return [self.gamma_pow(i) for i in range(ell)]

    # -- conversions ------------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        """Little-endian F_q coordinates of ``a``."""
        return self._digits(a)

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m or any(not 0 <= c < self.q for c in coeffs):
            raise ParameterError(f"invalid coefficient vector {coeffs}")
        return self._undigits(coeffs + [0] * (self.m - len(coeffs)))

    @cached_property
    def digit_matrix(self) -> np.ndarray:
        """``(order, m)`` array of the F_q coordinates of every element."""
        return np.array([self._digits(a) for a in range(self.order)], dtype=np.int64)

    def elements(self):
        return range(self.order)

    def random(self, rng, size=None):
        return rng.integers(0, self.order, size=size)

    def to_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "modulus": list(self.modulus), "gamma": self.gamma}

    def __eq__(self, other):
        return isinstance(other, GF) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.q, self.m, self.modulus, self.gamma))

    def __reduce__(self):
        # instance holds closures; rebuild from parameters instead
        return (GF, (self.q, self.m, list(self.modulus), self.gamma))

    def __repr__(self):
        return f"GF({self.q}^{self.m}, modulus={list(self.modulus)}, gamma={self.gamma})"


def _xor(a, b):
    return a ^ b


def _identity(a):
    return a
