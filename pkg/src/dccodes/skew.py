"""Skew polynomials ``A[z; sigma]`` with the commutation rule ``a z = z sigma(a)``.

Coefficients always sit to the right of ``z``: ``f = sum(z**i * f[i])``.
With that convention ``(z^i a)(z^j b) = z^(i+j) sigma^j(a) b``.
"""

from __future__ import annotations

from .algebra import AlgebraElement, Automorphism
from .errors import AutomorphismMismatch


class SkewPolynomial:
    __slots__ = ("sigma", "coeffs")

    def __init__(self, sigma: Automorphism, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.sigma = sigma
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, sigma, a: AlgebraElement):
        return cls(sigma, (a,))

    @classmethod
    def z_power(cls, sigma, k: int, a: AlgebraElement | None = None):
        """``z**k * a`` (``a`` defaults to 1)."""
        ctx = sigma.ctx
        a = ctx.one if a is None else a
        return cls(sigma, [ctx.zero] * k + [a])

    @classmethod
    def scalar(cls, sigma, coeffs):
        """Embed an ordinary polynomial in F[z] given by its field coefficients."""
        ctx = sigma.ctx
        return cls(sigma, [ctx.constant(c) for c in coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.sigma.ctx.zero

    def __repr__(self):
        if not self.coeffs:
            return "SkewPolynomial(0)"
        terms = [f"z^{i}*({c})" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "SkewPolynomial(" + " + ".join(terms) + ")"

    def __eq__(self, other):
        if not isinstance(other, SkewPolynomial):
            return NotImplemented
        return self.sigma == other.sigma and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _check(self, other):
        if not isinstance(other, SkewPolynomial):
            raise TypeError(f"expected a SkewPolynomial, got {type(other).__name__}")
        if other.sigma is not self.sigma and other.sigma != self.sigma:
            raise AutomorphismMismatch(f"{self.sigma!r} vs {other.sigma!r}")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPolynomial(self.sigma, [self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return SkewPolynomial(self.sigma, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return SkewPolynomial(self.sigma)
        sigma = self.sigma
        ctx = sigma.ctx
        out = [ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        # twisted[j][i] = sigma^j(self[i])
        twisted = [list(self.coeffs)]
        for _ in range(1, len(other.coeffs)):
            twisted.append([sigma(a) for a in twisted[-1]])
        for j, b in enumerate(other.coeffs):
            if b.is_zero():
                continue
            for i, a in enumerate(twisted[j]):
                if not a.is_zero():
                    out[i + j] = out[i + j] + a * b
        return SkewPolynomial(sigma, out)


def build_g(c: AlgebraElement, sigma: Automorphism, m: int) -> SkewPolynomial:
    """``c * (1 + z + ... + z^m) = sum(z^nu sigma^nu(c))``."""
    if m < 1:
        raise ValueError(f"memory must be at least 1, got {m}")
    coeffs = [c]
    for _ in range(m):
        coeffs.append(sigma(coeffs[-1]))
    return SkewPolynomial(sigma, coeffs)


def _one_plus_z(sigma, a, sign=1):
    ctx = sigma.ctx
    return SkewPolynomial(sigma, [ctx.one, a if sign > 0 else -a])


def verify_g_factorization(c: AlgebraElement, sigma: Automorphism, m: int) -> bool:
    """Check ``c (1 + z sigma(c)) ... (1 + z sigma^m(c)) == build_g(c, sigma, m)``."""
    prod = SkewPolynomial.constant(sigma, c)
    s = c
    for _ in range(m):
        s = sigma(s)
        prod = prod * _one_plus_z(sigma, s)
    return prod == build_g(c, sigma, m)


def verify_unit(c: AlgebraElement, sigma: Automorphism, m: int) -> bool:
    """Check that ``u = (1 - z sigma^m(c)) ... (1 - z sigma(c))`` satisfies
    ``g u = c``, ``u = 1 - z (sigma(c) + ... + sigma^m(c))`` and that the
    product of the ``1 + z sigma^nu(c)`` in ascending order inverts it."""
    ctx = sigma.ctx
    powers = [c]
    for _ in range(m):
        powers.append(sigma(powers[-1]))
    one = SkewPolynomial.constant(sigma, ctx.one)
    u = one
    for nu in range(m, 0, -1):
        u = u * _one_plus_z(sigma, powers[nu], sign=-1)
    u_inv = one
    for nu in range(1, m + 1):
        u_inv = u_inv * _one_plus_z(sigma, powers[nu])
    total = ctx.zero
    for nu in range(1, m + 1):
        total = total + powers[nu]
    closed_form = SkewPolynomial(sigma, [ctx.one, -total])
    g = build_g(c, sigma, m)
    return (
        g * u == SkewPolynomial.constant(sigma, c)
        and u == closed_form
        and u * u_inv == one
    )
