"""The algebra A = F[x]/(x^n - 1) with its primitive idempotents and automorphisms."""

from __future__ import annotations

import math
from functools import cached_property

from . import linalg
from .errors import (
    CharDividesN,
    ContextMismatch,
    InternalInconsistency,
    NotAnAutomorphism,
)
from .galois import Field, Poly, poly_xgcd, subfield_embedding


def multiplicative_order(q: int, n: int) -> int:
    if math.gcd(q, n) != 1:
        raise ValueError(f"{q} is not a unit mod {n}")
    t, x = 1, q % n
    while x != 1 % n:
        x = x * q % n
        t += 1
    return t


def cyclotomic_cosets(q: int, n: int) -> list[tuple[int, ...]]:
    """Cosets of ``q`` acting on ``Z/n``, ordered by smallest representative."""
    seen = set()
    cosets = []
    for j in range(n):
        if j in seen:
            continue
        coset = []
        k = j
        while k not in coset:
            coset.append(k)
            k = k * q % n
        seen.update(coset)
        cosets.append(tuple(coset))
    return cosets


class AlgebraContext:
    """Everything about ``A = F[x]/(x^n - 1)`` that depends only on ``(F, n)``.

    ``factors[i]`` is the monic prime factor whose roots are
    ``alpha_n**j`` for ``j`` in ``cosets[i]``; factors are ordered by the
    smallest coset representative.  ``alpha_n`` lives in ``root_field``,
    which is ``field`` itself whenever ``n`` divides ``q - 1``.
    """

    def __init__(self, field: Field, n: int):
        if n < 2:
            raise ValueError(f"length must be at least 2, got {n}")
        if n % field.p == 0:
            raise CharDividesN(f"characteristic {field.p} divides n = {n}")
        self.field = field
        self.n = n
        q = field.q
        self.cosets = cyclotomic_cosets(q, n)
        self.t = multiplicative_order(q, n)
        if self.t == 1:
            self.root_field = field
            self.alpha_n = field.exp((q - 1) // n)
            self._embed = {c: c for c in range(q)}
        else:
            R = Field(field.p, field.e * self.t)
            self.root_field = R
            self.alpha_n = R.exp((R.q - 1) // n)
            self._embed = subfield_embedding(field, R)
        self._restrict = {v: k for k, v in self._embed.items()}
        self.factors = [self._factor(c) for c in self.cosets]

    def _factor(self, coset) -> Poly:
        R = self.root_field
        f = Poly.from_roots(R, [R.pow(self.alpha_n, j) for j in coset])
        try:
            return Poly(self.field, [self._restrict[c] for c in f.coeffs])
        except KeyError:
            raise InternalInconsistency(
                f"factor for coset {coset} has coefficients outside the base field"
            ) from None

    def embed(self, c: int) -> int:
        """Image of a base-field element in the root field."""
        return self._embed[c]

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraContext)
            and self.field == other.field
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"AlgebraContext({self.field!r}, n={self.n})"

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def x_n_minus_1(self) -> Poly:
        F = self.field
        return Poly(F, [F.neg(1)] + [0] * (self.n - 1) + [1])

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, coeffs)

    def from_poly(self, f: Poly) -> "AlgebraElement":
        self.field.check(f.field)
        out = [0] * self.n
        for i, c in enumerate(f.coeffs):
            out[i % self.n] = self.field.add(out[i % self.n], c)
        return AlgebraElement(self, out)

    def constant(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self, [c] + [0] * (self.n - 1))

    @property
    def zero(self) -> "AlgebraElement":
        return self.constant(0)

    @property
    def one(self) -> "AlgebraElement":
        return self.constant(1)

    @property
    def x(self) -> "AlgebraElement":
        return self.monomial(1)

    def monomial(self, i: int, c: int = 1) -> "AlgebraElement":
        out = [0] * self.n
        out[i % self.n] = c
        return AlgebraElement(self, out)

    def random_element(self, rng) -> "AlgebraElement":
        return AlgebraElement(self, [int(v) for v in rng.integers(0, self.field.q, self.n)])

    @cached_property
    def idempotents(self) -> tuple["AlgebraElement", ...]:
        return idempotents(self)

    def factor_index(self, f: Poly) -> int:
        return self.factors.index(f.monic())

    def idempotent_index(self, e: "AlgebraElement") -> int:
        try:
            return self.idempotents.index(e)
        except ValueError:
            raise InternalInconsistency(f"{e} is not a primitive idempotent") from None


def build_context(field: Field, n: int) -> AlgebraContext:
    return AlgebraContext(field, n)


class AlgebraElement:
    """Element of ``A`` as its coefficient vector ``(v_0, ..., v_{n-1})``."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraContext, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != ctx.n:
            raise ValueError(f"expected {ctx.n} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"AlgebraElement({self.format()})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        return self.to_poly().format(var)

    def to_poly(self) -> Poly:
        return Poly(self.ctx.field, self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __add__(self, other):
        self._check(other)
        F = self.ctx.field
        return AlgebraElement(self.ctx, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        F = self.ctx.field
        return AlgebraElement(self.ctx, [F.neg(a) for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.ctx.field
        n = self.ctx.n
        out = [0] * n
        b_nz = [(j, b) for j, b in enumerate(other.coeffs) if b]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in b_nz:
                k = (i + j) % n
                out[k] = F.add(out[k], F.mul(a, b))
        return AlgebraElement(self.ctx, out)

    def scale(self, c: int) -> "AlgebraElement":
        F = self.ctx.field
        return AlgebraElement(self.ctx, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "AlgebraElement":
        """Multiply by ``x**k`` (a cyclic shift)."""
        n = self.ctx.n
        k %= n
        return AlgebraElement(self.ctx, self.coeffs[n - k :] + self.coeffs[: n - k])

    def __pow__(self, k: int):
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def idempotents(ctx: AlgebraContext) -> tuple[AlgebraElement, ...]:
    """Primitive idempotents aligned with ``ctx.factors``.

    ``eps_i`` is ``s * h_i mod (x^n - 1)`` where ``h_i = (x^n - 1) / pi_i`` and
    ``s * h_i + t * pi_i = 1``.
    """
    big = ctx.x_n_minus_1
    out = []
    for pi in ctx.factors:
        h, rem = divmod(big, pi)
        if not rem.is_zero():
            raise InternalInconsistency(f"{pi} does not divide x^n - 1")
        d, s, _ = poly_xgcd(h, pi)
        if d.degree != 0:
            raise InternalInconsistency(f"cofactor of {pi} is not coprime to it")
        out.append(ctx.from_poly((s * h) % big))
    return tuple(out)


class Automorphism:
    """An F-algebra automorphism of ``A`` given by the image of ``x``.

    Application is a vector-matrix product with the matrix whose rows are the
    coefficient vectors of ``image**0, ..., image**(n-1)``.
    """

    def __init__(self, ctx: AlgebraContext, image: AlgebraElement):
        if image.ctx != ctx:
            raise ContextMismatch(f"{image.ctx!r} vs {ctx!r}")
        if image**ctx.n != ctx.one:
            raise NotAnAutomorphism(f"sigma(x) = {image} does not satisfy sigma(x)^n = 1")
        rows = []
        power = ctx.one
        for _ in range(ctx.n):
            rows.append(list(power.coeffs))
            power = power * image
        inv = linalg.inverse(ctx.field, rows)
        if inv is None:
            raise NotAnAutomorphism(f"substitution x -> {image} is not bijective")
        self.ctx = ctx
        self.image = image
        self._matrix = rows
        self._inverse_matrix = inv

    @classmethod
    def identity(cls, ctx: AlgebraContext) -> "Automorphism":
        return cls(ctx, ctx.x)

    def __repr__(self):
        return f"Automorphism(x -> {self.image})"

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    @property
    def inverse_image(self) -> AlgebraElement:
        return AlgebraElement(self.ctx, self._inverse_matrix[1])

    def inverse(self) -> "Automorphism":
        return Automorphism(self.ctx, self.inverse_image)

    def _check(self, f):
        if f.ctx != self.ctx:
            raise ContextMismatch(f"{f.ctx!r} vs {self.ctx!r}")

    def apply(self, f: AlgebraElement) -> AlgebraElement:
        self._check(f)
        return AlgebraElement(self.ctx, linalg.vec_mat(self.ctx.field, f.coeffs, self._matrix))

    __call__ = apply

    def apply_inverse(self, f: AlgebraElement) -> AlgebraElement:
        self._check(f)
        return AlgebraElement(
            self.ctx, linalg.vec_mat(self.ctx.field, f.coeffs, self._inverse_matrix)
        )

    def apply_power(self, f: AlgebraElement, nu: int) -> AlgebraElement:
        step = self.apply if nu >= 0 else self.apply_inverse
        for _ in range(abs(nu)):
            f = step(f)
        return f

    def power(self, nu: int) -> "Automorphism":
        return Automorphism(self.ctx, self.apply_power(self.ctx.x, nu))

    def is_weight_preserving(self) -> bool:
        """True iff the substitution matrix is monomial, i.e. sigma is an isometry."""
        return all(sum(1 for v in row if v) == 1 for row in self._matrix)


def automorphism_from_image(ctx: AlgebraContext, image: AlgebraElement) -> Automorphism:
    return Automorphism(ctx, image)


def idempotent_permutation(sigma: Automorphism, E=None) -> tuple[int, ...]:
    """Return ``j`` with ``sigma(eps_i) == eps_{j[i]}``."""
    ctx = sigma.ctx
    E = ctx.idempotents if E is None else tuple(E)
    index = {e: i for i, e in enumerate(E)}
    perm = []
    for i, e in enumerate(E):
        img = sigma(e)
        j = index.get(img)
        if j is None:
            raise InternalInconsistency(f"sigma(eps_{i}) is not a primitive idempotent")
        perm.append(j)
    return tuple(perm)


def cycles(perm) -> list[tuple[int, ...]]:
    """Cycle decomposition, each cycle starting at its smallest member."""
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out
