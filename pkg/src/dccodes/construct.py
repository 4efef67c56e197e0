"""Doubly-cyclic convolutional codes from an idempotent set ``S``.

Builds generator matrices and the coefficient block codes; the Reed-Solomon
and BCH families are provided as ready-made configurations."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .algebra import (
    AlgebraContext,
    AlgebraElement,
    Automorphism,
    build_context,
    idempotent_permutation,
)
from .errors import KTooLarge, NNotDividing, NotRSConfig, RangeError, SpecInvalid
from .galois import Field, Poly
from .polymatrix import GeneratorMatrix


def validate_S(ctx: AlgebraContext, sigma: Automorphism, S, b: int):
    """Check ``S`` and ``sigma^j(S)`` are disjoint for ``1 <= j <= b``.

    Returns ``(ok, witness)`` where ``witness`` is the first colliding
    ``(j, index)`` or ``None``.
    """
    S = set(S)
    if not S:
        raise ValueError("S must be nonempty")
    if not all(0 <= i < ctx.r for i in S):
        raise ValueError(f"indices of S must lie in 0..{ctx.r - 1}")
    perm = idempotent_permutation(sigma)
    image = set(S)
    for j in range(1, b + 1):
        image = {perm[i] for i in image}
        hit = sorted(S & image)
        if hit:
            return False, (j, hit[0])
    return True, None


def max_b(ctx: AlgebraContext, sigma: Automorphism, S) -> int:
    """Largest ``b`` for which ``S`` is disjoint from ``sigma^j(S)``, ``j <= b``."""
    S = set(S)
    perm = idempotent_permutation(sigma)
    image = set(S)
    b = 0
    for _ in range(ctx.r + 1):
        image = {perm[i] for i in image}
        if S & image:
            return b
        b += 1
    return b  # pragma: no cover - sigma has finite order on E


@dataclass(frozen=True)
class CodeSpec:
    """Data of a doubly-cyclic code: ``sigma``, ``S``, ``b`` and memory ``m``.

    ``rs_poly`` is the Reed-Solomon generator polynomial ``f`` when the spec
    comes from :func:`rs_config`; it does not take part in equality.
    """

    ctx: AlgebraContext
    sigma: Automorphism
    S: tuple[int, ...]
    b: int
    m: int
    rs_poly: Poly | None = dc_field(default=None, compare=False)
    rs_k: int | None = dc_field(default=None, compare=False)

    @property
    def field(self) -> Field:
        return self.ctx.field

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def c(self) -> AlgebraElement:
        E = self.ctx.idempotents
        out = self.ctx.zero
        for i in self.S:
            out = out + E[i]
        return out

    @property
    def k(self) -> int:
        return sum(self.ctx.factors[i].degree for i in self.S)

    def sigma_power(self, f: AlgebraElement, nu: int) -> AlgebraElement:
        return self.sigma.apply_power(f, nu)


def make_spec(ctx, sigma, S, m, b=None) -> CodeSpec:
    """Validate and assemble a :class:`CodeSpec` (``b`` defaults to ``max_b``)."""
    S = tuple(sorted(set(S)))
    if b is None:
        b = max_b(ctx, sigma, S)
    ok, witness = validate_S(ctx, sigma, S, b)
    if not ok:
        j, idx = witness
        raise SpecInvalid(
            f"S meets sigma^{j}(S) in idempotent {idx}; disjointness fails for b = {b}",
            witness,
        )
    if b < 1:
        raise SpecInvalid("S must be disjoint from sigma(S) (b >= 1)")
    if (b + 1) * len(S) > ctx.r:
        raise SpecInvalid(f"(b + 1) |S| = {(b + 1) * len(S)} exceeds r = {ctx.r}")
    if not 1 <= m <= b:
        raise SpecInvalid(f"memory must satisfy 1 <= m <= b = {b}, got m = {m}")
    return CodeSpec(ctx, sigma, S, b, m)


bch_config = make_spec


def _layers(spec: CodeSpec, base: AlgebraElement, m: int) -> np.ndarray:
    """``layers[nu][i] = v(sigma^nu(x^i base))`` for ``i < k``, ``nu <= m``."""
    rows = [base.shift(i) for i in range(spec.k)]
    out = []
    for nu in range(m + 1):
        out.append([list(r.coeffs) for r in rows])
        rows = [spec.sigma(r) for r in rows]
    return np.array(out, dtype=np.int64)


def build_code(spec: CodeSpec) -> GeneratorMatrix:
    """``G = sum(z^nu G_nu)`` with ``G_nu`` rows ``v(sigma^nu(x^i c))``."""
    return GeneratorMatrix(spec.field, _layers(spec, spec.c, spec.m))


@dataclass(frozen=True)
class CoeffCode:
    mu: int
    nu: int
    matrix: np.ndarray
    generator: AlgebraElement
    dimension: int


def coeff_code(spec: CodeSpec, mu: int, nu: int) -> CoeffCode:
    """The block code spanned by ``G_mu, ..., G_nu`` stacked.

    Layers past ``m`` are allowed up to ``b``: they are the same rows
    ``v(sigma^nu(x^i c))`` and the direct-sum structure still holds there.
    """
    if not 0 <= mu <= nu <= spec.b:
        raise RangeError(f"need 0 <= mu <= nu <= b = {spec.b}, got ({mu}, {nu})")
    layers = _layers(spec, spec.c, nu)
    stacked = np.concatenate([layers[i] for i in range(mu, nu + 1)], axis=0)
    gen = spec.ctx.zero
    for i in range(mu, nu + 1):
        gen = gen + spec.sigma_power(spec.c, i)
    dim = linalg.rank(spec.field, stacked.tolist())
    return CoeffCode(mu, nu, stacked, gen, dim)


def ideal_basis(e: AlgebraElement) -> list[list[int]]:
    """Spanning rows of the principal ideal ``<e>`` in ``A``."""
    return [list(e.shift(i).coeffs) for i in range(e.ctx.n)]


def rs_config(field: Field, k: int, m: int | None = None, n: int | None = None) -> CodeSpec:
    """Reed-Solomon configuration: ``sigma(x) = alpha^k x``, ``S = {n-k..n-1}``.

    ``n`` defaults to ``q - 1``; any divisor of ``q - 1`` works with
    ``alpha`` an element of order ``n``.  ``m`` defaults to ``b``.
    """
    q = field.q
    n = q - 1 if n is None else n
    if n < 2 or (q - 1) % n:
        raise NNotDividing(f"n = {n} does not divide q - 1 = {q - 1}")
    if not 1 <= k <= n // 2:
        raise KTooLarge(f"need 1 <= k <= n/2 = {n / 2}, got k = {k}")
    ctx = build_context(field, n)
    alpha = ctx.alpha_n
    sigma = Automorphism(ctx, ctx.x.scale(field.pow(alpha, k)))
    S = tuple(range(n - k, n))
    b = n // k - 1
    m = b if m is None else m
    spec = make_spec(ctx, sigma, S, m, b)
    f = Poly.from_roots(field, [field.pow(alpha, l) for l in range(n - k)])
    return CodeSpec(ctx, sigma, spec.S, b, m, rs_poly=f, rs_k=k)


def build_ghat(spec: CodeSpec) -> GeneratorMatrix:
    """Generator matrix with rows ``v(sigma^nu(x^i f))`` from the RS polynomial."""
    if spec.rs_poly is None:
        raise NotRSConfig("build_ghat needs a spec produced by rs_config")
    f = spec.ctx.from_poly(spec.rs_poly)
    return GeneratorMatrix(spec.field, _layers(spec, f, spec.m))


@dataclass(frozen=True)
class BCHBound:
    zeros: frozenset
    run: int

    @property
    def bound(self) -> int:
        return self.run + 1


def longest_cyclic_run(exponents, n: int) -> int:
    """Longest run of consecutive integers mod ``n`` inside ``exponents``."""
    ex = set(e % n for e in exponents)
    if len(ex) == n:
        return n
    best = 0
    for start in ex:
        if (start - 1) % n in ex:
            continue
        length = 0
        while (start + length) % n in ex:
            length += 1
        best = max(best, length)
    return best


def bch_zero_set(spec: CodeSpec, mu: int, nu: int) -> BCHBound:
    """Zeros ``j`` (``alpha_n^j`` a root of the generator) of ``C_{mu,nu}``."""
    if not 0 <= mu <= nu <= spec.b:
        raise RangeError(f"need 0 <= mu <= nu <= b = {spec.b}, got ({mu}, {nu})")
    perm = idempotent_permutation(spec.sigma)
    nonzero = set()
    layer = set(spec.S)
    for i in range(nu + 1):
        if i >= mu:
            nonzero |= layer
        layer = {perm[j] for j in layer}
    zeros = frozenset(
        j for idx, coset in enumerate(spec.ctx.cosets) if idx not in nonzero for j in coset
    )
    return BCHBound(zeros, longest_cyclic_run(zeros, spec.n))
