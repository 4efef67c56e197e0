"""Arithmetic in GF(p^e) and in univariate polynomial rings over it.

Field elements are plain ``int`` codes in ``range(q)``: the code
``sum(c_i * p**i)`` stands for ``sum(c_i * a**i)`` where ``a`` is the root of
the (primitive) modulus.  Log/antilog tables give multiplication, and the
textual format is always the discrete-log form ``0``, ``1``, ``a^k``.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

import numpy as np

from .errors import FieldMismatch, InternalInconsistency, NotPrime, NotPrimitiveModulus

MAX_ORDER = 1 << 20
# dense q x q addition/multiplication tables are built only up to this order
_TABLE_ORDER = 1024

# Default primitive moduli (ascending coefficients).  For e > 1 this is the
# primitive polynomial with the smallest code sum(c_i p^i), which gives
# x^2+x+1, x^3+x+1 and x^5+x^2+1 for GF(4), GF(8) and GF(32); for e == 1 it is
# x - g with g the smallest primitive root mod p.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 1, 1),
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _mul_by_root(digits: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    """Multiply ``sum(d_i a^i)`` by ``a`` and reduce by the monic modulus."""
    e = len(modulus) - 1
    top = digits[-1]
    shifted = [0] + digits[:-1]
    if top:
        for i in range(e):
            shifted[i] = (shifted[i] - top * modulus[i]) % p
    return shifted


def _antilog_table(p: int, modulus: tuple[int, ...]) -> list[int] | None:
    """Powers of the root as integer codes, or None if it is not primitive."""
    e = len(modulus) - 1
    q = p**e
    digits = [1] + [0] * (e - 1)
    table = []
    seen = set()
    for _ in range(q - 1):
        code = sum(d * p**i for i, d in enumerate(digits))
        if code == 0 or code in seen:
            return None
        seen.add(code)
        table.append(code)
        digits = _mul_by_root(digits, modulus, p)
    if sum(d * p**i for i, d in enumerate(digits)) != 1:
        return None
    return table


@lru_cache(maxsize=None)
def find_primitive_modulus(p: int, e: int) -> tuple[int, ...]:
    """Return the default primitive modulus of GF(p^e)."""
    if (p, e) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, e)]
    return search_primitive_modulus(p, e)


def search_primitive_modulus(p: int, e: int) -> tuple[int, ...]:
    """Brute force over monic polynomials in increasing order of ``sum(c_i p^i)``.

    The shipped defaults agree with this search.
    """
    if e == 1:
        g = next(g for g in range(1, p) if _antilog_table(p, ((-g) % p, 1)))
        return ((-g) % p, 1)
    for low in range(1, p**e):
        coeffs = [(low // p**i) % p for i in range(e)] + [1]
        if coeffs[0] == 0:
            continue
        if _antilog_table(p, tuple(coeffs)) is not None:
            return tuple(coeffs)
    raise NotPrimitiveModulus(f"no primitive polynomial of degree {e} over GF({p})")


class Field:
    """The finite field GF(p^e) with a fixed primitive modulus.

    Parameters
    ----------
    p : int
        Prime characteristic.
    e : int
        Extension degree.
    modulus : sequence of int, optional
        Monic modulus over GF(p) as ascending coefficients (length ``e + 1``).
        Defaults to the shipped or searched primitive polynomial.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        if p**e > MAX_ORDER:
            raise ValueError(f"field order {p}^{e} exceeds the table cap {MAX_ORDER}")
        if modulus is None:
            modulus = find_primitive_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise NotPrimitiveModulus(
                f"modulus {modulus} is not monic of degree {e}"
            )
        table = _antilog_table(p, modulus)
        if table is None:
            raise NotPrimitiveModulus(
                f"modulus {format_coeffs(modulus)} is not primitive over GF({p})"
            )
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._exp = table + table
        self._log = [-1] * self.q
        for i, code in enumerate(table):
            self._log[code] = i
        self._add = None
        self._neg = [self._digit_neg(a) for a in range(self.q)] if p != 2 else None
        if p != 2 and self.q <= _TABLE_ORDER:
            self._add = [[self._digit_add(a, b) for b in range(self.q)] for a in range(self.q)]

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.q}) mod {format_coeffs(self.modulus)}"

    @property
    def order(self) -> int:
        return self.q

    def elements(self):
        return range(self.q)

    def check(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatch(f"{self!r} vs {other!r}")

    # -- scalar arithmetic ---------------------------------------------------

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _digit_neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no discrete logarithm")
        return self._log[a]

    def exp(self, k: int) -> int:
        """Return ``a**k`` for the primitive root ``a``."""
        return self._exp[k % (self.q - 1)]

    @property
    def primitive(self) -> int:
        return self._exp[1 % (self.q - 1)]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        return (self.q - 1) // math.gcd(self._log[a], self.q - 1)

    # -- vectorised arithmetic (used by the trellis and block searches) -------

    @property
    def add_table(self) -> np.ndarray:
        if not hasattr(self, "_add_np"):
            if self.q > _TABLE_ORDER:
                raise ValueError("vectorised arithmetic needs q <= 1024")
            r = np.arange(self.q)
            if self.p == 2:
                tab = r[:, None] ^ r[None, :]
            else:
                tab = np.array(self._add)
            self._add_np = tab.astype(_code_dtype(self.q))
        return self._add_np

    @property
    def mul_table(self) -> np.ndarray:
        if not hasattr(self, "_mul_np"):
            if self.q > _TABLE_ORDER:
                raise ValueError("vectorised arithmetic needs q <= 1024")
            tab = [[self.mul(a, b) for b in range(self.q)] for a in range(self.q)]
            self._mul_np = np.array(tab, dtype=_code_dtype(self.q))
        return self._mul_np

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add_table[a, b]

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.mul_table[a, b]

    # -- text ----------------------------------------------------------------

    def format(self, a: int) -> str:
        if a == 0:
            return "0"
        k = self._log[a]
        return "1" if k == 0 else f"a^{k}"

    def parse(self, token: str) -> int:
        token = token.strip()
        if token == "0":
            return 0
        if token == "1":
            return 1
        if token in ("a", "α"):
            return self.exp(1)
        m = re.fullmatch(r"(?:a|α)\^\s*(-?\d+)", token)
        if m is None:
            raise ValueError(f"cannot parse field element {token!r}")
        return self.exp(int(m.group(1)))


def _code_dtype(q: int):
    if q <= 256:
        return np.uint8
    return np.uint16 if q <= 65536 else np.uint32


def format_coeffs(coeffs) -> str:
    """Format an integer coefficient tuple (ascending) as a polynomial in x."""
    terms = []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        if d == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


NEG_INF = -math.inf


class Poly:
    """Polynomial over a :class:`Field` with ascending coefficient codes.

    Trailing zeros are trimmed, so equal polynomials compare equal; the zero
    polynomial has degree ``-inf``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field, degree, c=1):
        return cls(field, [0] * degree + [c])

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def from_roots(cls, field, roots):
        """Monic ``prod(x - r)`` over the given roots."""
        out = cls(field, (1,))
        for r in roots:
            out = out * cls(field, (field.neg(r), 1))
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.format()})"

    def __str__(self):
        return self.format()

    def __add__(self, other):
        self.field.check(other.field)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self.field.check(other.field)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        return Poly(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly(self.field, [0] * k + list(self.coeffs))

    def __divmod__(self, other):
        self.field.check(other.field)
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = len(other.coeffs) - 1
        if len(rem) - 1 < dg:
            return Poly(F), self
        inv_lead = F.inv(other.lead)
        quot = [0] * (len(rem) - dg)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = F.mul(c, inv_lead)
            quot[i - dg] = f
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[i - dg + j] = F.sub(rem[i - dg + j], F.mul(f, b))
        return Poly(F, quot), Poly(F, rem[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, value: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, value), c)
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lead))

    def format(self, var: str = "x") -> str:
        F = self.field
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(F.format(c))
                continue
            mono = var if d == 1 else f"{var}^{d}"
            terms.append(mono if c == 1 else f"{F.format(c)}*{mono}")
        return " + ".join(terms) if terms else "0"


def parse_poly(field: Field, text: str, var: str = "x") -> Poly:
    """Parse the ``<elem>*x^<d> + ...`` format written by :meth:`Poly.format`."""
    text = text.strip()
    if text == "0":
        return Poly(field)
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        m = re.fullmatch(
            rf"(?:(?P<c>[^*]+?)\s*\*\s*)?(?P<v>{re.escape(var)})(?:\^(?P<d>\d+))?", term
        )
        if m is None:
            c, d = field.parse(term), 0
        else:
            c = field.parse(m.group("c")) if m.group("c") else 1
            d = int(m.group("d")) if m.group("d") else 1
        coeffs[d] = field.add(coeffs.get(d, 0), c)
    top = max(coeffs) if coeffs else -1
    return Poly(field, [coeffs.get(d, 0) for d in range(top + 1)])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, s, t)`` with ``s*f + t*g == d`` and ``d`` the monic gcd."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = Poly(F, (1,)), Poly(F)
    t0, t1 = Poly(F), Poly(F, (1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def subfield_embedding(F: Field, R: Field) -> dict[int, int]:
    """Map GF(q) into GF(q^t) by sending the root of F's modulus to a root in R."""
    q = F.q
    step = (R.q - 1) // (q - 1)
    modulus = Poly(R, F.modulus)  # GF(p) codes coincide in both fields
    for j in range(1, q):
        if math.gcd(j, q - 1) != 1:
            continue
        theta = R.exp(j * step)
        if modulus(theta) == 0:
            emb = {0: 0}
            for i in range(q - 1):
                emb[F.exp(i)] = R.pow(theta, i)
            return emb
    raise InternalInconsistency(f"no root of {F.modulus} in {R!r}")
