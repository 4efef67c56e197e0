"""Line-oriented ``key = value`` code specification files.

A general spec names the field, the block length, the automorphism by the
coefficients of ``sigma(x)`` and the idempotent indices::

    # GF(4), n = 15, sigma(x) = a x
    p = 2
    e = 2
    n = 15
    sigma = 0, a^1
    S = 0, 3, 8
    m = 2

``modulus`` (ascending integers) and ``b`` are optional.  Two families are
shorthand: ``family = rs`` with ``p``, ``e``, ``k``, ``m`` (and optionally
``n``), and ``family = bch-ex52`` with just ``m``: the binary length-31 code
with ``sigma(x) = x^13`` and ``S = {1}``.
"""

from __future__ import annotations

from contextlib import contextmanager
from importlib import resources
from pathlib import Path

from .algebra import Automorphism, build_context
from .construct import CodeSpec, make_spec, rs_config
from .errors import DCCError, SpecFileError, SpecInvalid
from .galois import Field

GENERAL_KEYS = {"p", "e", "modulus", "n", "sigma", "S", "b", "m"}
FAMILY_KEYS = {
    "rs": ({"p", "e", "k", "m"}, {"modulus", "n"}),
    "bch-ex52": ({"m"}, set()),
}


def _split(value: str) -> list[str]:
    return [t for t in value.replace(",", " ").split() if t]


def _int(value: str, key: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise SpecFileError(f"{key} must be an integer, got {value!r}", line) from None


def _int_list(value: str, key: str, line: int) -> list[int]:
    return [_int(t, key, line) for t in _split(value)]


def read_pairs(text: str) -> dict[str, tuple[str, int]]:
    """Map key to ``(value, line number)``; comments and blank lines skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFileError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise SpecFileError("missing key", lineno)
        if key in out:
            raise SpecFileError(f"duplicate key {key!r} (first on line {out[key][1]})", lineno)
        out[key] = (value, lineno)
    return out


def _check_keys(pairs, required, optional):
    for key, (_, line) in pairs.items():
        if key not in required | optional:
            raise SpecFileError(f"unknown key {key!r}", line)
    missing = sorted(required - pairs.keys())
    if missing:
        raise SpecFileError("missing key(s): " + ", ".join(missing))


def _field(pairs) -> Field:
    p = _int(pairs["p"][0], "p", pairs["p"][1])
    e = _int(pairs["e"][0], "e", pairs["e"][1]) if "e" in pairs else 1
    modulus = None
    if "modulus" in pairs:
        value, line = pairs["modulus"]
        modulus = _int_list(value, "modulus", line)
    try:
        return Field(p, e, modulus)
    except (DCCError, ValueError) as exc:
        line = pairs["modulus"][1] if "modulus" in pairs else pairs["p"][1]
        raise SpecFileError(str(exc), line) from None


@contextmanager
def _at_line(line: int):
    """Re-raise library validation errors tagged with a line number."""
    try:
        yield
    except SpecFileError:
        raise
    except SpecInvalid as exc:
        raise SpecInvalid(f"line {line}: {exc}", exc.witness) from None
    except (DCCError, ValueError) as exc:
        raise SpecFileError(str(exc), line) from None


def parse_spec(text: str) -> CodeSpec:
    """Parse spec text into a validated :class:`CodeSpec`."""
    pairs = read_pairs(text)
    family = pairs.pop("family", None)
    if family is not None:
        name, line = family
        if name not in FAMILY_KEYS:
            raise SpecFileError(f"unknown family {name!r}", line)
        required, optional = FAMILY_KEYS[name]
        _check_keys(pairs, required, optional)
        m_val, m_line = pairs["m"]
        m = _int(m_val, "m", m_line)
        if name == "bch-ex52":
            with _at_line(m_line):
                return bch_ex52(m)
        F = _field(pairs)
        k = _int(pairs["k"][0], "k", pairs["k"][1])
        n = _int(pairs["n"][0], "n", pairs["n"][1]) if "n" in pairs else None
        with _at_line(pairs["k"][1]):
            return rs_config(F, k, m, n)

    _check_keys(pairs, {"p", "n", "sigma", "S", "m"}, GENERAL_KEYS - {"p", "n", "sigma", "S", "m"})
    F = _field(pairs)
    n_val, n_line = pairs["n"]
    with _at_line(n_line):
        ctx = build_context(F, _int(n_val, "n", n_line))
    sig_val, sig_line = pairs["sigma"]
    with _at_line(sig_line):
        coeffs = [F.parse(t) for t in _split(sig_val)]
        if len(coeffs) > ctx.n:
            raise SpecFileError(f"sigma has {len(coeffs)} coefficients, more than n = {ctx.n}", sig_line)
        sigma = Automorphism(ctx, ctx.element(coeffs + [0] * (ctx.n - len(coeffs))))
    S_val, S_line = pairs["S"]
    S = _int_list(S_val, "S", S_line)
    for i in S:
        if not 0 <= i < ctx.r:
            raise SpecFileError(f"idempotent index {i} outside 0..{ctx.r - 1}", S_line)
    m = _int(pairs["m"][0], "m", pairs["m"][1])
    b = _int(pairs["b"][0], "b", pairs["b"][1]) if "b" in pairs else None
    with _at_line(S_line):
        return make_spec(ctx, sigma, S, m, b)


def bch_ex52(m: int) -> CodeSpec:
    """Binary length-31 code with ``sigma(x) = x^13`` and ``S = {1}``."""
    F = Field(2, 1)
    ctx = build_context(F, 31)
    sigma = Automorphism(ctx, ctx.monomial(13))
    return make_spec(ctx, sigma, [1], m)


def load_spec(source: str) -> CodeSpec:
    """Load a spec from a path, or from a shipped preset by name."""
    return parse_spec(read_source(source))


def read_source(source: str) -> str:
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    preset = resources.files("dccodes") / "fixtures" / f"{source}.spec"
    if preset.is_file():
        return preset.read_text(encoding="utf-8")
    raise SpecFileError(f"no spec file or preset named {source!r} (presets: {', '.join(presets())})")


def presets() -> list[str]:
    folder = resources.files("dccodes") / "fixtures"
    return sorted(p.name[: -len(".spec")] for p in folder.iterdir() if p.name.endswith(".spec"))


def emit_spec(spec: CodeSpec) -> str:
    """Spec text that parses back to an equal :class:`CodeSpec`."""
    F = spec.field
    lines = []
    if spec.rs_k is not None:
        lines += ["family = rs", f"p = {F.p}", f"e = {F.e}"]
        lines.append("modulus = " + ", ".join(str(c) for c in F.modulus))
        lines.append(f"k = {spec.rs_k}")
        if spec.n != F.q - 1:
            lines.append(f"n = {spec.n}")
        lines.append(f"m = {spec.m}")
        return "\n".join(lines) + "\n"
    coeffs = list(spec.sigma.image.coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    lines += [f"p = {F.p}", f"e = {F.e}"]
    lines.append("modulus = " + ", ".join(str(c) for c in F.modulus))
    lines.append(f"n = {spec.n}")
    lines.append("sigma = " + ", ".join(F.format(c) for c in coeffs))
    lines.append("S = " + ", ".join(str(i) for i in spec.S))
    lines.append(f"b = {spec.b}")
    lines.append(f"m = {spec.m}")
    return "\n".join(lines) + "\n"
