"""Command-line frontend: ``dccodes factor|idempotents|construct|analyze|bounds``."""

from __future__ import annotations

import argparse
import sys

from . import linalg
from .algebra import Automorphism, build_context, cycles, idempotent_permutation
from .analysis import (
    DEFAULT_STATE_CAP,
    StateGraph,
    analyze,
    bch_D_bounds,
    block_distance_exhaustive,
    bounds,
    enumerator_rows,
    rs_distance_formula,
)
from .construct import CodeSpec, bch_zero_set, build_code, build_ghat, coeff_code
from .errors import DCCError, StateSpaceTooLarge, TooLarge
from .galois import Field
from .skew import verify_g_factorization, verify_unit
from .specfile import emit_spec, load_spec

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RESOURCE = 3

# exact block distances are enumerated up to this many information words
EXACT_DLIST_CAP = 1 << 16

DISPLAY_NAMES = {"griesmer_conv": "griesmer", "bch_D": "bch_D_min"}


def _field_from_args(args) -> Field:
    modulus = None
    if args.modulus:
        modulus = [int(t) for t in args.modulus.replace(",", " ").split()]
    return Field(args.p, args.e, modulus)


def _add_field_args(p):
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--e", type=int, default=1, help="extension degree")
    p.add_argument("--modulus", help="ascending coefficients of the field modulus")
    p.add_argument("--n", type=int, required=True, help="block length")


def cmd_factor(args, out):
    F = _field_from_args(args)
    ctx = build_context(F, args.n)
    print(f"# x^{args.n} - 1 over GF({F.q}): {ctx.r} factors", file=out)
    print("# index\tleader\tdegree\tfactor\tcoset", file=out)
    for i, (coset, f) in enumerate(zip(ctx.cosets, ctx.factors)):
        print(f"{i}\t{coset[0]}\t{f.degree}\t{f.format('x')}\t{{{','.join(map(str, coset))}}}", file=out)
    return EXIT_OK


def cmd_idempotents(args, out):
    F = _field_from_args(args)
    ctx = build_context(F, args.n)
    for i, e in enumerate(ctx.idempotents):
        print(f"e_{i}: {e.format('x')}", file=out)
    if args.sigma:
        coeffs = [F.parse(t) for t in args.sigma.replace(",", " ").split()]
        sigma = Automorphism(ctx, ctx.element(coeffs + [0] * (ctx.n - len(coeffs))))
        perm = idempotent_permutation(sigma)
        print("permutation: " + " ".join(f"{i}->{j}" for i, j in enumerate(perm)), file=out)
        print("cycles: " + "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(perm)), file=out)
        print(f"weight_preserving: {str(sigma.is_weight_preserving()).lower()}", file=out)
    return EXIT_OK


def _print_matrix(label, G, out):
    print(f"{label}:", file=out)
    print(G.format("z"), file=out)


def cmd_construct(args, out):
    spec = load_spec(args.spec)
    if args.emit_spec:
        out.write(emit_spec(spec))
        return EXIT_OK
    F = spec.field
    print(f"field: GF({F.q})", file=out)
    print(f"n: {spec.n}", file=out)
    print(f"sigma: {spec.sigma.image.format('x')}", file=out)
    print("S: " + ",".join(map(str, spec.S)), file=out)
    print(f"b: {spec.b}", file=out)
    print(f"m: {spec.m}", file=out)
    print(f"k: {spec.k}", file=out)
    print(f"c: {spec.c.format('x')}", file=out)
    G = build_code(spec)
    _print_matrix("G", G, out)
    if args.ghat:
        Gh = build_ghat(spec)
        print(f"f: {spec.rs_poly.format('x')}", file=out)
        _print_matrix("Ghat", Gh, out)
        print("Ghat_row_weights: " + ",".join(map(str, Gh.row_weights())), file=out)
    return EXIT_OK


def exact_or_bch_dlist(spec: CodeSpec, upto: int) -> tuple[list[int], list[str]]:
    """``d_0..d_upto`` for ``C_{0,nu}``: exhaustive when small, else the BCH bound."""
    F = spec.field
    d, how = [], []
    for nu in range(upto + 1):
        cc = coeff_code(spec, 0, nu)
        basis, _ = linalg.rref(F, cc.matrix.tolist())
        if F.q ** len(basis) <= EXACT_DLIST_CAP:
            d.append(block_distance_exhaustive(F, basis))
            how.append("exact")
        else:
            d.append(bch_zero_set(spec, 0, nu).bound)
            how.append("bch")
    return d, how


def _dlist(spec: CodeSpec, choice: str):
    upto = spec.m
    if choice == "bch":
        return [bch_zero_set(spec, 0, nu).bound for nu in range(upto + 1)], ["bch"] * (upto + 1)
    if choice == "auto":
        return exact_or_bch_dlist(spec, upto)
    vals = [int(t) for t in choice.replace(",", " ").split()]
    return vals, ["given"] * len(vals)


def _run_checks(spec: CodeSpec, report, G, graph, table, d_list):
    """Return ``(name, ok)`` pairs for structural identities and cross-checks."""
    checks = [
        ("g_factorization", verify_g_factorization(spec.c, spec.sigma, spec.m)),
        ("unit_identity", verify_unit(spec.c, spec.sigma, spec.m)),
        ("right_invertible", report.right_invertible),
        ("minimal", report.minimal),
        ("forney_all_m", all(v == spec.m for v in report.forney_indices)),
    ]
    if report.delta is not None:
        checks.append(("delta_eq_km", report.delta == spec.k * spec.m))
    fd = report.free_distance
    if fd is not None:
        upper = report.bounds.upper() if report.bounds else bounds(spec.n, spec.k, spec.m, spec.field.q).upper()
        checks.append(("distance_le_upper_bounds", all(fd.distance <= v for v in upper.values())))
        if graph.num_states <= 1 << 12:
            checks.append(("distance_search_vs_ucs", graph.free_distance_ucs() == fd.distance))
        if spec.rs_k is not None:
            rs = rs_distance_formula(spec.n, spec.rs_k, spec.m)
            checks.append(("rs_distance_formula", fd.distance == rs.distance))
        if d_list is not None and spec.sigma.is_weight_preserving():
            checks.append(("distance_ge_bch_D", fd.distance >= bch_D_bounds(d_list, spec.m).minimum))
    if report.row_distances and spec.rs_k is not None:
        rs = rs_distance_formula(spec.n, spec.rs_k, spec.m)
        j0 = spec.m + 1
        checks.append(("row_distance_bound", all(
            d is not None and d >= rs.row_bound(j0 + i) for i, d in enumerate(report.row_distances))))
    if table is not None and report.row_distances:
        j0 = spec.m + 1
        ok = True
        for i, d in enumerate(report.row_distances):
            L = j0 + i
            if L < table.shape[0] and d is not None and d < table.shape[1]:
                nz = [w for w in range(table.shape[1]) if table[L, w]]
                ok &= bool(nz) and nz[0] == d
        checks.append(("enumerator_vs_row_distances", ok))
    return checks


def cmd_analyze(args, out):
    spec = load_spec(args.spec)
    G = build_code(spec)
    want_distance = not args.no_distance
    d_list = None
    if args.bounds or args.check:
        d_list, how = _dlist(spec, args.dlist)
    bound_args = None
    if args.bounds:
        bound_args = dict(n=spec.n, k=spec.k, m=spec.m, q=spec.field.q, d_list=d_list,
                          rs=spec.rs_k is not None)
    J = args.rowdist
    if args.check and J is None and spec.rs_k is not None:
        J = spec.m + 6
    report = analyze(G, distance=want_distance, J=J, bound_args=bound_args, max_states=args.max_states)
    lines = report.lines()
    for i, line in enumerate(lines):
        key, _, rest = line.partition(": ")
        if key in DISPLAY_NAMES:
            lines[i] = f"{DISPLAY_NAMES[key]}: {rest}"
    print("\n".join(lines), file=out)
    if d_list is not None and args.bounds:
        print("d_list: " + ",".join(map(str, d_list)), file=out)
        print("d_list_source: " + ",".join(how), file=out)
        D = bch_D_bounds(d_list, spec.m)
        print("bch_D: " + ",".join(map(str, D.D)), file=out)

    graph = None
    table = None
    if args.enum or (args.check and want_distance):
        graph = StateGraph(G, args.max_states)
    if args.enum:
        L_max, W_max = args.enum
        table = graph.weight_enumerator(L_max, W_max)
        print("enumerator:", file=out)
        print("length\tweight\tcount", file=out)
        for L, w, c in enumerator_rows(table):
            print(f"{L}\t{w}\t{c}", file=out)
    if args.check:
        failed = False
        for name, ok in _run_checks(spec, report, G, graph, table, d_list):
            print(f"check_{name}: {'pass' if ok else 'FAIL'}", file=out)
            failed |= not ok
        if failed:
            return EXIT_INVALID
    return EXIT_OK


def cmd_bounds(args, out):
    d_list = None
    if args.dlist:
        d_list = [int(t) for t in args.dlist.replace(",", " ").split()]
    b = bounds(args.n, args.k, args.m, args.q, d_list=d_list)
    for name, val in b.values.items():
        print(f"{DISPLAY_NAMES.get(name, name)}: {val}", file=out)
    for name, why in b.inapplicable.items():
        print(f"{DISPLAY_NAMES.get(name, name)}: n/a ({why})", file=out)
    if d_list is not None:
        print("bch_D: " + ",".join(map(str, bch_D_bounds(d_list, args.m).D)), file=out)
    if "rs_formula" in b.values:
        rs = rs_distance_formula(args.n, args.k, args.m)
        print(f"rs_row_slope: {rs.slope}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dccodes",
        description="Doubly-cyclic convolutional codes: construction and distance analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor x^n - 1 into cyclotomic factors")
    _add_field_args(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("idempotents", help="primitive idempotents and their sigma-permutation")
    _add_field_args(p)
    p.add_argument("--sigma", help="coefficients of sigma(x), ascending, as field tokens")
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("construct", help="build the generator matrix of a spec")
    p.add_argument("spec", help="spec file path or preset name")
    p.add_argument("--ghat", action="store_true", help="also print the RS-polynomial matrix")
    p.add_argument("--emit-spec", action="store_true", help="print the normalised spec text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="structure, distances and bounds of a spec")
    p.add_argument("spec", help="spec file path or preset name")
    p.add_argument("--rowdist", type=int, metavar="J", help="extended row distances up to length J")
    p.add_argument("--enum", type=int, nargs=2, metavar=("LMAX", "WMAX"),
                   help="atomic weight enumerator up to length LMAX and weight WMAX")
    p.add_argument("--bounds", action="store_true", help="print the bound table")
    p.add_argument("--dlist", default="auto",
                   help="'auto' (exhaustive when small, else BCH), 'bch', or explicit d_0,d_1,...")
    p.add_argument("--check", action="store_true", help="run identity and cross-checks")
    p.add_argument("--max-states", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("--no-distance", action="store_true", help="skip the free-distance search")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="bound values for parameters (n, k, m, q)")
    for name in ("n", "k", "m", "q"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--dlist", help="d_0,d_1,... for the D(t) bound")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (StateSpaceTooLarge, TooLarge) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DCCError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: sigma^{witness[0]}(S) contains idempotent {witness[1]}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
