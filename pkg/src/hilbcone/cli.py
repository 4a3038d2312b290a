"""Command line front end.

Every subcommand is a thin shim over the library: parse flags, call one
function, serialize the result.  Exit codes: 0 for success (math check
failures are reported in the output, not the exit code), 1 when the
reproduction run has a failing case, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import chambers as ch
from . import hilbpic as hp
from . import nslattice as ns
from . import reproduce as rp
from . import severi as sv


class CLIError(Exception):
    pass


def parse_surface(spec: str) -> ns.SurfaceLattice:
    parts = spec.split(":")
    try:
        if parts == ["p2"]:
            return ns.make_p2()
        if parts[0] == "fr" and len(parts) == 2:
            return ns.make_hirzebruch(int(parts[1]))
        if parts[0] == "k3" and len(parts) == 2:
            return ns.make_k3(int(parts[1]))
        if parts[0] == "blowup" and len(parts) >= 3:
            base = parse_surface(":".join(parts[1:-1]))
            return ns.blow_up(base, int(parts[-1]))
    except (ValueError, CLIError) as exc:
        raise CLIError(f"bad surface spec {spec!r}: {exc}") from exc
    raise CLIError(
        f"bad surface spec {spec!r}; expected p2, fr:<r>, k3:<deg> or blowup:<base>:<k>")


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?([A-Za-z][A-Za-z0-9]*)")


def parse_terms(expr: str) -> list[tuple[Fraction, str]]:
    """Sums of <rational><label>, whitespace-insensitive, e.g. 25H-7/2B."""
    s = "".join(expr.split())
    if not s:
        raise CLIError("empty class expression")
    pos, out = 0, []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None:
            raise CLIError(f"cannot parse {expr!r} near {s[pos:]!r}")
        sign, num, label = m.groups()
        coeff = Fraction(num) if num else Fraction(1)
        out.append((-coeff if sign == "-" else coeff, label))
        pos = m.end()
    return out


def _surface_class(S: ns.SurfaceLattice, terms) -> ns.SurfaceClass:
    total = ns.make_class(S, [0] * S.rank)
    for coeff, label in terms:
        try:
            total = total + coeff * ns.resolve_label(S, label)
        except (KeyError, ValueError) as exc:
            raise CLIError(f"no class named {label!r} on this surface") from exc
    return total


_BASIS_PRIORITY = ("H", "E", "F", "L", "B")


def _infer_basis(term_lists) -> list[str]:
    labels = {label for terms in term_lists for _, label in terms}
    unknown = labels - set(_BASIS_PRIORITY)
    if unknown:
        raise CLIError(
            f"unknown labels {sorted(unknown)}; bare cone expressions use H,E,F,L,B")
    return [lab for lab in _BASIS_PRIORITY if lab in labels]


def _vector(terms, basis) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * len(basis)
    for coeff, label in terms:
        v[basis.index(label)] += coeff
    return tuple(v)


def _fixture_label_map(ws: ch.WallSet) -> dict[str, tuple[Fraction, ...]]:
    dim = len(ws.basis_labels)
    out = {}
    for i, lab in enumerate(ws.basis_labels):
        out[lab] = tuple(Fraction(1 if j == i else 0) for j in range(dim))
    if (ws.surface_kind == "hirzebruch" and "H" not in out
            and "E" in out and "F" in out and ws.surface_r is not None):
        out["H"] = tuple(e + ws.surface_r * f for e, f in zip(out["E"], out["F"]))
    return out


def _fixture_vector(expr: str, label_map) -> tuple[Fraction, ...]:
    dim = len(next(iter(label_map.values())))
    v = [Fraction(0)] * dim
    for coeff, label in parse_terms(expr):
        if label not in label_map:
            raise CLIError(f"no class named {label!r} in this fixture")
        v = [a + coeff * b for a, b in zip(v, label_map[label])]
    return tuple(v)


def _rat(x) -> str:
    return ns.format_rational(Fraction(x))


def _emit(args, payload: dict, table_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in table_lines:
            print(line)


def _result_table(res: sv.SeveriResult) -> list[str]:
    lines = ["class: " + hp.format_hilb(res.cls)]
    if res.normalized_ray is not None:
        lines.append("normalized_ray: " + hp.format_hilb(res.normalized_ray))
    for name, val in res.checks.items():
        if isinstance(val, dict):
            body = " ".join(
                f"{k}={_rat(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else v}"
                for k, v in val.items())
            lines.append(f"{name}: {body}")
        else:
            lines.append(f"{name}: {val}")
    lines.append("flags: " + (", ".join(res.flags) if res.flags else "none"))
    return lines


def cmd_class(args) -> int:
    S = parse_surface(args.surface)
    terms = parse_terms(args.curve)
    if any(lab == "B" for _, lab in terms):
        raise CLIError("curve classes live on the surface; B cannot appear")
    C = _surface_class(S, terms)
    if any(c.denominator != 1 for c in C.coeffs):
        raise CLIError("curve classes must be integral")
    if args.subcollection is not None and S.kind != "p2":
        raise CLIError("--subcollection applies to the plane only")
    if args.codim and S.kind != "p2":
        raise CLIError("--codim applies to the plane only")
    if S.kind == "p2":
        d = int(C.coeffs[0])
        if args.subcollection is not None:
            res = sv.severi_class_subcollection(d, args.n, args.subcollection)
        else:
            res = sv.severi_class_p2(d, args.n, args.codim)
    elif S.kind == "hirzebruch":
        a, b = (int(c) for c in C.coeffs)
        res = sv.severi_class_hirzebruch(S.r, a, b, args.n)
    else:
        res = sv.severi_class_general(S, C, args.n, h0=args.h0)
    _emit(args, sv.result_to_json(res), _result_table(res))
    return 0


def cmd_enumerate(args) -> int:
    if args.k3 is not None:
        if args.nmax is None:
            raise CLIError("--k3 needs --nmax")
        enum = sv.enumerate_k3(args.k3, args.nmax)
        payload = {
            "deg": enum.deg,
            "n_max": enum.n_max,
            "solutions": [
                {"d": s.d, "n": s.n, "genus_ok": s.genus_ok} for s in enum.solutions
            ],
            "flags": list(enum.flags),
        }
        lines = ["d n genus_ok"]
        lines += [f"{s.d} {s.n} {s.genus_ok}" for s in enum.solutions]
        lines.append("flags: " + (", ".join(enum.flags) if enum.flags else "none"))
        _emit(args, payload, lines)
        return 0
    if args.surface is None:
        raise CLIError("need --surface or --k3")
    if args.n is None:
        raise CLIError("need --n")
    S = parse_surface(args.surface)
    if S.kind == "p2":
        cands = sv.enumerate_p2(args.n)
        payload = {"candidates": [
            {"d": c.d, "n": c.n, "treger_birational": c.treger_birational,
             "treger_exception": c.treger_exception} for c in cands]}
        lines = ["d n treger_birational treger_exception"]
        lines += [f"{c.d} {c.n} {c.treger_birational} {c.treger_exception}"
                  for c in cands]
        _emit(args, payload, lines)
        return 0
    if S.kind == "hirzebruch":
        filters = tuple(f for f in (args.filters or "").split(",") if f)
        cands = sv.enumerate_hirzebruch(S.r, args.n, filters)
        payload = {"candidates": [
            {"a": c.a, "b": c.b, "verdicts": c.verdicts, "passes": c.passes}
            for c in cands]}
        header = "a b " + " ".join(sv.HIRZEBRUCH_FILTERS)
        lines = [header]
        lines += [f"{c.a} {c.b} " + " ".join(
            str(c.verdicts[f]) for f in sv.HIRZEBRUCH_FILTERS) for c in cands]
        _emit(args, payload, lines)
        return 0
    raise CLIError("enumeration covers p2, fr:<r> and --k3 surfaces")


def _cone_json(C: ch.Cone) -> dict:
    return {
        "dim": C.dim,
        "rays": [list(r) for r in C.rays],
        "lineality": [list(l) for l in C.lineality],
        "facets": [list(f) for f in C.facets],
        "equations": [list(e) for e in C.equations],
    }


def cmd_cone(args) -> int:
    if args.action == "contains":
        if not args.rays or not args.point:
            raise CLIError("contains needs --rays and --point")
        ray_terms = [parse_terms(e) for e in args.rays.split(",")]
        point_terms = parse_terms(args.point)
        basis = _infer_basis(ray_terms + [point_terms])
        C = ch.cone_from_generators([_vector(t, basis) for t in ray_terms])
        p = _vector(point_terms, basis)
        payload = {
            "basis": basis,
            "contains": ch.contains(C, p),
            "interior": ch.contains_interior(C, p),
        }
        _emit(args, payload, [f"contains: {payload['contains']}",
                              f"interior: {payload['interior']}"])
        return 0
    if args.action == "restrict":
        if not args.rays or not args.subspace:
            raise CLIError("restrict needs --rays and --subspace")
        ray_terms = [parse_terms(e) for e in args.rays.split(",")]
        sub_exprs = args.subspace.split(",")
        sub_terms = [parse_terms(e) for e in sub_exprs]
        basis = _infer_basis(ray_terms + sub_terms)
        C = ch.cone_from_generators([_vector(t, basis) for t in ray_terms])
        D = ch.intersect_subspace(C, [_vector(t, basis) for t in sub_terms])
        payload = {"ambient_basis": basis, "subspace": sub_exprs} | _cone_json(D)
        _emit(args, payload, [json.dumps(payload)])
        return 0
    if not args.fixture:
        raise CLIError(f"{args.action} needs --fixture")
    fx = ch.load_fixture(args.fixture)
    if args.action == "walls-restrict":
        if not args.subspace:
            raise CLIError("walls-restrict needs --subspace")
        label_map = _fixture_label_map(fx.wallset)
        sub_exprs = args.subspace.split(",")
        vecs = [_fixture_vector(e, label_map) for e in sub_exprs]
        restricted, dropped = ch.restrict_walls(fx.wallset, vecs, labels=sub_exprs)
        payload = {
            "wallset": ch.wallset_to_json(restricted),
            "dropped": [w.label for w in dropped],
        }
        _emit(args, payload, [json.dumps(payload)])
        return 0
    if args.action == "transport":
        down = ch.transport_wallset_down(fx.wallset)
        payload = ch.wallset_to_json(down)
        _emit(args, payload, [json.dumps(payload)])
        return 0
    raise CLIError(f"unknown cone action {args.action!r}")


def cmd_plot(args) -> int:
    fx = ch.load_fixture(args.fixture)
    svg = ch.cross_section_svg(fx.wallset, fx.marks)
    if args.out:
        with open(args.out, "w") as f:
            f.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_reproduce(args) -> int:
    results = rp.run(args.filter)
    if args.json:
        print(json.dumps([
            {"id": r.case_id, "status": r.status, "detail": r.detail}
            for r in results], indent=2))
    else:
        for r in results:
            print(f"{r.status:4} {r.case_id}: {r.detail}")
        counts = {"PASS": 0, "WARN": 0, "FAIL": 0}
        for r in results:
            counts[r.status] += 1
        print(f"{counts['PASS']} passed, {counts['WARN']} warned, "
              f"{counts['FAIL']} failed")
    return 1 if any(r.status == "FAIL" for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hilbcone",
        description="Divisor classes and cone walls on Hilbert schemes of points")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("class", help="Severi divisor class for a curve class")
    p.add_argument("--surface", required=True,
                   help="p2 | fr:<r> | k3:<deg> | blowup:<base>:<k>")
    p.add_argument("--curve", required=True, help="class expression, e.g. 7H or 7E+7F")
    p.add_argument("--n", type=int, required=True, help="number of nodes")
    p.add_argument("--codim", type=int, default=0,
                   help="codimension of the linear subsystem (plane only)")
    p.add_argument("--subcollection", type=int, default=None, metavar="M",
                   help="total points M with only n of them nodes (plane only)")
    p.add_argument("--h0", type=int, default=None,
                   help="section count when the surface cannot supply one")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("enumerate", help="solve the dimension relation")
    p.add_argument("--surface", help="p2 | fr:<r>")
    p.add_argument("--n", type=int, help="number of nodes")
    p.add_argument("--filters", help="comma list from: " + ",".join(sv.HIRZEBRUCH_FILTERS))
    p.add_argument("--k3", type=int, choices=[4, 6, 8], help="K3 polarization degree")
    p.add_argument("--nmax", type=int, help="largest n for the K3 search")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cone", help="cone and wall-set operations")
    p.add_argument("action", choices=["restrict", "contains", "walls-restrict",
                                      "transport"])
    p.add_argument("--rays", help="comma list of class expressions")
    p.add_argument("--point", help="class expression to test")
    p.add_argument("--subspace", help="comma list of class expressions")
    p.add_argument("--fixture", help="fixture name or path")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("plot", help="render a fixture cross-section to SVG")
    p.add_argument("--fixture", required=True)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("reproduce", help="run every recorded worked example")
    p.add_argument("--json", action="store_true")
    p.add_argument("--filter", help="substring filter on case ids")
    p.set_defaults(func=cmd_reproduce)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"hilbcone: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"hilbcone: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
