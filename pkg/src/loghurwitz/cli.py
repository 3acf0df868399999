"""Command-line interface wiring the algebra, cover, graph and loci modules.

Exit codes: 0 success, 2 expression/argument parse error, 3 field
designator error, 4 graph schema error, 5 domain error (an operation
rejected mathematically valid-looking input).  JSON output is emitted
with sorted keys so identical inputs yield byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ascover, loci, strata
from .cartier import (
    BivariantForm,
    Differential,
    cartier as apply_cartier,
    is_exact,
    is_quasi_exact,
    twisted_cartier,
)
from .expr import ExprError, parse_element, parse_expression
from .ffield import FieldSpec, parse_field
from .mobius import Mobius
from .ratfunc import INFINITY, Place, RationalFunction
from .strata import GraphError, HurwitzData, LevelGraph

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FIELD = 3
EXIT_SCHEMA = 4
EXIT_DOMAIN = 5

FIELD_ENV = "LOGHURWITZ_FIELD"


class CliError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


# ---------------------------------------------------------------------------
# argument helpers


def _get_field(args) -> FieldSpec:
    designator = getattr(args, "field", None) or os.environ.get(FIELD_ENV)
    if not designator:
        raise CliError(EXIT_FIELD, "field", "no field given (use --field or " + FIELD_ENV + ")")
    try:
        return parse_field(designator)
    except ValueError as exc:
        raise CliError(EXIT_FIELD, "field", str(exc)) from exc


def _get_bindings(args, spec):
    bindings = {}
    for item in getattr(args, "bind", None) or []:
        if "=" not in item:
            raise CliError(EXIT_PARSE, "parse", f"binding {item!r} is not name=value")
        name, _, value = item.partition("=")
        try:
            bindings[name.strip()] = parse_element(value, spec)
        except ExprError as exc:
            raise CliError(EXIT_PARSE, "parse", str(exc)) from exc
    return bindings


def _get_expr(args, spec) -> RationalFunction:
    try:
        return parse_expression(args.expr, spec, bindings=_get_bindings(args, spec))
    except ExprError as exc:
        raise CliError(EXIT_PARSE, "parse", str(exc)) from exc


def _read_graph(args) -> LevelGraph:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(EXIT_SCHEMA, "schema", str(exc)) from exc
    try:
        return LevelGraph.from_json(text)
    except GraphError as exc:
        raise CliError(EXIT_SCHEMA, "schema", str(exc)) from exc


def _graph_datum(G: LevelGraph, args) -> HurwitzData:
    """The discrete datum, from flags when given, else read off the graph."""
    lam = xi = None
    if getattr(args, "lam", None):
        lam = _int_list(args.lam)
    if getattr(args, "xi", None):
        xi = _int_list(args.xi)
    if getattr(args, "datum", None):
        try:
            p, h, g, N = _int_list(args.datum)
        except ValueError:
            raise CliError(EXIT_PARSE, "parse", "--datum must be p,h,g,N")
        if lam is None:
            raise CliError(EXIT_PARSE, "parse", "--datum requires --lambda")
    else:
        p = G.p
        h = G.total_source_genus()
        g = G.total_target_genus()
        N = len(G.marking_groups())
        if lam is None:
            lam = [m.lam for m in G.markings]
            xi = [m.xi for m in G.markings]
    try:
        return HurwitzData(p, h, g, N, lam, xi, getattr(args, "regime", None) or G.regime)
    except GraphError as exc:
        raise CliError(EXIT_PARSE, "parse", str(exc)) from exc


def _int_list(text):
    try:
        return [int(v) for v in str(text).split(",") if v != ""]
    except ValueError as exc:
        raise CliError(EXIT_PARSE, "parse", f"expected comma-separated integers, got {text!r}") from exc


def _parse_places(text, spec):
    out = []
    for token in str(text).split(","):
        token = token.strip()
        if token in ("inf", "infinity", "oo"):
            out.append(INFINITY)
        else:
            try:
                out.append(Place.finite(parse_element(token, spec)))
            except ExprError as exc:
                raise CliError(EXIT_PARSE, "parse", str(exc)) from exc
    return out


# ---------------------------------------------------------------------------
# output


def emit(args, payload, dot=None):
    fmt = getattr(args, "format", "json") or "json"
    if fmt == "dot":
        if dot is None:
            raise CliError(EXIT_PARSE, "parse", "dot output is only available for graphs")
        sys.stdout.write(dot)
        return
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        return
    for key in sorted(payload):
        sys.stdout.write(f"{key}: {_text_value(payload[key])}\n")


def _text_value(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(v[k])}" for k in sorted(v)) + "}"
    return str(v)


# ---------------------------------------------------------------------------
# subcommands


def cmd_cartier(args):
    spec = _get_field(args)
    f = _get_expr(args, spec)
    result = apply_cartier(Differential(f))
    emit(args, {"field": f"{spec.p}^{spec.k}", "input": str(f), "result": str(result.f)})
    return EXIT_OK


def _classify(tc):
    if tc.is_zero():
        return "exact"
    if tc.is_constant():
        return "quasi-exact"
    return "neither"


def cmd_tc(args):
    spec = _get_field(args)
    f = _get_expr(args, spec)
    tc = twisted_cartier(BivariantForm(f))
    emit(args, {"result": str(tc), "classification": _classify(tc)})
    return EXIT_OK


def cmd_exact(args):
    spec = _get_field(args)
    f = _get_expr(args, spec)
    emit(args, {"exact": is_exact(BivariantForm(f))})
    return EXIT_OK


def cmd_quasi_exact(args):
    spec = _get_field(args)
    f = _get_expr(args, spec)
    flag, witness = is_quasi_exact(BivariantForm(f))
    payload = {"quasi_exact": flag}
    if witness is not None:
        payload["witness"] = str(witness)
        payload["witness_index"] = witness.idx
    emit(args, payload)
    return EXIT_OK


def cmd_ascover(args):
    spec = _get_field(args)
    g = _get_expr(args, spec)
    try:
        cover = ascover.ArtinSchreierCover.from_equation(spec, g)
        tau = cover.trace_form()
        dim = cover.moduli_dimension()
    except (ascover.CoverError, ValueError) as exc:
        raise CliError(EXIT_DOMAIN, "domain", str(exc)) from exc
    emit(
        args,
        {
            "field": f"{spec.p}^{spec.k}",
            "normal_form": str(cover.normal_form()),
            "branch_points": [str(b) for b in cover.branch_points],
            "conductors": list(cover.conductors),
            "genus": cover.genus,
            "moduli_dimension": dim,
            "trace_coefficient": str(tau.coefficient),
            "trace_orders": {
                str(b): dict(tau.orders[b]) for b in cover.branch_points
            },
        },
    )
    return EXIT_OK


def _ledger_payload(L: strata.StratumLedger):
    return {
        "contributions": [[label, val] for label, val in L.contributions],
        "mod_as": L.mod_as,
        "mod_ex": L.mod_ex,
        "mod_quex": L.mod_quex,
        "total": L.total,
        "closed_form": L.closed_form,
        "e_d_hor": L.e_d_hor,
        "v_c_ex": L.v_c_ex,
        "monoid_rank": L.monoid_rank,
        "monoid_free": L.monoid_free,
    }


def cmd_strata(args):
    if args.strata_cmd == "enumerate":
        if not getattr(args, "datum", None) or not getattr(args, "lam", None):
            raise CliError(EXIT_PARSE, "parse", "enumerate requires --datum p,h,g,N and --lambda")
        p, h, g, N = _int_list(args.datum)
        lam = _int_list(args.lam)
        xi = _int_list(args.xi) if getattr(args, "xi", None) else None
        try:
            A = HurwitzData(p, h, g, N, lam, xi, args.regime or "mixed")
            comps = strata.enumerate_components(A, args.max_vertices)
        except GraphError as exc:
            raise CliError(EXIT_DOMAIN, "domain", str(exc)) from exc
        emit(
            args,
            {"count": len(comps), "components": [G.to_json_obj() for G in comps]},
            dot="".join(G.to_dot() for G in comps),
        )
        return EXIT_OK

    G = _read_graph(args)
    A = _graph_datum(G, args)
    if args.strata_cmd == "validate":
        report = strata.validate(G, A)
        emit(args, {"ok": report.ok, "errors": report.errors}, dot=G.to_dot())
        return EXIT_OK if report.ok else EXIT_DOMAIN
    if args.strata_cmd == "dim":
        try:
            L = strata.stratum_dimension(G, A)
        except GraphError as exc:
            raise CliError(EXIT_DOMAIN, "domain", str(exc)) from exc
        emit(args, _ledger_payload(L), dot=G.to_dot())
        return EXIT_OK
    if args.strata_cmd == "monoid":
        rank, free = strata.monoid_rank(G, A)
        emit(args, {"monoid_rank": rank, "monoid_free": free}, dot=G.to_dot())
        return EXIT_OK
    raise CliError(EXIT_PARSE, "parse", f"unknown strata subcommand {args.strata_cmd!r}")


def cmd_loci(args):
    spec = _get_field(args)
    try:
        pattern = loci.ZeroPolePattern(spec.p, _int_list(args.pattern))
    except ValueError as exc:
        raise CliError(EXIT_DOMAIN, "domain", str(exc)) from exc
    kind = args.kind.replace("-", "_")
    if kind not in (loci.EXACT, loci.QUASI_EXACT):
        raise CliError(EXIT_PARSE, "parse", f"unknown kind {args.kind!r}")
    base = {"field": f"{spec.p}^{spec.k}", "pattern": list(pattern.m), "kind": args.kind}

    if args.loci_cmd == "formula":
        emit(args, dict(base, dimension=loci.dimension_formula(pattern, kind)))
        return EXIT_OK
    if args.loci_cmd == "search":
        pinned = _parse_places(args.pin, spec) if args.pin else None
        try:
            configs = loci.locus_search(pattern, kind, spec, pinned)
        except ValueError as exc:
            raise CliError(EXIT_DOMAIN, "domain", str(exc)) from exc
        emit(
            args,
            dict(base, count=len(configs), configs=[[str(q) for q in c.points] for c in configs]),
        )
        return EXIT_OK
    if args.loci_cmd == "tangent":
        if not args.config:
            raise CliError(EXIT_PARSE, "parse", "tangent requires --config")
        points = _parse_places(args.config, spec)
        try:
            config = loci.MarkingConfig(spec, points)
            report = loci.tangent_report(config, pattern, kind)
        except ValueError as exc:
            raise CliError(EXIT_DOMAIN, "domain", str(exc)) from exc
        emit(args, dict(base, config=[str(q) for q in points], **report))
        return EXIT_OK
    raise CliError(EXIT_PARSE, "parse", f"unknown loci subcommand {args.loci_cmd!r}")


# ---------------------------------------------------------------------------
# worked example


def example_graphs():
    """The three degenerations of the genus-1, four-marking family at p=2."""
    SV, SE = strata.SourceVertex, strata.SourceEdge
    TV, TE, M = strata.TargetVertex, strata.TargetEdge, strata.Marking
    two_level = LevelGraph(
        2, "mixed",
        [SV("v0", 1, 0, strata.AS, "d0"), SV("v1", 0, -1, strata.FROB, "d1")],
        [SE("e0", "v0", "v1", 3, "f0")],
        [TV("d0", 0), TV("d1", -1)],
        [TE("f0", "d0", "d1")],
        [M("v1", 2, 0, f"q{i}") for i in range(4)],
    )
    three_level = LevelGraph(
        2, "mixed",
        [SV("v0", 1, 0, strata.AS, "d0"), SV("v1", 0, -1, strata.FROB, "d1"),
         SV("v2", 0, -2, strata.FROB, "d2"), SV("v3", 0, -2, strata.FROB, "d3")],
        [SE("e0", "v0", "v1", 3, "f0"), SE("e1", "v1", "v2", 1, "f1"),
         SE("e2", "v1", "v3", 1, "f2")],
        [TV("d0", 0), TV("d1", -1), TV("d2", -2), TV("d3", -2)],
        [TE("f0", "d0", "d1"), TE("f1", "d1", "d2"), TE("f2", "d1", "d3")],
        [M("v2", 2, 0, "q0"), M("v2", 2, 0, "q1"), M("v3", 2, 0, "q2"), M("v3", 2, 0, "q3")],
    )
    horizontal = LevelGraph(
        2, "mixed",
        [SV("v0", 0, 0, strata.AS, "d0"), SV("v1", 0, 0, strata.AS, "d1"),
         SV("v2", 0, -1, strata.FROB, "d2"), SV("v3", 0, -1, strata.FROB, "d3")],
        [SE("h0", "v0", "v1", 0, "fh"), SE("h1", "v0", "v1", 0, "fh"),
         SE("e0", "v0", "v2", 1, "f0"), SE("e1", "v1", "v3", 1, "f1")],
        [TV("d0", 0), TV("d1", 0), TV("d2", -1), TV("d3", -1)],
        [TE("fh", "d0", "d1"), TE("f0", "d0", "d2"), TE("f1", "d1", "d3")],
        [M("v2", 2, 0, "q0"), M("v2", 2, 0, "q1"), M("v3", 2, 0, "q2"), M("v3", 2, 0, "q3")],
    )
    return two_level, three_level, horizontal


def run_example6(spec: FieldSpec = None, perturb: bool = False):
    """The worked genus-1 family at p=2: seven checks (a)-(g).

    Returns a list of {"check", "description", "ok"} dicts; perturb=True
    breaks a slope in check (f) as a negative control.
    """
    from .ffield import field as make_field

    if spec is None:
        spec = make_field(2, 4)
    if spec.p != 2 or spec.k < 2:
        raise CliError(EXIT_DOMAIN, "domain", "the worked example needs a proper extension of GF(2)")
    report = []

    def record(check, description, ok):
        report.append({"check": check, "description": description, "ok": bool(ok)})

    y = RationalFunction.variable(spec)
    one = RationalFunction.constant(spec, 1)

    # (a) tc of the genus-1 family form, symbolically in lambda and mu
    # (b) quasi-exactness exactly on the mu = sqrt(lambda) locus
    ok_a = True
    ok_b = True
    quasi_seen = False
    for lam in spec.elements():
        for mu in spec.elements():
            psi = BivariantForm(y * (y - 1) * (y - lam) / (y - mu) ** 2)
            tc = twisted_cartier(psi)
            expected = (y - lam.pth_root()) / (y - mu)
            if tc != expected:
                ok_a = False
            flag, _ = is_quasi_exact(psi)
            if flag != (mu == lam.pth_root() and not tc.is_zero() and tc.is_constant()):
                ok_b = False
            if flag:
                quasi_seen = True
    record("a", "tc(y(y-1)(y-lam)/(y-mu)^2 dy/dx) = (y-sqrt(lam))/(y-mu) for all lam, mu", ok_a)
    record("b", "quasi-exact exactly when mu = sqrt(lam)", ok_b and quasi_seen)

    # (c) y^2 + y = x^3: conductor 4, genus 1, trace log order 4
    x = RationalFunction.variable(spec)
    cover = ascover.ArtinSchreierCover.from_equation(spec, x**3)
    tau = cover.trace_form()
    ok_c = (
        cover.conductors == (4,)
        and cover.genus == 1
        and tau.log_order(cover.branch_points[0]) == 4
    )
    record("c", "y^2+y=x^3 has conductor 4, genus 1, trace log order 4", ok_c)

    # (d) y^2 - y = 1/x + 1/(x-a): genus 1 with a one-dimensional family
    a = spec.element(spec.generator_index)
    cover_d = ascover.ArtinSchreierCover.from_equation(spec, 1 / x + 1 / (x - a))
    ok_d = cover_d.genus == 1 and cover_d.moduli_dimension() == 1
    record("d", "y^2-y=1/x+1/(x-a) has genus 1 and moduli dimension 1", ok_d)

    # (e) exactness of y^2 (y-1)^2 dy/dx
    ok_e = is_exact(BivariantForm(y**2 * (y - 1) ** 2))
    record("e", "y^2(y-1)^2 dy/dx is exact", ok_e)

    # (f) ledger totals 1, 0, 0 and monoid ranks 1, 2, 2
    A = HurwitzData(2, 1, 0, 4, (2, 2, 2, 2))
    graphs = list(example_graphs())
    if perturb:
        G = graphs[0]
        e = G.source_edges[0]
        graphs[0] = LevelGraph(
            G.p, G.regime, G.source_vertices,
            [strata.SourceEdge(e.id, e.v1, e.v2, e.slope + 1, e.image)],
            G.target_vertices, G.target_edges, G.markings,
        )
    totals = []
    ranks = []
    ok_f = True
    for G in graphs:
        try:
            L = strata.stratum_dimension(G, A)
        except GraphError:
            ok_f = False
            continue
        totals.append(L.total)
        ranks.append(L.monoid_rank)
    ok_f = ok_f and totals == [1, 0, 0] and ranks == [1, 2, 2]
    record("f", "stratum dimensions 1, 0, 0 and monoid ranks 1, 2, 2", ok_f)

    # (g) four irreducible components
    comps = strata.enumerate_components(A, max_vertices=6)
    record("g", "4 irreducible components for (h,g,N,Lambda)=(1,0,4,(2,2,2,2))", len(comps) == 4)
    return report


def cmd_example6(args):
    spec = _get_field(args) if (args.field or os.environ.get(FIELD_ENV)) else None
    report = run_example6(spec, perturb=args.perturb)
    ok = all(item["ok"] for item in report)
    emit(args, {"ok": ok, "checks": report})
    if not ok:
        failing = ", ".join(item["check"] for item in report if not item["ok"])
        print(f"failing checks: {failing}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser():
    parser = argparse.ArgumentParser(
        prog="loghurwitz",
        description="Cartier operators, Artin-Schreier covers, level graphs and marked loci over GF(p^k)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, expr=True):
        p.add_argument("--field", help="field designator p^k (default from $" + FIELD_ENV + ")")
        p.add_argument("--format", choices=["json", "text", "dot"], default="json")
        if expr:
            p.add_argument("--expr", required=True, help="rational expression in y (or x)")
            p.add_argument("--bind", action="append", help="name=value element binding", default=[])

    for name, fn in [
        ("cartier", cmd_cartier),
        ("tc", cmd_tc),
        ("exact", cmd_exact),
        ("quasi-exact", cmd_quasi_exact),
        ("ascover", cmd_ascover),
    ]:
        p = sub.add_parser(name)
        add_common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("strata")
    p.add_argument("strata_cmd", choices=["validate", "dim", "monoid", "enumerate"])
    p.add_argument("--file", default="-", help="graph JSON file, - for stdin")
    p.add_argument("--datum", help="p,h,g,N")
    p.add_argument("--lambda", dest="lam", help="comma-separated lambda_i")
    p.add_argument("--xi", help="comma-separated xi_i")
    p.add_argument("--regime", choices=["mixed", "equicharacteristic"])
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--format", choices=["json", "text", "dot"], default="json")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("loci")
    p.add_argument("loci_cmd", choices=["search", "tangent", "formula"])
    p.add_argument("--field")
    p.add_argument("--pattern", required=True, help="comma-separated m_i")
    p.add_argument("--kind", required=True, help="exact or quasi-exact")
    p.add_argument("--pin", help="comma-separated pinned places, e.g. 0,1,inf")
    p.add_argument("--config", help="comma-separated marking places for tangent")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_loci)

    p = sub.add_parser("example6")
    p.add_argument("--field")
    p.add_argument("--perturb", action="store_true", help="negative control: break a slope")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_example6)
    return parser


def dispatch(args) -> int:
    try:
        return args.func(args)
    except CliError as exc:
        sys.stdout.write(
            json.dumps(
                {"error": exc.kind, "message": str(exc)}, sort_keys=True, separators=(",", ":")
            )
            + "\n"
        )
        return exc.code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
