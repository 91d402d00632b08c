"""Command line front end: ``classify``, ``kummer`` and ``verify``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import oracle
from .algebra import (
    DEFAULT_PRIME,
    GF,
    QQ,
    DivisionNotExact,
    HomPoly,
    NotHomogeneous,
    ParseError,
    ZeroPolynomial,
    gradient,
    parse_poly,
)
from .families import FAMILIES, make_family, golden_syzygies, twisted_syzygy_table
from .freeness import CurveClass, NonReducedInput, RoutesDisagree, analyze
from .gb import buchberger, hilbert_function, minimal_generator_degrees, syzygy_generators
from .kummer import HypothesisViolated, NotLocallyIrreducible, predict_pullback

SCHEMA_VERSION = 1
SLOW_DEGREE = 30

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_NON_REDUCED = 2
EXIT_INPUT = 3
EXIT_DISAGREE = 4
EXIT_HYPOTHESIS = 5
EXIT_TOO_SLOW = 6


class _Refused(Exception):
    pass


def _field(args):
    if args.field == "q":
        return QQ
    return GF(args.prime)


def _family_degree(name: str, k: int) -> int:
    return {"c5k": 5 * k, "c4k": 4 * k, "c2k": 2 * k}.get(name, 49 if name.startswith("c49") else 5)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def _jsonable(value):
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ValueError(f"non-integer value {value} in document")
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, CurveClass):
        return value.value
    return value


# ---------------------------------------------------------------------------
# classify


def report_document(report, poly_text: str, field, family: Optional[tuple[str, int]] = None) -> dict:
    inp = {"poly": poly_text, "field": "fp" if field.p else "q"}
    if field.p:
        inp["prime"] = field.p
    if family:
        inp["family"], inp["k"] = family
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": inp,
        "degree": report.degree,
        "mdr": report.mdr,
        "tau": report.tau,
        "class": report.curve_class.value,
        "exponents": list(report.exponents),
        "n_profile": [[m, v] for m, v in report.n_profile.dims],
        "rigid": report.rigid,
        "rigid_by_definition": report.rigid_by_definition,
    }
    if report.relation_multidegree is not None:
        doc["relation_multidegree"] = list(report.relation_multidegree)
    if report.b is not None:
        doc["b"] = report.b
    doc["timings"] = {k: report.timings.get(k, 0) for k in ("route_a_ms", "route_b_ms", "route_c_ms")}
    return doc


def _print_report(doc: dict, report) -> None:
    inp = doc["input"]
    where = f"F_{inp['prime']}" if inp["field"] == "fp" else "Q"
    name = f"{inp['family']} (k={inp['k']})" if "family" in inp else inp["poly"]
    print(f"curve      {name} over {where}")
    print(f"degree     {doc['degree']}")
    print(f"mdr        {doc['mdr']}")
    print(f"tau        {doc['tau']}")
    print(f"class      {doc['class']}")
    print(f"exponents  {', '.join(map(str, doc['exponents']))}")
    prof = ", ".join(f"{m}:{v}" for m, v in doc["n_profile"]) or "zero"
    print(f"N(f) dims  {prof}")
    print(f"rigid      {doc['rigid']}")
    if "relation_multidegree" in doc:
        print(f"relation   multidegree {tuple(doc['relation_multidegree'])}, b = {doc['b']}")
    for v in report.generators:
        print(f"  generator deg {v.degree}: {v}")
    t = doc["timings"]
    print(f"timings    A {t['route_a_ms']} ms, B {t['route_b_ms']} ms, C {t['route_c_ms']} ms")


def cmd_classify(args) -> int:
    field = _field(args)
    family = None
    if args.family:
        if args.family not in FAMILIES:
            raise ParseError(f"unknown family {args.family!r}")
        degree = _family_degree(args.family, args.k)
        if degree > SLOW_DEGREE and not args.allow_slow:
            raise _Refused(f"degree {degree} exceeds {SLOW_DEGREE}; pass --allow-slow")
        fam = make_family(args.family, args.k, field)
        f = fam.poly
        family = (args.family, args.k)
    else:
        f = parse_poly(args.poly, field, allow_zero=False)
        if f.degree > SLOW_DEGREE and not args.allow_slow:
            raise _Refused(f"degree {f.degree} exceeds {SLOW_DEGREE}; pass --allow-slow")
    report = analyze(f)
    doc = report_document(report, str(f), field, family)
    if args.json:
        print(_dump(doc))
    else:
        _print_report(doc, report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# kummer


def kummer_document(name: str, k: int, emit_poly: bool) -> dict:
    fam = make_family(name, k)
    if fam.base is None:
        raise HypothesisViolated(f"{name} carries no base-curve data")
    pred = predict_pullback(fam.base, k)
    points = []
    for p in pred.points:
        s = p.source
        points.append({
            "label": s.label,
            "point": [int(c) for c in s.location.coords],
            "type": s.location.ptype,
            "axes": list(s.location.axes),
            "axis_mults": list(s.axis_mults),
            "mu_P": s.mu,
            "mu_Q": p.mu_Q,
            "branches": p.branches,
            "delta": p.delta,
            "preimage_points": p.preimage_points,
        })
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": name,
        "k": k,
        "degree": pred.degree,
        "points": points,
        "components": pred.components,
        "genus_per_component": pred.genus_per_component,
        "genus_routes": {"riemann_hurwitz": pred.genus_routes[0], "degree_delta": pred.genus_routes[1]},
        "euler_characteristic": pred.euler_characteristic,
        "delta_total": pred.delta_total,
        "milnor_total": pred.milnor_total,
        "tau_consistency": pred.tau_consistency,
    }
    if emit_poly:
        doc["poly"] = str(fam.poly)
    return _jsonable(doc)


def cmd_kummer(args) -> int:
    if args.family not in FAMILIES:
        raise ParseError(f"unknown family {args.family!r}")
    doc = kummer_document(args.family, args.k, args.emit_poly)
    if args.json:
        print(_dump(doc))
        return EXIT_OK
    print(f"family {doc['family']}  k={doc['k']}  degree {doc['degree']}")
    print(f"{'point':<28}{'type':>5}{'mu_P':>6}{'mu_Q':>7}{'branches':>10}{'delta':>7}{'copies':>8}")
    for p in doc["points"]:
        where = f"{p['label']} [{':'.join(map(str, p['point']))}]"
        print(f"{where:<28}{p['type']:>5}{p['mu_P']:>6}{p['mu_Q']:>7}{p['branches']:>10}{p['delta']:>7}{p['preimage_points']:>8}")
    g = doc["genus_routes"]
    print(f"components {doc['components']}")
    print(f"genus      {doc['genus_per_component']} per component "
          f"(Riemann-Hurwitz {g['riemann_hurwitz']}, degree-delta {g['degree_delta']})")
    if doc["tau_consistency"] is not None:
        print(f"tau        {doc['tau_consistency']} (sum over predicted quasi-homogeneous points)")
    if "poly" in doc:
        print(f"poly       {doc['poly']}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _golden_checks(max_k: int):
    field = QQ
    for k in range(1, max_k + 1):
        for name in ("c4k", "c2k"):
            gold = golden_syzygies(name, k, field)
            grad = gradient(make_family(name, k, field).poly)
            ok = all(not v.dot(grad) for v in gold.vectors)
            yield f"{name} k={k} syzygies", ok, ""
            rel = [sum((c * v.components[i] for c, v in zip(gold.relation, gold.vectors)), start=HomPoly.zero(field))
                   for i in range(3)]
            yield f"{name} k={k} relation", all(not r for r in rel), ""
    grad = gradient(make_family("c5k", 1, field).poly)
    for name, (twist, vecs) in twisted_syzygy_table(field).items():
        scaled = [t * g for t, g in zip(twist, grad)]
        ok = True
        for vec in vecs:
            total = vec[0] * scaled[0] + vec[1] * scaled[1] + vec[2] * scaled[2]
            ok = ok and not total
        yield f"c5k table row {name}", ok, ""


def _corpus(max_k: int, allow_slow: bool):
    field = GF(DEFAULT_PRIME)
    for name in ("c5k", "c4k", "c2k"):
        for k in range(1, max_k + 1):
            if _family_degree(name, k) > SLOW_DEGREE and not allow_slow:
                continue
            yield f"{name} k={k}", make_family(name, k, field).poly
    yield "d5", make_family("d5", 1, field).poly
    yield "smooth cubic", parse_poly("x^3+y^3+z^3", field)
    yield "three concurrent lines", parse_poly("x*y*(x+y)", field)


def _oracle_checks(max_k: int, allow_slow: bool):
    for label, f in _corpus(max_k, allow_slow):
        d = f.degree
        gens = syzygy_generators(f)
        mdr = oracle.mdr_linear(f)
        yield f"{label} mdr", mdr == min(minimal_generator_degrees(gens)), f"mdr {mdr}"
        partials = [g for g in gradient(f) if g]
        basis = buchberger(partials)
        bad = [m for m in range(3 * d + 1) if oracle.graded_dim_linear(partials, m) + hilbert_function(basis, m) != (m + 1) * (m + 2) // 2]
        yield f"{label} Hilbert function", not bad, f"mismatch at {bad[:3]}" if bad else ""
        try:
            report = analyze(f)
            yield f"{label} routes", True, f"{report.curve_class.value} {report.exponents}"
        except RoutesDisagree as exc:
            yield f"{label} routes", False, str(exc)


def cmd_verify(args) -> int:
    checks = []
    if args.suite in ("golden", "all"):
        checks.extend(_golden_checks(args.max_k))
    if args.suite in ("oracle", "all"):
        checks.extend(_oracle_checks(args.max_k, args.allow_slow))
    failed = [c for c in checks if not c[1]]
    width = max((len(c[0]) for c in checks), default=10)
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}".rstrip())
    print(f"{len(checks) - len(failed)}/{len(checks)} passed")
    if failed:
        print("failing cases:", ", ".join(c[0] for c in failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freeness-lab", description="Freeness of plane curves and Kummer covers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a curve as free, nearly free or neither")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="homogeneous polynomial in x, y, z")
    src.add_argument("--family", help=f"named family: {', '.join(FAMILIES)}")
    p.add_argument("--k", type=int, default=1, help="family parameter (default 1)")
    p.add_argument("--field", choices=("q", "fp"), default="fp", help="rationals or a prime field (default fp)")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME, help=f"prime for --field fp (default {DEFAULT_PRIME})")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--allow-slow", action="store_true", help=f"permit degrees above {SLOW_DEGREE}")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("kummer", help="predict singularities, components and genus of a pullback")
    p.add_argument("--family", required=True, help=f"named family: {', '.join(FAMILIES)}")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--emit-poly", action="store_true", help="include the pulled-back polynomial")
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("verify", help="run the built-in consistency checks")
    p.add_argument("--suite", choices=("golden", "oracle", "all"), default="all")
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--allow-slow", action="store_true", help=f"include curves of degree above {SLOW_DEGREE}")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonReducedInput as exc:
        print(f"error: input is not reduced: {exc}", file=sys.stderr)
        return EXIT_NON_REDUCED
    except (ParseError, NotHomogeneous, ZeroPolynomial, DivisionNotExact) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RoutesDisagree as exc:
        print(f"error: classification routes disagree: {exc}", file=sys.stderr)
        dump = {"verdicts": {k: [str(v[0]), v[1]] for k, v in exc.verdicts.items()}, "data": exc.data}
        print(json.dumps(_jsonable(dump), indent=2, default=str), file=sys.stderr)
        return EXIT_DISAGREE
    except (HypothesisViolated, NotLocallyIrreducible) as exc:
        print(f"error: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except _Refused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_SLOW
    except ValueError as exc:
        # bad numeric options such as a composite --prime or k < 1
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
