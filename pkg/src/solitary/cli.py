"""Command-line front end: ``solitary validate|analyze|corpus|construct``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions, exact
from .corpus import run_corpus
from .lie import (
    AlgebraIndexError,
    JacobiError,
    LieAlgebra,
    SalamonSyntaxError,
    algebra_from_json,
    algebra_to_json,
    derivation_space,
    derived_series,
    is_nice,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    parse_salamon,
    render_salamon,
)
from .metric import (
    Metric,
    MetricError,
    MetricSyntaxError,
    all_derivations_traceless,
    check_adinvariant,
    classify_solitary,
    find_sigma_diagonal_metric,
    metric_from_json,
    metric_to_json,
    parse_metric,
    render_metric,
)
from . import nikolayevsky as nik

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_JACOBI = 3
EXIT_UNSUPPORTED = 4
EXIT_CERTIFICATE = 5


def _read_source(value: str):
    """A literal string, or the contents of a file (parsed as JSON for ``.json``)."""
    path = Path(value)
    if len(value) < 4096 and path.is_file():
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".json":
            return json.loads(text)
        return text.strip()
    return value


def load_algebra(value: str, field: str = exact.FIELD_Q) -> LieAlgebra:
    src = _read_source(value)
    if isinstance(src, dict):
        return algebra_from_json(src.get("algebra", src))
    return parse_salamon(src, field)


def load_metric(value: str, alg: LieAlgebra) -> Metric:
    src = _read_source(value)
    if isinstance(src, dict):
        return metric_from_json(src.get("metric", src), alg.dim, alg.field)
    return parse_metric(src, alg.dim, alg.field)


def _fmt(values) -> list[str]:
    return [exact.format_scalar(x) for x in values]


def _emit(obj: dict, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(human)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    alg = load_algebra(args.alg, args.field)
    obj = {"valid": True, "dim": alg.dim, "field": alg.field}
    _emit(obj, args.json, f"ok: dimension {alg.dim} over {alg.field}")
    return EXIT_OK


def analyze(alg: LieAlgebra, G: Metric | None, sigma=None) -> tuple[dict, int]:
    """Collect the full report for ``alg`` (and ``G``) and the exit code it implies."""
    code = EXIT_OK
    nice, _ = is_nice(alg)
    rep: dict = {
        "dim": alg.dim,
        "field": alg.field,
        "nilpotent": is_nilpotent(alg),
        "solvable": is_solvable(alg),
        "lower_central_series": [s.dim for s in lower_central_series(alg)],
        "derived_series": [s.dim for s in derived_series(alg)],
        "nice": nice,
        "der_dim": derivation_space(alg).dim,
        "all_derivations_traceless": all_derivations_traceless(alg),
        "tstar_solitary": constructions.tstar_solitary(alg).solitary,
    }
    if nice:
        try:
            rep["nikolayevsky"] = nik.nik_to_json(nik.nikolayevsky_nice(alg))
            rep["tstar_by_grading"] = nik.tstar_by_grading(alg)
        except nik.CertificateError as exc:
            rep["nikolayevsky"] = {"error": str(exc)}
            code = EXIT_CERTIFICATE
        except (nik.NotDiagonalizable, nik.GradingLawViolated, ValueError) as exc:
            rep["tstar_by_grading"] = f"unavailable: {exc}"
    if G is None:
        return rep, code
    rep["metric"] = render_metric(G) if alg.field == exact.FIELD_Q else metric_to_json(G)
    if sigma is not None:
        rep["sigma"] = [s + 1 for s in sigma]
    bad = check_adinvariant(alg, G)
    rep["adinvariant"] = not bad
    if not bad:
        v = classify_solitary(alg, G)
        rep.update({"dim_s": v.dim_s, "dim_d": v.dim_d, "verdict": v.status})
    try:
        res = nik.metric_nikolayevsky(alg, G)
        rep["metric_nikolayevsky"] = nik.nik_to_json(res)
        if not bad:
            rep["solitary_by_positivity"] = (
                nik.PROVED_SOLITARY if all(x > 0 for x in res.lam) else nik.INCONCLUSIVE
            )
    except nik.Unsupported as exc:
        rep["metric_nikolayevsky"] = {"unsupported": str(exc)}
        code = max(code, EXIT_UNSUPPORTED)
    except nik.CertificateError as exc:
        rep["metric_nikolayevsky"] = {"error": str(exc)}
        code = EXIT_CERTIFICATE
    return rep, code


def _render_report(rep: dict) -> str:
    lines = []
    for key, val in rep.items():
        if isinstance(val, dict) and "lambda" in val:
            val = f"({', '.join(val['lambda'])}) via {val['path']}"
        elif isinstance(val, dict):
            val = "; ".join(f"{k}: {v}" for k, v in val.items())
        elif isinstance(val, list):
            val = "(" + ", ".join(map(str, val)) + ")"
        lines.append(f"{key:<26} {val}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    alg = load_algebra(args.alg, args.field)
    G, sigma = None, None
    if args.metric:
        G = load_metric(args.metric, alg)
    elif args.sigma:
        found = find_sigma_diagonal_metric(alg)
        if found is None:
            print("no sigma-diagonal ad-invariant metric in this basis", file=sys.stderr)
            return EXIT_UNSUPPORTED
        G, sigma = found
    rep, code = analyze(alg, G, sigma)
    _emit(rep, args.json, _render_report(rep))
    return code


def cmd_corpus(args) -> int:
    report = run_corpus(args.filter)
    _emit(report.to_json(), args.json, report.render())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _construct(args) -> tuple[LieAlgebra, Metric | None, dict]:
    op = args.op
    extra: dict = {}
    if op == "doubleext":
        if not args.data:
            raise ValueError("doubleext needs --data")
        data = constructions.double_extension_from_json(_read_source(args.data))
        q, G = constructions.double_extension(data)
        return q, G, extra
    alg = load_algebra(args.alg, args.field)
    G = load_metric(args.metric, alg) if args.metric else None
    if op == "cotangent":
        pkg = constructions.cotangent(alg)
        return pkg.algebra, pkg.metric, extra
    if op == "complexify":
        return constructions.complexify(alg), None if G is None else constructions.complexify_metric(G), extra
    if op == "realify":
        src = alg if alg.field == exact.FIELD_QI else constructions.complexify(alg)
        R, J = constructions.realify(src)
        extra["complex_structure"] = [_fmt(row) for row in J]
        RG = None
        if G is not None:
            RG = constructions.realify_metric(G if alg.field == exact.FIELD_QI else constructions.complexify_metric(G))
        return R, RG, extra
    if op == "directsum":
        if not args.alg2:
            raise ValueError("directsum needs --alg2")
        other = load_algebra(args.alg2, args.field)
        if G is None and not args.metric2:
            return constructions.direct_sum(alg, other), None, extra
        G2 = load_metric(args.metric2, other) if args.metric2 else None
        s, SG = constructions.direct_sum(alg, other, G, G2)
        return s, SG, extra
    raise ValueError(f"unknown construction {op!r}")


def cmd_construct(args) -> int:
    alg, G, extra = _construct(args)
    obj = {"algebra": algebra_to_json(alg)}
    if G is not None:
        obj["metric"] = metric_to_json(G)
    obj.update(extra)
    if args.out:
        Path(args.out).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
    if args.json or alg.field != exact.FIELD_Q:
        print(json.dumps(obj, indent=2))
    else:
        print(render_salamon(alg))
        if G is not None:
            print(render_metric(G))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solitary", description="Exact analysis of metric Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, alg_required=True):
        sp.add_argument("--alg", required=alg_required, help="Salamon string, or a file (text or JSON)")
        sp.add_argument("--field", default=exact.FIELD_Q, choices=exact.FIELDS)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("validate", help="parse and check the Jacobi identity")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("analyze", help="structure, solitary verdicts and Nikolayevsky derivations")
    common(sp)
    sp.add_argument("--metric", help="metric string such as e1.e4+e2.e3, or a file")
    sp.add_argument("--sigma", action="store_true", help="search a sigma-diagonal ad-invariant metric")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("corpus", help="re-derive every expected fact of the bundled corpus")
    sp.add_argument("--filter", default=None, help="tag: table1, examples, trivial, negative, slow or all")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("construct", help="build a new metric Lie algebra")
    sp.add_argument("op", choices=["cotangent", "doubleext", "complexify", "realify", "directsum"])
    common(sp, alg_required=False)
    sp.add_argument("--metric")
    sp.add_argument("--alg2")
    sp.add_argument("--metric2")
    sp.add_argument("--data", help="double extension data (JSON file)")
    sp.add_argument("--out", help="write the JSON result here")
    sp.set_defaults(func=cmd_construct)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "op", None) not in (None, "doubleext") and not args.alg:
        print("error: --alg is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (SalamonSyntaxError, MetricSyntaxError, AlgebraIndexError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except JacobiError as exc:
        print(f"Jacobi identity fails: {exc}", file=sys.stderr)
        return EXIT_JACOBI
    except nik.Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except nik.CertificateError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except (MetricError, constructions.ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
