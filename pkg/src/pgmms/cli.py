"""Command-line entry point ``pgmms``.

Exit codes: 0 property or claim confirmed, 1 counterexample confirmed,
2 input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import bounds as B
from .constructors import (
    cyclic_latin_square,
    fano_plane,
    gq_doily,
    latin_to_oa,
    oa_from_field,
    oa_to_incidence,
    projective_design,
    shifted_macneish,
    steiner_triple,
    transversals,
    vls_geometry,
    witt_derived_design,
)
from .errors import PgmmsError
from .geometry import (
    AnnotatedStructure,
    find_spread_partition,
    validate_partial_geometry,
    validate_regular_uniform,
)
from .io import (
    bundled_names,
    bundled_text,
    format_incidence,
    format_latin,
    format_oa,
    parse_incidence,
    parse_latin,
    parse_oa,
    read_weighting,
    write_text,
)
from .report import VerificationReport, describe_geometry, rational_str
from .runners import RUNNERS, run_counterexample
from .verifier import min_nonnegative_lines, strict_mms_decide, weighting_refutes_strict
from .weightings import check_line_identity, evaluate

EXIT_OK, EXIT_COUNTER, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


def _source_text(name_or_path: str) -> tuple[str, str]:
    """File contents, falling back to a bundled data file of that name."""
    path = Path(name_or_path)
    if path.is_file():
        return path.read_text(), str(path)
    if name_or_path in bundled_names():
        return bundled_text(name_or_path), name_or_path
    raise InputError(f"no such file or bundled data: {name_or_path}")


def load_geometry(name_or_path: str) -> AnnotatedStructure:
    """Incidence file, or an ``.oa`` file read as its column geometry."""
    text, source = _source_text(name_or_path)
    if source.endswith(".oa"):
        A = parse_oa(text, source)
        return AnnotatedStructure(oa_to_incidence(A), Path(source).stem)
    ann = parse_incidence(text, source)
    if not ann.name:
        ann = AnnotatedStructure(ann.structure, Path(source).stem, ann.sub_points, ann.sub_lines)
    return ann


def _emit(report: VerificationReport, args) -> int:
    if getattr(args, "output", None):
        write_text(args.output, report.to_json() + "\n")
    if getattr(args, "json", False):
        print(report.to_json())
    else:
        print(report.summary())
    return report.exit_code


# build ------------------------------------------------------------------------

def _build_geometry(name: str, arg: int | None):
    def need():
        if arg is None:
            raise InputError(f"constructor {name!r} needs an integer argument")
        return arg

    if name == "fano":
        return AnnotatedStructure(fano_plane(), "Fano plane")
    if name == "pg2":
        return projective_design(need(), "plane")
    if name == "pg3":
        return projective_design(need(), "solid")
    if name == "sts":
        return AnnotatedStructure(steiner_triple(need()), f"STS({arg})")
    if name == "doily":
        return AnnotatedStructure(gq_doily(), "GQ(2,2)")
    if name == "vls":
        return vls_geometry()
    if name == "witt":
        return witt_derived_design()
    if name == "oa-field":
        return oa_from_field(need())
    if name == "shifted-macneish":
        return shifted_macneish(need()).array
    if name == "latin-cyclic":
        return cyclic_latin_square(need())
    raise InputError(f"unknown constructor {name!r}")


BUILD_CHOICES = ["fano", "pg2", "pg3", "sts", "doily", "vls", "witt", "oa-field", "shifted-macneish", "latin-cyclic"]


def cmd_build(args) -> int:
    obj = _build_geometry(args.constructor, args.arg)
    from .constructors import LatinSquare, OrthogonalArray

    if isinstance(obj, LatinSquare):
        text = format_latin([(f"cyclic{obj.order}", obj)]) if args.format == "native" else format_incidence(
            AnnotatedStructure(oa_to_incidence(latin_to_oa(obj)), f"latin{obj.order}")
        )
    elif isinstance(obj, OrthogonalArray):
        text = format_oa(obj) if args.format == "native" else format_incidence(
            AnnotatedStructure(oa_to_incidence(obj), f"OA({obj.m},{obj.n})")
        )
    else:
        text = format_incidence(obj)
    if args.output:
        write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# check-pg -----------------------------------------------------------------------

def cmd_check_pg(args) -> int:
    ann = load_geometry(args.file)
    geo = describe_geometry(ann.structure, ann.name)
    rep = VerificationReport("check-pg", geometry=geo)
    rep.verdict["partial_geometry"] = geo["partial_geometry"]
    if geo["partial_geometry"]:
        p = validate_partial_geometry(ann.structure)
        rep.verdict["params"] = list(p.as_tuple())
        rep.verdict["star_size"] = p.star_size
    else:
        rep.verdict["reason"] = geo["reason"]
    rep.exit_code = EXIT_OK if geo["partial_geometry"] else EXIT_COUNTER
    return _emit(rep, args)


# min-nonneg ---------------------------------------------------------------------

def mms_report(structure, name, cutoff, jobs) -> VerificationReport:
    t0 = time.perf_counter()
    v = min_nonnegative_lines(structure, cutoff=cutoff, jobs=jobs)
    rep = VerificationReport("min-nonneg", geometry=describe_geometry(structure, name))
    rep.verdict = {
        "min_nonneg": v.min_nonneg,
        "exact": v.exact,
        "cutoff": v.cutoff,
        "star_size": v.star_size,
        "has_mms_star": v.has_mms_star,
    }
    if v.nonnegative_lines is not None:
        rep.verdict["nonnegative_lines"] = sorted(v.nonnegative_lines)
        rep.verdict["witness_is_star"] = v.witness_is_star
    rep.witness = None if v.witness is None else v.witness.weights
    rep.stats = v.stats.as_dict()
    rep.timing["seconds"] = f"{time.perf_counter() - t0:.3f}"
    if v.has_mms_star is True:
        rep.exit_code = EXIT_OK
    elif v.has_mms_star is False:
        rep.exit_code = EXIT_COUNTER
    else:
        rep.exit_code = EXIT_UNKNOWN
        rep.notes.append(f"no weighting with at most {v.cutoff} nonnegative lines; star size not reached")
    geo = rep.geometry
    if geo.get("partial_geometry") and geo["alpha"] >= 2:
        rep.bounds.append(B.bound_pg(geo["s"], geo["alpha"]).as_dict())
    return rep


def cmd_min_nonneg(args) -> int:
    ann = load_geometry(args.file)
    return _emit(mms_report(ann.structure, ann.name, args.cutoff, args.jobs), args)


# verify-weighting --------------------------------------------------------------

def cmd_verify_weighting(args) -> int:
    ann = load_geometry(args.geometry)
    s = ann.structure
    w = read_weighting(args.weights, s.point_count)
    _, star = validate_regular_uniform(s)
    prof = evaluate(s, w)
    rep = VerificationReport("verify-weighting", geometry=describe_geometry(s, ann.name), witness=w.weights)
    rep.verdict = {
        "nonneg_count": prof.nonneg_count,
        "star_size": star,
        "max_line_weight": rational_str(prof.max_weight),
        "nonnegative_lines": sorted(prof.nonnegative),
        "refutes_mms": prof.nonneg_count < star,
        "refutes_strict": weighting_refutes_strict(s, w),
    }
    if rep.geometry.get("partial_geometry"):
        idr = check_line_identity(s, validate_partial_geometry(s), w)
        rep.verdict["line_identity_holds"] = idr.holds
    counter = rep.verdict["refutes_mms"] or rep.verdict["refutes_strict"]
    rep.exit_code = EXIT_COUNTER if counter else EXIT_OK
    return _emit(rep, args)


# counterexample ---------------------------------------------------------------

def cmd_counterexample(args) -> int:
    return _emit(run_counterexample(args.name), args)


# bounds -------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    reports = []
    notes = []
    if args.pg:
        s, a = args.pg
        if a == 1:
            notes.append(f"pg alpha=1: {B.GQ_LABEL}")
        else:
            reports.append(B.bound_pg(s, a))
    if args.pg_strict:
        reports.append(B.bound_pg_strict(*args.pg_strict))
    if args.design is not None:
        reports.append(B.bound_design(args.design))
    if args.oa is not None:
        reports.append(B.bound_oa(args.oa))
    if args.asymptotic:
        reports.append(B.threshold_asymptotic(*args.asymptotic))
    if not reports and not notes:
        raise InputError("choose at least one of --pg, --pg-strict, --design, --oa, --asymptotic")
    rep = VerificationReport("bounds", notes=notes)
    code = EXIT_OK
    for r in reports:
        d = r.as_dict()
        if args.value is not None:
            d["value"] = args.value
            d["verdict"] = r.verdict(args.value)
            if d["verdict"] != "holds":
                code = EXIT_UNKNOWN
        rep.bounds.append(d)
    rep.exit_code = code
    return _emit(rep, args)


# survey-latin -----------------------------------------------------------------

def cmd_survey_latin(args) -> int:
    text, source = _source_text(args.file)
    squares = parse_latin(text, source)
    rep = VerificationReport("survey-latin")
    t0 = time.perf_counter()
    worst = EXIT_OK
    results = []
    for name, L in squares:
        structure = oa_to_incidence(latin_to_oa(L))
        entry = {"name": name, "order": L.order, "star_size": L.order}
        if L.order <= 8:
            entry["transversals"] = len(transversals(L))
        partition = find_spread_partition(structure)
        entry["spread_partition_found"] = partition is not None
        if args.skip_search:
            has = True if partition is not None else None
        else:
            v = min_nonnegative_lines(structure, cutoff=args.cutoff, jobs=args.jobs)
            entry.update(
                min_nonneg=v.min_nonneg,
                exact=v.exact,
                lp_calls=v.stats.lp_calls,
            )
            has = v.has_mms_star
            if partition is not None and has is False:
                entry["contradiction"] = "spread partition exists but a smaller MMS set was found"
        entry["has_mms_star"] = has
        results.append(entry)
        code = EXIT_OK if has is True else EXIT_COUNTER if has is False else EXIT_UNKNOWN
        if code == EXIT_COUNTER or (code == EXIT_UNKNOWN and worst == EXIT_OK):
            worst = code
    rep.verdict["squares"] = results
    rep.timing["seconds"] = f"{time.perf_counter() - t0:.3f}"
    rep.exit_code = worst
    if not args.json:
        for e in results:
            print(
                f"{e['name']:>12}  n={e['order']}  spreads={'yes' if e['spread_partition_found'] else 'no':3}  "
                f"min_nonneg={e.get('min_nonneg', '-')}  has_mms_star={e['has_mms_star']}"
            )
        if args.output:
            write_text(args.output, rep.to_json() + "\n")
        return rep.exit_code
    return _emit(rep, args)


# strict-mms ---------------------------------------------------------------------

def cmd_strict_mms(args) -> int:
    ann = load_geometry(args.file)
    t0 = time.perf_counter()
    v = strict_mms_decide(ann.structure, args.limit, jobs=args.jobs)
    rep = VerificationReport("strict-mms", geometry=describe_geometry(ann.structure, ann.name))
    rep.verdict = {"status": v.status, "limit": v.limit, "max_star_free": v.max_star_free}
    if v.nonnegative_lines is not None:
        rep.verdict["nonnegative_lines"] = sorted(v.nonnegative_lines)
    rep.witness = None if v.witness is None else v.witness.weights
    rep.stats = v.stats.as_dict()
    rep.timing["seconds"] = f"{time.perf_counter() - t0:.3f}"
    rep.exit_code = {"holds": EXIT_OK, "refuted": EXIT_COUNTER, "unknown": EXIT_UNKNOWN}[v.status]
    return _emit(rep, args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pgmms", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.add_argument("-o", "--output", help="also write the JSON report here")

    b = sub.add_parser("build", help="emit a geometry file")
    b.add_argument("constructor", choices=BUILD_CHOICES)
    b.add_argument("arg", nargs="?", type=int)
    b.add_argument("--format", choices=["incidence", "native"], default="incidence",
                   help="'native' writes arrays and squares in their own formats")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check-pg", help="check the partial geometry axioms")
    c.add_argument("file")
    common(c)
    c.set_defaults(func=cmd_check_pg)

    m = sub.add_parser("min-nonneg", help="least number of nonnegative lines")
    m.add_argument("file")
    m.add_argument("--cutoff", type=int)
    m.add_argument("--jobs", type=int, default=1)
    common(m)
    m.set_defaults(func=cmd_min_nonneg)

    v = sub.add_parser("verify-weighting", help="evaluate a weighting file on a geometry")
    v.add_argument("geometry")
    v.add_argument("weights")
    common(v)
    v.set_defaults(func=cmd_verify_weighting)

    x = sub.add_parser("counterexample", help="reproduce a named counterexample")
    x.add_argument("name", choices=list(RUNNERS))
    common(x)
    x.set_defaults(func=cmd_counterexample)

    bd = sub.add_parser("bounds", help="evaluate closed-form thresholds")
    bd.add_argument("--pg", nargs=2, type=int, metavar=("S", "ALPHA"))
    bd.add_argument("--pg-strict", nargs=2, type=int, metavar=("S", "ALPHA"))
    bd.add_argument("--design", type=int, metavar="K")
    bd.add_argument("--oa", type=int, metavar="M")
    bd.add_argument("--asymptotic", nargs=2, type=int, metavar=("S", "ALPHA"))
    bd.add_argument("--value", type=int, help="compare this t / v / n against each threshold")
    common(bd)
    bd.set_defaults(func=cmd_bounds)

    sl = sub.add_parser("survey-latin", help="MMS verdicts for every square in a file")
    sl.add_argument("file")
    sl.add_argument("--cutoff", type=int)
    sl.add_argument("--jobs", type=int, default=1)
    sl.add_argument("--skip-search", action="store_true", help="spread partitions only")
    common(sl)
    sl.set_defaults(func=cmd_survey_latin)

    st = sub.add_parser("strict-mms", help="decide the strict property on a small geometry")
    st.add_argument("file")
    st.add_argument("--limit", type=int, required=True, help="largest nonnegative line set tried")
    st.add_argument("--jobs", type=int, default=1)
    common(st)
    st.set_defaults(func=cmd_strict_mms)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PgmmsError, LookupError, OSError) as exc:
        print(f"pgmms: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
