"""Command-line entry point.

Exit status: 0 when everything ran and every check passed, 1 when a check
failed (the report is still printed), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from fractions import Fraction

from . import coupled_expanding as ce
from .dimension import DimensionEstimate, compare_to_moran, estimate_dimension
from .errors import LydimError
from .ifs import SimilarityIFS, moran_root, moran_root_star
from .intervals import Interval, as_number
from .symbolic import SymbolStream, parse_symbols
from .transition_matrix import (
    TransitionMatrix,
    branching_row,
    count_admissible_words,
    enumerate_admissible_words,
    is_irreducible,
    is_star,
    spectral_radius,
)
from .witness import (
    WitnessSchedule,
    build_witness,
    delta_k,
    local_dimension_probe,
    membership_violations,
    verify_liyorke_symbolic,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            return str(x)
        return float(f"{x:.12g}")
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Interval):
        return [_num(obj.lo), _num(obj.hi)]
    return _num(obj)


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2)


def _numbers(text: str) -> list:
    return [as_number(tok) for tok in text.split(",") if tok.strip()]


def _range(text: str) -> list[int]:
    """``"4..9"`` (inclusive), ``"200..3200:x2"`` (doubling), ``"50..500:50"`` or ``"1,2,5"``."""
    if ".." in text:
        span, _, step = text.partition(":")
        lo, hi = (int(v) for v in span.split(".."))
        if step.startswith("x"):
            factor, out, k = int(step[1:]), [], lo
            while k <= hi:
                out.append(k)
                k *= factor
            return out
        return list(range(lo, hi + 1, int(step) if step else 1))
    return [int(v) for v in text.split(",")]


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_map(path: str) -> ce.PiecewiseExpandingMap:
    return ce.PiecewiseExpandingMap.from_dict(_load_json(path))


def _map_root(f: ce.PiecewiseExpandingMap):
    A = f.matrix
    if all(all(row) for row in A.entries):
        return moran_root([1 / lam for lam in f.lambdas])
    if is_star(A, 1, strict=True):
        return moran_root_star(f.lambdas)
    return None


# -- subcommands ------------------------------------------------------------


def cmd_matrix_check(args, out):
    A = TransitionMatrix.parse(args.matrix)
    irreducible = is_irreducible(A)
    doc = {
        "m": A.m,
        "irreducible": irreducible,
        "branching_row": branching_row(A),
        "star": {"index": args.index, "non_strict": is_star(A, args.index), "strict": is_star(A, args.index, strict=True)},
    }
    if irreducible:
        rho = spectral_radius(A, tol=args.tol)
        doc["spectral_radius"] = rho
        doc["entropy"] = math.log(rho)
    out.write(dumps(doc) + "\n")
    return 0


def cmd_words(args, out):
    A = TransitionMatrix.parse(args.matrix)
    doc = {"length": args.length, "count": count_admissible_words(A, args.length)}
    if args.enumerate:
        doc["words"] = [" ".join(map(str, w)) for w in enumerate_admissible_words(A, args.length)]
    out.write(dumps(doc) + "\n")
    return 0


def cmd_moran(args, out):
    if args.ratios:
        if args.star:
            raise UsageError("--star takes --lambdas, not --ratios")
        root = moran_root(_numbers(args.ratios), tol=args.tol)
        equation = "sum c_i^p = 1"
    elif args.star:
        root = moran_root_star(_numbers(args.lambdas), tol=args.tol)
        equation = "(1/l1)^p + sum_{i>=2} (1/(l1 li))^p = 1"
    else:
        lambdas = _numbers(args.lambdas)
        if any(not lam > 1 for lam in lambdas):
            raise LydimError("expansion rates must exceed 1")
        root = moran_root([1 / lam for lam in lambdas], tol=args.tol)
        equation = "sum (1/l_i)^p = 1"
    doc = {
        "p": root.p,
        "residual": root.residual,
        "bracket": list(root.bracket),
        "iterations": root.iterations,
        "ly_dimension": root.ly_dimension,
        "equation": equation,
    }
    out.write(dumps(doc) + "\n")
    return 0


def cmd_map_synth(args, out):
    A = TransitionMatrix.parse(args.matrix)
    layout = [Interval(*_numbers(piece)) for piece in args.intervals.split(";")]
    lambdas = _numbers(args.lambdas)
    signs = args.signs.split(",") if args.signs else None
    domain = Interval(*_numbers(args.domain)) if args.domain else None
    try:
        f = ce.synthesize(A, layout, lambdas, signs, domain)
    except LydimError as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if hasattr(exc, "min_lambda"):
            doc["error"]["row"] = exc.row
            doc["error"]["min_lambda"] = exc.min_lambda
        if hasattr(exc, "pair"):
            doc["error"]["pair"] = list(exc.pair)
        out.write(dumps(doc) + "\n")
        return 1
    out.write(json.dumps(f.to_dict(), indent=2) + "\n")
    return 0


def _report_doc(report: ce.MapReport) -> dict:
    return {
        "ok": report.ok,
        "failures": report.failures(),
        "covering": report.covering,
        "gaps": [{"pair": list(k), "gap": v} for k, v in report.gaps.items()],
        "expansion": report.expansion,
        "strict": report.strict,
        "interiors_disjoint": report.interiors_disjoint,
        "within_domain": report.within_domain,
        "branching_row": report.branching_row,
        "irreducible": report.irreducible,
    }


def cmd_map_verify(args, out):
    report = ce.verify(_load_map(args.map))
    out.write(dumps(_report_doc(report)) + "\n")
    return 0 if report.ok else 1


def cmd_map_cover(args, out):
    cover = ce.limit_set_cover(_load_map(args.map), args.depth)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["word", "lo", "hi", "diameter"])
    for b in cover:
        w.writerow(["".join(map(str, b.word)) if len(b.word) and max(b.word) < 10 else " ".join(map(str, b.word)),
                    repr(_num(b.interval.lo)), repr(_num(b.interval.hi)), repr(_num(b.diameter))])
    return 0


def cmd_map_orbit(args, out):
    f = _load_map(args.map)
    x = as_number(args.x)
    word = ce.code_orbit(f, x, args.steps)
    points = ce.orbit(f, x, args.steps)
    out.write(dumps({"word": list(word.symbols), "points": points}) + "\n")
    return 0


def cmd_witness(args, out):
    A = TransitionMatrix.parse(args.matrix)
    s = SymbolStream(parse_symbols(args.s), A.m)
    payload = SymbolStream(parse_symbols(args.payload), A.m)
    sched = WitnessSchedule.parse(args.schedule)
    t = build_witness(s, sched, A, payload, horizon=args.horizon)
    violations = membership_violations(t, s, sched, A)
    if args.depth is None:
        u = sched.blocks_within(t.horizon)
        depth = max(i for i, ui in enumerate(u) if ui + i + 3 <= t.horizon)
    else:
        depth = args.depth
    report = verify_liyorke_symbolic(s, t, sched, depth)
    ks = range(min(args.delta_k, payload.horizon - 1) + 1)
    doc = {
        "t": list(t.symbols),
        "sync": [{"i": r.i, "u": r.u, "prox": r.prox, "sep": r.sep, "pass": r.passed} for r in report.rows],
        "membership_violations": violations,
        "delta": [
            {"k": d.k, "delta": d.delta, "M": d.M, "bound": d.bound}
            for d in (delta_k(payload.symbols[: k + 1], sched) for k in ks)
        ],
    }
    out.write(dumps(doc) + "\n")
    return 0 if report.passed and not violations else 1


def _estimate_doc(est: DimensionEstimate, root, tol) -> dict:
    doc = {"slope": est.slope, "intercept": est.intercept, "residual": est.residual,
           "scales": [{"epsilon": e, "count": n} for e, n in est.scales]}
    if root is None:
        doc.update(moran_root=None, ly_dimension=None, verdict="no closed-form equation for this matrix")
    else:
        cmp = compare_to_moran(est, root, tol)
        doc.update(moran_root=root.p, ly_dimension=root.ly_dimension, gap=cmp.gap,
                   verdict="pass" if cmp.passed else "fail")
    return doc


def cmd_dim_estimate(args, out):
    f = _load_map(args.map)
    est = estimate_dimension(f, _range(args.depths))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            _write_scales(est, fh)
    if args.format == "csv":
        _write_scales(est, out)
        return 0
    doc = _estimate_doc(est, _map_root(f), args.tol)
    out.write(dumps(doc) + "\n")
    return 1 if doc["verdict"] == "fail" else 0


def _write_scales(est, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["epsilon", "count"])
    for e, n in est.scales:
        w.writerow([repr(_num(e)), n])


def cmd_dim_compare(args, out):
    if args.ratios:
        root = moran_root(_numbers(args.ratios))
    elif args.star:
        root = moran_root_star(_numbers(args.lambdas))
    else:
        root = moran_root([1 / lam for lam in _numbers(args.lambdas)])
    est = DimensionEstimate(args.slope, 0.0, [], 0.0)
    cmp = compare_to_moran(est, root, args.tol)
    out.write(dumps(cmp.as_dict()) + "\n")
    return 0 if cmp.passed else 1


def cmd_probe(args, out):
    ifs = SimilarityIFS.from_dict(_load_json(args.ifs))
    A = TransitionMatrix.star(ifs.m)
    ks = _range(args.k_range)
    if args.alpha:
        alpha = SymbolStream(parse_symbols(args.alpha), ifs.m)
    else:
        rng = random.Random(args.seed)
        alpha = SymbolStream([rng.randint(1, ifs.m) for _ in range(max(ks) + 1)], ifs.m)
    sched = None if args.schedule == "identity" else WitnessSchedule.parse(args.schedule)
    rows = local_dimension_probe(ifs, sched, A, alpha, ks)
    D = moran_root(ifs.ratios).p
    gaps = [abs(r - D) for _, r in rows]
    doc = {
        "D": D,
        "rows": [{"k": k, "ratio": r, "gap": abs(r - D)} for k, r in rows],
        "within_tol": all(g <= args.tol for g in gaps),
        "gap_decreasing": all(b <= a for a, b in zip(gaps, gaps[1:])),
    }
    out.write(dumps(doc) + "\n")
    return 0 if doc["within_tol"] and doc["gap_decreasing"] else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lydim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    mat = sub.add_parser("matrix", help="transition matrix analysis")
    msub = mat.add_subparsers(dest="action", parser_class=_Parser)
    msub.required = True
    chk = msub.add_parser(
        "check",
        help="irreducibility, branching row, star structure and spectral radius",
        description="Check the hypotheses placed on the transition matrix of a coupled-expanding map: "
        "irreducibility, a row with at least two ones, and the star structure (row and column i all ones) "
        "that makes the subshift codable by the full shift. Also reports the spectral radius and its log, "
        "the topological entropy of the subshift.",
    )
    chk.add_argument("--matrix", required=True, help='rows by ";" entries by ",", e.g. "1,1,1;1,0,0;1,0,0"')
    chk.add_argument("--index", type=int, default=1, help="symbol whose row/column is tested for the star shape")
    chk.add_argument("--tol", type=float, default=1e-12)
    chk.set_defaults(func=cmd_matrix_check)

    words = sub.add_parser(
        "words",
        help="count or list admissible words",
        description="Count (exactly) or enumerate the words of a given length allowed by the matrix.",
    )
    words.add_argument("--matrix", required=True)
    words.add_argument("--length", type=int, required=True)
    words.add_argument("--enumerate", action="store_true", help="list the words (memory budget: LYDIM_MAX_WORDS)")
    words.set_defaults(func=cmd_words)

    mor = sub.add_parser(
        "moran",
        help="solve the Moran equation",
        description="Solve sum c_i^p = 1 for the similarity dimension p of a self-similar set. "
        "With --lambdas the ratios are 1/lambda_i (full-shift coupled-expanding map); with --lambdas --star "
        "the equation (1/l1)^p + sum_{i>=2} (1/(l1 li))^p = 1 of a strict-star map is solved. "
        "The Li-Yorke pair set has dimension 2p.",
    )
    grp = mor.add_mutually_exclusive_group(required=True)
    grp.add_argument("--ratios", help="comma-separated contraction ratios in (0,1)")
    grp.add_argument("--lambdas", help="comma-separated expansion rates > 1")
    mor.add_argument("--star", action="store_true", help="use the strict-star equation")
    mor.add_argument("--tol", type=float, default=1e-12)
    mor.set_defaults(func=cmd_moran)

    mp = sub.add_parser("map", help="piecewise-affine coupled-expanding maps")
    mpsub = mp.add_subparsers(dest="action", parser_class=_Parser)
    mpsub.required = True
    syn = mpsub.add_parser(
        "synth",
        help="synthesize an A-coupled-expanding map",
        description="Build the affine map whose branch i has slope +-lambda_i on V_i and whose image is "
        "centered on the hull of the pieces row i must cover. Fails (exit 1) naming the row and the "
        "minimum feasible lambda when a branch cannot cover its row.",
    )
    syn.add_argument("--matrix", required=True)
    syn.add_argument("--intervals", required=True, help='pieces, e.g. "0,1/3;2/3,1"')
    syn.add_argument("--lambdas", required=True, help='e.g. "3,3" or "20/9,2"')
    syn.add_argument("--signs", help='e.g. "+,-"')
    syn.add_argument("--domain", help='e.g. "0,1"; default is the hull of the pieces')
    syn.set_defaults(func=cmd_map_synth)
    ver = mpsub.add_parser(
        "verify",
        help="check the strict coupled-expanding hypotheses",
        description="Check covering of every row, positive gaps between pieces, expansion rates above 1, "
        "a branching row and irreducibility of the matrix.",
    )
    ver.add_argument("--map", required=True, help="map JSON file")
    ver.set_defaults(func=cmd_map_verify)
    cov = mpsub.add_parser(
        "cover",
        help="basic sets of a given depth (CSV)",
        description="Emit the basic sets Delta_w (points whose itinerary starts with w) for all admissible "
        "words w of the given length; their union approximates the invariant Cantor set.",
    )
    cov.add_argument("--map", required=True)
    cov.add_argument("--depth", type=int, required=True)
    cov.set_defaults(func=cmd_map_cover)
    orb = mpsub.add_parser(
        "orbit",
        help="itinerary of a point",
        description="Iterate the map from x and report which piece each iterate visits (the coding that "
        "conjugates the map on its invariant set to the subshift).",
    )
    orb.add_argument("--map", required=True)
    orb.add_argument("--x", required=True, help='starting point, e.g. "3/4"')
    orb.add_argument("--steps", type=int, required=True)
    orb.set_defaults(func=cmd_map_orbit)

    wit = sub.add_parser(
        "witness",
        help="build and check a Li-Yorke witness sequence",
        description="Build the witness t for base sequence s: at each sync position u_i, t copies i+1 symbols "
        "of s, then 1, a flipped symbol, 1, a payload segment and a closing 1. Reports proximality "
        "d(s,t) <= 2^-i after u_i shifts, separation >= 1/2 after u_i+i+1 shifts, and the length overhead "
        "delta(k) of the embedding against its bound (M+6)^2.",
    )
    wit.add_argument("--matrix", required=True)
    wit.add_argument("--s", required=True, help='base sequence, e.g. "1 2 1 1 3 1"')
    wit.add_argument("--schedule", default="n^2", help='gap lengths: "n^2", "3*n^2" or a list "0,1,4"')
    wit.add_argument("--horizon", type=int, help="length of t (default: horizon of s)")
    wit.add_argument("--payload", required=True)
    wit.add_argument("--depth", type=int, help="number of sync blocks to check (default: all that fit)")
    wit.add_argument("--delta-k", type=int, default=50, help="largest k in the delta table")
    wit.set_defaults(func=cmd_witness)

    dim = sub.add_parser("dim", help="box-counting dimension estimates")
    dsub = dim.add_subparsers(dest="action", parser_class=_Parser)
    dsub.required = True
    est = dsub.add_parser(
        "estimate",
        help="box-count the invariant set of a map",
        description="Box-count the basic-set covers at eps = diam(D)/(min lambda)^n, fit log N against "
        "log 1/eps, and compare the slope with the Moran root (full-shift or strict-star maps).",
    )
    est.add_argument("--map", required=True)
    est.add_argument("--depths", default="4..9")
    est.add_argument("--tol", type=float, default=0.05)
    est.add_argument("--format", choices=["json", "csv"], default="json")
    est.add_argument("--csv", help="also write the (epsilon, count) table to this file")
    est.set_defaults(func=cmd_dim_estimate)
    cmp = dsub.add_parser(
        "compare",
        help="compare a slope with a Moran root",
        description="Verdict on |slope - p| <= tol, echoing the Li-Yorke pair dimension 2p.",
    )
    cmp.add_argument("--slope", type=float, required=True)
    g = cmp.add_mutually_exclusive_group(required=True)
    g.add_argument("--ratios")
    g.add_argument("--lambdas")
    cmp.add_argument("--star", action="store_true")
    cmp.add_argument("--tol", type=float, default=0.02)
    cmp.set_defaults(func=cmd_dim_compare)

    prb = sub.add_parser("probe", help="measure-theoretic probes")
    psub = prb.add_subparsers(dest="action", parser_class=_Parser)
    psub.required = True
    loc = psub.add_parser(
        "local-dim",
        help="cylinder-level local dimension along the witness embedding",
        description="For k in the range, the ratio log nu[a_0..a_k] / log diam of the embedded cylinder, "
        "where nu is the Bernoulli measure with weights c_i^D; it should approach D from below.",
    )
    loc.add_argument("--ifs", required=True, help="IFS JSON file")
    loc.add_argument("--k-range", default="200..3200:x2", help='"200..3200:x2", "50..500:50" or "1,5,9"')
    loc.add_argument("--alpha", help="coded sequence (default: seeded random)")
    loc.add_argument("--seed", type=int, default=0)
    loc.add_argument("--schedule", default="n^2", help='"n^2", ... or "identity"')
    loc.add_argument("--tol", type=float, default=0.1)
    loc.set_defaults(func=cmd_probe)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        out.write(dumps({"error": {"type": "usage", "message": str(exc)}}) + "\n")
        return 2
    except (LydimError, ValueError, KeyError, OSError, json.JSONDecodeError, ZeroDivisionError) as exc:
        out.write(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n")
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
