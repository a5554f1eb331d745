"""Command-line front end: ``wpbounds <subcommand> [options]``.

Exit status is 0 on success, 2 on a usage error and 1 when a computation
fails (no convergence, non-geometric solution).  With ``--format json``
each subcommand prints one object; numeric fields carry their provenance
in a ``"theorem"`` map keyed by field name.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys
from typing import Callable, Optional

from . import bounds, farey, mapping_class, solver
from .bounds import THEOREM_TAGS, SurfaceType
from .special_functions import V3, V8, dirichlet_l2_minus23, weeks_volume

VOLUME_TAG = "def:hyperbolic-volume"
DILATATION_TAG = "def:dilatation"


class ComputationError(RuntimeError):
    pass


def random_words(count: int, max_len: int, seed: int) -> list[str]:
    """``count`` seeded random words of length ``2..max_len`` using both letters."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    rng = random.Random(seed)
    words = []
    while len(words) < count:
        n = rng.randint(2, max_len)
        w = "".join(rng.choice("LR") for _ in range(n))
        if "L" in w and "R" in w:
            words.append(w)
    return words


# -- argument types ---------------------------------------------------------

def _word_arg(text: str) -> str:
    try:
        word = mapping_class.parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if "L" not in word or "R" not in word:
        raise argparse.ArgumentTypeError(f"word {word!r} must contain both L and R")
    return word


def _matrix_arg(text: str) -> str:
    try:
        m = mapping_class.parse_matrix(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if not m.is_pseudo_anosov:
        raise argparse.ArgumentTypeError(f"matrix {text!r} is {m.kind.value}, not pseudo-Anosov")
    return m.word


def _slope_arg(text: str) -> farey.FareySlope:
    try:
        return farey.parse_slope(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if x < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return x


def _nonneg_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if x < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return x


# -- computations -----------------------------------------------------------

def _solve(word: str, args) -> solver.VolumeResult:
    try:
        result = solver.volume_of_word(word, max_iter=args.max_iter)
    except (solver.NonConvergenceError, solver.NonGeometricError) as exc:
        raise ComputationError(str(exc)) from exc
    if result.solution.residual > args.tol:
        raise ComputationError(
            f"residual {result.solution.residual:.3e} for {word} exceeds --tol {args.tol:g}"
        )
    return result


def _volume_record(result: solver.VolumeResult) -> dict:
    sol = result.solution
    m = mapping_class.from_word(result.word)
    return {
        "word": result.word,
        "volume": result.volume,
        "tetrahedra": result.tetrahedra,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "geometric": sol.geometric,
        "dilatation": m.dilatation,
        "teich_length": m.teich_translation_length,
        "wp_lower": bounds.wp_translation_lower(result.volume, (1, 1)),
        "shapes": [[float(z.real), float(z.imag)] for z in sol.shapes],
    }


_VOLUME_TAGS = {
    "volume": VOLUME_TAG,
    "residual": VOLUME_TAG,
    "dilatation": DILATATION_TAG,
    "teich_length": DILATATION_TAG,
    "wp_lower": THEOREM_TAGS["wp_lower"],
}


def cmd_volume(args) -> dict:
    if args.word_sweep is not None:
        words = random_words(args.word_sweep, args.max_len, args.seed)
        records = [_volume_record(_solve(w, args)) for w in words]
        return {
            "seed": args.seed,
            "max_len": args.max_len,
            "count": len(records),
            "results": records,
            "theorem": dict(_VOLUME_TAGS),
        }
    word = args.word or args.matrix
    record = _volume_record(_solve(word, args))
    record["theorem"] = dict(_VOLUME_TAGS)
    return record


def _surface_of(args) -> SurfaceType:
    return SurfaceType(args.genus, args.punctures)


def cmd_wp_bounds(args) -> dict:
    s = _surface_of(args)
    vol, teich = args.volume, args.teich_length
    word = args.word or args.matrix
    if word:
        if (s.g, s.n) != (1, 1):
            raise _Usage("--word/--matrix describe mapping classes of S_(1,1); use --genus 1 --punctures 1")
        vol = _solve(word, args).volume
        teich = mapping_class.from_word(word).teich_translation_length
    if teich is not None and vol is None:
        raise _Usage("--teich-length needs --volume, --word or --matrix")
    out = bounds.bound_report(s, vol, teich).to_dict()
    if word:
        out["word"] = word
    return out


def cmd_farey_distance(args) -> dict:
    if args.source == args.target:
        raise _Usage("farey-distance needs two distinct slopes")
    interval = farey.wp_distance_interval(args.source, args.target)
    out = interval.as_dict()
    out["source"] = str(args.source)
    out["target"] = str(args.target)
    out["path"] = [str(v) for v in farey.farey_geodesic(args.source, args.target)]
    out["theorem"] = {"dp": THEOREM_TAGS["pants"], "lower": THEOREM_TAGS["pants"], "upper": THEOREM_TAGS["pants"]}
    return out


def cmd_systole(args) -> dict:
    s = _surface_of(args)
    if s.is_closed and s.g < 2:
        raise _Usage("closed surfaces need genus >= 2")
    lower, upper = bounds.systole_bounds(s)
    out = {"genus": s.g, "punctures": s.n, "lower": lower, "upper": upper}
    if s.is_closed:
        out["theorem"] = {"lower": THEOREM_TAGS["systole_closed"], "upper": THEOREM_TAGS["systole_upper"]}
    else:
        out["theorem"] = {"lower": THEOREM_TAGS["systole_punctured"]}
    return out


def cmd_diameter(args) -> dict:
    s = _surface_of(args)
    try:
        d = bounds.diameter_lower(s)
    except bounds.UnsupportedSurfaceError as exc:
        raise _Usage(str(exc))
    tag = THEOREM_TAGS["diameter"]
    return {
        "genus": s.g,
        "punctures": s.n,
        "lower": d,
        "normalized_sqrt_area": d / math.sqrt(bounds.area(s)),
        "normalized_area": d / bounds.area(s),
        "theorem": {"lower": tag, "normalized_sqrt_area": tag, "normalized_area": tag},
    }


def cmd_inradius(args) -> dict:
    lower, upper = bounds.inradius_interval()
    tag = THEOREM_TAGS["inradius"]
    return {"lower": lower, "upper": upper, "theorem": {"lower": tag, "upper": tag}}


def cmd_check_km(args) -> dict:
    words = random_words(args.random, args.max_len, args.seed)
    records = []
    for w in words:
        vol = _solve(w, args).volume
        teich = mapping_class.from_word(w).teich_translation_length
        holds, margin = bounds.km_check(vol, teich, (1, 1))
        records.append({"word": w, "volume": vol, "teich_length": teich, "holds": holds, "margin": margin})
    held = sum(r["holds"] for r in records)
    return {
        "seed": args.seed,
        "max_len": args.max_len,
        "count": len(records),
        "holds": held,
        "min_margin": min(r["margin"] for r in records),
        "results": records,
        "theorem": {
            "volume": VOLUME_TAG,
            "teich_length": DILATATION_TAG,
            "holds": THEOREM_TAGS["km"],
            "margin": THEOREM_TAGS["km"],
            "min_margin": THEOREM_TAGS["km"],
        },
    }


def cmd_constants(args) -> dict:
    l2, tail = dirichlet_l2_minus23()
    return {
        "v3": V3,
        "v8": V8,
        "figure_eight_volume": 2 * V3,
        "double_twist_limit": 2 * V8,
        "weeks_volume": weeks_volume(),
        "l2_chi_minus23": l2,
        "l2_tail_bound": tail,
        "theorem": {
            "v3": "def:lobachevsky",
            "v8": "def:lobachevsky",
            "figure_eight_volume": VOLUME_TAG,
            "double_twist_limit": "thm:double-twist-limit",
            "weeks_volume": THEOREM_TAGS["weeks"],
            "l2_chi_minus23": THEOREM_TAGS["weeks"],
            "l2_tail_bound": THEOREM_TAGS["weeks"],
        },
    }


COMMANDS: dict[str, Callable] = {
    "volume": cmd_volume,
    "wp-bounds": cmd_wp_bounds,
    "farey-distance": cmd_farey_distance,
    "systole": cmd_systole,
    "diameter": cmd_diameter,
    "inradius": cmd_inradius,
    "check-km": cmd_check_km,
    "constants": cmd_constants,
}


# -- parser -----------------------------------------------------------------

class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=_positive_float, default=solver.REPORT_TOL,
                        help="largest accepted gluing-equation residual (default 1e-9)")
    common.add_argument("--max-iter", type=_positive_int, default=solver.MAX_ITER)
    common.add_argument("--seed", type=int, default=0)

    surface = argparse.ArgumentParser(add_help=False)
    surface.add_argument("--genus", "-g", type=_nonneg_int, required=True)
    surface.add_argument("--punctures", "-n", type=_nonneg_int, required=True)

    parser = argparse.ArgumentParser(prog="wpbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("volume", parents=[common], help="volume of a punctured-torus bundle")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--word", type=_word_arg)
    src.add_argument("--matrix", type=_matrix_arg, help='"a,b;c,d"')
    src.add_argument("--word-sweep", type=_positive_int, metavar="N", help="N seeded random words")
    p.add_argument("--max-len", type=_positive_int, default=12)

    p = sub.add_parser("wp-bounds", parents=[common, surface], help="translation-length lower bound")
    p.add_argument("--volume", type=_positive_float)
    p.add_argument("--teich-length", type=_positive_float)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--word", type=_word_arg)
    src.add_argument("--matrix", type=_matrix_arg)

    p = sub.add_parser("farey-distance", parents=[common], help="pants distance and WP interval")
    p.add_argument("source", type=_slope_arg)
    p.add_argument("target", type=_slope_arg)
    # let "-7/12" through as a positional slope
    p._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    sub.add_parser("systole", parents=[common, surface], help="systole bounds of moduli space")
    sub.add_parser("diameter", parents=[common, surface], help="diameter lower bound")
    sub.add_parser("inradius", parents=[common], help="WP length of the imaginary axis")

    p = sub.add_parser("check-km", parents=[common], help="vol <= 3/2 area log(lambda) on random words")
    p.add_argument("--random", type=_positive_int, default=100, metavar="N")
    p.add_argument("--max-len", type=_positive_int, default=12)

    sub.add_parser("constants", parents=[common], help="V3, V8 and the Weeks volume")
    return parser


def _format_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if key == "theorem":
            continue
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={_fmt(v)}" for k, v in item.items() if k != "shapes"))
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}: " + ", ".join(f"{k}={_fmt(v)}" for k, v in value.items()))
        else:
            lines.append(f"{indent}{key}: {_fmt(value)}")
    return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list) and v and isinstance(v[0], list):
        return " ".join(f"{a:.12g}{b:+.12g}i" for a, b in v)
    return str(v)


def run(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in ("volume", "check-km") and getattr(args, "max_len", 12) < 2:
        parser.print_usage(sys.stderr)
        print("wpbounds: error: --max-len must be at least 2", file=sys.stderr)
        return 2
    try:
        if hasattr(args, "genus"):
            _surface_of(args)
        report = COMMANDS[args.command](args)
    except (_Usage, bounds.InvalidSurfaceError) as exc:
        parser.print_usage(sys.stderr)
        print(f"wpbounds: error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"wpbounds: computation failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(report), file=out)
    else:
        print(_format_text(report), file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
