#!/usr/bin/env python3
"""
Kissing - Command Line Interface
One binary over the whole library. Every subcommand prints exactly one JSON
document on stdout; diagnostics go to stderr.

Exit codes: 0 success / PASS, 1 FAIL verdict, 2 input or domain error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from config import get_settings, set_settings
from document_handler import (
    dumps,
    load_graph,
    load_lamination,
    load_map,
    load_packing,
    write_json,
)
from orchestrator import DictionaryOrchestrator

from kissing import __version__
from kissing.angle_dynamics import lamination_of, lamination_to_json, question_mark
from kissing.antirational import julia_render, render_png, verify_dictionary
from kissing.errors import DocumentError, KissingError
from kissing.mating import detect_obstruction, mate_all_offsets, mate_graphs, shared_matings
from kissing.packing import CirclePacking, packing_to_json, solve_packing, verify_contact
from kissing.plane_graph import classify, face_degrees, to_json, unmate
from kissing.reflection_group import limit_set_approx, nielsen_itinerary, omega_side_tiles
from utils.svg_renderer import MINUS_FILL, PLUS_FILL, Scene, fit_window, palette

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


# -----------------------------------------------------------------------------
# Argument types
# -----------------------------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text) if text.lstrip("-").isdigit() else -1
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be a non-negative integer")
    return value


def _point(text: str) -> complex:
    try:
        x, y = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not of the form x,y")
    return complex(x, y)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a fraction p/q")


def _cycle(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated vertex list")


def _window(text: str) -> tuple:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        values = ()
    if len(values) != 4 or values[0] >= values[1] or values[2] >= values[3]:
        raise argparse.ArgumentTypeError(f"{text!r} is not xmin,xmax,ymin,ymax")
    return values


# -----------------------------------------------------------------------------
# Rendering helpers
# -----------------------------------------------------------------------------

def _packing_scene(packing: CirclePacking) -> Scene:
    scene = Scene(fit_window(packing.circles))
    colours = palette(packing.n)
    for v, circle in enumerate(packing.circles):
        scene.add_circle(circle, colours[v])
    return scene


def _save_scene(scene: Scene, svg: Optional[str], png: Optional[str], res: int) -> Dict[str, str]:
    written = {}
    if svg:
        scene.write_svg(svg)
        written["svg"] = svg
    if png:
        scene.write_png(png, res)
        written["png"] = png
    return written


# -----------------------------------------------------------------------------
# Subcommands
# -----------------------------------------------------------------------------

def cmd_graph_info(args: argparse.Namespace) -> tuple:
    g = load_graph(args.graph)
    report = {"n": g.n, "edges": g.edge_count, "faces": g.face_count}
    report.update(classify(g, get_settings().hamiltonian_cap).to_dict())
    report["face_degrees"] = sorted(face_degrees(g))
    return report, EXIT_OK


def cmd_pack(args: argparse.Namespace) -> tuple:
    g = load_graph(args.graph)
    packing = solve_packing(g, args.tol)
    contact = verify_contact(packing)
    report: Dict[str, Any] = {"n": packing.n, "residual": packing.residual, "contact": contact.to_dict()}
    if args.out:
        write_json(args.out, packing_to_json(packing))
        report["out"] = args.out
    report.update(_save_scene(_packing_scene(packing), args.svg, args.png, args.res))
    return report, EXIT_OK if contact.passed else EXIT_FAIL


def cmd_limitset(args: argparse.Namespace) -> tuple:
    packing = load_packing(args.packing)
    cover = limit_set_approx(packing, args.eps)
    report: Dict[str, Any] = {
        "eps": args.eps,
        "disks": len(cover.disks),
        "deepest_level": cover.deepest_level,
        "max_spherical_diameter": max((d.diameter for d in cover.disks), default=0.0),
    }
    if args.svg or args.png:
        scene = Scene(fit_window(packing.circles))
        colours = palette(packing.n)
        if args.cycle is not None:
            tiles = omega_side_tiles(packing, args.cycle, args.level)
            for tile in tiles.plus:
                scene.add_polygon(tile.boundary, PLUS_FILL)
            for tile in tiles.minus:
                scene.add_polygon(tile.boundary, MINUS_FILL)
            report["tiles"] = {"level": args.level, "plus": len(tiles.plus), "minus": len(tiles.minus)}
        for disk in cover.disks:
            first = disk.word[0] if disk.word else disk.vertex
            scene.add_circle(disk.circle, colours[first])
        report.update(_save_scene(scene, args.svg, args.png, args.res))
    return report, EXIT_OK


def cmd_nielsen(args: argparse.Namespace) -> tuple:
    packing = load_packing(args.packing)
    itinerary = nielsen_itinerary(packing, args.point, args.steps)
    return {
        "point": args.point,
        "symbols": itinerary.symbols,
        "ties": itinerary.ties,
        "final_point": itinerary.final_point,
    }, EXIT_OK


def cmd_lamination(args: argparse.Namespace) -> tuple:
    return lamination_to_json(lamination_of(load_graph(args.graph))), EXIT_OK


def cmd_qmark(args: argparse.Namespace) -> tuple:
    point = question_mark(args.theta, args.d, depth=args.depth)
    return {"d": args.d, "theta": args.theta, "point": point}, EXIT_OK


def cmd_julia(args: argparse.Namespace) -> tuple:
    anti_rational = load_map(args.map)
    raster = julia_render(anti_rational, args.window, args.res, args.iters, get_settings().threads)
    report = {"map": anti_rational.name}
    report.update(raster.to_dict())
    if args.out:
        render_png(raster, args.out)
        report["out"] = args.out
    return report, EXIT_OK


def cmd_verify_map(args: argparse.Namespace) -> tuple:
    check = verify_dictionary(load_graph(args.graph), load_map(args.map))
    return check.to_dict(), EXIT_OK if check.passed else EXIT_FAIL


def cmd_mate(args: argparse.Namespace) -> tuple:
    plus, minus = load_graph(args.plus), load_graph(args.minus)
    want_mateable = args.expect == "mateable"
    if args.offset is not None:
        verdict = mate_graphs(plus, minus, args.offset)
        return verdict.to_dict(), EXIT_OK if verdict.mateable == want_mateable else EXIT_FAIL
    verdicts = mate_all_offsets(plus, minus)
    report = {
        "mateable": any(v.mateable for v in verdicts),
        "offsets": [v.to_dict() for v in verdicts],
    }
    met = any(v.mateable == want_mateable for v in verdicts)
    return report, EXIT_OK if met else EXIT_FAIL


def cmd_unmate(args: argparse.Namespace) -> tuple:
    g = load_graph(args.graph)
    if args.cycle is not None and not args.all:
        plus, minus = unmate(g, args.cycle)
        return {"cycle": args.cycle, "plus": to_json(plus), "minus": to_json(minus)}, EXIT_OK
    matings = shared_matings(g, up_to_isomorphism=args.up_to_isomorphism)
    return {"count": len(matings), "unmatings": [m.to_dict() for m in matings]}, EXIT_OK


def cmd_obstruct(args: argparse.Namespace) -> tuple:
    report = detect_obstruction(load_lamination(args.lp), load_lamination(args.lq))
    return report.to_dict(), EXIT_OK


def cmd_dictionary(args: argparse.Namespace) -> tuple:
    anti_rational = load_map(args.map) if args.map else None
    report = DictionaryOrchestrator(load_graph(args.graph), anti_rational, get_settings()).run()
    return report, EXIT_OK if report["verdict"] == "PASS" else EXIT_FAIL


# -----------------------------------------------------------------------------
# Parser
# -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kissing", description="Graphs, kissing reflection groups and anti-rational maps")
    parser.add_argument("--version", action="version", version=f"kissing {__version__}")
    parser.add_argument("--threads", type=_positive_int, help="worker threads")
    parser.add_argument("--seed", type=_non_negative_int, help="root-finder seed")
    parser.add_argument("--cap", type=_positive_int, help="orbit explosion guard")
    parser.add_argument("--verbose", action="store_true", help="log at INFO on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph-info", help="classify a plane graph")
    p.add_argument("graph")
    p.set_defaults(handler=cmd_graph_info)

    p = sub.add_parser("pack", help="solve a circle packing")
    p.add_argument("graph")
    p.add_argument("--tol", type=_positive_float, default=1e-8)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--png")
    p.add_argument("--res", type=_positive_int, default=1024)
    p.set_defaults(handler=cmd_pack)

    p = sub.add_parser("limitset", help="cover the limit set by small level disks")
    p.add_argument("packing")
    p.add_argument("--eps", type=_positive_float, default=0.01)
    p.add_argument("--svg")
    p.add_argument("--png")
    p.add_argument("--res", type=_positive_int, default=2048)
    p.add_argument("--cycle", type=_cycle, help="Hamiltonian cycle for side tiles")
    p.add_argument("--level", type=_non_negative_int, default=1, help="side tile level")
    p.set_defaults(handler=cmd_limitset)

    p = sub.add_parser("nielsen", help="Nielsen map itinerary of a point")
    p.add_argument("packing")
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--steps", type=_positive_int, default=10)
    p.set_defaults(handler=cmd_nielsen)

    p = sub.add_parser("lamination", help="principal lamination of an outerplanar graph")
    p.add_argument("graph")
    p.set_defaults(handler=cmd_lamination)

    p = sub.add_parser("qmark", help="question-mark conjugacy at an angle")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--theta", type=_fraction, required=True)
    p.add_argument("--depth", type=_non_negative_int)
    p.set_defaults(handler=cmd_qmark)

    p = sub.add_parser("julia", help="render basins of a critically fixed map")
    p.add_argument("--map", required=True)
    p.add_argument("--res", type=_positive_int, default=512)
    p.add_argument("--iters", type=_positive_int, default=200)
    p.add_argument("--window", type=_window, default=(-2.0, 2.0, -2.0, 2.0))
    p.add_argument("--out")
    p.set_defaults(handler=cmd_julia)

    p = sub.add_parser("verify-map", help="check a map against a graph")
    p.add_argument("--map", required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(handler=cmd_verify_map)

    p = sub.add_parser("mate", help="decide mateability of two outerplanar graphs")
    p.add_argument("--plus", required=True)
    p.add_argument("--minus", required=True)
    p.add_argument("--offset", type=_non_negative_int)
    p.add_argument("--expect", choices=["mateable", "obstructed"], default="mateable")
    p.set_defaults(handler=cmd_mate)

    p = sub.add_parser("unmate", help="split a graph along Hamiltonian cycles")
    p.add_argument("graph")
    p.add_argument("--cycle", type=_cycle)
    p.add_argument("--all", action="store_true")
    p.add_argument("--up-to-isomorphism", action="store_true")
    p.set_defaults(handler=cmd_unmate)

    p = sub.add_parser("obstruct", help="ray-class obstruction of two laminations")
    p.add_argument("--lp", required=True)
    p.add_argument("--lq", required=True)
    p.set_defaults(handler=cmd_obstruct)

    p = sub.add_parser("dictionary", help="combined report across the dictionary")
    p.add_argument("graph")
    p.add_argument("--map")
    p.set_defaults(handler=cmd_dictionary)
    return parser


# -----------------------------------------------------------------------------
# Entry point
# -----------------------------------------------------------------------------

def _configure(args: argparse.Namespace) -> None:
    settings = get_settings().with_overrides(threads=args.threads, seed=args.seed, orbit_cap=args.cap)
    set_settings(settings)
    level = logging.INFO if args.verbose else getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """
    Parse argv, run one subcommand and print its JSON document.

    Returns:
        Process exit code
    """
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    _configure(args)
    handler: Callable[[argparse.Namespace], tuple] = args.handler
    try:
        document, code = handler(args)
    except KissingError as e:
        logger.error(f"❌ {type(e).__name__}: {e.message} {e.details if e.details else ''}".rstrip())
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"❌ {e}")
        return EXIT_ERROR
    except Exception:
        logger.exception("❌ Unexpected failure")
        return EXIT_ERROR

    try:
        text = dumps(document)
    except (DocumentError, ValueError) as e:
        logger.error(f"❌ Could not serialize result: {e}")
        return EXIT_ERROR
    stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
