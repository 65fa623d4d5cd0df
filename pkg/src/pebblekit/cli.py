"""Batch command-line surface.

Every verb validates its inputs, calls the library, and prints a single
JSON document on stdout.  Exit codes: 0 success, 2 validation error,
3 resource-cap error.  Diagnostics go to stderr only.  No algorithmic
logic lives here.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dot
from .errors import NoLinkageError, PebbleKitError, ResourceCapError, ValidationError
from .graphs import Graph, parse_graph
from .linkage import check_linkage, find_linkage, realize_transition
from .pebbles import DEFAULT_STATE_CAP, solve
from .permgroups import cycle_notation
from .rays import is_linear_family, ray_graph
from .structure import (is_k_pebble_win, pebble_permutation_group,
                        structure_witness, verify_structure_theorem)
from .worlds import (DEFAULT_WINDOW_CAP, World, canonical_rays, chebyshev_ball,
                     make_world, truncate)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3


def _load_graph(path: str, fmt: str | None) -> Graph:
    text = Path(path).read_text()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "edge-list"
    return parse_graph(text, fmt)


def _load_world(args) -> World:
    if getattr(args, "world_file", None):
        doc = json.loads(Path(args.world_file).read_text())
        from .worlds import world_from_json_dict
        if getattr(args, "depth", None) is None and "depth" in doc:
            args.depth = int(doc["depth"])
        return world_from_json_dict(doc)
    if not getattr(args, "world", None):
        raise ValidationError("give either --world or --world-file")
    base = _load_graph(args.base, None) if getattr(args, "base", None) else None
    return make_world(args.world, base=base, k=getattr(args, "world_k", None))


def _parse_state(text: str) -> tuple[int, ...]:
    doc = json.loads(text)
    if not isinstance(doc, list) or not all(isinstance(x, int) for x in doc):
        raise ValidationError(f"expected a JSON array of vertex indices, got {text!r}")
    return tuple(doc)


def _parse_rays(world: World, spec: str):
    if spec.startswith("canonical:"):
        m = int(spec.split(":", 1)[1])
        return canonical_rays(world, m)
    raise ValidationError(f"unsupported ray family spec {spec!r} (use canonical:M)")


def _parse_positions(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip() != ""]


def _emit(doc: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(json.dumps(doc, sort_keys=True))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _cmd_solve(args) -> dict:
    g = _load_graph(args.graph, args.format)
    start = _parse_state(args.start)
    goal = _parse_state(args.goal)
    seq = solve(g, start, goal, cap=args.state_cap)
    if seq is None:
        return {"achievable": False, "states": None}
    return {"achievable": True, "states": [list(s) for s in seq],
            "moves": len(seq) - 1}


def _cmd_group(args) -> dict:
    g = _load_graph(args.graph, args.format)
    state = _parse_state(args.state)
    grp = pebble_permutation_group(g, state, cap=args.state_cap)
    return {
        "degree": grp.degree,
        "order": grp.order(),
        "symmetric": grp.is_symmetric(),
        "generators": [list(p) for p in grp.generators],
        "generators_cycles": [cycle_notation(p) for p in grp.generators],
    }


def _cmd_win(args) -> dict:
    g = _load_graph(args.graph, args.format)
    return {"pebble_win": is_k_pebble_win(g, args.k)}


def _cmd_structure(args) -> dict:
    g = _load_graph(args.graph, args.format)
    return structure_witness(g, args.k).to_json_dict()


def _cmd_verify(args) -> dict:
    if not args.structure:
        raise ValidationError("verify requires --structure")
    return verify_structure_theorem(args.n_max, workers=args.workers)


def _cmd_raygraph(args) -> dict:
    w = _load_world(args)
    rays = _parse_rays(w, args.rays)
    rg = ray_graph(w, rays, d0=args.d0, annuli=args.annuli,
                   ring_width=args.ring_width, window_cap=args.window_cap)
    doc = rg.to_json_dict()
    doc["linear"] = is_linear_family(rg) if rg.stabilized else None
    return doc


def _cmd_linkage(args) -> dict:
    w = _load_world(args)
    if args.depth is None:
        raise ValidationError("give --depth or put a depth in the world file")
    t = truncate(w, args.depth, cap=args.window_cap)
    rays = _parse_rays(w, args.rays)
    src = [rays[i] for i in _parse_positions(args.source)]
    tgt = [rays[i] for i in _parse_positions(args.target)]
    sigma = None
    if args.sigma:
        targets = _parse_positions(args.sigma)
        sigma = {i: t_pos for i, t_pos in enumerate(targets)}
    x = set(chebyshev_ball(t, args.x_ball)) if args.x_ball is not None else set()
    try:
        lk = find_linkage(t, src, tgt, x, sigma)
    except NoLinkageError as exc:
        return {"linkage": None, "reason": "no-linkage-at-depth",
                "depth": exc.depth}
    check_linkage(t, src, tgt, lk)
    return {"linkage": lk.to_json_dict(t), "depth": t.depth}


def _cmd_transition(args) -> dict:
    w = _load_world(args)
    if args.depth is None:
        raise ValidationError("give --depth or put a depth in the world file")
    t = truncate(w, args.depth, cap=args.window_cap)
    rays = _parse_rays(w, args.rays)
    moves = [tuple(s) for s in json.loads(args.moves)]
    x = set(chebyshev_ball(t, args.x_ball)) if args.x_ball is not None else set()
    try:
        lk = realize_transition(t, rays, moves, x)
    except NoLinkageError as exc:
        return {"linkage": None, "reason": "no-linkage-at-depth",
                "depth": exc.depth}
    src = [rays[i] for i in moves[0]]
    check_linkage(t, src, rays, lk)
    return {"linkage": lk.to_json_dict(t), "depth": t.depth,
            "induced": {str(i): j for i, j in sorted(lk.sigma.items())}}


def _cmd_export_dot(args) -> dict:
    if args.graph:
        g = _load_graph(args.graph, args.format)
        text = dot.graph_to_dot(g)
    else:
        w = _load_world(args)
        t = truncate(w, args.depth, cap=args.window_cap)
        rays = _parse_rays(w, args.rays) if args.rays else None
        text = dot.truncation_to_dot(t, rays)
    Path(args.out).write_text(text)
    return {"written": args.out, "bytes": len(text)}


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_graph_args(p):
    p.add_argument("--graph", required=True, help="graph file (json or edge list)")
    p.add_argument("--format", choices=["edge-list", "json"], default=None)


def _add_world_args(p):
    p.add_argument("--world", choices=["full-grid", "half-grid", "hex-half-grid",
                                       "product-Z", "product-N", "dominated-ray"])
    p.add_argument("--world-file", help="world descriptor JSON file")
    p.add_argument("--base", help="base graph JSON (product worlds)")
    p.add_argument("--world-k", type=int, help="k for the dominated ray")
    p.add_argument("--rays", help="ray family, e.g. canonical:4")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pebblekit",
        description="pebble games, pebble-permutation groups, ray graphs, linkages")
    ap.add_argument("--pretty", action="store_true", help="indented output")
    ap.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    ap.add_argument("--window-cap", type=int, default=DEFAULT_WINDOW_CAP)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve", help="shortest pebble move sequence")
    _add_graph_args(p)
    p.add_argument("--start", required=True, help="JSON array of vertices")
    p.add_argument("--goal", required=True, help="JSON array of vertices")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("group", help="pebble-permutation group of a state")
    _add_graph_args(p)
    p.add_argument("--state", required=True, help="JSON array of vertices")
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser("win", help="is the graph k-pebble-win")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_win)

    p = sub.add_parser("structure", help="pebble-win decision with witness")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_structure)

    p = sub.add_parser("verify", help="exhaustive small-graph sweeps")
    p.add_argument("--structure", action="store_true",
                   help="run the bare-path structure sweep")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("raygraph", help="ray graph of a canonical family")
    _add_world_args(p)
    p.add_argument("--d0", type=int, default=10)
    p.add_argument("--annuli", type=int, default=3)
    p.add_argument("--ring-width", type=int, default=2)
    p.set_defaults(fn=_cmd_raygraph)

    p = sub.add_parser("linkage", help="find a linkage between ray families")
    _add_world_args(p)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--source", required=True, help="comma list of ray positions")
    p.add_argument("--target", required=True, help="comma list of ray positions")
    p.add_argument("--sigma", help="comma list: target position per source")
    p.add_argument("--x-ball", type=int, default=None,
                   help="avoid the ball of this radius")
    p.set_defaults(fn=_cmd_linkage)

    p = sub.add_parser("transition", help="realize a pebble move sequence as a linkage")
    _add_world_args(p)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--moves", required=True, help="JSON array of game states")
    p.add_argument("--x-ball", type=int, default=None)
    p.set_defaults(fn=_cmd_transition)

    p = sub.add_parser("export-dot", help="write a DOT rendering")
    p.add_argument("--graph", help="graph file")
    p.add_argument("--format", choices=["edge-list", "json"], default=None)
    _add_world_args(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_export_dot)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        doc = args.fn(args)
    except ResourceCapError as exc:
        print(f"pebblekit: resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (PebbleKitError, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"pebblekit: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _emit(doc, args.pretty)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
