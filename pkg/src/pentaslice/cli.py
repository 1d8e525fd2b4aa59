"""Command-line entry points: frame export, figure replays, serving.

Subcommands:

    slice SCRIPT --out DIR      replay a key script, exporting one
                                frame per event plus the initial frame
    replay-figures {fig3,fig4}  canned replays: the 32-step periodic
                                simple rotation and the 15-step
                                aperiodic double rotation
    serve                       host the WebSocket session protocol

Exit codes: 0 success, 2 script parse failure, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .serialize import (
    FrameExport,
    frame_to_dict,
    mesh_to_obj,
    polychoron_to_dict,
)
from .server import SliceServer
from .session import (
    DEFAULT_THETA0,
    ParseError,
    SessionState,
    current_slice,
    handle_key,
    new_session,
    parse_script,
)
from .slicing import DegenerateSlice

__all__ = ["main", "cmd_slice", "cmd_serve", "cmd_replay_figures", "FIGURE_RUNS"]

# Canned replay configurations: the periodic single-plane run and the
# aperiodic two-plane run whose angle ratio is irrational.  The second
# keeps alpha + beta = theta0 by setting theta0 to the angles' sum
# (1 radian), so parameter keys stay consistent during the replay.
_FIG4_ALPHA = math.pi * math.sqrt(2.0) / (8.0 * math.sqrt(3.0))
FIGURE_RUNS = {
    "fig3": {
        "script": "4*32",
        "session": dict(edge_length=2.0, theta0=DEFAULT_THETA0, c0=0.0),
    },
    "fig4": {
        "script": "z*15",
        "session": dict(edge_length=2.0, theta0=1.0, alpha=_FIG4_ALPHA, c0=0.0),
    },
}


def _export_frames(
    state: SessionState,
    events,
    out_dir: Path,
    formats: tuple[str, ...],
) -> int:
    """Write frame 0 (initial state) plus one frame per event; returns count."""
    out_dir.mkdir(parents=True, exist_ok=True)
    frames = [FrameExport(0, state, current_slice(state))]
    for event in events:
        state = handle_key(state, event)
        frames.append(FrameExport(len(frames), state, current_slice(state)))
    for frame in frames:
        stem = out_dir / f"frame_{frame.frame_index:04d}"
        if "json" in formats:
            stem.with_suffix(".json").write_text(
                json.dumps(frame_to_dict(frame), indent=2) + "\n"
            )
        if "obj" in formats:
            stem.with_suffix(".obj").write_text(mesh_to_obj(frame.mesh))
    return len(frames)


def cmd_slice(
    script: str,
    *,
    edge_length: float = 2.0,
    theta0: float = DEFAULT_THETA0,
    c0: float = 0.0,
    alpha: float | None = None,
    step_alpha: float | None = None,
    step_c0: float | None = None,
    out_dir: str,
    formats: tuple[str, ...] = ("obj", "json"),
    dump_polytope: bool = False,
) -> int:
    """Replay ``script`` from a fresh session and export every frame."""
    try:
        events = parse_script(script)
    except ParseError as exc:
        print(f"error: script does not parse: {exc}", file=sys.stderr)
        return 2
    state = new_session(
        edge_length=edge_length,
        theta0=theta0,
        alpha=alpha,
        c0=c0,
        step_alpha=step_alpha,
        step_c0=step_c0,
    )
    try:
        count = _export_frames(state, events, Path(out_dir), formats)
        if dump_polytope:
            (Path(out_dir) / "polytope.json").write_text(
                json.dumps(polychoron_to_dict(state.base), indent=2) + "\n"
            )
    except DegenerateSlice as exc:
        print(f"error: degenerate slice: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot write frames: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {count} frames to {out_dir}")
    return 0


def cmd_replay_figures(
    figure: str,
    *,
    out_dir: str,
    formats: tuple[str, ...] = ("obj", "json"),
) -> int:
    """Run one canned figure replay and write frames plus a manifest."""
    run = FIGURE_RUNS[figure]
    state = new_session(**run["session"])
    try:
        events = parse_script(run["script"])
        count = _export_frames(state, events, Path(out_dir), formats)
        manifest = {
            "figure": figure,
            "script": run["script"],
            "edge_length": state.base.edge_length_nominal,
            "theta0": state.theta0,
            "alpha": state.alpha,
            "beta": state.beta,
            "c0": state.c0,
            "frame_count": count,
            "formats": list(formats),
        }
        (Path(out_dir) / "manifest.json").write_text(
            json.dumps(manifest, indent=2) + "\n"
        )
    except DegenerateSlice as exc:
        print(f"error: degenerate slice: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot write frames: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {count} frames and manifest to {out_dir}")
    return 0


def cmd_serve(bind: str, **session_kwargs) -> int:
    """Host sessions over WebSocket until interrupted."""
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --bind must look like HOST:PORT, got {bind!r}", file=sys.stderr)
        return 1
    try:
        SliceServer(host=host, port=int(port_text), **session_kwargs).run()
    except OSError as exc:
        print(f"error: cannot bind {bind}: {exc}", file=sys.stderr)
        return 1
    return 0


def _add_session_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--edge-length", type=float, default=2.0, help="polytope edge length (default 2)"
    )
    parser.add_argument(
        "--theta0",
        type=float,
        default=DEFAULT_THETA0,
        help="per-step rotation angle in radians (default pi/16)",
    )
    parser.add_argument("--c0", type=float, default=0.0, help="slice w coordinate (default 0)")
    parser.add_argument(
        "--alpha",
        type=float,
        default=None,
        help="first double-rotation angle (default theta0/2)",
    )
    parser.add_argument(
        "--step-alpha", type=float, default=None, help="k/j increment (default theta0/16)"
    )
    parser.add_argument(
        "--step-c0", type=float, default=None, help="l/h increment (default 0.05*edge length)"
    )


def _parse_formats(text: str) -> tuple[str, ...]:
    formats = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [f for f in formats if f not in ("obj", "json")]
    if unknown or not formats:
        raise argparse.ArgumentTypeError(
            f"--format takes a comma list of obj,json; got {text!r}"
        )
    return formats


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pentaslice",
        description="4-D rotation and hyperplane-slicing workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_slice = sub.add_parser("slice", help="replay a key script and export frames")
    p_slice.add_argument("script", help="key script, e.g. '4*32' or 'z*15 l h'")
    _add_session_flags(p_slice)
    p_slice.add_argument("--out", required=True, help="output directory for frames")
    p_slice.add_argument(
        "--format", type=_parse_formats, default=("obj", "json"), help="obj,json (default both)"
    )
    p_slice.add_argument(
        "--dump-polytope",
        action="store_true",
        help="also write the base polytope as polytope.json",
    )

    p_fig = sub.add_parser("replay-figures", help="run a canned figure replay")
    p_fig.add_argument("figure", choices=sorted(FIGURE_RUNS))
    p_fig.add_argument("--out", required=True, help="output directory for frames")
    p_fig.add_argument(
        "--format", type=_parse_formats, default=("obj", "json"), help="obj,json (default both)"
    )

    p_serve = sub.add_parser("serve", help="host the WebSocket session protocol")
    p_serve.add_argument(
        "--bind", default="127.0.0.1:8765", help="HOST:PORT to listen on (default 127.0.0.1:8765)"
    )
    _add_session_flags(p_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "slice":
        return cmd_slice(
            args.script,
            edge_length=args.edge_length,
            theta0=args.theta0,
            c0=args.c0,
            alpha=args.alpha,
            step_alpha=args.step_alpha,
            step_c0=args.step_c0,
            out_dir=args.out,
            formats=args.format,
            dump_polytope=args.dump_polytope,
        )
    if args.command == "replay-figures":
        return cmd_replay_figures(args.figure, out_dir=args.out, formats=args.format)
    if args.command == "serve":
        return cmd_serve(
            args.bind,
            edge_length=args.edge_length,
            theta0=args.theta0,
            c0=args.c0,
            alpha=args.alpha,
            step_alpha=args.step_alpha,
            step_c0=args.step_c0,
        )
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
