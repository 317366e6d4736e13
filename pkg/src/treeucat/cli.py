"""Command-line front end.

Exit codes are a stable contract: 0 success, 1 failed check or internal
invariant, 2 parse or validation problem, 3 oracle bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .documents import (
    decomposition_from_document,
    instance_digest,
    parse_decomposition,
    parse_instance,
    render_dot,
    serialize_decomposition,
    serialize_instance,
    serialize_sweep,
)
from .errors import (
    DocumentError,
    ExceedsKMax,
    InternalInvariantError,
    TreeUcatError,
)
from .greedy import decompose
from .sweep import sweep
from .verify import check_decomposition, gen_instance, ucat_oracle

ORACLE_SIZE_GUIDANCE = 8


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def cmd_decompose(args) -> int:
    tree, f = parse_instance(_read(args.input))
    decomposition, trace = decompose(f)
    if args.trace:
        for event in trace:
            subdivided = ", ".join(event.subdivided) or "none"
            print(
                f"iteration {event.iteration}: mode {event.forced_vertex},"
                f" subdivided {subdivided}, remaining mass {event.remaining_mass}",
                file=sys.stderr,
            )
    provenance = {
        "tool": f"treeucat {__version__}",
        "input_digest": instance_digest(tree, f),
    }
    text = serialize_decomposition(decomposition, provenance)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.render:
        Path(args.render).write_text(render_dot(decomposition), encoding="utf-8")
    return 0


def cmd_ucat(args) -> int:
    _, f = parse_instance(_read(args.input))
    decomposition, _ = decompose(f)
    print(len(decomposition.components))
    return 0


def cmd_check(args) -> int:
    tree, f = parse_instance(_read(args.instance))
    doc = parse_decomposition(_read(args.decomposition))
    expected = instance_digest(tree, f)
    if doc.provenance["input_digest"] != expected:
        raise DocumentError(
            "decomposition was produced for a different instance"
            f" (digest {doc.provenance['input_digest']}, instance has {expected})"
        )
    report = check_decomposition(f, decomposition_from_document(doc, f))
    if report.sum_ok:
        print("sum: ok")
    else:
        for vertex, want, got in report.sum_mismatches:
            print(f"sum: MISMATCH at {vertex}: expected {want}, components give {got}")
    for check in report.components:
        if check.ok:
            print(f"component {check.index}: ok")
        else:
            print(f"component {check.index}: FAIL ({check.detail})")
    print(f"count: {report.count}")
    print(f"overall: {'ok' if report.overall else 'FAIL'}")
    return 0 if report.overall else 1


def cmd_oracle(args) -> int:
    tree, f = parse_instance(_read(args.input))
    if len(tree.vertices) > ORACLE_SIZE_GUIDANCE:
        print(
            f"warning: {len(tree.vertices)} vertices; the oracle enumerates"
            f" mode sets and is meant for at most {ORACLE_SIZE_GUIDANCE}",
            file=sys.stderr,
        )
    print(ucat_oracle(f, args.max_k))
    return 0


def cmd_sweep(args) -> int:
    _, f = parse_instance(_read(args.input))
    sys.stdout.write(serialize_sweep(sweep(f, args.vertex)))
    return 0


def cmd_gen(args) -> int:
    tree, f = gen_instance(args.seed, args.vertices, args.max_value)
    sys.stdout.write(serialize_instance(tree, f))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeucat",
        description=(
            "Minimal unimodal decompositions of nonnegative edge-linear"
            " densities on finite metric trees."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="compute a minimal unimodal decomposition")
    p.add_argument("input", help="instance file, or - for stdin")
    p.add_argument("--output", help="write the decomposition document to this path")
    p.add_argument("--render", help="also write a DOT rendering to this path")
    p.add_argument("--trace", action="store_true", help="iteration log on stderr")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("ucat", help="print the unimodal category")
    p.add_argument("input", help="instance file, or - for stdin")
    p.set_defaults(func=cmd_ucat)

    p = sub.add_parser("check", help="verify a decomposition against an instance")
    p.add_argument("instance", help="instance file")
    p.add_argument("decomposition", help="decomposition file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="exhaustive minimality oracle (small inputs)")
    p.add_argument("input", help="instance file, or - for stdin")
    p.add_argument("--max-k", type=int, default=5, help="largest mode count to try")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="peel one unimodal component from a vertex")
    p.add_argument("input", help="instance file, or - for stdin")
    p.add_argument("--vertex", required=True, help="origin vertex id")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int, default=8, help="maximum vertex count")
    p.add_argument("--max-value", type=int, default=4, help="largest vertex value")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ExceedsKMax as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except InternalInvariantError as err:
        print(f"internal error: {err}", file=sys.stderr)
        return 1
    except (TreeUcatError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
