"""
The nv command: batch operations on element files.

Exit codes: 0 success or true, 1 false, 2 parse/usage/file error,
3 cap exceeded, 4 invalid element.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .certificate import certificate_from_closure, certificate_to_json, write_text_atomic
from .config import ConfigValidationError, resolved_config
from .constants import (
    CONFIG_LOG_DIR,
    CONFIG_LOG_LEVEL,
    EXIT_CAP_EXCEEDED,
    EXIT_FALSE,
    EXIT_INVALID_ELEMENT,
    EXIT_OK,
    EXIT_PARSE_ERROR,
)
from .dyadic_core import InvalidInputError
from .element import (
    Element,
    apply_point,
    compose,
    equal,
    inverse,
    power,
    random_element,
    random_torsion,
    reduce,
    refine_domain,
)
from .logger import configure_logging, get_module_logger
from .render import render_svg
from .roots import ResourceLimitError, root_chain
from .serialization import (
    ParseError,
    format_point,
    parse_element,
    parse_point,
    serialize_block,
    serialize_element,
)
from .torsion import ClosureStatus, ExceedsCap, closure, invariant_block, order

logger = get_module_logger("cli")


class _FileReadError(Exception):
    pass


def _read_element(path: str) -> Element:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _FileReadError(f"Cannot read {path}: {e}") from e
    return parse_element(text)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        write_text_atomic(output, text)
    else:
        sys.stdout.write(text)


def _cmd_compose(args: argparse.Namespace) -> int:
    elements = [_read_element(path) for path in args.elements]
    result = elements[0]
    for g in elements[1:]:
        result = compose(result, g)
    _emit(serialize_element(result), args.output)
    return EXIT_OK


def _cmd_inverse(args: argparse.Namespace) -> int:
    _emit(serialize_element(inverse(_read_element(args.element))), args.output)
    return EXIT_OK


def _cmd_power(args: argparse.Namespace) -> int:
    _emit(serialize_element(power(_read_element(args.element), args.k)), args.output)
    return EXIT_OK


def _cmd_equal(args: argparse.Namespace) -> int:
    same = equal(_read_element(args.first), _read_element(args.second))
    print("true" if same else "false")
    return EXIT_OK if same else EXIT_FALSE


def _cmd_order(args: argparse.Namespace) -> int:
    result = order(_read_element(args.element), args.cap, args.size_cap)
    if isinstance(result, ExceedsCap):
        print(f"exceeds-cap cap={result.cap} size_cap={result.size_cap} "
              f"max_block_size={result.max_block_size}")
        return EXIT_CAP_EXCEEDED
    print(result.order)
    return EXIT_OK


def _cmd_invariant_block(args: argparse.Namespace) -> int:
    g = _read_element(args.element)
    p = args.order
    if p is None:
        result = order(g, args.cap, args.size_cap)
        if isinstance(result, ExceedsCap):
            print(f"exceeds-cap cap={result.cap} size_cap={result.size_cap}")
            return EXIT_CAP_EXCEEDED
        p = result.order
    B = invariant_block(g, p)
    _emit(serialize_element(refine_domain(g, B)), args.output)
    if args.block_out:
        write_text_atomic(args.block_out, serialize_block(B))
    return EXIT_OK


def _cmd_closure(args: argparse.Namespace) -> int:
    generators = [_read_element(path) for path in args.generators]
    result = closure(
        generators,
        size_cap=args.size_cap,
        order_cap=args.order_cap,
        cap=args.cap,
        keep_elements=args.elements,
    )
    _emit(certificate_to_json(certificate_from_closure(result)), args.certificate)
    if result.status is ClosureStatus.CAP_EXCEEDED:
        return EXIT_CAP_EXCEEDED
    if args.certificate:
        print(result.group_order)
    return EXIT_OK


def _cmd_root_chain(args: argparse.Namespace) -> int:
    _emit(serialize_element(root_chain(args.i, args.size_cap)), args.output)
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    g = _read_element(args.element)
    point = parse_point(args.point, g.dimension)
    print(format_point(apply_point(g, point)))
    return EXIT_OK


def _cmd_reduce(args: argparse.Namespace) -> int:
    _emit(serialize_element(reduce(_read_element(args.element))), args.output)
    return EXIT_OK


def _cmd_render(args: argparse.Namespace) -> int:
    _emit(render_svg(_read_element(args.element), args.size), args.output)
    return EXIT_OK


def _cmd_random(args: argparse.Namespace) -> int:
    if args.torsion:
        g = random_torsion(args.dim, args.blocks, args.seed, conjugate=args.conjugate)
    else:
        g = random_element(args.dim, args.blocks, args.seed)
    _emit(serialize_element(g), args.output)
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nv", description="Exact computation with Brin-Thompson group elements"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable[[argparse.Namespace], int], summary: str,
                output: bool = True) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=summary)
        cmd.set_defaults(handler=handler)
        if output:
            cmd.add_argument("-o", "--output", default=None, help="Output file (default: stdout)")
        return cmd

    cmd = command("compose", _cmd_compose, "Product, applying the files left to right")
    cmd.add_argument("elements", nargs="+")

    cmd = command("inverse", _cmd_inverse, "Inverse element")
    cmd.add_argument("element")

    cmd = command("power", _cmd_power, "Integer power")
    cmd.add_argument("element")
    cmd.add_argument("k", type=int)

    cmd = command("equal", _cmd_equal, "Exit 0 when equal, 1 otherwise", output=False)
    cmd.add_argument("first")
    cmd.add_argument("second")

    cmd = command("order", _cmd_order, "Torsion order, or exit 3 past the caps",
                  output=False)
    cmd.add_argument("element")
    cmd.add_argument("--cap", type=_positive, default=None)
    cmd.add_argument("--size-cap", type=_positive, default=None)

    cmd = command("invariant-block", _cmd_invariant_block,
                  "Representative of a torsion element on an invariant block")
    cmd.add_argument("element")
    cmd.add_argument("--order", type=_positive, default=None)
    cmd.add_argument("--cap", type=_positive, default=None)
    cmd.add_argument("--size-cap", type=_positive, default=None)
    cmd.add_argument("--block-out", default=None, help="Also write the block itself")

    cmd = command("closure", _cmd_closure, "Finite closure of torsion generators",
                  output=False)
    cmd.add_argument("generators", nargs="+")
    cmd.add_argument("--size-cap", type=_positive, default=None)
    cmd.add_argument("--order-cap", type=_positive, default=None)
    cmd.add_argument("--cap", type=_positive, default=None)
    cmd.add_argument("--elements", action="store_true",
                     help="List every group element in the certificate")
    cmd.add_argument("--certificate", default=None,
                     help="Certificate file (default: stdout)")

    cmd = command("root-chain", _cmd_root_chain, "Square-root chain element h_i")
    cmd.add_argument("i", type=int)
    cmd.add_argument("--size-cap", type=_positive, default=None)

    cmd = command("eval", _cmd_eval, "Image of an eventually periodic point",
                  output=False)
    cmd.add_argument("element")
    cmd.add_argument("--point", required=True)

    cmd = command("reduce", _cmd_reduce, "Merge sibling pieces")
    cmd.add_argument("element")

    cmd = command("render", _cmd_render, "SVG picture of a 2V element")
    cmd.add_argument("element")
    cmd.add_argument("--size", type=_positive, default=None)

    cmd = command("random", _cmd_random, "Seeded random element")
    cmd.add_argument("--dim", type=_positive, required=True)
    cmd.add_argument("--blocks", type=_positive, required=True)
    cmd.add_argument("--seed", type=int, required=True)
    cmd.add_argument("--torsion", action="store_true")
    cmd.add_argument("--conjugate", action="store_true",
                     help="With --torsion, conjugate by a random element")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code is None:
            return EXIT_OK
        return e.code if isinstance(e.code, int) else EXIT_PARSE_ERROR

    try:
        config = resolved_config(refresh=True)
    except ConfigValidationError as e:
        print(f"nv: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    level = "DEBUG" if args.verbose else str(config[CONFIG_LOG_LEVEL])
    configure_logging(level, str(config[CONFIG_LOG_DIR]) or None)
    logger.debug(f"Running {args.command}")

    try:
        return args.handler(args)
    except (ParseError, _FileReadError) as e:
        print(f"nv: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except ResourceLimitError as e:
        print(f"nv: {e}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except InvalidInputError as e:
        print(f"nv: {e}", file=sys.stderr)
        return EXIT_INVALID_ELEMENT
    except OSError as e:
        print(f"nv: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except Exception as e:
        logger.error(f"Unexpected failure in {args.command}: {e}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())
