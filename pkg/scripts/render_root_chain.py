#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]
DEFAULT_OUTPUT_DIR = REPO_ROOT / "dist" / "figures"

if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from src.certificate import write_text_atomic  # noqa: E402
from src.render import render_svg  # noqa: E402
from src.roots import root_chain  # noqa: E402


def build(output_dir: Path, depth: int, size: int | None = None) -> list[Path]:
    """Write root_chain_<i>.svg for i = 0..depth and return the paths."""
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(depth + 1):
        path = output_dir / f"root_chain_{i}.svg"
        write_text_atomic(path, render_svg(root_chain(i), size))
        written.append(path)
    return written


def main() -> None:
    parser = argparse.ArgumentParser(description="Render the square-root chain h_0..h_k")
    parser.add_argument("--depth", type=int, default=3, help="Largest index k (default: 3)")
    parser.add_argument(
        "--output-dir",
        type=str,
        default=None,
        help="Directory for the SVG files (default: dist/figures)",
    )
    parser.add_argument("--size", type=int, default=None, help="Square side in pixels")
    args = parser.parse_args()

    output_dir = Path(args.output_dir) if args.output_dir else DEFAULT_OUTPUT_DIR
    for path in build(output_dir, args.depth, args.size):
        print(f"Wrote {path}")


if __name__ == "__main__":
    main()
