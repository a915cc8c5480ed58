#!/usr/bin/env python3
"""Build the bundled demo corpus (the test fixtures) into ./demo-site.

Usage: python scripts/build_demo_site.py [output_dir]
"""

import sys
from pathlib import Path

from termmap.cli import main

REPO_ROOT = Path(__file__).resolve().parents[1]


def run() -> int:
    out_dir = sys.argv[1] if len(sys.argv) > 1 else str(REPO_ROOT / "demo-site")
    code = main(
        [
            "build",
            "--toc",
            str(REPO_ROOT / "tests" / "fixtures" / "toc.tsv"),
            "--terms",
            str(REPO_ROOT / "tests" / "fixtures" / "terms"),
            "--out",
            out_dir,
            "--staleness-days",
            "1000000",
        ]
    )
    if code == 0:
        print(f"open {out_dir}/index.html in a browser")
    return code


if __name__ == "__main__":
    raise SystemExit(run())
