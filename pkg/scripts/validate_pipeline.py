#!/usr/bin/env python3
"""Run the built-in validation battery and report each check.

Thin wrapper over `kinkdirac validate` that prints a human-readable table
and exits with the CLI's code (0 = all checks passed, 1 = a check failed,
3 = numerical failure).

Usage: python scripts/validate_pipeline.py [--M MASS] [--k MOMENTUM]
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

from kinkdirac.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=float, default=5.0)
    ap.add_argument("--k", type=float, default=2.5)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "validate.json"
        code = cli_main([
            "validate", "--M", str(args.M), "--k", str(args.k),
            "--format", "json", "--out", str(out),
        ])
        payload = json.loads(out.read_text())

    width = max(len(c["name"]) for c in payload["checks"])
    for chk in payload["checks"]:
        status = "ok  " if chk["passed"] else "FAIL"
        print(f"  [{status}] {chk['name']:<{width}}  "
              f"value {chk['value']:.3e}  tolerance {chk['tolerance']:.1e}")
    print(f"\n{'all checks passed' if code == 0 else 'VALIDATION FAILED'} (exit {code})")
    return code


if __name__ == "__main__":
    sys.exit(main())
