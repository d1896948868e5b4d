"""Regenerate the builtin scenario files from their closed-form builders."""
import argparse
import json
from pathlib import Path

from pcx.scenarios.builders import BUILDERS
from pcx.scenarios.loader import DATA_DIR


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA_DIR)
    ap.add_argument("names", nargs="*", help="subset of builders (default: all)")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.names or BUILDERS:
        path = args.out / f"{name}.json"
        path.write_text(json.dumps(BUILDERS[name](), indent=1) + "\n")
        print(path)


if __name__ == "__main__":
    main()
