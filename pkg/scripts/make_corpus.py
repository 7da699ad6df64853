"""Regenerate the golden corpus: inputs plus table, json and csv reports."""

import argparse
import time

from nodalspec.cli import emit, run
from nodalspec.corpus import CASES, CORPUS_DIR, golden_path


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="cases to regenerate (default: all)")
    args = ap.parse_args()
    CORPUS_DIR.mkdir(parents=True, exist_ok=True)
    for name in args.names or CASES:
        case = CASES[name]
        (CORPUS_DIR / f"{name}.poly").write_text(case.poly + "\n")
        (CORPUS_DIR / f"{name}.points").write_text(case.points)
        t = time.perf_counter()
        report = run(case.job())
        for fmt in ("table", "json", "csv"):
            golden_path(name, fmt).write_bytes(emit(report, fmt))
        status = "ok" if report.ok else "CHECK FAILURES"
        print(f"{name:24s} tau={report.tau:<3d} {time.perf_counter() - t:7.2f}s  {status}")


if __name__ == "__main__":
    main()
