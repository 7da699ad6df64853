"""Compare ideal-power quotients with Hodge numbers over q for each nodal corpus input."""

import argparse

from nodalspec.cli import run
from nodalspec.corpus import CASES


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=["three_nodes_quartic", "four_lines", "nodal_cubic_curve",
                                                 "cayley_cubic", "five_lines"])
    args = ap.parse_args()
    print(f"{'input':22s} {'q':>2} {'variant':>9} {'D':>3} {'quotient':>8} {'hodge':>5}  status")
    for name in args.names:
        r = run(CASES[name].job())
        for w in r.wotzlaw:
            agree = "agree" if w.quotient == w.hodge else "DIFFER"
            status = "proven" if w.proven else "open"
            print(f"{name:22s} {w.q:>2} {w.variant:>9} {w.degree:>3} {w.quotient:>8} {w.hodge:>5}  {status}, {agree}")


if __name__ == "__main__":
    main()
