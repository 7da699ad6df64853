"""Named inputs of the golden corpus and helpers to locate their files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .cli import JobSpec
from .exactla import Arithmetic

CORPUS_DIR = Path(__file__).parent / "corpus" / "v1"
FORMATS = {"table": "table", "json": "json", "csv": "csv"}


@dataclass(frozen=True)
class CorpusCase:
    name: str
    poly: str
    points: str = ""
    note: str = ""

    def job(self, mode: str = "rational", emit: str = "table", workers: int = 1) -> JobSpec:
        return JobSpec(poly=self.poly, points=self.points, arith=Arithmetic(mode), emit=emit, workers=workers)


CASES = {c.name: c for c in (
    CorpusCase("three_nodes_quartic", "x^2*y^2 + x^2*z^2 + y^2*z^2",
               "1:0:0\n0:1:0\n0:0:1\n", "plane quartic, three nodes"),
    CorpusCase("four_lines", "x*y*z*(x+y+z)",
               "1:0:0\n0:1:0\n0:0:1\n1:-1:0\n1:0:-1\n0:1:-1\n", "four general lines, six nodes"),
    CorpusCase("fermat_quartic_curve", "x^4 + y^4 + z^4", "", "smooth plane quartic"),
    CorpusCase("fermat_cubic_surface", "x0^3 + x1^3 + x2^3 + x3^3", "", "smooth cubic surface"),
    CorpusCase("nodal_cubic_curve", "y^2*z - x^3 - x^2*z", "0:0:1\n", "plane cubic, one node"),
    CorpusCase("cayley_cubic", "x*y*z + x*y*w + x*z*w + y*z*w",
               "1:0:0:0\n0:1:0:0\n0:0:1:0\n0:0:0:1\n", "cubic surface, four nodes"),
    CorpusCase("five_lines", "x*y*z*(x+y+z)*(x+2*y+3*z)",
               "1:0:0\n0:1:0\n0:0:1\n0:1:-1\n1:0:-1\n1:-1:0\n0:3:-2\n3:0:-1\n2:-1:0\n1:-2:1\n",
               "five general lines, ten nodes"),
)}


def golden_path(name: str, fmt: str) -> Path:
    return CORPUS_DIR / f"{name}.{FORMATS[fmt]}"
