"""The batch CLI on germ-spec files.

Equivalent shell commands (after `pip install -e .`):

    edgegeom classify demos/specs/cuspidal_edge.germ
    edgegeom invariants demos/specs/cusp_curve.germ
    edgegeom verify demos/specs/curve_on_25_edge.germ
    edgegeom sample demos/specs/curve_on_25_edge.germ --seed 1 --out g.csv

Output is deterministic: the same spec, flags, and seed always produce
byte-identical reports and CSV.
"""

import os

from edgegeom.cli import main

HERE = os.path.join(os.path.dirname(__file__), "specs")

for args in (
    ["classify", os.path.join(HERE, "cuspidal_edge.germ")],
    ["invariants", os.path.join(HERE, "cuspidal_edge.germ")],
    ["classify", os.path.join(HERE, "cusp_curve.germ")],
    ["verify", os.path.join(HERE, "curve_on_25_edge.germ")],
    ["sample", os.path.join(HERE, "curve_on_25_edge.germ"), "--seed", "1"],
):
    print(f"$ edgegeom {' '.join(os.path.basename(a) for a in args)}")
    code = main(args)
    print(f"(exit code {code})")
    print()
