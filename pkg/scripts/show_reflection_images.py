#!/usr/bin/env python3
"""Print the symbolic action of each reflection sequence on a layered quiver.

Usage: python scripts/show_reflection_images.py [TYPE] [N] [M]
Defaults reproduce the rank-3 worked example (C, 3, 3).
"""

import sys

from clusterweyl.constructions import build_Qm, seq_R
from clusterweyl.laurent import RationalFunction
from clusterweyl.quiver import vertex_label
from clusterweyl.rootdata import cartan_matrix
from clusterweyl.seeds import Seed


def main():
    fam = sys.argv[1] if len(sys.argv) > 1 else "C"
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    m = int(sys.argv[3]) if len(sys.argv) > 3 else 3
    cd = cartan_matrix(fam, n)
    qm = build_Qm(cd, m)
    for s in cd.letters:
        print(f"== R({s}) on the {m}-layer quiver of type {fam}{n}")
        seed_a = Seed.initial(qm, track_A=True).apply(seq_R(s, 1, m))
        seed_x = Seed.initial(qm, track_X=True).apply(seq_R(s, 1, m))
        for v in qm.ids:
            a = RationalFunction.from_poly(seed_a.A[v])
            if not a.to_string() == v:
                print(f"  A[{vertex_label(v)}] -> {a.to_string()}")
        for v in qm.ids:
            x = seed_x.X[v]
            if x.to_string() != v:
                print(f"  X[{vertex_label(v)}] -> {x.to_string()}")
        print()


if __name__ == "__main__":
    main()
