#!/usr/bin/env python3
"""Export DOT drawings of the named quiver families to a directory.

Usage: python scripts/export_named_quivers.py [outdir]
"""

import pathlib
import sys

from clusterweyl.constructions import (
    build_D,
    build_D_A1_power,
    build_Qm,
    build_tildeQ,
    coxeter_quiver,
    decorated_word_quiver,
    word_quiver,
)
from clusterweyl.rootdata import cartan_matrix, word_iQ


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
    outdir.mkdir(parents=True, exist_ok=True)
    exports = {
        "coxeter_C3": coxeter_quiver(cartan_matrix("C", 3)),
        "layered_Q4_C3": build_Qm(cartan_matrix("C", 3), 4),
        "word_J_123121_A3": word_quiver(cartan_matrix("A", 3), tuple("123121"))[0],
        "decorated_iQ_C3": decorated_word_quiver("C", 3, "iQ")[0],
        "decorated_iD_C3": decorated_word_quiver("C", 3, "iD")[0],
        "tildeQ_C3": build_tildeQ("C", 3, 1),
        "disk_A3": build_D("A", 3),
        "disk_C3": build_D("C", 3),
        "double_disk_A1": build_D_A1_power(2),
    }
    for name, q in exports.items():
        (outdir / f"{name}.dot").write_text(q.to_dot() + "\n")
        print(f"wrote {outdir / f'{name}.dot'}")


if __name__ == "__main__":
    main()
