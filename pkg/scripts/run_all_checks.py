#!/usr/bin/env python3
"""Run the full verification battery and write one certificate per check.

Usage: python scripts/run_all_checks.py [outdir]
"""

import json
import pathlib
import sys

from clusterweyl.constructions import build_Qm, word_quiver
from clusterweyl.rootdata import cartan_matrix, word_iQ
from clusterweyl.verify import (
    check_braid,
    check_braid_weyl_D,
    check_closed_forms,
    check_construction_pins,
    check_equivalences,
    check_f_identity,
    check_green_and_DT,
    check_laurent_random,
    check_peripheral_and_casimir,
    check_R_preserves_quiver,
    check_separation,
)


def battery():
    yield "quiver_A2_m2", check_R_preserves_quiver("A", 2, 2)
    yield "quiver_A3_m3", check_R_preserves_quiver("A", 3, 3)
    yield "quiver_C3_m4", check_R_preserves_quiver("C", 3, 4)
    yield "quiver_B3_m3", check_R_preserves_quiver("B", 3, 3)
    yield "quiver_D4_m3", check_R_preserves_quiver("D", 4, 3)
    for mode in ("A", "X", "tropical", "decorated"):
        yield f"closed_forms_C3_{mode}", check_closed_forms("C", 3, 3, mode)
    for t, n in [("A1xA1", 2), ("A", 2), ("C", 2), ("G2", 2)]:
        for m in (2, 3):
            yield f"braid_{t}_m{m}", check_braid(t, n, m)
    yield "braid_A3_m2", check_braid("A", 3, 2)
    yield "braid_C3_m2", check_braid("C", 3, 2)
    yield "peripheral_A2", check_peripheral_and_casimir("A", 2, 2)
    yield "peripheral_C3", check_peripheral_and_casimir("C", 3, 3)
    for fam, n, m in [("A", 2, 2), ("A", 2, 3), ("A", 3, 2), ("C", 3, 3)]:
        yield f"green_dt_{fam}{n}_m{m}", check_green_and_DT(fam, n, m)
    yield "laurent_Q2A3", check_laurent_random(
        build_Qm(cartan_matrix("A", 3), 2), runs=200, max_len=15, label="Q2(A3)"
    )
    yield "laurent_JiQ3", check_laurent_random(
        word_quiver(cartan_matrix("A", 3), word_iQ("A", 3))[0],
        runs=200,
        max_len=15,
        label="J(iQ(3))",
    )
    yield "pins", check_construction_pins()
    yield "equivalences", check_equivalences()
    yield "braid_weyl_disk", check_braid_weyl_D()
    yield "f_identity_A2", check_f_identity("A", 2, 3)
    yield "f_identity_C3", check_f_identity("C", 3, 3)
    yield "separation_A2", check_separation("A", 2, 2, runs=50)


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "certificates")
    outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name, cert in battery():
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(cert.to_json(), indent=2) + "\n")
        status = "PASS" if cert.ok() else "FAIL"
        if not cert.ok():
            failures += 1
        print(f"[{status}] {name}  ({cert.wall_time:.2f}s)")
    print(f"\n{failures} failing checks; certificates in {outdir}/")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
