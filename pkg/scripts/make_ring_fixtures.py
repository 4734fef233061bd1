"""Regenerate the bundled fusion ring fixtures under src/fusiontypes/data/rings."""

import json
from pathlib import Path

import numpy as np

from fusiontypes.fusionring import FusionRingPresentation, abelian_group_ring

OUT = Path(__file__).resolve().parents[1] / "src" / "fusiontypes" / "data" / "rings"

# abelian groups of order <= 12, one invariant-factor decomposition each
ABELIAN = [
    (), (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2),
    (9,), (3, 3), (10,), (11,), (12,), (2, 6),
]


def from_rules(name, dims, rules):
    """Build a self-dual ring from x*y -> {z: mult} rules (commutative)."""
    r = len(dims)
    mult = np.zeros((r, r, r), dtype=np.int64)
    for x in range(r):
        mult[0, x, x] = mult[x, 0, x] = 1
    for (x, y), out in rules.items():
        for z, k in out.items():
            mult[x, y, z] = mult[y, x, z] = k
    return FusionRingPresentation(dims, tuple(range(r)), mult, name)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rings = [abelian_group_ring(o) for o in ABELIAN]
    # Rep(S3): trivial, sign, standard
    rings.append(from_rules("RepS3", (1, 1, 2), {
        (1, 1): {0: 1}, (1, 2): {2: 1}, (2, 2): {0: 1, 1: 1, 2: 1},
    }))
    # Rep(D5): trivial, sign, rho1, rho2
    rings.append(from_rules("RepD5", (1, 1, 2, 2), {
        (1, 1): {0: 1}, (1, 2): {2: 1}, (1, 3): {3: 1},
        (2, 2): {0: 1, 1: 1, 3: 1}, (3, 3): {0: 1, 1: 1, 2: 1}, (2, 3): {2: 1, 3: 1},
    }))
    for ring in rings:
        path = OUT / f"{ring.name}.json"
        path.write_text(json.dumps(ring.to_json_obj(), separators=(",", ":")) + "\n")
        print(path.name)


if __name__ == "__main__":
    main()
