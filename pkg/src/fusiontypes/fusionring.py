"""Exact checks on presented fusion rings and small Diophantine oracles.

A ring is given by its simple objects' dimensions, the duality involution and
the multiplicity tensor ``mult[x][y][z]`` = multiplicity of ``z`` in ``x (x) y``.
Only Grothendieck-ring level necessary conditions are checked; braidings are
invisible at this level.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import gcd
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .typespace import TypeSignature

MAX_RANK = 64


class RingFormatError(ValueError):
    """The presentation is not shaped like a fusion ring at all."""


class RingAxiomError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.indices}: {self.detail}"


@dataclass(eq=False)
class FusionRingPresentation:
    dims: tuple[int, ...]
    dual: tuple[int, ...]
    mult: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        self.dims = tuple(int(d) for d in self.dims)
        self.dual = tuple(int(i) for i in self.dual)
        r = len(self.dims)
        if r == 0 or r > MAX_RANK:
            raise RingFormatError(f"rank must be between 1 and {MAX_RANK}, got {r}")
        mult = np.asarray(self.mult)
        if mult.shape != (r, r, r):
            raise RingFormatError(f"mult has shape {mult.shape}, expected {(r, r, r)}")
        if not np.issubdtype(mult.dtype, np.integer):
            raise RingFormatError("mult entries must be integers")
        if len(self.dual) != r or any(not 0 <= i < r for i in self.dual):
            raise RingFormatError("dual must map indices into range(rank)")
        if any(d < 1 for d in self.dims):
            raise RingFormatError("dims must be positive integers")
        # exact arithmetic: fall back to Python ints for large entries
        if mult.size and int(np.abs(mult).max()) > 10**6:
            mult = mult.astype(object)
        else:
            mult = mult.astype(np.int64)
        self.mult = mult

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def invertibles(self) -> list[int]:
        return [i for i, d in enumerate(self.dims) if d == 1]

    @property
    def global_dim(self) -> int:
        return sum(d * d for d in self.dims)

    def copy(self) -> FusionRingPresentation:
        return FusionRingPresentation(self.dims, self.dual, self.mult.copy(), self.name)

    def to_json_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "rank": self.rank,
            "dims": list(self.dims),
            "dual": list(self.dual),
            "mult": self.mult.tolist(),
        }
        if self.name:
            obj["name"] = self.name
        return obj

    @classmethod
    def from_json_obj(cls, obj: Any) -> FusionRingPresentation:
        if not isinstance(obj, dict):
            raise RingFormatError("ring file must hold a JSON object")
        missing = [k for k in ("rank", "dims", "dual", "mult") if k not in obj]
        if missing:
            raise RingFormatError(f"ring file lacks keys {missing}")
        try:
            mult = np.array(obj["mult"])
        except ValueError as exc:
            raise RingFormatError(f"ragged mult tensor: {exc}") from exc
        ring = cls(tuple(obj["dims"]), tuple(obj["dual"]), mult, str(obj.get("name", "")))
        if obj["rank"] != ring.rank:
            raise RingFormatError(f"declared rank {obj['rank']} but {ring.rank} dims given")
        return ring


def load_ring(path: str | Path) -> FusionRingPresentation:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise RingFormatError(f"{path}: invalid JSON ({exc.msg})") from exc
    except (TypeError, ValueError) as exc:
        raise RingFormatError(f"{path}: {exc}") from exc
    return FusionRingPresentation.from_json_obj(obj)


def _mismatches(kind: str, got: np.ndarray, want: np.ndarray, detail: str) -> list[Violation]:
    return [
        Violation(kind, tuple(int(i) for i in idx), detail.format(got=got[tuple(idx)], want=want[tuple(idx)]))
        for idx in np.argwhere(got != want)
    ]


def verify_ring_axioms(ring: FusionRingPresentation) -> list[Violation]:
    """Every violated identity, or an empty list when the ring checks out.

    Checks nonnegativity, the dual involution, unit laws, duality, the
    dimension homomorphism, Frobenius reciprocity, dual compatibility and
    associativity.
    """
    m = ring.mult
    r = ring.rank
    dual = np.array(ring.dual)
    dims = np.array(ring.dims, dtype=object if m.dtype == object else np.int64)
    out: list[Violation] = []

    for idx in np.argwhere(m < 0):
        out.append(Violation("nonnegativity", tuple(int(i) for i in idx), f"entry {m[tuple(idx)]}"))
    if ring.dims[0] != 1:
        out.append(Violation("unit_dim", (0,), f"unit has dim {ring.dims[0]}"))
    if dual[0] != 0:
        out.append(Violation("dual", (0,), f"dual(0)={dual[0]}"))
    for x in range(r):
        if dual[dual[x]] != x:
            out.append(Violation("dual", (x,), f"dual(dual({x}))={dual[dual[x]]}"))
        if ring.dims[dual[x]] != ring.dims[x]:
            out.append(Violation("dual", (x,), f"dim {ring.dims[x]} vs dual dim {ring.dims[dual[x]]}"))
    if any(v.kind in ("dual", "unit_dim") for v in out):
        # the remaining identities presuppose a sane dual
        return out

    eye = np.eye(r, dtype=m.dtype)
    for x in range(r):
        for z in np.flatnonzero(m[0, x] != eye[x]):
            out.append(Violation("unit_left", (0, x, int(z)), f"got {m[0, x, z]}, want {eye[x, z]}"))
        for z in np.flatnonzero(m[x, 0] != eye[x]):
            out.append(Violation("unit_right", (x, 0, int(z)), f"got {m[x, 0, z]}, want {eye[x, z]}"))

    want_dual = np.zeros((r, r), dtype=m.dtype)
    want_dual[np.arange(r), dual] = 1
    for x, y in np.argwhere(m[:, :, 0] != want_dual):
        out.append(Violation("duality", (int(x), int(y), 0), f"got {m[x, y, 0]}, want {want_dual[x, y]}"))

    lhs = np.outer(dims, dims)
    rhs = np.tensordot(m, dims, axes=([2], [0]))
    for x, y in np.argwhere(lhs != rhs):
        out.append(
            Violation("dimension", (int(x), int(y)), f"{lhs[x, y]} != sum of constituents {rhs[x, y]}")
        )

    out += _mismatches("frobenius", m, m[dual].transpose(0, 2, 1), "got {got}, m(x*,z,y)={want}")
    out += _mismatches("frobenius", m, m[:, dual, :].transpose(2, 1, 0), "got {got}, m(z,y*,x)={want}")
    out += _mismatches(
        "dual_compat", m, m[np.ix_(dual, dual, dual)].transpose(1, 0, 2), "got {got}, m(y*,x*,z*)={want}"
    )

    for x in range(r):
        left = np.tensordot(m[x], m, axes=([1], [0]))  # [y,z,v] = sum_w m[x,y,w] m[w,z,v]
        right = np.tensordot(m, m[x], axes=([2], [0]))  # [y,z,v] = sum_w m[y,z,w] m[x,w,v]
        for y, z, v in np.argwhere(left != right):
            out.append(
                Violation(
                    "associativity",
                    (x, int(y), int(z), int(v)),
                    f"((x y) z) has {left[y, z, v]}, (x (y z)) has {right[y, z, v]}",
                )
            )
    return out


@dataclass(frozen=True)
class StabilizerSubgroup:
    object_index: int
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)


def _invertible_product(ring: FusionRingPresentation, g: int, h: int) -> int:
    (k,) = np.flatnonzero(ring.mult[g, h])
    return int(k)


def stabilizer(ring: FusionRingPresentation, x: int) -> StabilizerSubgroup:
    """Invertible objects ``g`` with ``g (x) X`` containing ``X``."""
    if not 0 <= x < ring.rank:
        raise IndexError(f"object index {x} out of range for rank {ring.rank}")
    members = frozenset(g for g in ring.invertibles if ring.mult[g, x, x] >= 1)
    if 0 not in members:
        raise RingAxiomError(f"stabilizer of {x} misses the unit")
    for g in members:
        if ring.dual[g] not in members:
            raise RingAxiomError(f"stabilizer of {x} not closed under inverses at {g}")
        for h in members:
            if _invertible_product(ring, g, h) not in members:
                raise RingAxiomError(f"stabilizer of {x} not closed under {g}*{h}")
    if (ring.dims[x] ** 2) % len(members):
        raise RingAxiomError(f"|G[{x}]|={len(members)} does not divide {ring.dims[x]}^2")
    return StabilizerSubgroup(x, members)


def verify_self_dual_decomposition(ring: FusionRingPresentation, x: int) -> list[Violation]:
    """Check ``X (x) X* = sum over G[X] of g + non-invertible constituents``."""
    if not 0 <= x < ring.rank:
        raise IndexError(f"object index {x} out of range for rank {ring.rank}")
    xd = ring.dual[x]
    row = ring.mult[x, xd]
    members = {g for g in ring.invertibles if ring.mult[g, x, x] >= 1}
    out = []
    for g in ring.invertibles:
        want = 1 if g in members else 0
        if row[g] != want:
            out.append(Violation("decomposition", (x, xd, g), f"invertible {g} appears {row[g]} times, want {want}"))
    budget = ring.dims[x] ** 2 - len(members)
    covered = sum(int(row[z]) * ring.dims[z] for z in range(ring.rank) if ring.dims[z] > 1)
    if covered != budget:
        out.append(
            Violation(
                "decomposition_budget",
                (x,),
                f"dim^2 - |G[X]| = {budget}, non-invertible constituents give {covered}",
            )
        )
    return out


def signature_of(ring: FusionRingPresentation) -> TypeSignature:
    """Dimension histogram of the simple objects as a type signature."""
    hist = Counter(ring.dims)
    return TypeSignature(tuple(sorted(hist.items())))


def abelian_group_ring(orders: Sequence[int], name: str = "") -> FusionRingPresentation:
    """Grothendieck ring of Vec over the product of cyclic groups ``orders``."""
    elements = list(product(*(range(k) for k in orders)))
    index = {e: i for i, e in enumerate(elements)}
    r = len(elements)
    mult = np.zeros((r, r, r), dtype=np.int64)
    dual = []
    for e in elements:
        dual.append(index[tuple((-a) % k for a, k in zip(e, orders))])
        for f in elements:
            s = tuple((a + b) % k for a, b, k in zip(e, f, orders))
            mult[index[e], index[f], index[s]] = 1
    label = name or ("Z" + "xZ".join(str(k) for k in orders) if orders else "Z1")
    return FusionRingPresentation(tuple([1] * r), tuple(dual), mult, label)


# -- Diophantine oracles for the m > 1 argument ------------------------------


def _check_pair(p: int, q: int) -> None:
    if not (1 < p < q):
        raise ValueError(f"need 1 < p < q, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise ValueError(f"need gcd(p, q) = 1, got gcd({p}, {q}) = {gcd(p, q)}")


def diophantine_pq_solutions(p: int, q: int) -> list[tuple[int, int]]:
    """Positive ``(m, n)`` with ``p*q == m*p + n*q``, by exhaustion."""
    _check_pair(p, q)
    return [(m, n) for m in range(1, q) for n in range(1, p) if m * p + n * q == p * q]


def diophantine_p2_solutions(p: int, q: int) -> list[tuple[int, int]]:
    """Positive ``(m, n)`` with ``p*p == m*q + n*p``, by exhaustion."""
    _check_pair(p, q)
    return [
        (m, n)
        for m in range(1, p * p // q + 1)
        for n in range(1, p + 1)
        if m * q + n * p == p * p
    ]
