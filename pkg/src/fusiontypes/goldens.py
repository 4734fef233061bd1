"""Published candidate-type tables for the six odd dimensions below 765 that
are neither p^a q^b nor pqr, and diffing against computed survivor sets."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .rulebook import RuleVerdict, apply_rule
from .typespace import Rule6Scope, RuleContext, SignatureError, TypeSignature, parse_signature, sorted_signatures

GOLDEN_DIMS = (315, 495, 525, 585, 693, 735)
GOLDEN_COUNTS = {315: 7, 495: 12, 525: 11, 585: 6, 693: 9, 735: 10}

FIXTURE_ENV = "FUSIONTYPES_FIXTURE_DIR"


class UnknownGoldenError(KeyError):
    pass


def fixture_dir() -> Path:
    """Root of the fixture tree; ``$FUSIONTYPES_FIXTURE_DIR`` overrides the
    bundled data.  Expected layout: ``golden/dim<N>.txt`` and ``rings/*.json``."""
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("fusiontypes") / "data"))


@dataclass(frozen=True)
class GoldenTable:
    dim: int
    signatures: tuple[TypeSignature, ...]

    def __post_init__(self) -> None:
        for sig in self.signatures:
            if sig.global_dim != self.dim:
                raise SignatureError(f"{sig} has dimension {sig.global_dim}, table is for {self.dim}")
        if len(set(self.signatures)) != len(self.signatures):
            raise SignatureError(f"duplicate signature in table for {self.dim}")

    def as_set(self) -> frozenset[TypeSignature]:
        return frozenset(self.signatures)


def parse_golden_text(text: str) -> GoldenTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("dim="):
        raise SignatureError("golden file must start with a 'dim=<N>' header")
    dim = int(lines[0][4:])
    sigs = []
    for i, ln in enumerate(lines[1:], start=2):
        try:
            sigs.append(TypeSignature(parse_signature(ln).rows, dim))
        except SignatureError as exc:
            raise SignatureError(f"line {i}: {exc}") from exc
    return GoldenTable(dim, tuple(sigs))


@lru_cache(maxsize=None)
def _load(dim: int, root: str) -> GoldenTable:
    path = Path(root) / "golden" / f"dim{dim}.txt"
    table = parse_golden_text(path.read_text())
    if table.dim != dim:
        raise SignatureError(f"{path} declares dim={table.dim}")
    return table


def load_golden(dim: int) -> GoldenTable:
    if dim not in GOLDEN_DIMS:
        raise UnknownGoldenError(f"no golden table for dimension {dim}")
    return _load(dim, str(fixture_dir()))


def all_goldens() -> list[GoldenTable]:
    return [load_golden(d) for d in GOLDEN_DIMS]


@dataclass(frozen=True)
class GoldenDiff:
    dim: int
    missing: tuple[TypeSignature, ...]
    extra: tuple[TypeSignature, ...]
    matched: int

    @property
    def exact(self) -> bool:
        return not self.missing and not self.extra

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "matched": self.matched,
            "missing": [str(s) for s in self.missing],
            "extra": [str(s) for s in self.extra],
        }


def diff_against_golden(dim: int, computed: Iterable[TypeSignature]) -> GoldenDiff:
    golden = load_golden(dim).as_set()
    got = set(computed)
    return GoldenDiff(
        dim,
        tuple(sorted_signatures(golden - got)),
        tuple(sorted_signatures(got - golden)),
        len(golden & got),
    )


def attribute_extras(extras: Iterable[TypeSignature]) -> dict[TypeSignature, RuleVerdict]:
    """Verdict of the unscoped m+9n rule on each extra survivor.

    A rejection here means the extra is explained by the rule-6 scope choice.
    """
    out = {}
    for sig in extras:
        ctx = RuleContext.for_dim(sig.global_dim, rule6_scope=Rule6Scope.STRICT_NO_NINE)
        out[sig] = apply_rule("R6", sig, ctx)
    return out
