"""Type signatures of integral fusion categories and their text/JSON forms.

A type ``(1,n1;d2,n2;...;ds,ns)`` records that there are ``ni`` simple objects
of Frobenius-Perron dimension ``di``.  The global dimension is
``sum(ni * di**2)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping

# All target dimensions are below this; larger inputs are rejected rather than
# silently handled, so 64-bit ports stay faithful.
MAX_GLOBAL_DIM = 10**6

_ROW_RE = re.compile(r"(\d+),(\d+)")
_TEXT_RE = re.compile(r"\(\d+,\d+(?:;\d+,\d+)*\)")


class SignatureError(ValueError):
    """Raised for malformed or inconsistent type signatures."""


Row = tuple[int, int]


@dataclass(frozen=True)
class TypeSignature:
    """Candidate type of a fusion category.

    ``rows`` holds ``(dim, count)`` pairs in strictly increasing ``dim`` order
    starting with the unit row ``(1, n1)``.  ``global_dim`` may be passed to
    assert the expected dimension; it is computed when omitted.
    """

    rows: tuple[Row, ...]
    global_dim: int = field(default=0)

    def __post_init__(self) -> None:
        rows = tuple((int(d), int(n)) for d, n in self.rows)
        if not rows:
            raise SignatureError("a type needs at least the unit row")
        if rows[0][0] != 1:
            raise SignatureError(f"first dim must be 1, got {rows[0][0]}")
        prev = 0
        for d, n in rows:
            if d <= prev:
                raise SignatureError(f"dims must be strictly increasing: {d} after {prev}")
            if n < 1:
                raise SignatureError(f"count for dim {d} must be positive, got {n}")
            prev = d
        total = sum(n * d * d for d, n in rows)
        if total > MAX_GLOBAL_DIM:
            raise SignatureError(f"global dimension {total} exceeds supported bound {MAX_GLOBAL_DIM}")
        if self.global_dim and self.global_dim != total:
            raise SignatureError(
                f"rows sum to {total}, declared global dimension is {self.global_dim}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "global_dim", total)

    @classmethod
    def _trusted(cls, rows: tuple[Row, ...], global_dim: int) -> TypeSignature:
        # Skips validation; only for rows produced by the enumerator.
        sig = object.__new__(cls)
        object.__setattr__(sig, "rows", rows)
        object.__setattr__(sig, "global_dim", global_dim)
        return sig

    @property
    def unit_count(self) -> int:
        """Number of invertible simple objects, ``n1``."""
        return self.rows[0][1]

    @property
    def nonunit_rows(self) -> tuple[Row, ...]:
        return self.rows[1:]

    @property
    def nonunit_dims(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.rows[1:])

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.rows)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.rows)

    @property
    def is_pointed(self) -> bool:
        return len(self.rows) == 1

    def count_of(self, dim: int) -> int:
        """Count of simple objects of dimension ``dim`` (0 if absent)."""
        for d, n in self.rows:
            if d == dim:
                return n
        return 0

    def has_dim(self, dim: int) -> bool:
        return any(d == dim for d, _ in self.rows)

    def sort_key(self) -> tuple:
        """Canonical order: row count, then dims, then counts descending."""
        return (len(self.rows), self.dims, tuple(-n for n in self.counts))

    def __str__(self) -> str:
        return canonical_format(self)


def signature(*rows: Row) -> TypeSignature:
    """Shorthand: ``signature((1, 63), (3, 28))``."""
    return TypeSignature(tuple(rows))


def canonical_format(sig: TypeSignature) -> str:
    return "(" + ";".join(f"{d},{n}" for d, n in sig.rows) + ")"


def to_json_obj(sig: TypeSignature) -> dict[str, Any]:
    return {"dim": sig.global_dim, "rows": [{"d": d, "n": n} for d, n in sig.rows]}


def from_json_obj(obj: Mapping[str, Any]) -> TypeSignature:
    try:
        rows = tuple((int(r["d"]), int(r["n"])) for r in obj["rows"])
        declared = int(obj["dim"]) if "dim" in obj else 0
    except (KeyError, TypeError, ValueError) as exc:
        raise SignatureError(f"malformed JSON signature: {exc}") from exc
    if "dim" in obj and declared < 1:
        raise SignatureError(f"declared dimension must be positive, got {declared}")
    return TypeSignature(rows, declared)


def parse_signature(text: str) -> TypeSignature:
    """Parse the canonical text form ``(1,63;3,28)`` or the JSON form.

    >>> parse_signature("(1,63;3,28)").global_dim
    315
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SignatureError(f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise SignatureError("JSON signature must be an object")
        return from_json_obj(obj)
    if not _TEXT_RE.fullmatch(stripped):
        raise SignatureError(f"not a type signature: {text!r}")
    rows = tuple((int(d), int(n)) for d, n in _ROW_RE.findall(stripped))
    return TypeSignature(rows)


def parse_many(text: str) -> list[TypeSignature]:
    """Parse every parenthesised signature in ``text``, in order."""
    return [parse_signature(m) for m in re.findall(r"\([^()]*\)", text)]


class Rule6Scope(str, Enum):
    """Which signatures the m+9n divisibility rule is applied to."""

    OFF = "off"
    TWO_ROW_ONLY = "two_row_only"
    NO_DIM_BETWEEN_4_AND_9 = "no_dim_between_4_and_9"
    STRICT_NO_NINE = "strict_no_nine"


@dataclass(frozen=True)
class RuleContext:
    """Hypotheses under which elimination rules are evaluated."""

    integral: bool = True
    braided: bool = True
    odd_dim: bool = True
    rule6_scope: Rule6Scope = Rule6Scope.TWO_ROW_ONLY

    def __post_init__(self) -> None:
        object.__setattr__(self, "rule6_scope", Rule6Scope(self.rule6_scope))

    @classmethod
    def for_dim(
        cls,
        global_dim: int,
        *,
        integral: bool = True,
        braided: bool = True,
        rule6_scope: Rule6Scope | str = Rule6Scope.TWO_ROW_ONLY,
    ) -> RuleContext:
        return cls(integral, braided, global_dim % 2 == 1, Rule6Scope(rule6_scope))

    def matches(self, global_dim: int) -> bool:
        return self.odd_dim == (global_dim % 2 == 1)


def sorted_signatures(sigs: Iterable[TypeSignature]) -> list[TypeSignature]:
    return sorted(sigs, key=TypeSignature.sort_key)
