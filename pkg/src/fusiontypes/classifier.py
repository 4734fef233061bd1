"""Structural verdicts for dimensions and surviving types.

Theorems are encoded as citation-tagged axioms; nothing here re-proves them.
External results (prime-power, pqr and pointed cases) are kept apart from the
results proved for braided categories with Tannakian subcategories.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Iterable, Optional, Sequence

from sympy import factorint, isprime

from .enumerator import count_raw
from .rulebook import RuleSetConfig, filter_types
from .typespace import RuleContext, TypeSignature

# THM_5_1 descent covers odd dimensions below this bound.
ODD_SOLVABILITY_BOUND = 765


class Verdict(str, Enum):
    SOLVABLE = "solvable"
    GROUP_THEORETICAL = "group_theoretical"
    TANNAKIAN = "tannakian_subcategory_exists"
    WEAKLY_GROUP_THEORETICAL = "weakly_group_theoretical"
    UNKNOWN = "unknown"


class Branch(str, Enum):
    B1 = "B1_prime_power_dims"
    B2 = "B2_two_prime_dims"
    B3 = "B3_common_divisor"
    ARITHMETIC = "AX_arithmetic"
    POINTED = "pointed"
    NONE = "none"


@dataclass(frozen=True)
class Axiom:
    axiom_id: str
    citation: str
    statement: str
    external: bool


AXIOMS: dict[str, Axiom] = {
    a.axiom_id: a
    for a in (
        Axiom("COR_3_4", "Corollary 3.4", "integral braided, all simple dims powers of one prime p: solvable", False),
        Axiom("COR_4_3", "Corollary 4.3", "braided of type (1,m;p,n;q,s) with primes p<q: solvable", False),
        Axiom("THM_3_2", "Theorem 3.2", "integral braided, non-unit dims share a prime: C_pt has a nontrivial Tannakian subcategory", False),
        Axiom("THM_3_6", "Theorem 3.6", "dims powers of p and FPdim(C_pt)=p: group-theoretical, type (1,p;p,m) or (1,p)", False),
        Axiom("THM_4_2", "Theorem 4.2", "type (1,m;p,n;q,s), gcd(p,q)=1: nontrivial Tannakian subcategory if p^2<=q or p,q powers of distinct primes", False),
        Axiom("THM_5_1", "Theorem 5.1", "integral braided, odd FPdim < 765: solvable (descent through de-equivariantization)", False),
        Axiom("AX_PRIME_POWER_PQ", "external: ENO weakly group-theoretical", "integral fusion categories of dimension p^a q^b are solvable", True),
        Axiom("AX_PQR", "external: ENO weakly group-theoretical", "integral fusion categories of dimension pqr are group-theoretical (and solvable)", True),
        Axiom("AX_POINTED", "external: definition", "pointed fusion categories are group-theoretical and, with abelian invertibles here, solvable", True),
    )
}


@dataclass(frozen=True)
class Justification:
    axiom_id: str
    citation: str
    note: str = ""

    @classmethod
    def of(cls, axiom_id: str, note: str = "") -> Justification:
        return cls(axiom_id, AXIOMS[axiom_id].citation, note)

    def to_json_obj(self) -> dict:
        return {"id": self.axiom_id, "citation": self.citation, "note": self.note}


@dataclass(frozen=True)
class ClassificationReport:
    verdicts: frozenset[Verdict]
    justification: tuple[Justification, ...]
    branch: Branch
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if Verdict.UNKNOWN in self.verdicts and len(self.verdicts) > 1:
            raise ValueError("unknown excludes every other verdict")
        if not self.verdicts:
            raise ValueError("a report needs at least one verdict")
        if Verdict.UNKNOWN not in self.verdicts and not self.justification:
            raise ValueError("verdicts need a justification")

    @property
    def solvable(self) -> bool:
        return Verdict.SOLVABLE in self.verdicts

    @property
    def unknown(self) -> bool:
        return Verdict.UNKNOWN in self.verdicts

    @property
    def justification_ids(self) -> tuple[str, ...]:
        return tuple(j.axiom_id for j in self.justification)

    def to_json_obj(self) -> dict:
        return {
            "verdicts": sorted(v.value for v in self.verdicts),
            "branch": self.branch.value,
            "justification": [j.to_json_obj() for j in self.justification],
            "notes": list(self.notes),
        }


UNKNOWN_REPORT = ClassificationReport(frozenset({Verdict.UNKNOWN}), (), Branch.NONE)


class ClassifierError(ValueError):
    pass


# -- dimension shortcuts ------------------------------------------------------

NEEDS_ENUMERATION = "needs_enumeration"


def reduce_dimension(n: int) -> str:
    """``AX_PRIME_POWER_PQ`` for p^a q^b, ``AX_PQR`` for squarefree pqr, else
    ``needs_enumeration``."""
    if n < 1:
        raise ValueError(f"global dimension must be positive, got {n}")
    factors = factorint(n)
    if len(factors) <= 2:
        return "AX_PRIME_POWER_PQ"
    if len(factors) == 3 and all(e == 1 for e in factors.values()):
        return "AX_PQR"
    return NEEDS_ENUMERATION


def _shortcut_verdicts(axiom_id: str) -> frozenset[Verdict]:
    if axiom_id == "AX_PQR":
        return frozenset({Verdict.SOLVABLE, Verdict.GROUP_THEORETICAL})
    return frozenset({Verdict.SOLVABLE})


def shortcut_report(axiom_id: str) -> ClassificationReport:
    return ClassificationReport(
        _shortcut_verdicts(axiom_id), (Justification.of(axiom_id),), Branch.ARITHMETIC
    )


# -- per-signature classification -------------------------------------------


def prime_power_base(d: int) -> Optional[int]:
    """The prime p with d = p^k (k >= 1), else None."""
    f = factorint(d)
    return next(iter(f)) if len(f) == 1 else None


def _thm_4_2_cases(p: int, q: int) -> list[str]:
    cases = []
    if p * p <= q:
        cases.append("case (i): p^2 <= q")
    bp, bq = prime_power_base(p), prime_power_base(q)
    if bp is not None and bq is not None and bp != bq:
        cases.append("case (ii): p, q powers of distinct primes")
    return cases


def classify_signature(sig: TypeSignature, ctx: RuleContext | None = None) -> ClassificationReport:
    """Branch in priority order: pointed, B1, B2, B3, THM_4_2 case (i)."""
    ctx = ctx if ctx is not None else RuleContext.for_dim(sig.global_dim)
    if not (ctx.integral and ctx.braided):
        raise ClassifierError("classification needs an integral braided context")
    if not ctx.matches(sig.global_dim):
        raise ClassifierError(f"context parity does not match global dimension {sig.global_dim}")

    if sig.is_pointed:
        return ClassificationReport(
            frozenset({Verdict.SOLVABLE, Verdict.GROUP_THEORETICAL}),
            (Justification.of("AX_POINTED"),),
            Branch.POINTED,
        )

    dims = sig.nonunit_dims
    n1, n = sig.unit_count, sig.global_dim
    bases = {prime_power_base(d) for d in dims}

    if len(bases) == 1 and None not in bases:
        p = bases.pop()
        verdicts = {Verdict.SOLVABLE, Verdict.TANNAKIAN}
        just = [Justification.of("COR_3_4", f"p={p}"), Justification.of("THM_3_2", f"common prime {p}")]
        notes = []
        if n1 == p:
            if len(sig.rows) == 2 and dims[0] == p:
                verdicts.add(Verdict.GROUP_THEORETICAL)
                just.append(Justification.of("THM_3_6", f"type (1,{p};{p},{sig.rows[1][1]})"))
            else:
                notes.append(f"n1={p} forces type (1,{p};{p},m); this shape cannot occur")
        return ClassificationReport(frozenset(verdicts), tuple(just), Branch.B1, tuple(notes))

    coprime_pair = len(dims) == 2 and gcd(dims[0], dims[1]) == 1
    if coprime_pair:
        p, q = dims
        cases = _thm_4_2_cases(p, q)
        if any(c.startswith("case (ii)") for c in cases):
            verdicts = {Verdict.TANNAKIAN}
            just = [Justification.of("THM_4_2", c + f"; p={p}, q={q}") for c in cases]
            notes = []
            if isprime(p) and isprime(q):
                verdicts.add(Verdict.SOLVABLE)
                just.insert(0, Justification.of("COR_4_3", f"p={p}, q={q}"))
            else:
                notes.append(f"{p}, {q} not both prime; solvability not covered")
            return ClassificationReport(frozenset(verdicts), tuple(just), Branch.B2, tuple(notes))

    g = 0
    for d in dims:
        g = gcd(g, d)
    if g > 1:
        verdicts = {Verdict.TANNAKIAN}
        just = [Justification.of("THM_3_2", f"common divisor {g}")]
        notes = []
        if n % 2 == 1 and n < ODD_SOLVABILITY_BOUND:
            verdicts.add(Verdict.SOLVABLE)
            just.append(Justification.of("THM_5_1", "conditional: via Theorem 5.1 descent"))
        else:
            notes.append("solvability only asserted for odd N < 765")
        return ClassificationReport(frozenset(verdicts), tuple(just), Branch.B3, tuple(notes))

    if coprime_pair:
        cases = _thm_4_2_cases(*dims)
        if cases:
            return ClassificationReport(
                frozenset({Verdict.TANNAKIAN}),
                tuple(Justification.of("THM_4_2", c) for c in cases),
                Branch.NONE,
            )
    return UNKNOWN_REPORT


# -- survey -------------------------------------------------------------------


@dataclass
class SurveyRecord:
    dim: int
    shortcut: Optional[str]
    types_total: int
    types_surviving: int
    reports: list[tuple[TypeSignature, ClassificationReport]] = field(default_factory=list)
    overall: Verdict = Verdict.UNKNOWN

    def __post_init__(self) -> None:
        if (self.shortcut is not None) != (self.types_total == 0):
            raise ValueError("shortcut is present exactly when no enumeration was run")

    @property
    def needs_enumeration(self) -> bool:
        return self.shortcut is None

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "shortcut": self.shortcut,
            "types_total": self.types_total,
            "types_surviving": self.types_surviving,
            "overall": self.overall.value,
            "reports": [
                {"signature": str(sig), **rep.to_json_obj()} for sig, rep in self.reports
            ],
        }


def survey_dimension(n: int, cfg: RuleSetConfig | None = None) -> SurveyRecord:
    shortcut = reduce_dimension(n)
    if shortcut != NEEDS_ENUMERATION:
        return SurveyRecord(n, shortcut, 0, 0, [], Verdict.SOLVABLE)
    ctx = RuleContext.for_dim(n)
    result = filter_types(n, ctx, cfg or RuleSetConfig.paper())
    reports = [(sig, classify_signature(sig, ctx)) for sig in result.signatures]
    # the omitted pointed type is solvable outright
    overall = Verdict.SOLVABLE if all(r.solvable for _, r in reports) else Verdict.UNKNOWN
    return SurveyRecord(n, None, count_raw(n), len(reports), reports, overall)


def _survey_task(args: tuple[int, RuleSetConfig | None]) -> SurveyRecord:
    return survey_dimension(*args)


def survey(
    dims: Iterable[int],
    odd_only: bool = False,
    cfg: RuleSetConfig | None = None,
    workers: int = 1,
) -> list[SurveyRecord]:
    """One record per dimension, in ascending order."""
    todo: Sequence[int] = sorted({d for d in dims if not odd_only or d % 2 == 1})
    if not todo:
        raise ValueError("survey range is empty")
    if workers <= 1:
        return [survey_dimension(d, cfg) for d in todo]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_survey_task, [(d, cfg) for d in todo]))
