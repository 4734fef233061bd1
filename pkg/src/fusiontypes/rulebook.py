"""Elimination rules for types of integral braided fusion categories.

Each rule is a pure predicate over a :class:`TypeSignature` and a
:class:`RuleContext`.  Rule ids ``R1``..``R10`` are stable public identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Callable, Iterable, Optional

from sympy import primefactors

from . import enumerator
from .enumerator import SearchStats, coin_counts
from .typespace import Rule6Scope, RuleContext, TypeSignature


class RuleError(ValueError):
    """Unknown rule id or a context that lacks the rules' hypotheses."""


class Outcome(str, Enum):
    PASS = "pass"
    REJECT = "reject"


@dataclass(frozen=True)
class RuleVerdict:
    outcome: Outcome
    rule_id: str = ""
    reason: str = ""
    citation: str = ""

    def __post_init__(self) -> None:
        if self.outcome is Outcome.REJECT and not (self.rule_id and self.citation):
            raise ValueError("a rejection must carry a rule id and a citation")

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    def to_json_obj(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "rule_id": self.rule_id or None,
            "reason": self.reason,
            "citation": self.citation or None,
        }


PASS = RuleVerdict(Outcome.PASS)

# A check returns None when the signature passes, else the rejection reason.
Check = Callable[[TypeSignature, RuleContext], Optional[str]]


@dataclass(frozen=True)
class Rule:
    rule_id: str
    citation: str
    summary: str
    check: Check


def _r1(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    n = sig.global_dim
    for d in sig.nonunit_dims:
        if n % d:
            return f"dim {d} does not divide {n}"
    return None


def _r2(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if not ctx.odd_dim:
        return None
    for d, c in sig.nonunit_rows:
        if d % 2 == 0:
            return f"even dim {d} in odd global dimension"
        if c % 2:
            return f"odd count {c} for dim {d} in odd global dimension"
    return None


def _r3(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    n1, n = sig.unit_count, sig.global_dim
    if n % n1:
        return f"n1={n1} does not divide {n}"
    for d, c in sig.nonunit_rows:
        if (c * d * d) % n1:
            return f"n1={n1} does not divide {c}*{d}^2={c * d * d}"
    return None


def _r4(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if ctx.odd_dim and sig.has_dim(3) and sig.unit_count % 3:
        return f"dim-3 row present but 3 does not divide n1={sig.unit_count}"
    return None


def _r5(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if not (ctx.odd_dim and sig.unit_count == 3 and sig.has_dim(3)):
        return None
    k = 3 + 9 * sig.count_of(3)
    if sig.global_dim % k:
        return f"3+9*{sig.count_of(3)}={k} does not divide {sig.global_dim}"
    return None


def _rule6_applies(sig: TypeSignature, scope: Rule6Scope) -> bool:
    if scope is Rule6Scope.OFF:
        return False
    if scope is Rule6Scope.TWO_ROW_ONLY:
        return len(sig.rows) == 2
    if scope is Rule6Scope.NO_DIM_BETWEEN_4_AND_9:
        return not any(4 <= d <= 9 for d in sig.nonunit_dims)
    return True


def _r6(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if not (ctx.odd_dim and sig.has_dim(3)) or sig.has_dim(9):
        return None
    if not _rule6_applies(sig, ctx.rule6_scope):
        return None
    k = sig.unit_count + 9 * sig.count_of(3)
    if sig.global_dim % k:
        return f"m+9n={k} does not divide {sig.global_dim} (scope {ctx.rule6_scope.value})"
    return None


def _r7(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if not (ctx.odd_dim and sig.has_dim(5)) or sig.has_dim(3) or sig.has_dim(7):
        return None
    if sig.unit_count % 5:
        return f"dim-5 row without dims 3, 7 but 5 does not divide n1={sig.unit_count}"
    return None


def _r8(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if len(sig.rows) == 2:
        t = sig.rows[1][0]
        if sig.unit_count % t:
            return f"two-row type with t={t} not dividing m={sig.unit_count}"
    return None


def _r9(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    if len(sig.rows) == 3 and sig.unit_count <= 1:
        return "three-row type needs nontrivial invertible objects"
    return None


def common_prime_divisors(dims: Iterable[int]) -> list[int]:
    g = 0
    for d in dims:
        g = gcd(g, d)
    return primefactors(g) if g > 1 else []


def _r10(sig: TypeSignature, ctx: RuleContext) -> Optional[str]:
    for p in common_prime_divisors(sig.nonunit_dims):
        if sig.unit_count % p:
            return f"common prime {p} of non-unit dims does not divide n1={sig.unit_count}"
    return None


RULES: dict[str, Rule] = {
    r.rule_id: r
    for r in (
        Rule("R1", "Lemma 5.4(1)", "every non-unit dim divides N", _r1),
        Rule("R2", "Lemma 5.4(2)", "odd N: non-unit dims odd, counts even", _r2),
        Rule("R3", "Lemma 5.4(3)", "n1 divides N and every n_i*d_i^2", _r3),
        Rule("R4", "Lemma 5.4(4)", "odd N with a dim-3 row: 3 divides n1", _r4),
        Rule("R5", "Lemma 5.4(5)", "odd N, n1=3, dim-3 count n: 3+9n divides N", _r5),
        Rule("R6", "Lemma 5.4(6)", "odd N, dim 3, no dim 9: m+9n divides N (scoped)", _r6),
        Rule("R7", "Lemma 5.4(7)", "odd N, dim 5, no dims 3 or 7: 5 divides n1", _r7),
        Rule("R8", "Lemma 5.4(8)", "type (1,m;t,n): t divides m", _r8),
        Rule("R9", "Lemma 5.4(9)", "three-row type: n1 > 1", _r9),
        Rule("R10", "Lemma 2.1", "common prime p of non-unit dims divides n1", _r10),
    )
}
RULE_ORDER: tuple[str, ...] = tuple(RULES)


class Mode(str, Enum):
    PAPER = "paper"
    STRICT = "strict"
    CUSTOM = "custom"


@dataclass(frozen=True)
class RuleSetConfig:
    """Which rules run, and the R6 scope to use.

    ``rule6_scope=None`` defers to the context's scope (custom mode only).
    """

    enabled_rules: tuple[str, ...] = ()
    mode: Mode = Mode.CUSTOM
    rule6_scope: Optional[Rule6Scope] = None

    def __post_init__(self) -> None:
        unknown = [r for r in self.enabled_rules if r not in RULES]
        if unknown:
            raise RuleError(f"unknown rule ids: {unknown}")
        ordered = tuple(r for r in RULE_ORDER if r in set(self.enabled_rules))
        object.__setattr__(self, "enabled_rules", ordered)
        object.__setattr__(self, "mode", Mode(self.mode))

    @classmethod
    def paper(cls) -> RuleSetConfig:
        return cls(
            ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"),
            Mode.PAPER,
            Rule6Scope.TWO_ROW_ONLY,
        )

    @classmethod
    def strict(cls) -> RuleSetConfig:
        return cls(RULE_ORDER, Mode.STRICT, Rule6Scope.STRICT_NO_NINE)

    @classmethod
    def custom(cls, rules: Iterable[str], rule6_scope: Rule6Scope | str | None = None) -> RuleSetConfig:
        scope = Rule6Scope(rule6_scope) if rule6_scope is not None else None
        return cls(tuple(rules), Mode.CUSTOM, scope)

    @classmethod
    def for_mode(cls, mode: Mode | str) -> RuleSetConfig:
        mode = Mode(mode)
        if mode is Mode.PAPER:
            return cls.paper()
        if mode is Mode.STRICT:
            return cls.strict()
        raise RuleError("custom mode needs an explicit rule list")

    def effective_context(self, ctx: RuleContext) -> RuleContext:
        if self.rule6_scope is None or self.rule6_scope is ctx.rule6_scope:
            return ctx
        return RuleContext(ctx.integral, ctx.braided, ctx.odd_dim, self.rule6_scope)


def _require_hypotheses(sig: TypeSignature, ctx: RuleContext) -> None:
    if not (ctx.integral and ctx.braided):
        raise RuleError("elimination rules need an integral braided context")
    if not ctx.matches(sig.global_dim):
        raise RuleError(
            f"context parity (odd_dim={ctx.odd_dim}) does not match global dimension {sig.global_dim}"
        )


def apply_rule(rule_id: str, sig: TypeSignature, ctx: RuleContext) -> RuleVerdict:
    try:
        rule = RULES[rule_id]
    except KeyError:
        raise RuleError(f"unknown rule id {rule_id!r}") from None
    _require_hypotheses(sig, ctx)
    reason = rule.check(sig, ctx)
    if reason is None:
        return PASS
    return RuleVerdict(Outcome.REJECT, rule_id, reason, rule.citation)


def apply_ruleset(sig: TypeSignature, ctx: RuleContext, cfg: RuleSetConfig) -> RuleVerdict:
    """First rejection among the enabled rules, in R1..R10 order, else pass."""
    _require_hypotheses(sig, ctx)
    ctx = cfg.effective_context(ctx)
    for rule_id in cfg.enabled_rules:
        rule = RULES[rule_id]
        reason = rule.check(sig, ctx)
        if reason is not None:
            return RuleVerdict(Outcome.REJECT, rule_id, reason, rule.citation)
    return PASS


@dataclass
class FilterResult:
    """Survivors of a rule set at one dimension, with diagnostics.

    ``tallies[rule_id]`` counts non-pointed types whose first rejecting rule
    is ``rule_id``; ``candidates_total`` is the number of non-pointed types.
    """

    dim: int
    signatures: list[TypeSignature]
    tallies: dict[str, int]
    candidates_total: int
    stats: SearchStats = field(default_factory=SearchStats)

    def __iter__(self):
        return iter(self.signatures)

    def __len__(self) -> int:
        return len(self.signatures)


# The first three rules only constrain which dims occur, their counts and n1,
# so they can be pushed into the search.  Rejections they would have made are
# counted with coin-change generating functions instead of being enumerated.


def _allowed_dims(n: int, use_r1: bool, use_r2: bool) -> list[int]:
    dims = range(2, enumerator.default_max_dim(n) + 1)
    return [d for d in dims if (not use_r1 or n % d == 0) and (not use_r2 or d % 2 == 1)]


def _pruned_count(n: int, use_r1: bool, use_r2: bool, use_r3: bool) -> int:
    dims = _allowed_dims(n, use_r1, use_r2)
    base = 2 if use_r2 else 1
    if not use_r3:
        ways = coin_counts(n - 1, [base * d * d for d in dims])
        return sum(ways[1:])
    total = 0
    for n1 in _unit_counts(n):
        steps = [_step(n1, d, base) for d in dims]
        total += coin_counts(n - n1, [s * d * d for s, d in zip(steps, dims)])[n - n1]
    return total


def _unit_counts(n: int) -> list[int]:
    return [k for k in range(n - 1, 0, -1) if n % k == 0]


def _step(n1: int, d: int, base: int) -> int:
    # smallest count c with n1 | c*d^2, combined with the parity requirement
    s = n1 // gcd(n1, d * d)
    return s * base // gcd(s, base)


def _candidates(n: int, use_r1: bool, use_r2: bool, use_r3: bool, stats: SearchStats):
    dims = _allowed_dims(n, use_r1, use_r2)
    base = 2 if use_r2 else 1
    if not use_r3:
        if not use_r1 and not use_r2:
            yield from enumerator.iter_raw(n, False, stats=stats)
            return
        n1_range = range(n - 1, 0, -1)
    else:
        n1_range = _unit_counts(n)
    for n1 in n1_range:
        steps = [_step(n1, d, base) if use_r3 else base for d in dims]
        for rows in enumerator.iter_exact_rows(n - n1, dims, steps, stats):
            yield TypeSignature._trusted(((1, n1),) + rows, n)


def filter_types(
    n: int,
    ctx: RuleContext | None = None,
    cfg: RuleSetConfig | None = None,
) -> FilterResult:
    """Non-pointed types of dimension ``n`` that pass ``cfg``, canonical order."""
    if n < 1:
        raise ValueError(f"global dimension must be positive, got {n}")
    ctx = ctx if ctx is not None else RuleContext.for_dim(n)
    cfg = cfg if cfg is not None else RuleSetConfig.paper()
    if not ctx.matches(n):
        raise RuleError(f"context parity does not match global dimension {n}")
    if cfg.enabled_rules and not (ctx.integral and ctx.braided):
        raise RuleError("elimination rules need an integral braided context")

    enabled = set(cfg.enabled_rules)
    use_r1 = "R1" in enabled
    use_r2 = "R2" in enabled and ctx.odd_dim
    use_r3 = "R3" in enabled
    tallies = {r: 0 for r in cfg.enabled_rules}
    total = enumerator.count_raw(n) - 1

    # successive pruned counts attribute rejections to R1, R2, R3 in order
    flags = [False, False, False]
    prev = total
    for i, (rule_id, on) in enumerate((("R1", use_r1), ("R2", use_r2), ("R3", use_r3))):
        if on:
            flags[i] = True
            cur = _pruned_count(n, *flags)
            tallies[rule_id] += prev - cur
            prev = cur

    stats = SearchStats()
    survivors = []
    for sig in _candidates(n, use_r1, use_r2, use_r3, stats):
        verdict = apply_ruleset(sig, ctx, cfg)
        if verdict.passed:
            survivors.append(sig)
        else:
            tallies[verdict.rule_id] += 1
    survivors.sort(key=TypeSignature.sort_key)
    return FilterResult(n, survivors, tallies, total, stats)
