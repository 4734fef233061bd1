"""Candidate types of integral braided fusion categories: enumeration,
elimination, classification and fusion-ring checks."""

from .classifier import (
    Branch,
    ClassificationReport,
    SurveyRecord,
    Verdict,
    classify_signature,
    reduce_dimension,
    survey,
)
from .enumerator import count_raw, enumerate_raw, iter_raw
from .fusionring import (
    FusionRingPresentation,
    diophantine_p2_solutions,
    diophantine_pq_solutions,
    load_ring,
    stabilizer,
    verify_ring_axioms,
    verify_self_dual_decomposition,
)
from .goldens import GoldenTable, diff_against_golden, load_golden
from .rulebook import RuleSetConfig, RuleVerdict, apply_rule, apply_ruleset, filter_types
from .typespace import (
    Rule6Scope,
    RuleContext,
    SignatureError,
    TypeSignature,
    canonical_format,
    parse_signature,
)

__version__ = "0.1.0"
