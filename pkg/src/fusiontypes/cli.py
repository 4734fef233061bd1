"""Command-line interface.

Exit codes: 0 success, 1 semantic mismatch (violations, unknown verdicts,
golden diffs), 2 usage errors.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import enumerator
from .classifier import UNKNOWN_REPORT, classify_signature, survey
from .fusionring import (
    RingAxiomError,
    RingFormatError,
    load_ring,
    stabilizer,
    verify_ring_axioms,
    verify_self_dual_decomposition,
)
from .goldens import GOLDEN_DIMS, attribute_extras, diff_against_golden, load_golden
from .rulebook import RuleSetConfig, apply_ruleset, filter_types
from .typespace import RuleContext, SignatureError, parse_signature, to_json_obj

FORMATS = click.Choice(["text", "json", "csv"])
MODES = click.Choice(["paper", "strict"])
MAX_LISTED_VIOLATIONS = 50


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _warn(msg: str) -> None:
    click.echo(f"warning: {msg}", err=True)


@click.group()
def main() -> None:
    """Enumerate, filter and classify fusion-category types."""


@main.command("enumerate")
@click.argument("dim", type=click.IntRange(min=1))
@click.option("--raw", is_flag=True, help="Skip elimination rules.")
@click.option("--mode", type=MODES, default="paper", show_default=True)
@click.option("--include-pointed", is_flag=True, help="Also list (1,N).")
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--no-braided", is_flag=True, help="Drop the braided hypothesis (disables all rules).")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--tallies", is_flag=True, help="Print per-rule rejection tallies to stderr.")
def cmd_enumerate(dim, raw, mode, include_pointed, fmt, out, no_braided, workers, tallies):
    """List the candidate types of global dimension DIM."""
    if no_braided and not raw:
        _warn("braided hypothesis dropped; elimination rules disabled, listing raw types")
        raw = True
    counts = None
    if raw:
        sigs = enumerator.enumerate_raw(dim, include_pointed, workers=workers)
        label = "raw"
    else:
        result = filter_types(dim, RuleContext.for_dim(dim), RuleSetConfig.for_mode(mode))
        sigs = list(result.signatures)
        if include_pointed:
            sigs.insert(0, parse_signature(f"(1,{dim})"))
        counts = result.tallies
        label = mode
        if tallies:
            for rule_id, k in counts.items():
                click.echo(f"{rule_id}\t{k}", err=True)
    if fmt == "json":
        text = _dumps(
            {
                "dim": dim,
                "mode": label,
                "include_pointed": include_pointed,
                "count": len(sigs),
                "signatures": [to_json_obj(s) for s in sigs],
                "tallies": counts,
            }
        )
    elif fmt == "csv":
        text = _csv(
            ["signature", "dim", "rows", "unit_count"],
            [[str(s), s.global_dim, len(s.rows), s.unit_count] for s in sigs],
        )
    else:
        text = "".join(f"{s}\n" for s in sigs)
    _emit(text, out)


@main.command("count")
@click.argument("dim", type=click.IntRange(min=1))
def cmd_count(dim):
    """Number of raw types of dimension DIM, pointed one included."""
    click.echo(enumerator.count_raw(dim))


@main.command("survey")
@click.option("--max", "max_dim", type=click.IntRange(min=1), default=764, show_default=True)
@click.option("--min", "min_dim", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--odd", is_flag=True, help="Only odd dimensions.")
@click.option("--mode", type=MODES, default="paper", show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
def cmd_survey(max_dim, min_dim, odd, mode, fmt, out, workers):
    """Classify every dimension in [--min, --max]."""
    if min_dim > max_dim:
        raise click.BadParameter("--min exceeds --max")
    try:
        records = survey(range(min_dim, max_dim + 1), odd, RuleSetConfig.for_mode(mode), workers)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    all_known = all(r.overall.value != "unknown" for r in records)
    if fmt == "json":
        text = _dumps({"records": [r.to_json_obj() for r in records], "all_known": all_known})
    elif fmt == "csv":
        text = _csv(
            ["dim", "shortcut", "total", "surviving", "verdict"],
            [[r.dim, r.shortcut or "", r.types_total, r.types_surviving, r.overall.value] for r in records],
        )
    else:
        lines = []
        for r in records:
            if r.shortcut:
                lines.append(f"{r.dim}\t{r.shortcut}\t{r.overall.value}")
            else:
                lines.append(
                    f"{r.dim}\tneeds_enumeration\ttotal={r.types_total}\t"
                    f"surviving={r.types_surviving}\t{r.overall.value}"
                )
                for sig, rep in r.reports:
                    ids = ",".join(rep.justification_ids) or "-"
                    verdicts = ",".join(sorted(v.value for v in rep.verdicts))
                    lines.append(f"  {sig}\t{rep.branch.value}\t{verdicts}\t{ids}")
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    sys.exit(0 if all_known else 1)


@main.command("classify")
@click.argument("signature")
@click.option(
    "--context",
    type=click.Choice(["braided-integral", "odd-braided-integral", "integral"]),
    default="braided-integral",
    show_default=True,
)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def cmd_classify(signature, context, fmt):
    """Classify one type signature, e.g. "(1,9;3,34)"."""
    try:
        sig = parse_signature(signature)
    except SignatureError as exc:
        raise click.BadParameter(str(exc), param_hint="SIGNATURE") from exc
    if context == "odd-braided-integral" and sig.global_dim % 2 == 0:
        raise click.BadParameter(f"global dimension {sig.global_dim} is even", param_hint="--context")
    braided = context != "integral"
    ctx = RuleContext.for_dim(sig.global_dim, braided=braided)
    if braided:
        verdict = apply_ruleset(sig, ctx, RuleSetConfig.paper())
        report = classify_signature(sig, ctx)
    else:
        _warn("braided hypothesis dropped; no rule or theorem applies")
        verdict = None
        report = UNKNOWN_REPORT
    if fmt == "json":
        rb = verdict.to_json_obj() if verdict else {"outcome": "pass", "rule_id": None, "reason": "rules disabled", "citation": None}
        click.echo(_dumps({"signature": to_json_obj(sig), "rulebook": rb, "report": report.to_json_obj()}), nl=False)
        return
    click.echo(f"signature: {sig} (N={sig.global_dim})")
    if verdict is not None:
        if verdict.passed:
            click.echo("rulebook: pass")
        else:
            click.echo(f"rulebook: reject {verdict.rule_id} [{verdict.citation}] {verdict.reason}")
    click.echo(f"branch: {report.branch.value}")
    click.echo("verdicts: " + ", ".join(sorted(v.value for v in report.verdicts)))
    for j in report.justification:
        click.echo(f"  {j.axiom_id} [{j.citation}]" + (f" {j.note}" if j.note else ""))
    for note in report.notes:
        click.echo(f"note: {note}")


@main.command("verify-ring")
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def cmd_verify_ring(path, fmt):
    """Check the fusion-ring identities of a JSON ring file."""
    try:
        ring = load_ring(path)
    except RingFormatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    violations = verify_ring_axioms(ring)
    orders = None
    if not violations:
        for x in range(ring.rank):
            violations += verify_self_dual_decomposition(ring, x)
    if not violations:
        try:
            orders = [stabilizer(ring, x).order for x in range(ring.rank)]
        except RingAxiomError as exc:
            click.echo(f"stabilizer: {exc}", err=True)
            sys.exit(1)
    ok = not violations
    if fmt == "json":
        click.echo(
            _dumps(
                {
                    "file": str(path),
                    "name": ring.name,
                    "rank": ring.rank,
                    "ok": ok,
                    "stabilizer_orders": orders,
                    "violations": [
                        {"kind": v.kind, "indices": list(v.indices), "detail": v.detail} for v in violations
                    ],
                }
            ),
            nl=False,
        )
    else:
        label = ring.name or path.name
        if ok:
            click.echo(f"ok: {label} (rank {ring.rank}, dims {list(ring.dims)}, stabilizer orders {orders})")
        else:
            click.echo(f"FAIL: {label}: {len(violations)} violation(s)")
            for v in violations[:MAX_LISTED_VIOLATIONS]:
                click.echo(f"  {v}")
            if len(violations) > MAX_LISTED_VIOLATIONS:
                click.echo(f"  ... {len(violations) - MAX_LISTED_VIOLATIONS} more")
    sys.exit(0 if ok else 1)


@main.command("diff-golden")
@click.argument("dim", type=int)
@click.option("--mode", type=MODES, default="paper", show_default=True)
@click.option("--allow-extra", is_flag=True, help="Do not fail on extra survivors.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def cmd_diff_golden(dim, mode, allow_extra, fmt):
    """Compare filtered survivors at DIM with the published table."""
    if dim not in GOLDEN_DIMS:
        raise click.BadParameter(
            f"no golden table for {dim}; available: {', '.join(map(str, GOLDEN_DIMS))}", param_hint="DIM"
        )
    result = filter_types(dim, RuleContext.for_dim(dim), RuleSetConfig.for_mode(mode))
    diff = diff_against_golden(dim, result.signatures)
    attribution = attribute_extras(diff.extra)
    ok = not diff.missing and (allow_extra or not diff.extra)
    golden_count = len(load_golden(dim).signatures)
    if fmt == "json":
        click.echo(
            _dumps(
                {
                    "dim": dim,
                    "mode": mode,
                    "matched": diff.matched,
                    "golden_count": golden_count,
                    "missing": [str(s) for s in diff.missing],
                    "extra": [
                        {
                            "signature": str(s),
                            "unscoped_rule6": attribution[s].outcome.value,
                            "reason": attribution[s].reason,
                        }
                        for s in diff.extra
                    ],
                    "ok": ok,
                }
            ),
            nl=False,
        )
    else:
        click.echo(
            f"dim={dim} mode={mode} matched={diff.matched}/{golden_count} "
            f"missing={len(diff.missing)} extra={len(diff.extra)}"
        )
        for s in diff.missing:
            click.echo(f"missing {s}")
        for s in diff.extra:
            v = attribution[s]
            why = f"unscoped R6 rejects: {v.reason}" if not v.passed else "unscoped R6 passes"
            click.echo(f"extra {s}  [{why}]")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
