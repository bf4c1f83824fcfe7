"""Command-line interface.

JSON output (the default) is stable: keys are sorted and floats rounded
to 12 decimals so golden files diff cleanly.  ``--format table`` renders
the human-facing layout instead; for trees that is Graphviz DOT text.

Exit codes: 0 success, 1 domain error (missing definition, invalid
sequence, corrupt store, ...), 2 usage error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .core import (
    CompensationConfig,
    LearningSession,
    RetentionConfig,
    ThresholdConfig,
    format_timestamp,
)
from .core import compensate as compensate_state
from .engine import Engine
from .errors import UttreeError
from .fixtures import FIXTURE_NAMES, fixture_json
from .jsonutil import round_floats
from .recommend import POLICY_MIN_COUNT, POLICY_PUD, TIE_BREAK_ASCENDING, TIE_BREAK_GIVEN
from .store import EngineConfig, Store, default_evaluation_time
from .tree import BKP_POLICY_ACTUAL, BKP_POLICY_ASSUMED, complexity


def emit_json(payload) -> None:
    click.echo(json.dumps(round_floats(payload), sort_keys=True, indent=2))


def domain_errors(fn):
    """Map domain exceptions onto exit code 1 with a one-line message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except UttreeError as exc:
            click.echo(f"error ({exc.code}): {exc}", err=True)
            sys.exit(1)

    return wrapper


def _parse_groups(groups: tuple[str, ...]) -> tuple[frozenset[str], ...]:
    return tuple(
        frozenset(part.strip() for part in group.split(",") if part.strip())
        for group in groups
    )


def _parse_shares(pairs: tuple[str, ...]) -> dict[str, float]:
    shares: dict[str, float] = {}
    for pair in pairs:
        kp, _, raw = pair.partition("=")
        if not kp or not raw:
            raise click.UsageError(f"--share expects KP=FRACTION, got {pair!r}")
        try:
            shares[kp] = float(raw)
        except ValueError:
            raise click.UsageError(f"--share fraction must be a number, got {raw!r}")
    return shares


def _engine(ctx: click.Context) -> Engine:
    return Engine(Store(ctx.obj["store_dir"]))


def format_option(fn):
    """Let subcommands accept --format too, overriding the group-level flag."""
    return click.option(
        "--format",
        "format_override",
        type=click.Choice(["json", "table"]),
        default=None,
        help="Override the global --format for this command.",
    )(fn)


def _format(ctx: click.Context, format_override: str | None) -> str:
    return format_override or ctx.obj["format"]


def _kv_table(payload: dict) -> str:
    width = max(len(str(k)) for k in payload)
    return "\n".join(f"{str(k).ljust(width)}  {v}" for k, v in payload.items())


@click.group()
@click.option(
    "--store",
    "store_dir",
    envvar="UTTREE_STORE",
    type=click.Path(path_type=Path),
    default=Path(".uttree"),
    show_default=True,
    help="Store directory (env: UTTREE_STORE).",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "table"]),
    default="json",
    show_default=True,
)
@click.version_option(package_name="uttree")
@click.pass_context
def main(ctx: click.Context, store_dir: Path, output_format: str):
    """Track learning sessions, assess understanding, recommend what to learn next."""
    ctx.ensure_object(dict)
    ctx.obj["store_dir"] = store_dir
    ctx.obj["format"] = output_format


@main.command()
@click.option("--threshold", type=float, default=None, help="Familiarity threshold (default 100).")
@click.option("--stability", type=float, default=None, help="Retention stability in hours (default 72).")
@click.option("--k", "k_coefficient", type=float, default=None, help="Sibling compensation divisor.")
@click.option("--group", "groups", multiple=True, help="Sibling group as comma-separated KP ids; repeatable.")
@click.pass_context
@domain_errors
def init(ctx, threshold, stability, k_coefficient, groups):
    """Create and configure a store directory."""
    defaults = EngineConfig()
    config = EngineConfig(
        retention=RetentionConfig(
            stability_hours=stability if stability is not None else defaults.retention.stability_hours
        ),
        threshold=ThresholdConfig(
            threshold=threshold if threshold is not None else defaults.threshold.threshold
        ),
        compensation=CompensationConfig(
            k_coefficient=k_coefficient if k_coefficient is not None else defaults.compensation.k_coefficient,
            sibling_groups=_parse_groups(groups),
        ),
    )
    store = Store.initialize(ctx.obj["store_dir"], config)
    emit_json({"store": str(store.root), "config": config.to_json_dict()})


@main.command("ingest-corpus")
@click.argument("path", required=False, type=click.Path(exists=True, path_type=Path))
@click.option("--fixture", "fixture_name", type=click.Choice(FIXTURE_NAMES), default=None,
              help="Ingest a bundled corpus instead of a file.")
@click.pass_context
@domain_errors
def ingest_corpus(ctx, path, fixture_name):
    """Load a corpus JSON file (lexicon + documents) into the store."""
    if (path is None) == (fixture_name is None):
        raise click.UsageError("provide exactly one of PATH or --fixture")
    store = Store(ctx.obj["store_dir"])
    store.require_initialized()
    data = fixture_json(fixture_name) if fixture_name else json.loads(path.read_text("utf-8"))
    corpus = store.save_corpus(data)
    emit_json(
        {
            "documents": len(corpus.documents),
            "knowledge_points": len(corpus.lexicon),
            "bkps": len(corpus.bkp_ids),
            "corpus_hash": corpus.content_hash,
        }
    )


@main.command("add-session")
@click.option("--id", "session_id", required=True, help="Unique session id.")
@click.option("--at", required=True, help="Cessation time, ISO-8601.")
@click.option("--duration", required=True, type=float, help="Duration in minutes.")
@click.option("--share", "share_pairs", multiple=True, required=True,
              help="KP=FRACTION content share; repeatable.")
@click.pass_context
@domain_errors
def add_session(ctx, session_id, at, duration, share_pairs):
    """Append a learning session to the log."""
    session = LearningSession(
        session_id=session_id,
        cessation_time=at,
        duration_min=duration,
        shares=_parse_shares(share_pairs),
    )
    Store(ctx.obj["store_dir"]).append_session(session)
    emit_json({"appended": session.to_json_dict()})


@main.command()
@click.option("--kp", "kp_id", required=True)
@click.option("--at", default=None, help="Evaluation time, ISO-8601 (default: now).")
@click.option("--stability", type=float, default=None, help="Override retention stability (hours).")
@click.option("--threshold", type=float, default=None, help="Override the percentage threshold.")
@format_option
@click.pass_context
@domain_errors
def familiarity(ctx, kp_id, at, stability, threshold, format_override):
    """Familiarity measure of one knowledge point."""
    engine = _engine(ctx)
    at = default_evaluation_time(at)
    retention = RetentionConfig(stability_hours=stability) if stability else None
    value = engine.familiarity_of(kp_id, at, retention=retention)
    cutoff = threshold if threshold is not None else engine.config.threshold.threshold
    payload = {
        "kp": kp_id,
        "at": format_timestamp(at),
        "familiarity": value,
        "percentage": min(value / cutoff, 1.0),
    }
    if _format(ctx, format_override) == "table":
        click.echo(_kv_table(round_floats(payload)))
    else:
        emit_json(payload)


@main.command()
@click.option("--kp", "kp_id", required=True)
@format_option
@click.pass_context
@domain_errors
def tree(ctx, kp_id, format_override):
    """Understanding tree of a knowledge point (JSON or Graphviz DOT)."""
    built = _engine(ctx).tree(kp_id)
    if _format(ctx, format_override) == "table":
        click.echo(built.to_dot())
    else:
        height, node_count = complexity(built)
        payload = built.to_json_dict()
        payload["height"] = height
        payload["node_count"] = node_count
        emit_json(payload)


@main.command()
@click.option("--kp", "kp_id", required=True)
@format_option
@click.pass_context
@domain_errors
def reverse(ctx, kp_id, format_override):
    """Reverse tree: which knowledge points depend on this one."""
    reverse_tree = _engine(ctx).reverse(kp_id)
    if _format(ctx, format_override) == "table":
        lines = [f"{kp}  <-  {', '.join(sorted(parents)) or '(none)'}"
                 for kp, parents in sorted(reverse_tree.dependents.items())]
        click.echo("\n".join(lines))
    else:
        emit_json(reverse_tree.to_json_dict())


@main.command()
@click.option("--kp", "kp_id", required=True)
@click.option("--at", default=None)
@click.option("--bkp-policy", type=click.Choice([BKP_POLICY_ASSUMED, BKP_POLICY_ACTUAL]),
              default=BKP_POLICY_ASSUMED, show_default=True)
@click.option("--threshold", type=float, default=None, help="Override the configured threshold.")
@click.option("--stability", type=float, default=None, help="Override retention stability (hours).")
@format_option
@click.pass_context
@domain_errors
def assess(ctx, kp_id, at, bkp_policy, threshold, stability, format_override):
    """Percentage of understanding of a knowledge point."""
    engine = _engine(ctx)
    at = default_evaluation_time(at)
    state = engine.knowledge_state(
        at,
        retention=RetentionConfig(stability_hours=stability) if stability else None,
        threshold=ThresholdConfig(threshold=threshold) if threshold is not None else None,
    )
    assessment = engine.assessment(kp_id, bkp_policy=bkp_policy, state=state)
    payload = assessment.to_json_dict()
    payload["at"] = format_timestamp(at)
    payload["display_percent"] = round(assessment.pu * 100)
    if _format(ctx, format_override) == "table":
        click.echo(_kv_table(round_floats(payload)))
    else:
        emit_json(payload)


@main.command()
@click.option("--policy", type=click.Choice([POLICY_MIN_COUNT, POLICY_PUD]),
              default=POLICY_MIN_COUNT, show_default=True)
@click.option("--at", default=None)
@format_option
@click.pass_context
@domain_errors
def recommend(ctx, policy, at, format_override):
    """Optimal next document(s) for meaningful learning."""
    payload = _engine(ctx).recommend(policy=policy, at=at)
    if _format(ctx, format_override) == "table":
        if policy == POLICY_MIN_COUNT:
            click.echo("\n".join(payload["documents"]) or "(all understood)")
        else:
            click.echo(payload["document"] or "(all understood)")
    else:
        emit_json(payload)


@main.command()
@click.option("--doc", "doc_id", required=True)
@click.option("--at", default=None)
@format_option
@click.pass_context
@domain_errors
def pud(ctx, doc_id, at, format_override):
    """Share-weighted percentage of understanding of a document."""
    payload = _engine(ctx).document_pud(doc_id, at)
    if _format(ctx, format_override) == "table":
        click.echo(_kv_table({"doc": doc_id, "pud": round(payload["pud"], 6),
                              "not_understood": ", ".join(payload["not_understood"]) or "(none)"}))
    else:
        emit_json(payload)


@main.command()
@click.option("--policy", type=click.Choice([POLICY_MIN_COUNT, POLICY_PUD]),
              default=POLICY_MIN_COUNT, show_default=True)
@click.option("--tie-break", type=click.Choice([TIE_BREAK_ASCENDING, TIE_BREAK_GIVEN]),
              default=TIE_BREAK_ASCENDING, show_default=True)
@click.option("--sequence", default=None, help="Comma-separated document ids to replay.")
@format_option
@click.pass_context
@domain_errors
def simulate(ctx, policy, tie_break, sequence, format_override):
    """Replay a learning run and print the count matrix."""
    docs = [part.strip() for part in sequence.split(",") if part.strip()] if sequence else None
    if tie_break == TIE_BREAK_GIVEN and docs is None:
        raise click.UsageError("--tie-break given-sequence requires --sequence")
    result = _engine(ctx).run_simulation(policy=policy, tie_break=tie_break, sequence=docs)
    if _format(ctx, format_override) == "table":
        click.echo(result.to_table())
    else:
        emit_json(result.to_json_dict())


@main.command()
@click.option("--at", default=None)
@click.option("--k", "k_coefficient", type=float, default=None, help="Override configured k.")
@click.option("--group", "groups", multiple=True,
              help="Override sibling groups (comma-separated ids; repeatable).")
@format_option
@click.pass_context
@domain_errors
def compensate(ctx, at, k_coefficient, groups, format_override):
    """Apply sibling compensation to the current knowledge state."""
    engine = _engine(ctx)
    at = default_evaluation_time(at)
    config = engine.config.compensation
    if k_coefficient is not None or groups:
        config = CompensationConfig(
            k_coefficient=k_coefficient if k_coefficient is not None else config.k_coefficient,
            sibling_groups=_parse_groups(groups) if groups else config.sibling_groups,
        )
    before = engine.knowledge_state(at)
    after = compensate_state(before, config)
    payload = {
        "at": format_timestamp(at),
        "k": config.k_coefficient,
        "familiarity": dict(sorted(after.familiarity.items())),
    }
    if _format(ctx, format_override) == "table":
        rows = {kp: f"{before.familiarity[kp]:.4f} -> {after.familiarity[kp]:.4f}"
                for kp in sorted(after.familiarity)}
        click.echo(_kv_table(rows))
    else:
        emit_json(payload)


@main.command()
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
@click.option("--at", default=None)
@click.option("--kp", "kp_ids", multiple=True, help="Render the tree figure of this KP; repeatable.")
@click.option("--sequence", default=None, help="Replay this sequence in the simulation report.")
@click.pass_context
@domain_errors
def report(ctx, out_dir, at, kp_ids, sequence):
    """Write CSV summaries and matplotlib figures into a directory."""
    from .report import write_report

    docs = [part.strip() for part in sequence.split(",") if part.strip()] if sequence else None
    written = write_report(_engine(ctx), out_dir, at=at, kp_ids=tuple(kp_ids), sequence=docs)
    emit_json({"written": [str(path) for path in written]})


@main.command()
@click.option("--listen", envvar="UTTREE_LISTEN", default="127.0.0.1:8787", show_default=True,
              help="HOST:PORT to bind (env: UTTREE_LISTEN).")
@click.option("--ui", "ui_dir", type=click.Path(path_type=Path), default=None,
              help="Static dashboard assets to serve at /.")
@click.option("--cors-origin", default="*", show_default=True)
@click.pass_context
@domain_errors
def serve(ctx, listen, ui_dir, cors_origin):
    """Run the HTTP API service."""
    import uvicorn

    from .api import create_app

    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise click.UsageError(f"--listen expects HOST:PORT, got {listen!r}")
    app = create_app(ctx.obj["store_dir"], cors_origin=cors_origin, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=int(port))


if __name__ == "__main__":
    main()
