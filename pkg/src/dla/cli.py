"""Command-line front end.

Exit codes are a contract for pipeline gating:
0 all clean / all scenarios permitted, 1 validation problem, 2 lineage
problem, 3 at least one scenario denied, 64 unreadable or malformed input
file (and damaged store entries).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import click

from .assessment import (
    assess_all,
    default_scenarios,
    load_scenarios,
    render_markdown,
    render_rights_markdown,
)
from .catalog import load_catalog, load_interpretations_dir, parse_interpretation
from .engine import EnginePolicy
from .errors import (
    AssessmentError,
    CatalogError,
    EngineError,
    LineageError,
    ParseError,
    SchemaViolation,
    StoreError,
)
from .lineage import (
    LineageGraph,
    compute_license_range,
    parse_capture_list,
    select_capture,
)
from .model import (
    ProvenanceRecord,
    RightsVector,
    canonical_json,
    validate_provenance,
    validate_rights_vector,
)
from .store import AnalysisStore, lookup_or_verify
from .version import __version__

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_LINEAGE = 2
EXIT_DENIED = 3
EXIT_IO = 64


class _InputError(Exception):
    """Unreadable or syntactically broken input file; maps to exit 64."""

    def __init__(self, path: Path, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}")


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(path, f"cannot read file: {exc.strerror or exc}")
    try:
        return json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise _InputError(path, f"invalid JSON: {exc}")


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@dataclass
class Settings:
    store_path: Path | None
    output_format: str
    strict: bool
    unknown_denies: bool

    @property
    def policy(self) -> EnginePolicy:
        return EnginePolicy(unknown_denies=self.unknown_denies)


@click.group()
@click.version_option(__version__, prog_name="dla")
@click.option(
    "--store",
    "store_path",
    envvar="DLA_STORE",
    type=click.Path(path_type=Path),
    default=None,
    help="Analysis store directory (env: DLA_STORE).",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "markdown"]),
    default="markdown",
    show_default=True,
    help="Report format.",
)
@click.option(
    "--strict/--lenient",
    "strict",
    default=True,
    show_default=True,
    help="Reject unknown document fields, or warn and continue.",
)
@click.option(
    "--unknown-denies",
    is_flag=True,
    default=False,
    help="Treat sources with unavailable licenses as denying every right.",
)
@click.pass_context
def cli(
    ctx: click.Context,
    store_path: Path | None,
    output_format: str,
    strict: bool,
    unknown_denies: bool,
) -> None:
    """Check whether a publicly available dataset can be used in a commercial
    scenario without breaking its license or the licenses of its data sources.
    """
    ctx.obj = Settings(
        store_path=store_path,
        output_format=output_format,
        strict=strict,
        unknown_denies=unknown_denies,
    )


def _load_graph(path: Path, strict: bool) -> LineageGraph:
    data = _read_json(path)
    return LineageGraph.from_dict(data, str(path), strict)


def _validate_one(path: Path, data: Any, strict: bool) -> list[str]:
    """Validate one document of any recognized shape; returns problem lines."""
    problems: list[str] = []
    try:
        if isinstance(data, list):
            parse_capture_list(data, str(path), strict)
        elif isinstance(data, dict) and "records" in data and "root_id" in data:
            graph = LineageGraph.from_dict(data, str(path), strict)
            for record in graph.nodes.values():
                problems.extend(
                    f"{record.subject_id}.{v.field}: {v.message}"
                    for v in validate_provenance(record)
                )
        elif isinstance(data, dict) and "subject_kind" in data:
            record = ProvenanceRecord.from_dict(data, str(path), strict)
            problems.extend(str(v) for v in validate_provenance(record))
        elif isinstance(data, dict) and "subject_id" in data:
            parse_interpretation(data, load_catalog(), strict=strict, path=str(path))
        elif isinstance(data, dict) and "metadata" in data and "standalone_rights" in data:
            vector = RightsVector.from_dict(data, str(path), strict)
            problems.extend(str(v) for v in validate_rights_vector(vector))
        else:
            problems.append("unrecognized document shape")
    except (ParseError, SchemaViolation, LineageError, CatalogError) as exc:
        problems.append(str(exc))
    return problems


@cli.command("validate")
@click.argument("paths", nargs=-1, required=True, type=click.Path(path_type=Path))
@click.pass_obj
def cmd_validate(settings: Settings, paths: tuple[Path, ...]) -> None:
    """Validate provenance, interpretation, lineage, or capture documents."""
    any_problem = False
    for path in paths:
        try:
            data = _read_json(path)
        except _InputError as exc:
            _fail(EXIT_IO, str(exc))
        problems = _validate_one(path, data, settings.strict)
        if problems:
            any_problem = True
            click.echo(f"{path}: {len(problems)} problem(s)")
            for problem in problems:
                click.echo(f"  - {problem}")
        else:
            click.echo(f"{path}: ok")
    sys.exit(EXIT_VALIDATION if any_problem else EXIT_OK)


@cli.command("lineage")
@click.argument("lineage_path", type=click.Path(path_type=Path))
@click.pass_obj
def cmd_lineage(settings: Settings, lineage_path: Path) -> None:
    """Show the validated lineage graph of a dataset."""
    try:
        graph = _load_graph(lineage_path, settings.strict)
    except _InputError as exc:
        _fail(EXIT_IO, str(exc))
    except LineageError as exc:
        _fail(EXIT_LINEAGE, str(exc))
    except (ParseError, SchemaViolation) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    if settings.output_format == "json":
        click.echo(canonical_json(graph.to_dict()), nl=False)
    else:
        click.echo(f"root: {graph.root_id}")
        for node_id, record in graph.nodes.items():
            year = record.origin_year if record.origin_year is not None else "-"
            click.echo(f"{node_id}: kind={record.subject_kind.value} origin_year={year}")
        for parent, child in graph.edges:
            click.echo(f"{parent} -> {child}")
    sys.exit(EXIT_OK)


@cli.command("range")
@click.argument("lineage_path", type=click.Path(path_type=Path))
@click.option(
    "--captures",
    "captures_dir",
    type=click.Path(path_type=Path),
    default=None,
    help="Directory of per-source capture lists; shows the selected capture per node.",
)
@click.pass_obj
def cmd_range(settings: Settings, lineage_path: Path, captures_dir: Path | None) -> None:
    """License range per lineage node (and the applicable capture, if given)."""
    try:
        graph = _load_graph(lineage_path, settings.strict)
    except _InputError as exc:
        _fail(EXIT_IO, str(exc))
    except LineageError as exc:
        _fail(EXIT_LINEAGE, str(exc))
    except (ParseError, SchemaViolation) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    for node_id in graph.nodes:
        try:
            node_range = compute_license_range(node_id, graph)
        except LineageError as exc:
            click.echo(f"{node_id}: error: {exc}")
            continue
        line = f"{node_id}: {node_range.start_year}-{node_range.end_year}"
        if captures_dir is not None:
            capture_path = captures_dir / f"{node_id}.json"
            captures = []
            if capture_path.exists():
                try:
                    captures = parse_capture_list(
                        _read_json(capture_path), str(capture_path), settings.strict
                    )
                except _InputError as exc:
                    _fail(EXIT_IO, str(exc))
                except ParseError as exc:
                    _fail(EXIT_VALIDATION, str(exc))
            capture = select_capture(node_id, captures, node_range)
            if capture.capture_year is not None:
                line += f" capture: {capture.capture_year} ({capture.status.value})"
            else:
                line += f" capture: ({capture.status.value})"
        click.echo(line)
    sys.exit(EXIT_OK)


def _run_pipeline(
    settings: Settings,
    lineage_path: Path,
    interpretations_dir: Path,
    audit_timestamps: bool,
):
    graph = _load_graph(lineage_path, settings.strict)
    catalog = load_catalog()
    if not interpretations_dir.is_dir():
        raise _InputError(interpretations_dir, "not a directory")
    interpretations = load_interpretations_dir(
        interpretations_dir, catalog, strict=settings.strict
    )
    generated_at = (
        datetime.now(timezone.utc).isoformat(timespec="seconds") if audit_timestamps else None
    )
    store = AnalysisStore(settings.store_path) if settings.store_path else None
    verified, cache_hit = lookup_or_verify(
        store,
        graph,
        interpretations.vectors,
        settings.policy,
        template_digests=interpretations.template_digests,
        generated_at=generated_at,
    )
    if cache_hit:
        click.echo("(cached analysis)", err=True)
    return graph, verified


@cli.command("verify")
@click.argument("lineage_path", type=click.Path(path_type=Path))
@click.argument("interpretations_dir", type=click.Path(path_type=Path))
@click.option("--audit-timestamps", is_flag=True, default=False,
              help="Record a generation timestamp in the audit trailer.")
@click.pass_obj
def cmd_verify(
    settings: Settings,
    lineage_path: Path,
    interpretations_dir: Path,
    audit_timestamps: bool,
) -> None:
    """Compute the verified license of a dataset against its data sources."""
    try:
        graph, verified = _run_pipeline(
            settings, lineage_path, interpretations_dir, audit_timestamps
        )
    except _InputError as exc:
        _fail(EXIT_IO, str(exc))
    except LineageError as exc:
        _fail(EXIT_LINEAGE, str(exc))
    except StoreError as exc:
        _fail(EXIT_IO, str(exc))
    except (ParseError, SchemaViolation, CatalogError, EngineError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    if settings.output_format == "json":
        click.echo(canonical_json(verified.to_dict()), nl=False)
    else:
        click.echo(render_rights_markdown(verified, graph.root.dataset_name), nl=False)
    sys.exit(EXIT_OK)


@cli.command("assess")
@click.argument("lineage_path", type=click.Path(path_type=Path))
@click.argument("interpretations_dir", type=click.Path(path_type=Path))
@click.option(
    "--scenarios",
    "scenarios_path",
    type=click.Path(path_type=Path),
    default=None,
    help="Scenario definitions (JSON array); defaults to the shipped DD/RPEAI/CAI.",
)
@click.option("--no-gate", is_flag=True, default=False,
              help="Exit 0 even when scenarios are denied.")
@click.option("--audit-timestamps", is_flag=True, default=False,
              help="Record a generation timestamp in the audit trailer.")
@click.pass_obj
def cmd_assess(
    settings: Settings,
    lineage_path: Path,
    interpretations_dir: Path,
    scenarios_path: Path | None,
    no_gate: bool,
    audit_timestamps: bool,
) -> None:
    """Assess commercial usage scenarios for a dataset bundle.

    Exits 3 when any requested scenario is denied so CI pipelines can gate
    on compliance; --no-gate downgrades that to 0.
    """
    try:
        graph, verified = _run_pipeline(
            settings, lineage_path, interpretations_dir, audit_timestamps
        )
        if scenarios_path is not None:
            scenarios = load_scenarios(scenarios_path)
        else:
            scenarios = default_scenarios()
        table = assess_all(verified, scenarios, dataset_name=graph.root.dataset_name)
    except _InputError as exc:
        _fail(EXIT_IO, str(exc))
    except LineageError as exc:
        _fail(EXIT_LINEAGE, str(exc))
    except StoreError as exc:
        _fail(EXIT_IO, str(exc))
    except (ParseError, SchemaViolation, CatalogError, EngineError, AssessmentError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    if settings.output_format == "json":
        doc = {"assessment": table.to_dict(), "verified_license": verified.to_dict()}
        click.echo(canonical_json(doc), nl=False)
    else:
        click.echo(render_markdown(table, verified), nl=False)
    denied = any(not row.permitted for row in table.rows)
    sys.exit(EXIT_DENIED if denied and not no_gate else EXIT_OK)


@cli.group("store")
def cmd_store() -> None:
    """Inspect or prune the analysis store."""


def _open_store(settings: Settings, read_only: bool) -> AnalysisStore:
    if settings.store_path is None:
        _fail(EXIT_IO, "no store configured; pass --store or set DLA_STORE")
    return AnalysisStore(settings.store_path, read_only=read_only)


@cmd_store.command("ls")
@click.pass_obj
def cmd_store_ls(settings: Settings) -> None:
    """List stored analyses."""
    store = _open_store(settings, read_only=True)
    try:
        entries = store.entries()
    except (ParseError, StoreError) as exc:
        _fail(EXIT_IO, str(exc))
    for entry in entries:
        click.echo(f"{entry.key}  {entry.dataset_name}")
    sys.exit(EXIT_OK)


@cmd_store.command("rm")
@click.argument("key")
@click.pass_obj
def cmd_store_rm(settings: Settings, key: str) -> None:
    """Remove one stored analysis by key."""
    store = _open_store(settings, read_only=False)
    try:
        removed = store.remove(key)
    except (ParseError, StoreError) as exc:
        _fail(EXIT_IO, str(exc))
    click.echo(f"removed {key}" if removed else f"no entry for {key}")
    sys.exit(EXIT_OK)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
