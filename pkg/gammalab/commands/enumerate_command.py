"""enumerate: generate every valid structure of a size into a results directory."""

import json
from argparse import Namespace
from pathlib import Path
from typing import Optional

from gammalab.commands.inputs import print_json
from gammalab.config.settings import get_toolkit_settings
from gammalab.middleware.error_handler import translate_errors
from gammalab.services.analysis import build_report
from gammalab.services.classifier import canonical_form
from gammalab.services.enumerator import (
    AdditionTable,
    EnumerationResult,
    SearchSpec,
    enumerate_sharded,
    enumerate_structures,
    shard,
)
from gammalab.services.errors import StructureParseError, UsageError
from gammalab.services.metrics_service import metrics_service
from gammalab.services.results_store import ResultsStoreService
from gammalab.services.semiring import AssocMode


def register(subparsers) -> None:
    parser = subparsers.add_parser("enumerate", help="enumerate valid structures of one size")
    parser.add_argument("-m", type=int, required=True, help="carrier size")
    parser.add_argument("-n", type=int, required=True, help="arity")
    parser.add_argument("-r", type=int, required=True, help="size of Gamma")
    additions = parser.add_mutually_exclusive_group()
    additions.add_argument("--add-file", default=None, help="JSON file holding one addition table")
    additions.add_argument(
        "--all-additions", action="store_true", help="scan every addition table up to relabeling (default)"
    )
    parser.add_argument("--canonical", action="store_true", help="emit one structure per isomorphism class")
    parser.add_argument("--shard-depth", type=int, default=0)
    parser.add_argument("--shard-index", type=int, default=None, help="run only this shard")
    parser.add_argument("--workers", type=int, default=None, help="worker processes for sharded runs")
    parser.add_argument("-o", "--output", required=True, help="results directory")
    parser.add_argument("--metrics-file", default=None, help="write Prometheus metrics here")
    parser.add_argument("--no-reports", action="store_true", help="skip per-structure reports")
    parser.set_defaults(handler=run_enumerate)


def read_addition_file(path: str) -> AdditionTable:
    """A JSON file holding either the table itself or an object with an ``add`` field."""
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Addition file not found: {file_path}")
    try:
        payload = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise StructureParseError(error.msg, line=error.lineno, column=error.colno)
    table = payload.get("add") if isinstance(payload, dict) else payload
    if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
        raise StructureParseError("field 'add': expected a list of rows")
    return tuple(tuple(row) for row in table)


def _search(spec: SearchSpec, depth: int, index: Optional[int], workers: Optional[int]) -> EnumerationResult:
    if index is None:
        if depth:
            return enumerate_sharded(spec, depth, workers)
        return enumerate_structures(spec)
    shards = shard(spec, depth)
    if not 0 <= index < len(shards):
        raise UsageError(f"shard index {index} outside [0, {len(shards)})")
    return enumerate_structures(shards[index])


@translate_errors
def run_enumerate(arguments: Namespace) -> None:
    settings = get_toolkit_settings()
    add = read_addition_file(arguments.add_file) if arguments.add_file else None
    spec = SearchSpec(
        m=arguments.m,
        n=arguments.n,
        r=arguments.r,
        add=add,
        assoc_mode=AssocMode(arguments.assoc_mode or settings.default_assoc_mode),
        canonical_only=arguments.canonical,
    )
    result = _search(spec, arguments.shard_depth, arguments.shard_index, arguments.workers)

    results_store_service = ResultsStoreService(arguments.output)
    digests = []
    for s in result.structures:
        stored = canonical_form(s).structure if arguments.canonical else s
        digests.append(results_store_service.write_structure(stored))
        if not arguments.no_reports:
            results_store_service.write_report(build_report(stored, max_violations=arguments.max_violations))
    index = results_store_service.rebuild_index()

    if arguments.metrics_file:
        metrics_service.export_to_file(arguments.metrics_file)

    print_json({**result.to_jsonable(), "digests": digests, "indexed": len(index["structures"])})
