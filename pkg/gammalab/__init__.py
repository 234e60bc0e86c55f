"""Command-line application factory for gammalab."""

import argparse
import logging
from typing import Optional, Sequence

from gammalab.config.settings import get_toolkit_settings
from gammalab.commands import (
    analyze_command,
    claims_command,
    classify_command,
    decompose_command,
    enumerate_command,
    modules_command,
    validate_command,
)
from gammalab.middleware.error_handler import EXIT_USAGE


COMMAND_MODULES = (
    validate_command,
    enumerate_command,
    analyze_command,
    classify_command,
    modules_command,
    decompose_command,
    claims_command,
)


def setup_logging():
    """Configure application logging (stderr, so reports on stdout stay parseable)."""
    toolkit_settings = get_toolkit_settings()

    logging.basicConfig(
        level=getattr(logging, toolkit_settings.log_level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )


def create_cli_application() -> argparse.ArgumentParser:
    """Create the argument parser with every command registered."""
    setup_logging()

    cli_application = argparse.ArgumentParser(
        prog="gammalab",
        description="Finite n-ary Gamma-semirings: validation, enumeration, ideals, radicals, spectra and audits",
    )
    cli_application.add_argument(
        "--assoc-mode",
        choices=["paper_ends", "dornte"],
        default=None,
        help="associativity windows to check (default: the structure's own mode)",
    )
    cli_application.add_argument(
        "--max-violations",
        type=int,
        default=None,
        metavar="K",
        help="witnesses kept per axiom",
    )
    subparsers = cli_application.add_subparsers(dest="command", required=True)

    # Register commands
    for command_module in COMMAND_MODULES:
        command_module.register(subparsers)

    return cli_application


def cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run the chosen command; returns the exit code."""
    cli_application = create_cli_application()
    try:
        arguments = cli_application.parse_args(argv)
    except SystemExit as exit_request:
        # argparse exits 0 after --help and 2 on bad arguments
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_USAGE
    logging.getLogger(__name__).debug(f"Running command {arguments.command}")
    return arguments.handler(arguments)
