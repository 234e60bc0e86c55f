"""validate: exhaustive axiom check of one structure."""

from argparse import Namespace

from gammalab.commands.inputs import load_input, print_json
from gammalab.middleware.error_handler import InvalidStructure, translate_errors
from gammalab.services.axioms import validate


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="check a structure against the axioms")
    parser.add_argument("structure", help="structure file or @registry-name")
    parser.set_defaults(handler=run_validate)


@translate_errors
def run_validate(arguments: Namespace) -> None:
    """Print the violation report; an invalid structure exits 1."""
    s = load_input(arguments.structure, arguments)
    report = validate(s, arguments.max_violations)
    if not report.valid:
        raise InvalidStructure(report)
    print_json(report.to_dict())
