"""analyze: the full report for one structure."""

from argparse import Namespace

from gammalab.commands.inputs import emit, load_input
from gammalab.middleware.error_handler import translate_errors
from gammalab.services.analysis import build_report, render_json, render_text
from gammalab.services.axioms import validate


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "analyze", help="ideals, thresholds, primes, radicals, spectra, modules and theorem audits"
    )
    parser.add_argument("structure", help="structure file or @registry-name")
    parser.add_argument("--report", choices=["json", "text"], default="json")
    parser.add_argument("--slot", type=int, default=None, help="module slot for the modules section")
    parser.add_argument("--max-carrier", type=int, default=None, help="module carrier bound")
    parser.set_defaults(handler=run_analyze)


@translate_errors
def run_analyze(arguments: Namespace) -> None:
    """Print the report; it is printed for an invalid structure too, which then exits 1."""
    s = load_input(arguments.structure, arguments)
    validation = validate(s, arguments.max_violations)
    report = build_report(s, arguments.slot, arguments.max_carrier, arguments.max_violations)
    render = render_text if arguments.report == "text" else render_json
    emit(render(report), validation)
