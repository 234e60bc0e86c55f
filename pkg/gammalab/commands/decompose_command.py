"""decompose: Chinese-remainder and semisimplicity audits, or pinning to a ternary structure."""

from argparse import Namespace

from gammalab.commands.inputs import emit_json, load_input
from gammalab.config.settings import get_toolkit_settings
from gammalab.middleware.error_handler import translate_errors
from gammalab.services.axioms import validate
from gammalab.services.decompose import PinningSpec, audit_decomposition, pinned_ternary


def register(subparsers) -> None:
    parser = subparsers.add_parser("decompose", help="decomposition audits; --pin reduces arity to 3")
    parser.add_argument("structure", help="structure file or @registry-name")
    parser.add_argument("--pin", type=int, default=None, metavar="E", help="central idempotent to pin with")
    parser.add_argument("--slot", type=int, default=None, help="module slot for primitive ideals")
    parser.add_argument("--max-carrier", type=int, default=None, help="module carrier bound")
    parser.set_defaults(handler=run_decompose)


@translate_errors
def run_decompose(arguments: Namespace) -> None:
    s = load_input(arguments.structure, arguments)
    validation = validate(s, arguments.max_violations)
    if arguments.pin is not None:
        emit_json(pinned_ternary(s, PinningSpec(arguments.pin)).to_jsonable(), validation)
        return

    settings = get_toolkit_settings()
    report = audit_decomposition(
        s,
        arguments.slot or settings.report_module_slot,
        arguments.max_carrier or settings.report_module_carrier,
    )
    emit_json(report.to_jsonable(), validation)
