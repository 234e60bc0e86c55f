"""claims: compare recorded claims of registry structures with computed values."""

from argparse import Namespace

from gammalab.commands.inputs import REGISTRY_PREFIX, print_json
from gammalab.middleware.error_handler import translate_errors
from gammalab.services.audit import summarize
from gammalab.services.structure_registry import StructureRegistryService


def register(subparsers) -> None:
    parser = subparsers.add_parser("claims", help="audit the claims stored with a registry structure")
    parser.add_argument("name", nargs="?", default=None, help="@name or name; default entry when omitted")
    parser.add_argument("--list", action="store_true", help="list registry entries instead")
    parser.set_defaults(handler=run_claims)


@translate_errors
def run_claims(arguments: Namespace) -> None:
    registry_service = StructureRegistryService()
    if arguments.list:
        print_json({"object": "list", "data": registry_service.get_available_structures_list()})
        return

    name = arguments.name
    if name and name.startswith(REGISTRY_PREFIX):
        name = name[len(REGISTRY_PREFIX):]
    entries = registry_service.audit_claims(name)
    print_json({
        "structure": name or registry_service.default_structure_name,
        "checks": [entry.to_dict() for entry in entries],
        "check_summary": summarize(entries),
    })
