"""modules: enumerate j-slot modules of one structure and audit them."""

from argparse import Namespace

from gammalab.commands.inputs import emit_json, load_input
from gammalab.middleware.error_handler import translate_errors
from gammalab.services.audit import summarize
from gammalab.services.axioms import validate
from gammalab.services.representations import (
    annihilators,
    audit_representation_theorems,
    enumerate_modules,
    is_simple,
    primitive_ideals,
    submodules,
)


def register(subparsers) -> None:
    parser = subparsers.add_parser("modules", help="enumerate modules, annihilators and primitive ideals")
    parser.add_argument("structure", help="structure file or @registry-name")
    parser.add_argument("--slot", type=int, required=True, help="slot of the module element (1-based)")
    parser.add_argument("--max-carrier", type=int, required=True, help="largest module carrier")
    parser.set_defaults(handler=run_modules)


@translate_errors
def run_modules(arguments: Namespace) -> None:
    s = load_input(arguments.structure, arguments)
    validation = validate(s, arguments.max_violations)
    enumeration = enumerate_modules(s, arguments.slot, arguments.max_carrier)
    simple = [mod for mod in enumeration.modules if is_simple(mod)]
    checks = audit_representation_theorems(s, arguments.slot, arguments.max_carrier)

    emit_json({
        "slot": arguments.slot,
        "k_max": arguments.max_carrier,
        "valid_tables": enumeration.valid_count,
        "nodes_visited": enumeration.nodes_visited,
        "total_candidates_scanned": enumeration.total_candidates_scanned,
        "modules": [
            {
                **mod.to_jsonable(),
                "submodules": [list(sub) for sub in submodules(mod)],
                "simple": is_simple(mod),
                "annihilators": annihilators(mod).to_jsonable(),
            }
            for mod in enumeration.modules
        ],
        "primitive_ideals": primitive_ideals(s, arguments.slot, arguments.max_carrier, simple).to_jsonable(),
        "checks": [entry.to_dict() for entry in checks],
        "check_summary": summarize(checks),
    }, validation)
