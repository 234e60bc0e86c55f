"""classify: partition a directory of structure files into isomorphism classes."""

from argparse import Namespace
from pathlib import Path

from gammalab.commands.inputs import print_json, structure_files
from gammalab.middleware.error_handler import translate_errors
from gammalab.services.classifier import partition
from gammalab.services.errors import UsageError
from gammalab.services.structure_io import load_structure


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="group stored structures by isomorphism class")
    parser.add_argument("directory", help="directory holding .gsr.json files")
    parser.add_argument(
        "--permute-gamma", action="store_true", help="also allow relabelings of Gamma"
    )
    parser.set_defaults(handler=run_classify)


@translate_errors
def run_classify(arguments: Namespace) -> None:
    directory = Path(arguments.directory)
    if not directory.is_dir():
        raise UsageError(f"{directory} is not a directory")

    paths = structure_files(directory)
    structures = [load_structure(path) for path in paths]
    names = {id(s): path.name for s, path in zip(structures, paths)}
    classes = partition(structures, arguments.permute_gamma)

    print_json({
        "files": len(paths),
        "classes": [
            {**cls.to_jsonable(), "members": [names[id(s)] for s in cls.representatives]}
            for cls in classes
        ],
    })
