"""Exit-code middleware for command handlers."""

import json
import logging
import sys
from functools import wraps
from typing import Optional

from gammalab.services.axioms import ValidationReport
from gammalab.services.errors import StructureParseError, UsageError


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class InvalidStructure(Exception):
    """
    Raised by a handler when its input structure fails validation.

    ``document`` is the handler's own rendered output, printed in place of the
    bare validation report.
    """

    def __init__(self, report: ValidationReport, document: Optional[str] = None):
        super().__init__("structure fails the axioms")
        self.report = report
        self.document = document


def _emit_error(message: str, error_type: str, code: str) -> None:
    payload = {"error": {"message": message, "type": error_type, "code": code}}
    print(json.dumps(payload), file=sys.stderr)


def translate_errors(handler_function):
    """
    Decorator mapping handler outcomes to process exit codes.

    A handler returning normally exits 0. ``InvalidStructure`` exits 1 with
    its document (or validation report) on stdout; usage, capacity, parse and
    missing-file errors exit 2 with an error object on stderr.
    """
    @wraps(handler_function)
    def decorated_error_handler(*args, **kwargs) -> int:
        try:
            handler_function(*args, **kwargs)
            return EXIT_OK

        except InvalidStructure as invalid:
            if invalid.document is not None:
                sys.stdout.write(invalid.document)
            else:
                print(json.dumps(invalid.report.to_dict(), indent=2))
            logger.info(f"Input fails {len({v.axiom for v in invalid.report.violations})} axiom(s)")
            return EXIT_INVALID

        except StructureParseError as parse_error:
            _emit_error(str(parse_error), "input_error", parse_error.code)
            return EXIT_USAGE

        except UsageError as usage_error:
            _emit_error(str(usage_error), "usage_error", usage_error.code)
            return EXIT_USAGE

        except FileNotFoundError as file_error:
            _emit_error(str(file_error), "input_error", "file_not_found")
            return EXIT_USAGE

    return decorated_error_handler
