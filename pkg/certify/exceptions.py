"""
Mapping from exceptions to the stable exit codes of the commands.

    0  every check passed
    1  a mathematical check failed
    2  invalid input
    3  resource limit or internal error
"""

import logging

from django.core.management.base import CommandError
from rest_framework.exceptions import ValidationError

from rigidity.exceptions import InternalError, ResourceError, ShapeError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_RESOURCE = 3


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, CommandError):
        return exc.returncode
    if isinstance(exc, (ShapeError, ValidationError)):
        return EXIT_INVALID_INPUT
    # resource limits, internal inconsistencies and anything unexpected
    return EXIT_RESOURCE


def describe(exc: BaseException) -> str:
    """One-line message for an exception, flattening serializer errors."""
    if isinstance(exc, ValidationError):
        detail = exc.detail
        if isinstance(detail, dict):
            parts = []
            for field_name, messages in detail.items():
                if not isinstance(messages, (list, tuple)):
                    messages = [messages]
                text = '; '.join(str(message) for message in messages)
                parts.append(text if field_name == 'non_field_errors' else f"{field_name}: {text}")
            return ' | '.join(parts)
        if isinstance(detail, (list, tuple)):
            return '; '.join(str(message) for message in detail)
        return str(detail)
    return str(exc)


def as_command_error(exc: BaseException) -> CommandError:
    """
    Wrap an exception raised while running a command into a CommandError
    carrying its exit code. Unexpected exceptions are logged with traceback.
    """
    if isinstance(exc, CommandError):
        return exc
    code = exit_code_for(exc)
    if isinstance(exc, (ShapeError, ValidationError)):
        logger.warning(f"Invalid input: {describe(exc)}")
    elif isinstance(exc, (ResourceError, InternalError)):
        logger.error(f"{type(exc).__name__}: {exc}")
    else:
        logger.error(f"Unhandled exception: {type(exc).__name__}: {exc}", exc_info=True)
    return CommandError(f"{type(exc).__name__}: {describe(exc)}", returncode=code)
