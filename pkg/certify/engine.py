"""
Pluggable certification checks with auto-registration.

A check is a class deriving from BaseCheck with a unique ``name``; defining
it registers it. The engine evaluates a list of named checks against one
parameter tuple and reports every verdict.
"""

import logging
from abc import ABCMeta, abstractmethod
from typing import Dict, List, Type

from rigidity.params import RigidityParams, Verdict

logger = logging.getLogger(__name__)


class CheckRegistry:
    """
    Registry of check classes, filled in as the classes are defined.
    """
    _checks: Dict[str, Type['BaseCheck']] = {}

    @classmethod
    def register(cls, name: str, check_class: Type['BaseCheck']) -> None:
        if name in cls._checks:
            logger.warning(f"Check '{name}' is being overridden")
        cls._checks[name] = check_class
        logger.debug(f"Registered check: {name}")

    @classmethod
    def get_check(cls, name: str) -> Type['BaseCheck']:
        """
        Retrieve a check class by name.

        Raises:
            KeyError: If the check is not found
        """
        if name not in cls._checks:
            raise KeyError(f"Check '{name}' not found. Available checks: {list(cls._checks.keys())}")
        return cls._checks[name]

    @classmethod
    def get_all_checks(cls) -> Dict[str, Type['BaseCheck']]:
        return cls._checks.copy()

    @classmethod
    def check_exists(cls, name: str) -> bool:
        return name in cls._checks


class CheckMeta(ABCMeta):
    """
    Metaclass registering every class that sets a non-empty ``name``.
    """
    def __new__(mcs, name: str, bases: tuple, attrs: dict):
        cls = super().__new__(mcs, name, bases, attrs)

        # Don't register the base class itself
        if name != 'BaseCheck' and attrs.get('name'):
            CheckRegistry.register(attrs['name'], cls)

        return cls


class BaseCheck(metaclass=CheckMeta):
    """
    Abstract base class for certification checks.

    Example:
        class DegreeAtLeastThree(BaseCheck):
            name = "degree_at_least_3"
            description = "Every equation has degree at least 3"

            def evaluate(self, params) -> Verdict:
                return Verdict.at_least(self.name, min(params.degrees), 3)
    """

    name: str = None
    description: str = ""

    def __init__(self, **kwargs):
        self.config = kwargs

    @abstractmethod
    def evaluate(self, params: RigidityParams) -> Verdict:
        """Return the verdict of the check for one parameter tuple."""

    def __str__(self) -> str:
        return f"{self.name}: {self.description}"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(name='{self.name}')>"


class CertificationEngine:
    """
    Evaluates named checks against a parameter tuple.
    """

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def evaluate_checks(self, params: RigidityParams, check_names: List[str]) -> dict:
        """
        Evaluate checks in the given order.

        Returns:
            Dictionary containing:
                - passed: True if every verdict holds
                - details: Dictionary mapping check names to their verdicts

        Raises:
            KeyError: If a check name is not found in the registry
        """
        results: Dict[str, Verdict] = {}

        for check_name in check_names:
            try:
                check_class = CheckRegistry.get_check(check_name)
                verdict = check_class().evaluate(params)
                results[check_name] = verdict

                self.logger.debug(
                    f"Check '{check_name}' on {params}: {verdict.value} {verdict.relation} "
                    f"{verdict.threshold} -> {verdict.holds}"
                )

            except KeyError:
                self.logger.error(f"Check not found: {check_name}")
                raise

        return {
            'passed': all(verdict.holds for verdict in results.values()),
            'details': results,
        }
