"""
Access to the ``RIGIDITY_LAB`` settings dict with built-in defaults.
"""

from fractions import Fraction
from typing import Any

from django.conf import settings

DEFAULTS = {
    'ENUMERATION_CAP': 10_000_000,
    'DEFAULT_PRIME': 5,
    'THRESHOLD_FACTOR': '4',
    'MIN_PASS_RATE': '1/2',
    'PARALLEL': 1,
}

RATIONAL_SETTINGS = {'THRESHOLD_FACTOR', 'MIN_PASS_RATE'}


def lab_setting(name: str) -> Any:
    """
    Return a lab setting, falling back to the built-in default.

    Raises:
        KeyError: If the setting name is unknown
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown lab setting '{name}'. Available: {sorted(DEFAULTS)}")
    configured = getattr(settings, 'RIGIDITY_LAB', {})
    value = configured.get(name, DEFAULTS[name])
    if name in RATIONAL_SETTINGS:
        return Fraction(str(value))
    return int(value)
