"""
Access to the ``SCHURLAB`` settings dict with built-in fallbacks.
"""

from django.conf import settings

DEFAULTS = {
    'ENUMERATION_MAX_PRIME': 13,
    'GROUP_EXHAUSTIVE_CHECK_MAX_PRIME': 7,
    'GROUP_SPOT_CHECK_ROWS': 32,
    'AUT_ENUMERATION_CAP': 10**6,
    'LEMMA_ALL_BASE_POINTS_MAX_ORDER': 343,
    'THREADS': 1,
}


def get_setting(name: str):
    """
    Return a library setting.

    Args:
        name: Key of the ``SCHURLAB`` dict, e.g. ``'THREADS'``

    Raises:
        KeyError: If the name is not a known setting
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown schurlab setting: {name}")
    configured = getattr(settings, 'SCHURLAB', {}) or {}
    return configured.get(name, DEFAULTS[name])
