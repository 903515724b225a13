"""Process-local memo store for pure, expensive group computations.

Keys are hashable values (field parameters, frozensets of matrices). Entries
never expire: everything stored is a function of its key alone.
"""
import logging
from collections.abc import Hashable

logger = logging.getLogger(__name__)

_store: dict[Hashable, object] = {}


def cache_get(key: Hashable) -> object | None:
    """Return the memoised value, else None."""
    return _store.get(key)


def cache_set(key: Hashable, value: object) -> None:
    _store[key] = value


def cache_clear() -> None:
    logger.debug(f"Dropping {len(_store)} memoised entries")
    _store.clear()
