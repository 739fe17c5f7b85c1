"""Global resource caps.

Function-set carriers and exhaustive enumerations are materialized eagerly,
so both are guarded by a single knob each.  Use :func:`limits` to change them
temporarily::

    with limits(cap=10_000):
        internal_hom(s, t)
"""
from contextlib import contextmanager
from dataclasses import dataclass, replace

from .errors import ResourceError


@dataclass(frozen=True)
class Limits:
    cap: int = 10**6            # entries of a materialized function-set matrix
    enumeration: int = 10**6    # structures produced by one enumeration
    suite_cases: int = 10**9    # cases one exhaustive law suite may check
    max_chain: int = 64


_current = Limits()


def current():
    return _current


@contextmanager
def limits(**changes):
    global _current
    saved = _current
    _current = replace(_current, **changes)
    try:
        yield _current
    finally:
        _current = saved


def check_cap(entries, what):
    if entries > _current.cap:
        raise ResourceError(
            f"{what} needs {entries} entries, over the cap of {_current.cap}; "
            "shrink the carriers or raise the cap")
