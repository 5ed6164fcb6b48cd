"""Decimal conversion of very large ints.

CPython caps int/str conversion at a few thousand digits by default; lengths
of the sweep polynomials go well past that. The cap is lifted only for the
duration of one conversion.
"""

import sys
from contextlib import contextmanager


@contextmanager
def _unlimited():
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def dec(n: int) -> str:
    with _unlimited():
        return str(n)


def parse(s) -> int:
    if isinstance(s, int):
        return s
    with _unlimited():
        return int(s)
