"""Canonical total order on opaque identifiers.

Identifiers may be ints, strings, or (nested) frozensets/tuples of those, which
is what repeated dualization produces. Iteration everywhere goes through
``canonical_key`` so output is deterministic across runs.
"""

from fractions import Fraction


def canonical_key(x):
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, (int, Fraction)):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, (frozenset, set)):
        return (2, len(x), tuple(sorted(canonical_key(y) for y in x)))
    if isinstance(x, tuple):
        return (3, tuple(canonical_key(y) for y in x))
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (4, key())
    raise TypeError(f"no canonical order for {type(x).__name__}")


def canonical_sorted(items):
    return sorted(items, key=canonical_key)
