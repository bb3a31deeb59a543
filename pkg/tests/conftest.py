"""Shared helpers for the test suite."""

from davkit import Interval, Sequence


def S(spec) -> Sequence:
    """Sequence shorthand: dict {element: mult} or iterable of elements;
    elements may be ints (d=1) or coordinate tuples."""
    if isinstance(spec, dict):
        return Sequence.from_pairs(spec.items())
    return Sequence.from_elements(spec)


def interval(m: int, M: int) -> Interval:
    return Interval(-m, M)


def one_d_values(seq: Sequence) -> list[int]:
    return [e.coords[0] for e in seq.flatten()]
