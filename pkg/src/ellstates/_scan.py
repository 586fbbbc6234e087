"""Deterministic window-selection helpers for brute-force scans.

Symbolic carriers are infinite, and cartesian products of windows can be
huge, so quantified checks sometimes run over a reduced deterministic
subset.  Reduction is always by even striding over a fixed enumeration
order -- never randomness -- so identical invocations scan identical
instances.
"""

from __future__ import annotations

from itertools import product
from math import prod
from typing import Sequence, TypeVar

T = TypeVar("T")


def stride_select(items: Sequence[T], cap: int) -> list[T]:
    """At most ``cap`` elements, evenly strided, first and last included."""
    n = len(items)
    if n <= cap:
        return list(items)
    if cap == 1:
        return [items[0]]
    picked = []
    seen = set()
    for i in range(cap):
        j = (i * (n - 1)) // (cap - 1)
        if j not in seen:
            seen.add(j)
            picked.append(items[j])
    return picked


def capped_cartesian(
    lists: Sequence[Sequence[T]],
    cap: int | None,
    forced: Sequence[tuple[T, ...]] = (),
) -> list[tuple[T, ...]]:
    """Cartesian product of ``lists``, strided down to ``cap`` tuples.

    ``forced`` tuples (typically bottom and top) are always present.  When
    the full product fits under the cap it is returned whole, in
    itertools.product order.
    """
    total = prod(len(xs) for xs in lists)
    if cap is None or total <= cap:
        return list(product(*lists))
    out: list[tuple[T, ...]] = []
    seen: set[tuple[T, ...]] = set()
    for t in forced:
        if t not in seen:
            seen.add(t)
            out.append(t)
    budget = max(cap - len(out), 1)
    for i in range(budget):
        flat = (i * (total - 1)) // (budget - 1) if budget > 1 else 0
        t = _decode_mixed_radix(flat, lists)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _decode_mixed_radix(index: int, lists: Sequence[Sequence[T]]) -> tuple[T, ...]:
    # itertools.product order: the last factor varies fastest.
    digits: list[T] = []
    for xs in reversed(lists):
        index, r = divmod(index, len(xs))
        digits.append(xs[r])
    return tuple(reversed(digits))
