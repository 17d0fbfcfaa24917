"""Seeded random capacities and transforms for audits and self-tests.

Everything is deterministic in (seed, shape): the only entropy source is
``random.Random(seed)`` and only ``randint`` draws are used, which keeps
byte-identical output across platforms and releases.  Values are small
rationals so downstream arithmetic stays exact and legible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .errors import BadRole, CriteriaLimitExceeded
from .setfunc import Interval, SetFunction
from .transforms import NONDECREASING, VANISHES_AT_0, TransformFn, piecewise_linear

GEN_MAX_CRITERIA = 8

ROLES = ("signed", "capacity", "ivalued")


def _check_n(n: int) -> None:
    if not 1 <= n <= GEN_MAX_CRITERIA:
        raise CriteriaLimitExceeded(
            "generation supports 1..%d criteria, got %d" % (GEN_MAX_CRITERIA, n)
        )


def signed_capacity(
    seed: int, n: int, magnitude: int = 2, denominator: int = 8
) -> SetFunction:
    """Arbitrary rational values in [-magnitude, magnitude], zero at the
    empty set.  No monotonicity."""
    _check_n(n)
    rng = random.Random(seed)
    top = magnitude * denominator
    values = [Fraction(0)]
    for _ in range(1, 1 << n):
        values.append(Fraction(rng.randint(-top, top), denominator))
    return SetFunction(n, values)


def capacity(seed: int, n: int, magnitude: int = 2, denominator: int = 8) -> SetFunction:
    """Monotone table built by nonnegative increments over the subset
    lattice: each set sits an increment above its largest predecessor."""
    _check_n(n)
    rng = random.Random(seed)
    values = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        below = max(values[mask & ~(1 << i)] for i in range(n) if mask & (1 << i))
        step = Fraction(rng.randint(0, magnitude * denominator // 2), denominator)
        values[mask] = below + step
    return SetFunction(n, values)


def interval_capacity(seed: int, n: int, interval: Interval) -> SetFunction:
    """Monotone table rescaled to hit both interval endpoints exactly."""
    _check_n(n)
    base = capacity(seed, n)
    top = base.values[(1 << n) - 1]
    if top == 0:
        # degenerate draw: only the full set leaves the bottom endpoint
        values = [interval.lo] * (1 << n)
        values[(1 << n) - 1] = interval.hi
        return SetFunction(n, values)
    span = interval.hi - interval.lo
    return SetFunction(n, tuple(interval.lo + span * v / top for v in base.values))


def monotone_transform(
    seed: int,
    span: tuple = (0, 1),
    target: Optional[tuple] = None,
    pieces: int = 4,
) -> TransformFn:
    """Nondecreasing piecewise-linear transform on ``span`` built from
    nonnegative increments, normalized to end exactly at ``target[1]``.

    ``target`` defaults to ``span``.  The left endpoint maps to target[0];
    when that is 0 the result carries the vanishes-at-0 flag.  A draw of
    all-zero increments falls back to the straight line, so the result is
    never constant.
    """
    rng = random.Random(seed)
    lo, hi = Fraction(span[0]), Fraction(span[1])
    tlo, thi = (lo, hi) if target is None else (Fraction(target[0]), Fraction(target[1]))
    xs = [lo + Fraction(k, pieces) * (hi - lo) for k in range(pieces + 1)]
    raw = [0]
    for _ in range(pieces):
        raw.append(raw[-1] + rng.randint(0, 4))
    total = raw[-1]
    if total == 0:
        raw = list(range(pieces + 1))
        total = pieces
    ys = [tlo + (thi - tlo) * Fraction(r, total) for r in raw]
    properties = [NONDECREASING]
    if tlo == 0:
        properties.append(VANISHES_AT_0)
    return piecewise_linear(list(zip(xs, ys)), properties)


def generate(role: str, seed: int, n: int, interval: Optional[Interval] = None) -> SetFunction:
    """Dispatch by role name; the CLI's gen verb goes through here."""
    if role == "signed":
        return signed_capacity(seed, n)
    if role == "capacity":
        return capacity(seed, n)
    if role == "ivalued":
        return interval_capacity(seed, n, interval if interval is not None else Interval(0, 1))
    raise BadRole("unknown generation role %r" % (role,))
