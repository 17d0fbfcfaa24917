"""Grid-based axiom auditing for black-box aggregation functions.

The auditor evaluates an n-variable function on a finite rational grid and
tests algebraic identities exactly.  A verdict is therefore a statement
about the grid, not the whole box: a fail is conclusive (the witness is a
genuine counterexample), a pass is evidence.  For functions known to be
piecewise affine per sorting region, vertex grids make the additive
identities conclusive as well.

Identity catalog (x, y points; c, x, r scalars; S a subset; phi an
auxiliary transform; e_S the box corner hi-on-S/lo-off-S; diag(x) the
constant point):

  modular                f(x) + f(y) = f(x /\\ y) + f(x \\/ y), all pairs
  comono_modular         same, comonotonic pairs only
  comono_additive        f(x + y) = f(x) + f(y), comonotonic pairs, x + y in box
  horiz_min_additive     f(x) = f(x /\\ c) + f(x - x /\\ c), remainder in box
  horiz_max_additive     f(x) = f(x \\/ c) + f(x - x \\/ c), remainder in box
  horiz_median_additive  f(x) = f(med(-c,x,c)) + f(x - x /\\ c) + f(x - x \\/ (-c)), c >= 0
  invar_horiz_min_diff   f(x) - f(x /\\ c) = f([x]_c) - f([x]_c /\\ c), x >= 0, c >= 0
  invar_horiz_max_diff   f(x) - f(x \\/ c) = f([x]^c) - f([x]^c \\/ c), x <= 0, c <= 0
  maxitive / minitive    f(x \\/ y) = f(x) \\/ f(y)  (resp. /\\), all pairs
  comono_maxitive / comono_minitive    same, comonotonic pairs only
  pos_homog_rays         f(c x 1_S) = c f(x 1_S), c > 0, c x in box
  sign_homog_rays        f(x 1_S) = sign(x) x f(sign(x) 1_S)
  full_homog_rays        f(x 1_S) = x f(1_S)
  dual_shift             f(1_{X minus S}) = f(1_X) + f(-1_S)
  quasi_homog_rays       f(x 1_S) = sign(x) phi(x) f(sign(x) 1_S)
  quasi_full_homog_rays  f(x 1_S) = phi(x) f(1_S)
  quasi_max_homog        f(r \\/ x) = phi(r) \\/ f(x)
  quasi_min_homog        f(r /\\ x) = phi(r) /\\ f(x)
  weak_max_homog         f(x \\/ e_S) = f(diag x) \\/ f(e_S)
  weak_min_homog         f(x /\\ e_S) = f(diag x) /\\ f(e_S)
  nondecreasing          f(x) <= f(y) along single-coordinate axis steps
  odd                    f(-x) = -f(x)
  idempotent             f(diag c) = c
  plus_split             f(x) + f(0) = f(x pos) + f(-(x neg))

[x]_c zeroes every coordinate <= c; [x]^c zeroes every coordinate >= c.
Side conditions are handled by skip-and-count, never by clamping, and a
check whose every instance was skipped raises EmptyApplicableSet rather
than passing vacuously.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from random import Random
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .errors import (
    ComodularError,
    EmptyApplicableSet,
    MissingTransform,
)
from .scalars import Scalar, as_fraction, format_fraction
from .setfunc import Interval, elements_of_mask
from .transforms import TransformFn

ZERO = Fraction(0)
ONE = Fraction(1)


# --- grids -------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Recipe for one axis: k equispaced points plus forced special values."""

    box: Interval
    points_per_axis: int = 5
    include_zero: bool = True
    include_units: bool = True
    include_endpoints: bool = True

    def __post_init__(self):
        if self.points_per_axis < 2:
            raise ComodularError("points_per_axis must be at least 2")

    def axis(self) -> tuple[Fraction, ...]:
        lo, hi = self.box.lo, self.box.hi
        k = self.points_per_axis
        if self.include_endpoints:
            base = [lo + Fraction(i, k - 1) * (hi - lo) for i in range(k)]
        else:
            base = [lo + Fraction(i + 1, k + 1) * (hi - lo) for i in range(k)]
        forced = []
        if self.include_zero and self.box.contains(ZERO):
            forced.append(ZERO)
        if self.include_units:
            forced.extend(u for u in (ONE, -ONE) if self.box.contains(u))
        return tuple(sorted(set(base) | set(forced)))


@dataclass(frozen=True)
class Grid:
    """A materialized axis inside a box; the product axis^n is the test grid."""

    axis: tuple[Fraction, ...]
    box: Interval

    def __post_init__(self):
        pts = tuple(sorted(set(as_fraction(a) for a in self.axis)))
        if len(pts) < 2:
            raise ComodularError("grid axis needs at least two distinct points")
        for a in pts:
            if not self.box.contains(a):
                raise ComodularError("axis point %s outside box %s" % (a, self.box))
        object.__setattr__(self, "axis", pts)


GridLike = Union[Grid, GridSpec, Sequence[Scalar]]


def as_grid(grid: GridLike) -> Grid:
    if isinstance(grid, Grid):
        return grid
    if isinstance(grid, GridSpec):
        return Grid(grid.axis(), grid.box)
    axis = tuple(as_fraction(a) for a in grid)
    return Grid(axis, Interval(min(axis), max(axis)))


_POINTS_CACHE: dict = {}
_COMONO_CACHE: dict = {}


def grid_points(grid: Grid, n: int) -> tuple[tuple[Fraction, ...], ...]:
    key = (grid.axis, n)
    got = _POINTS_CACHE.get(key)
    if got is None:
        got = tuple(product(grid.axis, repeat=n))
        _POINTS_CACHE[key] = got
    return got


def comonotonic_pairs(grid: Grid, n: int) -> tuple:
    """All unordered comonotonic pairs of grid points, enumerated per region.

    Points sharing a sorting permutation sigma form the region grid; pairs
    are generated inside each region and deduplicated across regions, which
    avoids filtering the full k^(2n) product.
    """
    key = (grid.axis, n)
    got = _COMONO_CACHE.get(key)
    if got is not None:
        return got
    k = len(grid.axis)
    seen = set()
    out = []
    for sigma in permutations(range(n)):
        region = []
        for stair in combinations_with_replacement(range(k), n):
            pt = [None] * n
            for pos, level in zip(sigma, stair):
                pt[pos] = grid.axis[level]
            region.append(tuple(pt))
        for i, x in enumerate(region):
            for y in region[i:]:
                pair = (x, y) if x <= y else (y, x)
                if pair not in seen:
                    seen.add(pair)
                    out.append(pair)
    got = tuple(out)
    _COMONO_CACHE[key] = got
    return got


class _Eval:
    """Memoizing wrapper around the audited function."""

    __slots__ = ("fn", "cache")

    def __init__(self, fn):
        self.fn = fn
        self.cache = {}

    def at(self, coords: tuple[Fraction, ...]) -> Fraction:
        got = self.cache.get(coords)
        if got is None:
            got = as_fraction(self.fn(coords))
            self.cache[coords] = got
        return got


# --- identity evaluation -----------------------------------------------------
#
# Each axiom is an (enumerate, evaluate) pair.  enumerate yields operand
# dicts (None counts a skipped instance); evaluate recomputes both sides
# from the operands alone, so a stored witness replays independently.


def _inbox(coords: Iterable[Fraction], box: Interval) -> bool:
    return all(box.contains(c) for c in coords)


def _meet(x, y):
    return tuple(min(a, b) for a, b in zip(x, y))


def _join(x, y):
    return tuple(max(a, b) for a, b in zip(x, y))


def _ray(n: int, mask: int, value: Fraction) -> tuple[Fraction, ...]:
    return tuple(value if mask & (1 << i) else ZERO for i in range(n))


def _corner(n: int, mask: int, box: Interval) -> tuple[Fraction, ...]:
    return tuple(box.hi if mask & (1 << i) else box.lo for i in range(n))


def _diag(n: int, value: Fraction) -> tuple[Fraction, ...]:
    return (value,) * n


def _sign(x: Fraction) -> Fraction:
    return ONE if x > 0 else (-ONE if x < 0 else ZERO)


def _enum_pairs(comono: bool):
    def enum(grid, n):
        if comono:
            yield from comonotonic_pairs(grid, n)
        else:
            for pair in combinations_with_replacement(grid_points(grid, n), 2):
                yield pair

    def wrapped(grid, n):
        for x, y in enum(grid, n):
            yield {"x": x, "y": y}

    return wrapped


def _eval_modular(ev, phi, grid, o):
    x, y = o["x"], o["y"]
    return ev.at(x) + ev.at(y), ev.at(_meet(x, y)) + ev.at(_join(x, y)), "eq"


def _eval_maxitive(ev, phi, grid, o):
    x, y = o["x"], o["y"]
    return ev.at(_join(x, y)), max(ev.at(x), ev.at(y)), "eq"


def _eval_minitive(ev, phi, grid, o):
    x, y = o["x"], o["y"]
    return ev.at(_meet(x, y)), min(ev.at(x), ev.at(y)), "eq"


def _enum_comono_sum(grid, n):
    for x, y in comonotonic_pairs(grid, n):
        total = tuple(a + b for a, b in zip(x, y))
        if _inbox(total, grid.box):
            yield {"x": x, "y": y}
        else:
            yield None


def _eval_comono_additive(ev, phi, grid, o):
    x, y = o["x"], o["y"]
    total = tuple(a + b for a, b in zip(x, y))
    return ev.at(total), ev.at(x) + ev.at(y), "eq"


def _enum_point_level(filter_x=None, filter_c=None, closure=None):
    def enum(grid, n):
        for x in grid_points(grid, n):
            if filter_x is not None and not all(filter_x(a) for a in x):
                continue
            for c in grid.axis:
                if filter_c is not None and not filter_c(c):
                    continue
                o = {"x": x, "c": c}
                if closure is not None and not closure(grid, o):
                    yield None
                else:
                    yield o

    return enum


def _hsplit_min(x, c):
    low = tuple(min(a, c) for a in x)
    return low, tuple(a - b for a, b in zip(x, low))


def _hsplit_max(x, c):
    high = tuple(max(a, c) for a in x)
    return high, tuple(a - b for a, b in zip(x, high))


def _closure_hmin(grid, o):
    _, rest = _hsplit_min(o["x"], o["c"])
    return _inbox(rest, grid.box)


def _closure_hmax(grid, o):
    _, rest = _hsplit_max(o["x"], o["c"])
    return _inbox(rest, grid.box)


def _eval_hmin(ev, phi, grid, o):
    low, rest = _hsplit_min(o["x"], o["c"])
    return ev.at(o["x"]), ev.at(low) + ev.at(rest), "eq"


def _eval_hmax(ev, phi, grid, o):
    high, rest = _hsplit_max(o["x"], o["c"])
    return ev.at(o["x"]), ev.at(high) + ev.at(rest), "eq"


def _closure_hmedian(grid, o):
    x, c = o["x"], o["c"]
    if not grid.box.contains(-c):
        return False
    med = tuple(min(max(a, -c), c) for a in x)
    _, rest_min = _hsplit_min(x, c)
    _, rest_max = _hsplit_max(x, -c)
    return all(_inbox(p, grid.box) for p in (med, rest_min, rest_max))


def _eval_hmedian(ev, phi, grid, o):
    x, c = o["x"], o["c"]
    med = tuple(min(max(a, -c), c) for a in x)
    _, rest_min = _hsplit_min(x, c)
    _, rest_max = _hsplit_max(x, -c)
    return ev.at(x), ev.at(med) + ev.at(rest_min) + ev.at(rest_max), "eq"


def _bracket_low(x, c):
    return tuple(ZERO if a <= c else a for a in x)


def _bracket_high(x, c):
    return tuple(ZERO if a >= c else a for a in x)


def _closure_invar_min(grid, o):
    x, c = o["x"], o["c"]
    b = _bracket_low(x, c)
    pts = (_meet(x, _diag(len(x), c)), b, _meet(b, _diag(len(x), c)))
    return all(_inbox(p, grid.box) for p in pts)


def _eval_invar_min(ev, phi, grid, o):
    x, c = o["x"], o["c"]
    cd = _diag(len(x), c)
    b = _bracket_low(x, c)
    return ev.at(x) - ev.at(_meet(x, cd)), ev.at(b) - ev.at(_meet(b, cd)), "eq"


def _closure_invar_max(grid, o):
    x, c = o["x"], o["c"]
    b = _bracket_high(x, c)
    pts = (_join(x, _diag(len(x), c)), b, _join(b, _diag(len(x), c)))
    return all(_inbox(p, grid.box) for p in pts)


def _eval_invar_max(ev, phi, grid, o):
    x, c = o["x"], o["c"]
    cd = _diag(len(x), c)
    b = _bracket_high(x, c)
    return ev.at(x) - ev.at(_join(x, cd)), ev.at(b) - ev.at(_join(b, cd)), "eq"


def _enum_scaled_rays(grid, n):
    for mask in range(1 << n):
        for x in grid.axis:
            for c in grid.axis:
                if c <= 0:
                    continue
                if _inbox((c * x,), grid.box) and _inbox(_ray(n, mask, x), grid.box) and _inbox(
                    _ray(n, mask, c * x), grid.box
                ):
                    yield {"c": c, "x": x, "subset": mask}
                else:
                    yield None


def _eval_pos_homog(ev, phi, grid, o):
    c, x, mask = o["c"], o["x"], o["subset"]
    n = _grid_arity(o, grid)
    return ev.at(_ray(n, mask, c * x)), c * ev.at(_ray(n, mask, x)), "eq"


def _enum_rays(signed: bool):
    def enum(grid, n):
        for mask in range(1 << n):
            for x in grid.axis:
                pts = [_ray(n, mask, x)]
                if signed:
                    s = _sign(x)
                    if s != 0:
                        pts.append(_ray(n, mask, s))
                else:
                    pts.append(_ray(n, mask, ONE))
                if all(_inbox(p, grid.box) for p in pts):
                    yield {"x": x, "subset": mask}
                else:
                    yield None

    return enum


def _eval_sign_homog(ev, phi, grid, o):
    x, mask = o["x"], o["subset"]
    n = _grid_arity(o, grid)
    s = _sign(x)
    rhs = ZERO if s == 0 else s * x * ev.at(_ray(n, mask, s))
    return ev.at(_ray(n, mask, x)), rhs, "eq"


def _eval_full_homog(ev, phi, grid, o):
    x, mask = o["x"], o["subset"]
    n = _grid_arity(o, grid)
    return ev.at(_ray(n, mask, x)), x * ev.at(_ray(n, mask, ONE)), "eq"


def _eval_quasi_homog(ev, phi, grid, o):
    x, mask = o["x"], o["subset"]
    n = _grid_arity(o, grid)
    s = _sign(x)
    rhs = ZERO if s == 0 else s * phi(x) * ev.at(_ray(n, mask, s))
    return ev.at(_ray(n, mask, x)), rhs, "eq"


def _eval_quasi_full_homog(ev, phi, grid, o):
    x, mask = o["x"], o["subset"]
    n = _grid_arity(o, grid)
    return ev.at(_ray(n, mask, x)), phi(x) * ev.at(_ray(n, mask, ONE)), "eq"


def _enum_dual_shift(grid, n):
    full = (1 << n) - 1
    for mask in range(1 << n):
        pts = (_ray(n, full ^ mask, ONE), _ray(n, full, ONE), _ray(n, mask, -ONE))
        if all(_inbox(p, grid.box) for p in pts):
            yield {"subset": mask}
        else:
            yield None


def _eval_dual_shift(ev, phi, grid, o):
    mask = o["subset"]
    n = _grid_arity(o, grid)
    full = (1 << n) - 1
    lhs = ev.at(_ray(n, full ^ mask, ONE))
    rhs = ev.at(_ray(n, full, ONE)) + ev.at(_ray(n, mask, -ONE))
    return lhs, rhs, "eq"


def _enum_level_point(grid, n):
    for r in grid.axis:
        for x in grid_points(grid, n):
            yield {"r": r, "x": x}


def _eval_quasi_max(ev, phi, grid, o):
    r, x = o["r"], o["x"]
    lifted = tuple(max(r, a) for a in x)
    return ev.at(lifted), max(phi(r), ev.at(x)), "eq"


def _eval_quasi_min(ev, phi, grid, o):
    r, x = o["r"], o["x"]
    lowered = tuple(min(r, a) for a in x)
    return ev.at(lowered), min(phi(r), ev.at(x)), "eq"


def _enum_scalar_subset(grid, n):
    for x in grid.axis:
        for mask in range(1 << n):
            yield {"x": x, "subset": mask}


def _eval_weak_max(ev, phi, grid, o):
    x, mask = o["x"], o["subset"]
    n = _grid_arity(o, grid)
    corner = _corner(n, mask, grid.box)
    lifted = _join(_diag(n, x), corner)
    return ev.at(lifted), max(ev.at(_diag(n, x)), ev.at(corner)), "eq"


def _eval_weak_min(ev, phi, grid, o):
    x, mask = o["x"], o["subset"]
    n = _grid_arity(o, grid)
    corner = _corner(n, mask, grid.box)
    lowered = _meet(_diag(n, x), corner)
    return ev.at(lowered), min(ev.at(_diag(n, x)), ev.at(corner)), "eq"


def _enum_axis_steps(grid, n):
    axis = grid.axis
    index = {a: i for i, a in enumerate(axis)}
    for x in grid_points(grid, n):
        for i in range(n):
            j = index[x[i]]
            if j + 1 < len(axis):
                y = x[:i] + (axis[j + 1],) + x[i + 1 :]
                yield {"x": x, "y": y}


def _eval_le(ev, phi, grid, o):
    return ev.at(o["x"]), ev.at(o["y"]), "le"


def _enum_negatable(grid, n):
    for x in grid_points(grid, n):
        neg = tuple(-a for a in x)
        if _inbox(neg, grid.box):
            yield {"x": x}
        else:
            yield None


def _eval_odd(ev, phi, grid, o):
    x = o["x"]
    return ev.at(tuple(-a for a in x)), -ev.at(x), "eq"


def _enum_diagonal(grid, n):
    for c in grid.axis:
        yield {"c": c}


def _eval_idempotent(ev, phi, grid, o):
    c = o["c"]
    return ev.at(_diag(_grid_arity(o, grid), c)), c, "eq"


def _enum_split(grid, n):
    for x in grid_points(grid, n):
        pos = tuple(max(a, ZERO) for a in x)
        negneg = tuple(min(a, ZERO) for a in x)
        if _inbox(pos, grid.box) and _inbox(negneg, grid.box):
            yield {"x": x}
        else:
            yield None


def _eval_split(ev, phi, grid, o):
    x = o["x"]
    n = len(x)
    pos = tuple(max(a, ZERO) for a in x)
    negneg = tuple(min(a, ZERO) for a in x)
    return ev.at(x) + ev.at(_diag(n, ZERO)), ev.at(pos) + ev.at(negneg), "eq"


_ARITY_KEY = "__n"


def _grid_arity(o, grid) -> int:
    return o[_ARITY_KEY]


@dataclass(frozen=True)
class _AxiomDef:
    id: str
    enumerate: Callable
    evaluate: Callable
    needs_phi: bool = False
    operand_order: tuple[str, ...] = ()


def _nonneg(a):
    return a >= 0


def _nonpos(a):
    return a <= 0


AXIOMS: dict[str, _AxiomDef] = {
    d.id: d
    for d in (
        _AxiomDef("modular", _enum_pairs(False), _eval_modular, operand_order=("x", "y")),
        _AxiomDef("comono_modular", _enum_pairs(True), _eval_modular, operand_order=("x", "y")),
        _AxiomDef(
            "comono_additive", _enum_comono_sum, _eval_comono_additive, operand_order=("x", "y")
        ),
        _AxiomDef(
            "horiz_min_additive",
            _enum_point_level(closure=_closure_hmin),
            _eval_hmin,
            operand_order=("x", "c"),
        ),
        _AxiomDef(
            "horiz_max_additive",
            _enum_point_level(closure=_closure_hmax),
            _eval_hmax,
            operand_order=("x", "c"),
        ),
        _AxiomDef(
            "horiz_median_additive",
            _enum_point_level(filter_c=_nonneg, closure=_closure_hmedian),
            _eval_hmedian,
            operand_order=("x", "c"),
        ),
        _AxiomDef(
            "invar_horiz_min_diff",
            _enum_point_level(filter_x=_nonneg, filter_c=_nonneg, closure=_closure_invar_min),
            _eval_invar_min,
            operand_order=("x", "c"),
        ),
        _AxiomDef(
            "invar_horiz_max_diff",
            _enum_point_level(filter_x=_nonpos, filter_c=_nonpos, closure=_closure_invar_max),
            _eval_invar_max,
            operand_order=("x", "c"),
        ),
        _AxiomDef("maxitive", _enum_pairs(False), _eval_maxitive, operand_order=("x", "y")),
        _AxiomDef("minitive", _enum_pairs(False), _eval_minitive, operand_order=("x", "y")),
        _AxiomDef("comono_maxitive", _enum_pairs(True), _eval_maxitive, operand_order=("x", "y")),
        _AxiomDef("comono_minitive", _enum_pairs(True), _eval_minitive, operand_order=("x", "y")),
        _AxiomDef(
            "pos_homog_rays", _enum_scaled_rays, _eval_pos_homog, operand_order=("c", "x", "subset")
        ),
        _AxiomDef(
            "sign_homog_rays", _enum_rays(True), _eval_sign_homog, operand_order=("x", "subset")
        ),
        _AxiomDef(
            "full_homog_rays", _enum_rays(False), _eval_full_homog, operand_order=("x", "subset")
        ),
        _AxiomDef("dual_shift", _enum_dual_shift, _eval_dual_shift, operand_order=("subset",)),
        _AxiomDef(
            "quasi_homog_rays",
            _enum_rays(True),
            _eval_quasi_homog,
            needs_phi=True,
            operand_order=("x", "subset"),
        ),
        _AxiomDef(
            "quasi_full_homog_rays",
            _enum_rays(False),
            _eval_quasi_full_homog,
            needs_phi=True,
            operand_order=("x", "subset"),
        ),
        _AxiomDef(
            "quasi_max_homog",
            _enum_level_point,
            _eval_quasi_max,
            needs_phi=True,
            operand_order=("r", "x"),
        ),
        _AxiomDef(
            "quasi_min_homog",
            _enum_level_point,
            _eval_quasi_min,
            needs_phi=True,
            operand_order=("r", "x"),
        ),
        _AxiomDef(
            "weak_max_homog", _enum_scalar_subset, _eval_weak_max, operand_order=("x", "subset")
        ),
        _AxiomDef(
            "weak_min_homog", _enum_scalar_subset, _eval_weak_min, operand_order=("x", "subset")
        ),
        _AxiomDef("nondecreasing", _enum_axis_steps, _eval_le, operand_order=("x", "y")),
        _AxiomDef("odd", _enum_negatable, _eval_odd, operand_order=("x",)),
        _AxiomDef("idempotent", _enum_diagonal, _eval_idempotent, operand_order=("c",)),
        _AxiomDef("plus_split", _enum_split, _eval_split, operand_order=("x",)),
    )
}


# --- reports and the check driver --------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    verdict: str
    witness: Optional[dict]
    tested: int
    skipped: int

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self, mode: str = "rational") -> dict:
        payload = {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "witness": None,
            "tested": self.tested,
            "skipped": self.skipped,
        }
        if self.witness is not None:
            payload["witness"] = {
                "operands": {
                    name: _operand_json(value, mode)
                    for name, value in self.witness["operands"].items()
                },
                "lhs": format_fraction(self.witness["lhs"], mode),
                "rhs": format_fraction(self.witness["rhs"], mode),
                "relation": self.witness["relation"],
            }
        return payload


def _operand_json(value, mode):
    if isinstance(value, int) and not isinstance(value, bool):
        return list(elements_of_mask(value))
    if isinstance(value, tuple):
        return [format_fraction(v, mode) for v in value]
    return format_fraction(value, mode)


def _operand_key(value):
    if isinstance(value, int):
        return (Fraction(value),)
    if isinstance(value, tuple):
        return value
    return (value,)


def _witness_key(axiom: _AxiomDef, operands: dict) -> tuple:
    key = ()
    for name in axiom.operand_order:
        key = key + _operand_key(operands[name])
    return key


def _holds(lhs: Fraction, rhs: Fraction, relation: str, eps: Fraction) -> bool:
    if relation == "le":
        return lhs <= rhs + eps
    return abs(lhs - rhs) <= eps


def check(
    axiom: str,
    fn: Callable[[tuple[Fraction, ...]], Scalar],
    n: int,
    grid: GridLike,
    phi: Optional[TransformFn] = None,
    eps: Scalar = 0,
) -> AxiomReport:
    """Test one axiom exhaustively on the grid.

    The verdict is grid-relative.  The reported witness is the
    lexicographically smallest violation in operand order, independent of
    enumeration strategy.
    """
    if axiom not in AXIOMS:
        raise ComodularError("unknown axiom %r" % (axiom,))
    spec = AXIOMS[axiom]
    if spec.needs_phi and phi is None:
        raise MissingTransform("axiom %s needs an auxiliary transform" % axiom)
    g = as_grid(grid)
    tol = as_fraction(eps)
    ev = _Eval(fn)
    tested = skipped = 0
    best_key = None
    best = None
    for operands in spec.enumerate(g, n):
        if operands is None:
            skipped += 1
            continue
        operands[_ARITY_KEY] = n
        lhs, rhs, relation = spec.evaluate(ev, phi, g, operands)
        tested += 1
        if not _holds(lhs, rhs, relation, tol):
            key = _witness_key(spec, operands)
            if best_key is None or key < best_key:
                best_key = key
                best = {
                    "operands": {k: v for k, v in operands.items() if k != _ARITY_KEY},
                    "lhs": lhs,
                    "rhs": rhs,
                    "relation": relation,
                }
    if tested == 0:
        raise EmptyApplicableSet(
            "axiom %s: every candidate instance was skipped on this grid" % axiom
        )
    if best is None:
        return AxiomReport(axiom, "pass", None, tested, skipped)
    return AxiomReport(axiom, "fail", best, tested, skipped)


def replay_witness(
    axiom: str,
    fn: Callable,
    witness: dict,
    grid: GridLike,
    n: int,
    phi: Optional[TransformFn] = None,
    eps: Scalar = 0,
) -> bool:
    """Re-evaluate the identity at a stored witness; True means it holds."""
    spec = AXIOMS[axiom]
    operands = dict(witness["operands"])
    operands[_ARITY_KEY] = n
    lhs, rhs, relation = spec.evaluate(_Eval(fn), phi, as_grid(grid), operands)
    return _holds(lhs, rhs, relation, as_fraction(eps))


# --- audit battery and classification ----------------------------------------


@dataclass(frozen=True)
class AuditResult:
    reports: tuple[AxiomReport, ...]
    summary: dict

    def report(self, axiom: str) -> Optional[AxiomReport]:
        for r in self.reports:
            if r.axiom == axiom:
                return r
        return None

    def to_json(self, mode: str = "rational") -> dict:
        return {
            "reports": [r.to_json(mode) for r in self.reports],
            "summary": self.summary,
        }


def _classify(verdicts: dict, box: Interval, f_zero: Optional[Fraction]) -> list[str]:
    wide = box.lo <= -1 and box.hi >= 1
    labels = []

    def all_pass(*ids):
        return all(verdicts.get(i) == "pass" for i in ids)

    signed_ids = ["comono_modular", "sign_homog_rays"] + (["dual_shift"] if wide else [])
    if all(i in verdicts for i in signed_ids):
        if all_pass(*signed_ids) and f_zero == 0:
            labels.append("consistent with a signed Choquet integral on this grid")
    if box.is_symmetric and wide and {"comono_modular", "full_homog_rays"} <= verdicts.keys():
        if all_pass("comono_modular", "full_homog_rays"):
            labels.append("consistent with a symmetric signed Choquet integral on this grid")
    if {"comono_maxitive", "comono_minitive"} <= verdicts.keys():
        if all_pass("comono_maxitive", "comono_minitive"):
            labels.append("consistent with a quasi-Sugeno integral on this grid")
            if verdicts.get("idempotent") == "pass":
                labels.append("consistent with a Sugeno integral on this grid")
    if verdicts.get("comono_modular") == "fail":
        labels.append("outside the comonotonically modular class on this grid")
    return labels


def audit(
    fn: Callable,
    n: int,
    grid: GridLike,
    axioms: Iterable[str],
    phi: Optional[TransformFn] = None,
    eps: Scalar = 0,
) -> AuditResult:
    """Run a battery of checks and summarize which families remain viable."""
    g = as_grid(grid)
    reports = tuple(check(a, fn, n, g, phi=phi, eps=eps) for a in axioms)
    verdicts = {r.axiom: r.verdict for r in reports}
    f_zero = None
    if g.box.contains(ZERO):
        f_zero = as_fraction(fn((ZERO,) * n))
    summary = {
        "box": [str(g.box.lo), str(g.box.hi)],
        "axis_size": len(g.axis),
        "vanishes_at_origin": (f_zero == 0) if f_zero is not None else None,
        "f_at_origin": None if f_zero is None else str(f_zero),
        "classifications": _classify(verdicts, g.box, f_zero),
    }
    return AuditResult(reports, summary)


def spot_check(
    axiom: str,
    fn: Callable,
    n: int,
    box: Interval,
    seed: int,
    count: int = 50,
    denominator: int = 16,
    phi: Optional[TransformFn] = None,
    eps: Scalar = 0,
) -> AxiomReport:
    """Seeded random supplement to the exhaustive grid check.

    Draws a random axis from a fine lattice inside the box and runs the
    ordinary check on it.  Deterministic for a fixed seed.
    """
    rng = Random(seed)
    lo, hi = box.lo, box.hi
    lattice = [lo + Fraction(i, denominator) * (hi - lo) for i in range(denominator + 1)]
    size = max(2, min(count, len(lattice)))
    axis = sorted(rng.sample(lattice, size))
    if box.contains(ZERO) and ZERO not in axis:
        axis.append(ZERO)
    return check(axiom, fn, n, Grid(tuple(sorted(axis)), box), phi=phi, eps=eps)
