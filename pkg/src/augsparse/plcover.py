"""Minimum-size piecewise-linear upper covers of concave penalty sequences.

A cover is a set of lines whose lower envelope f satisfies
w(i) <= f(i) <= (1+eps) w(i) at every integer i of the domain.  Symmetric
covers (domain 0..r, f(0)=0, flat beyond r) become CB-gadget combinations;
generalized covers (domain 0..k) become ACB-gadget combinations plus
terminal arcs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .splitting import GSCBFunction, SCBFunction, scb_from_values

# Relative tolerance for "g(i) <= (1+eps) w(i)" so that collinear points
# survive float rounding at eps=0.
COVER_RTOL = 1e-12


class CoverError(ValueError):
    """A cover or gadget parameter vector is structurally malformed."""


@dataclass(frozen=True)
class Line:
    slope: float
    intercept: float

    def __call__(self, x):
        return self.slope * x + self.intercept

    @classmethod
    def through(cls, x0: float, y0: float, x1: float, y1: float) -> "Line":
        m = (y1 - y0) / (x1 - x0)
        return cls(m, y0 - m * x0)


@dataclass(frozen=True)
class PLCover:
    lines: tuple[Line, ...]
    domain_end: int
    symmetric: bool = True

    def envelope(self, x):
        """Lower envelope min_g g(x); accepts scalars or arrays."""
        if not self.lines:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        if np.ndim(x):
            x = np.asarray(x, dtype=float)
            out = np.full(x.shape, np.inf)
            for g in self.lines:
                np.minimum(out, g.slope * x + g.intercept, out=out)
            return out
        return min(g.slope * x + g.intercept for g in self.lines)

    @property
    def pieces(self) -> int:
        """Positive-slope pieces for symmetric covers, all lines otherwise."""
        if self.symmetric:
            return sum(1 for g in self.lines if g.slope > 0)
        return len(self.lines)

    def breakpoints(self) -> list[float]:
        return [_intersect(g, h) for g, h in zip(self.lines, self.lines[1:])]


@dataclass(frozen=True)
class CCBParams:
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.a)

    def scaled(self, c: float) -> "CCBParams":
        return CCBParams(tuple(c * x for x in self.a), self.b)


@dataclass(frozen=True)
class KCGParams:
    z0: float
    zk: float
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.a)

    def scaled(self, c: float) -> "KCGParams":
        return KCGParams(c * self.z0, c * self.zk, tuple(c * x for x in self.a), self.b)


def _intersect(g: Line, h: Line) -> float:
    return (h.intercept - g.intercept) / (g.slope - h.slope)


def lower_envelope(lines: Sequence[Line], lo: float = 0.0, hi: float = math.inf) -> tuple[Line, ...]:
    """Lines that actually appear on min_g g(x) over [lo, hi], by decreasing slope."""
    best: dict[float, float] = {}
    for g in lines:
        if g.slope not in best or g.intercept < best[g.slope]:
            best[g.slope] = g.intercept
    ordered = [Line(m, best[m]) for m in sorted(best, reverse=True)]
    hull: list[Line] = []
    for g in ordered:
        while len(hull) >= 2 and _intersect(hull[-2], g) <= _intersect(hull[-2], hull[-1]):
            hull.pop()
        hull.append(g)
    span = max(1.0, abs(hi) if math.isfinite(hi) else abs(lo))
    eps = 1e-12 * span
    while len(hull) >= 2 and _intersect(hull[0], hull[1]) <= lo + eps:
        hull.pop(0)
    while len(hull) >= 2 and _intersect(hull[-2], hull[-1]) >= hi - eps:
        hull.pop()
    return tuple(hull)


def _le(a: float, b: float, scale: float) -> bool:
    return a <= b + COVER_RTOL * max(abs(b), scale)


def _values(w) -> np.ndarray:
    if isinstance(w, (SCBFunction, GSCBFunction)):
        return w.array
    return np.asarray(w, dtype=float)


def _le_vec(a: np.ndarray, b: np.ndarray, scale: float) -> np.ndarray:
    return a <= b + COVER_RTOL * np.maximum(np.abs(b), scale)


# scan blocks stop growing here so the working set stays cache-sized
_MAX_BLOCK = 8192


def _advance(ok, start: int, stop: int) -> int:
    """Largest x in [start-1, stop] with ok(q) true for all q in start..x.

    ok is evaluated on index arrays in geometrically growing blocks, so the
    cost is proportional to how far the scan gets.
    """
    x, size = start - 1, 8
    while x < stop:
        q = np.arange(x + 1, min(stop, x + size) + 1)
        mask = ok(q)
        if not mask.all():
            return x + int(np.argmin(mask))
        x, size = int(q[-1]), min(2 * size, _MAX_BLOCK)
    return x


def _pivot_line(w: np.ndarray, eps: float, ell: int, end: int, scale: float) -> tuple[Line, int]:
    """Widest-reaching upper-bounding line covering ``ell``.

    The line pivots on (ell, (1+eps) w(ell)) and is tangent to the point
    sequence at the furthest anchor it can reach, which also makes it the
    minimum-slope line among those with maximal reach.
    """
    target = (1 + eps) * w[ell]
    # largest j such that the chord through (j, w_j), (j+1, w_{j+1}) still covers ell
    j = _advance(lambda q: _le_vec(w[q] + (w[q + 1] - w[q]) * (ell - q), target, scale), ell + 1, end - 1)
    anchor = max(j, ell) + 1
    slope = float((w[anchor] - target) / (anchor - ell))
    g = Line(slope, float(w[anchor] - slope * anchor))
    p = _advance(lambda q: _le_vec(w[anchor] + slope * (q - anchor), (1 + eps) * w[q], scale), anchor + 1, end)
    return g, max(p, anchor)


def find_next(w: SCBFunction | Sequence[float], eps: float, ell: int) -> tuple[Line, int]:
    """Next line of the greedy symmetric cover, starting at uncovered index ``ell``.

    Returns the constant line w(r) with sentinel ``r + 1`` when it already
    covers ``ell`` (and hence everything to its right).
    """
    w = _values(w)
    r = len(w) - 1
    if not 1 <= ell <= r:
        raise ValueError(f"left endpoint {ell} outside [1, {r}]")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return _find_next(w, eps, ell, r, float(np.abs(w).max()))


def _find_next(w: np.ndarray, eps: float, ell: int, r: int, scale: float) -> tuple[Line, int]:
    if _le(w[r], (1 + eps) * w[ell], scale):
        return Line(0.0, float(w[r])), r + 1
    return _pivot_line(w, eps, ell, r, scale)


def find_best_cover(w: SCBFunction | Sequence[float], eps: float) -> PLCover:
    """Optimal (1+eps)-cover of a symmetric penalty sequence in O(r) time."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if not isinstance(w, SCBFunction):
        w = scb_from_values(w)
    vals = _values(w)
    r = w.r
    if r == 0 or w.is_zero:
        return PLCover((), r)
    scale = float(vals.max())
    lines = [Line(float(vals[1]), 0.0)]
    p = max(_advance(lambda q: _le_vec(vals[1] * q, (1 + eps) * vals[q], scale), 2, r), 1)
    ell = p + 1
    while ell <= r:
        g, p = _find_next(vals, eps, ell, r, scale)
        lines.append(g)
        ell = p + 1
    if lines[-1].slope != 0.0:
        lines.append(Line(0.0, float(vals[r])))
    return PLCover(lower_envelope(lines, 0.0), r, True)


def clique_cover(k: int, eps: float) -> PLCover:
    """Tangent-line cover of x(k-x) whose size does not grow with k.

    Covers the whole interval [1, k/2] (not just integers) with tangent
    lines, then caps with the constant w(r) so the result is a valid
    symmetric cover over 0..floor(k/2).
    """
    if k < 2:
        raise ValueError("clique cover needs k >= 2")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    r = k // 2
    if eps == 0:
        return find_best_cover([float(i * (k - i)) for i in range(r + 1)], 0.0)
    lines = [Line(float(k - 1), 0.0)]
    half = k / 2
    z = 1.0
    while True:
        t = z + math.sqrt(z * (k - z) * eps)
        z = (t + 0.5 * k * eps + 0.5 * math.sqrt(k * k * eps * eps + 4 * eps * t * (k - t))) / (1 + eps)
        if t >= half:
            break
        lines.append(Line(k - 2 * t, t * t))
        if z >= half:
            break
    lines.append(Line(0.0, float(r * (k - r))))
    return PLCover(lower_envelope(lines, 0.0), r, True)


def gscb_cover(w: GSCBFunction | Sequence[float], eps: float) -> PLCover:
    """Greedy (1+eps)-cover of a generalized penalty sequence over 0..k.

    Sweeps left to right with the same pivot construction as the symmetric
    case, starting at index 0.  When the chord through (l, w_l), (l+1,
    w_{l+1}) reaches as far as the pivot line it is used instead, since it
    is exact at l.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    vals = _values(w)
    k = len(vals) - 1
    scale = float(np.abs(vals).max())
    if scale == 0.0:
        return PLCover((Line(0.0, 0.0),), k, False)
    lines: list[Line] = []
    ell = 0
    while ell <= k:
        if ell == k:
            # single remaining point: chord from the left is exact there
            lines.append(Line.through(k - 1, float(vals[k - 1]), k, float(vals[k])))
            break
        g, p = _pivot_line(vals, eps, ell, k, scale)
        chord = Line.through(ell, float(vals[ell]), ell + 1, float(vals[ell + 1]))
        q = max(_advance(lambda x: _le_vec(chord(x), (1 + eps) * vals[x], scale), ell + 2, k), ell + 1)
        if q >= p:
            g, p = chord, q
        lines.append(g)
        ell = p + 1
    return PLCover(lower_envelope(lines, 0.0, float(k)), k, False)


def cover_to_ccb(c: PLCover) -> CCBParams:
    """CB-gadget weights reproducing a symmetric cover's envelope."""
    lines = c.lines
    if not lines:
        return CCBParams((), ())
    slopes = [g.slope for g in lines]
    if any(s1 <= s2 for s1, s2 in zip(slopes, slopes[1:])):
        raise CoverError("cover slopes must be strictly decreasing")
    if slopes[-1] != 0.0:
        raise CoverError("a symmetric cover must end with a constant line")
    if abs(lines[0].intercept) > 1e-12 * max(1.0, abs(lines[-1].intercept)):
        raise CoverError("a symmetric cover must pass through the origin")
    b = tuple(c.breakpoints())
    a = tuple(s1 - s2 for s1, s2 in zip(slopes, slopes[1:]))
    tol = 1e-9 * max(1.0, c.domain_end)
    if any(x <= 0 for x in b) or any(x2 <= x1 for x1, x2 in zip(b, b[1:])) or (b and b[-1] > c.domain_end + tol):
        raise CoverError(f"breakpoints {b} are not strictly increasing inside (0, {c.domain_end}]")
    return CCBParams(a, tuple(min(x, float(c.domain_end)) for x in b))


def ccb_evaluate(p: CCBParams, i: float) -> float:
    return sum(a * min(i, b) for a, b in zip(p.a, p.b))


def cover_to_kcg(c: PLCover, k: int | None = None) -> KCGParams:
    """ACB-gadget weights and terminal arcs reproducing a generalized cover."""
    k = c.domain_end if k is None else k
    lines = c.lines
    if not lines:
        return KCGParams(0.0, 0.0, (), ())
    slopes = [g.slope for g in lines]
    if any(s1 <= s2 for s1, s2 in zip(slopes, slopes[1:])):
        raise CoverError("cover slopes must be strictly decreasing")
    b = tuple(c.breakpoints())
    if any(x <= 0 or x >= k for x in b) or any(x2 <= x1 for x1, x2 in zip(b, b[1:])):
        raise CoverError(f"breakpoints {b} must be strictly increasing inside (0, {k})")
    f0 = lines[0](0.0)
    fk = lines[-1](float(k))
    # rounding can leave ~1e-16 where the cover passes through zero; that
    # would turn into a useless terminal arc
    tiny = 1e-12 * max(max(abs(g(0.0)), abs(g(float(k)))) for g in lines)
    f0 = f0 if f0 > tiny else 0.0
    fk = fk if fk > tiny else 0.0
    a = tuple((s1 - s2) / k for s1, s2 in zip(slopes, slopes[1:]))
    return KCGParams(f0 / k, fk / k, a, b)


def kcg_evaluate(p: KCGParams, i: float, k: int) -> float:
    total = p.z0 * (k - i) + p.zk * i
    for a, b in zip(p.a, p.b):
        total += a * min(i * (k - b), (k - i) * b)
    return total
