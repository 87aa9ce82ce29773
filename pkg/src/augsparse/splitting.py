"""Cardinality-based splitting functions.

A splitting function assigns a penalty to every way a hyperedge can be cut.
Cardinality-based ones only look at how many members land on one side, so a
k-node hyperedge is described by a penalty sequence over 0..k (generalized,
possibly asymmetric) or over 0..floor(k/2) (symmetric, zero when uncut).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

# Relative tolerance for concavity / monotonicity checks.
VALIDATION_RTOL = 1e-9

FAMILIES = ("clique", "linear", "dlinear", "sqrt", "power", "aon", "custom")


class ValidationError(ValueError):
    """A penalty sequence violates a submodularity condition."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class SplittingSpec:
    family: str
    param: float | None = None
    weight: float = 1.0
    penalties: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown splitting family {self.family!r}")
        if not (self.weight >= 0 and math.isfinite(self.weight)):
            raise ValueError(f"weight must be a finite nonnegative number, got {self.weight}")
        if self.family == "dlinear" and not (self.param is not None and self.param >= 1):
            raise ValueError("dlinear requires delta >= 1")
        if self.family == "power" and not (self.param is not None and 0 < self.param <= 1):
            raise ValueError("power requires an exponent in (0, 1]")
        if self.family == "custom":
            if not self.penalties:
                raise ValueError("custom family requires a penalty list")
            object.__setattr__(self, "penalties", tuple(float(x) for x in self.penalties))

    def with_weight(self, weight: float) -> "SplittingSpec":
        return SplittingSpec(self.family, self.param, weight, self.penalties)

    def shape_key(self) -> tuple:
        """Identifies the penalty shape independent of the weight."""
        return (self.family, self.param, self.penalties)

    def __str__(self) -> str:
        if self.family in ("dlinear", "power"):
            body = f"{self.family} {self.param!r}"
        elif self.family == "custom":
            body = "custom " + " ".join(repr(x) for x in self.penalties)
        else:
            body = self.family
        return body if self.weight == 1.0 else f"weight {self.weight!r} {body}"


@dataclass(frozen=True)
class SCBFunction:
    """Symmetric penalties w(0..r) with w(0)=0, concave and nondecreasing."""

    r: int
    w: tuple[float, ...]
    is_zero: bool = field(default=False, compare=False)

    def __getitem__(self, i: int) -> float:
        return self.w[i]

    def __len__(self) -> int:
        return len(self.w)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.asarray(self.w, dtype=float)
        a.flags.writeable = False
        return a


@dataclass(frozen=True)
class GSCBFunction:
    """Generalized penalties w(0..k): nonnegative with concave increments."""

    k: int
    w: tuple[float, ...]

    def __getitem__(self, i: int) -> float:
        return self.w[i]

    def __len__(self) -> int:
        return len(self.w)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.asarray(self.w, dtype=float)
        a.flags.writeable = False
        return a


def _family_value(spec: SplittingSpec, k: int, m: int) -> float:
    # m = min(i, k - i), the small-side count
    fam = spec.family
    if fam == "clique":
        return float(m * (k - m))
    if fam == "linear":
        return float(m)
    if fam == "dlinear":
        return float(min(m, spec.param))
    if fam == "sqrt":
        return math.sqrt(m)
    if fam == "power":
        return float(m) ** spec.param if m > 0 else 0.0
    if fam == "aon":
        return 1.0 if m > 0 else 0.0
    # custom
    r = k // 2
    if len(spec.penalties) != r + 1:
        raise ValueError(
            f"custom penalties must have length floor(k/2)+1 = {r + 1} for k={k}, "
            f"got {len(spec.penalties)}"
        )
    return spec.penalties[m]


def evaluate(spec: SplittingSpec, k: int, i: int) -> float:
    """Penalty for a k-node hyperedge with i members on one side."""
    if k < 1:
        raise ValueError(f"hyperedge size must be positive, got {k}")
    if not 0 <= i <= k:
        raise ValueError(f"side count {i} outside [0, {k}]")
    return spec.weight * _family_value(spec, k, min(i, k - i))


def _tol(a: float, b: float) -> float:
    return VALIDATION_RTOL * max(abs(a), abs(b), 1.0)


def _first_bad(mask: np.ndarray) -> int | None:
    idx = np.flatnonzero(mask)
    return int(idx[0]) if idx.size else None


def _concavity_violation(w: np.ndarray) -> int | None:
    """First j in 1..len-2 with 2 w(j) < w(j-1) + w(j+1) beyond tolerance."""
    if len(w) < 3:
        return None
    lhs, rhs = 2 * w[1:-1], w[:-2] + w[2:]
    tol = VALIDATION_RTOL * np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    j = _first_bad(lhs < rhs - tol)
    return None if j is None else j + 1


def check_scb(w: Sequence[float]) -> None:
    """Raise ValidationError at the first index breaking the SCB conditions."""
    if len(w) == 0:
        raise ValidationError("empty penalty sequence", 0)
    if abs(w[0]) > _tol(w[0], 0.0):
        raise ValidationError(f"w(0) must be 0, got {w[0]}", 0)
    if len(w) > 1 and w[1] < -_tol(w[1], 0.0):
        raise ValidationError(f"w(1) must be nonnegative, got {w[1]}", 1)
    a = np.asarray(w, dtype=float)
    j = _concavity_violation(a)
    if j is not None:
        raise ValidationError(f"concavity violated at index {j}", j)
    if len(a) > 2:
        hi, lo = a[2:], a[1:-1]
        tol = VALIDATION_RTOL * np.maximum(np.maximum(np.abs(hi), np.abs(lo)), 1.0)
        j = _first_bad(hi < lo - tol)
        if j is not None:
            raise ValidationError(f"monotonicity violated at index {j + 2}", j + 2)


def check_gscb(w: Sequence[float]) -> None:
    if len(w) < 2:
        raise ValidationError("a generalized penalty needs at least w(0), w(1)", 0)
    a = np.asarray(w, dtype=float)
    bad = ~np.isfinite(a) | (a < -VALIDATION_RTOL * np.maximum(np.abs(a), 1.0))
    i = _first_bad(bad)
    if i is not None:
        raise ValidationError(f"penalty at index {i} must be finite and nonnegative, got {w[i]}", i)
    j = _concavity_violation(a)
    if j is not None:
        raise ValidationError(f"concavity violated at index {j}", j)


def scb_from_values(w: Sequence[float]) -> SCBFunction:
    w = tuple(float(x) for x in w)
    check_scb(w)
    # monotone + concave: w(1) == 0 forces the whole sequence to zero
    is_zero = len(w) == 1 or w[1] <= 0.0
    if is_zero:
        w = (0.0,) * len(w)
    return SCBFunction(len(w) - 1, w, is_zero)


def materialize_scb(spec: SplittingSpec, k: int) -> SCBFunction:
    r = k // 2
    return scb_from_values([evaluate(spec, k, i) for i in range(r + 1)])


def materialize_gscb(penalties: Sequence[float]) -> GSCBFunction:
    w = tuple(max(float(x), 0.0) if abs(x) <= _tol(x, 0.0) else float(x) for x in penalties)
    check_gscb(w)
    return GSCBFunction(len(w) - 1, w)


def mirror_gscb(spec: SplittingSpec, k: int) -> GSCBFunction:
    """Full 0..k penalty sequence of a symmetric spec."""
    return materialize_gscb([evaluate(spec, k, i) for i in range(k + 1)])


def parse_spec(tokens: Sequence[str]) -> SplittingSpec:
    """Parse ``[weight c] family [args...]``.

    >>> parse_spec("weight 2 dlinear 3".split())
    SplittingSpec(family='dlinear', param=3.0, weight=2.0, penalties=None)
    """
    toks = list(tokens)
    weight = 1.0
    if toks and toks[0] == "weight":
        if len(toks) < 2:
            raise ValueError("'weight' needs a value")
        weight = float(toks[1])
        toks = toks[2:]
    if not toks:
        raise ValueError("missing splitting family")
    name, args = toks[0], toks[1:]
    aliases = {"all-or-nothing": "aon", "delta-linear": "dlinear"}
    name = aliases.get(name, name)
    if name in ("clique", "linear", "sqrt", "aon"):
        if args:
            raise ValueError(f"{name} takes no arguments")
        return SplittingSpec(name, weight=weight)
    if name in ("dlinear", "power"):
        if len(args) != 1:
            raise ValueError(f"{name} takes exactly one argument")
        return SplittingSpec(name, float(args[0]), weight=weight)
    if name == "custom":
        return SplittingSpec("custom", weight=weight, penalties=tuple(float(a) for a in args))
    raise ValueError(f"unknown splitting family {name!r}")
