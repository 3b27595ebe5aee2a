"""Grid representation of real-line functions with analytic tail models.

A GridFunction stores nodal (or per-cell) values on a finite grid plus a
constant model on each unbounded tail, so that evaluation and energy
quadrature are defined on all of R.  Binary phases are stored separately
as sorted jump points of a +-1 valued function on a container interval.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .errors import JumpOutsideDomain, UndefinedTail

__all__ = [
    "Grid1D",
    "TailModel",
    "GridFunction",
    "BinaryPhase",
    "Piece",
    "phase_to_function",
]


@dataclass(frozen=True)
class Grid1D:
    """Strictly increasing 1D node set, uniform or graded toward a point."""

    nodes: np.ndarray
    spacing_kind: str = "uniform"
    graded_point: float | None = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < 3:
            raise ValueError("grid needs at least 3 nodes")
        if not np.all(np.diff(nodes) > 0):
            raise ValueError("grid nodes must be strictly increasing")

    @property
    def left(self) -> float:
        return float(self.nodes[0])

    @property
    def right(self) -> float:
        return float(self.nodes[-1])

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def spacings(self) -> np.ndarray:
        return np.diff(self.nodes)

    @classmethod
    def uniform(cls, left: float, right: float, n: int) -> "Grid1D":
        return cls(np.linspace(left, right, n), spacing_kind="uniform")

    @classmethod
    def graded(cls, left: float, right: float, point: float,
               h_min: float, growth: float = 1.08, h_max: float | None = None) -> "Grid1D":
        """Grid clustering geometrically toward `point` with spacing ratio `growth`.

        Spacing starts at h_min next to the point and grows by the factor
        `growth` per cell, optionally capped at h_max, on each side.
        """
        if not (left <= point <= right):
            raise ValueError("grading point must lie inside the interval")
        if h_min <= 0 or growth <= 1.0:
            raise ValueError("need h_min > 0 and growth > 1")

        def side(length: float) -> np.ndarray:
            if length <= 0:
                return np.array([])
            offs = []
            pos, h = 0.0, h_min
            while pos < length:
                pos += h
                offs.append(min(pos, length))
                h *= growth
                if h_max is not None:
                    h = min(h, h_max)
            offs = np.asarray(offs)
            # stretch slightly so the last node lands exactly on the endpoint
            return offs * (length / offs[-1])

        lo = point - side(point - left)[::-1]
        hi = point + side(right - point)
        nodes = np.concatenate([lo, [point], hi])
        return cls(nodes, spacing_kind="graded", graded_point=point)

    def with_refined_interval(self, a: float, b: float, h: float) -> "Grid1D":
        """Union with a uniform refinement of [a, b] at spacing h."""
        extra = np.arange(a, b + 0.5 * h, h)
        nodes = np.unique(np.concatenate([self.nodes, extra]))
        # drop near-duplicates that would create degenerate cells
        keep = np.concatenate([[True], np.diff(nodes) > 1e-13 * max(1.0, abs(nodes[-1]))])
        return Grid1D(nodes[keep], spacing_kind="graded", graded_point=self.graded_point)


@dataclass(frozen=True)
class TailModel:
    """Behavior of a function on one unbounded side of the grid.

    kind "const" carries the constant value; kind "none" marks a tail the
    enclosing computation must never query.
    """

    side: str  # "left" | "right"
    kind: str = "const"  # "const" | "none"
    value: float = 0.0

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if self.kind not in ("const", "none"):
            raise ValueError("tail kind must be 'const' or 'none'")


class Piece(NamedTuple):
    """One maximal polynomial piece of a function restricted to an interval.

    u(x) = c0 + c1 * x on (lo, hi); kind is "lin" for continuous P1 cells
    and "const" for piecewise-constant cells and tails.  Unbounded pieces
    are always constant.
    """

    lo: float
    hi: float
    kind: str
    c0: float
    c1: float

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def value_at(self, x):
        return self.c0 + self.c1 * np.asarray(x)


def _as_tail(tail, side) -> TailModel:
    if tail is None:
        return TailModel(side=side, kind="none")
    if isinstance(tail, TailModel):
        return tail
    return TailModel(side=side, kind="const", value=float(tail))


@dataclass
class GridFunction:
    """Function on R: interpolation on the grid, constant models outside.

    values has length grid.n for piecewise-linear interpolation and
    grid.n - 1 (one per cell) for piecewise-constant.  Values are clamped
    into [-1, 1] on construction unless unconstrained=True.
    """

    grid: Grid1D
    values: np.ndarray
    left_tail: TailModel = None
    right_tail: TailModel = None
    interp: str = "linear"  # "linear" | "pconst"
    unconstrained: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.left_tail = _as_tail(self.left_tail, "left")
        self.right_tail = _as_tail(self.right_tail, "right")
        vals = np.asarray(self.values, dtype=float).copy()
        if self.interp == "linear":
            expected = self.grid.n
        elif self.interp == "pconst":
            expected = self.grid.n - 1
        else:
            raise ValueError("interp must be 'linear' or 'pconst'")
        if vals.size != expected:
            raise ValueError(f"expected {expected} values for interp={self.interp}, got {vals.size}")
        if not self.unconstrained:
            vals = np.clip(vals, -1.0, 1.0)
        self.values = vals

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.empty_like(x)
        left_mask = x < self.grid.left
        right_mask = x > self.grid.right
        mid = ~(left_mask | right_mask)
        if left_mask.any():
            if self.left_tail.kind == "none":
                raise UndefinedTail("left tail queried but has kind 'none'")
            out[left_mask] = self.left_tail.value
        if right_mask.any():
            if self.right_tail.kind == "none":
                raise UndefinedTail("right tail queried but has kind 'none'")
            out[right_mask] = self.right_tail.value
        if mid.any():
            xm = x[mid]
            if self.interp == "linear":
                out[mid] = np.interp(xm, self.grid.nodes, self.values)
            else:
                idx = np.clip(np.searchsorted(self.grid.nodes, xm, side="right") - 1,
                              0, self.grid.n - 2)
                out[mid] = self.values[idx]
        return float(out[0]) if scalar else out

    # -- transforms ---------------------------------------------------------

    def rescale(self, rho: float) -> "GridFunction":
        """Return x -> u(rho x); grid nodes divide by rho, tails carry over."""
        if rho <= 0:
            raise ValueError("rho must be positive")
        grid = Grid1D(self.grid.nodes / rho, spacing_kind=self.grid.spacing_kind,
                      graded_point=None if self.grid.graded_point is None
                      else self.grid.graded_point / rho)
        return GridFunction(grid, self.values.copy(), self.left_tail, self.right_tail,
                            interp=self.interp, unconstrained=True, meta=dict(self.meta))

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.grid, values, self.left_tail, self.right_tail,
                            interp=self.interp, unconstrained=self.unconstrained,
                            meta=dict(self.meta))

    # -- piece decomposition (consumed by the energy module) -----------------

    def pieces(self, a: float = -np.inf, b: float = np.inf,
               breaks: Iterable[float] = ()) -> list[Piece]:
        """Maximal polynomial pieces of the restriction to (a, b).

        Extra breakpoints force splits so that two decompositions built with
        the same break set tile (a, b) identically.
        """
        if b <= a:
            return []
        nodes = self.grid.nodes
        cuts = [float(c) for c in breaks if a < c < b]
        interior = nodes[(nodes > a) & (nodes < b)]
        allcuts = np.unique(np.concatenate([interior, np.asarray(cuts, dtype=float)]))
        edges = np.concatenate([[a], allcuts, [b]])
        out: list[Piece] = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi - lo <= 0:
                continue
            out.extend(self._piece_on(lo, hi))
        return out

    def _piece_on(self, lo: float, hi: float) -> list[Piece]:
        """Pieces covering (lo, hi), an interval with no interior node/cut."""
        gl, gr = self.grid.left, self.grid.right
        if hi <= gl:
            if self.left_tail.kind == "none":
                raise UndefinedTail("energy/evaluation region extends into an undefined left tail")
            return [Piece(lo, hi, "const", self.left_tail.value, 0.0)]
        if lo >= gr:
            if self.right_tail.kind == "none":
                raise UndefinedTail("energy/evaluation region extends into an undefined right tail")
            return [Piece(lo, hi, "const", self.right_tail.value, 0.0)]
        # interval straddling a grid edge is split by the caller's cut set only
        # when the edge was passed as a break; split defensively here.
        if lo < gl < hi:
            return self._piece_on(lo, gl) + self._piece_on(gl, hi)
        if lo < gr < hi:
            return self._piece_on(lo, gr) + self._piece_on(gr, hi)
        mid = 0.5 * (lo + hi)
        i = int(np.clip(np.searchsorted(self.grid.nodes, mid, side="right") - 1,
                        0, self.grid.n - 2))
        x0, x1 = self.grid.nodes[i], self.grid.nodes[i + 1]
        if self.interp == "pconst":
            return [Piece(lo, hi, "const", float(self.values[i]), 0.0)]
        v0, v1 = self.values[i], self.values[i + 1]
        slope = (v1 - v0) / (x1 - x0)
        return [Piece(lo, hi, "lin", float(v0 - slope * x0), float(slope))]

    # -- serialization ------------------------------------------------------

    def to_csv(self, path) -> None:
        """Write `x,value` rows plus a JSON sidecar with tails and metadata."""
        path = Path(path)
        if self.interp == "linear":
            xs = self.grid.nodes
        else:
            xs = 0.5 * (self.grid.nodes[:-1] + self.grid.nodes[1:])
        with path.open("w") as f:
            f.write("x,value\n")
            for x, v in zip(xs, self.values):
                f.write(f"{x:.17g},{v:.17g}\n")
        sidecar = {
            "interp": self.interp,
            "unconstrained": self.unconstrained,
            "grid": {
                "nodes_first": float(self.grid.nodes[0]),
                "nodes_last": float(self.grid.nodes[-1]),
                "n": int(self.grid.n),
                "spacing_kind": self.grid.spacing_kind,
                "graded_point": self.grid.graded_point,
                "nodes": [float(x) for x in self.grid.nodes],
            },
            "left_tail": {"kind": self.left_tail.kind, "value": self.left_tail.value},
            "right_tail": {"kind": self.right_tail.kind, "value": self.right_tail.value},
            "meta": self.meta,
        }
        path.with_suffix(path.suffix + ".meta.json").write_text(
            json.dumps(sidecar, indent=2, sort_keys=True))

    @classmethod
    def from_csv(cls, path) -> "GridFunction":
        path = Path(path)
        rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        sidecar = json.loads(path.with_suffix(path.suffix + ".meta.json").read_text())
        grid = Grid1D(np.asarray(sidecar["grid"]["nodes"], dtype=float),
                      spacing_kind=sidecar["grid"]["spacing_kind"],
                      graded_point=sidecar["grid"]["graded_point"])
        lt = TailModel("left", sidecar["left_tail"]["kind"], sidecar["left_tail"]["value"] or 0.0)
        rt = TailModel("right", sidecar["right_tail"]["kind"], sidecar["right_tail"]["value"] or 0.0)
        return cls(grid, rows[:, 1], lt, rt, interp=sidecar["interp"],
                   unconstrained=sidecar["unconstrained"], meta=sidecar.get("meta", {}))


@dataclass(frozen=True)
class BinaryPhase:
    """A set E inside a container interval, stored as sorted jump points.

    The induced function is chi_E - chi_{E^c}: it equals left_sign just
    inside the left endpoint and flips sign across each jump.
    """

    omega: tuple[float, float]
    jumps: np.ndarray
    left_sign: int = -1

    def __post_init__(self):
        jumps = np.asarray(self.jumps, dtype=float)
        object.__setattr__(self, "jumps", jumps)
        x1, x2 = self.omega
        if x2 <= x1:
            raise ValueError("omega must be a nonempty open interval")
        if jumps.size and (np.any(jumps <= x1) or np.any(jumps >= x2)):
            raise JumpOutsideDomain("all jumps must lie strictly inside omega")
        if jumps.size > 1 and not np.all(np.diff(jumps) > 0):
            raise ValueError("jumps must be strictly increasing")
        if self.left_sign not in (-1, 1):
            raise ValueError("left_sign must be -1 or +1")

    @property
    def perimeter(self) -> int:
        """Per(E, Omega): number of interior jumps."""
        return int(self.jumps.size)

    def sign_at(self, x: float) -> int:
        """Value of chi_E - chi_{E^c} at x in the closed container (trace at jumps/edges)."""
        k = int(np.searchsorted(self.jumps, x, side="left"))
        return self.left_sign * (-1) ** k

    def signed_distance(self, x) -> np.ndarray:
        """Distance to the nearest jump, positive where the phase is +1.

        With no jumps the distance is +-inf carrying the phase sign.
        """
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        if self.jumps.size == 0:
            out = np.full_like(x, np.inf) * self.left_sign
            return float(out[0]) if scalar else out
        dist = np.min(np.abs(x[:, None] - self.jumps[None, :]), axis=1)
        k = np.searchsorted(self.jumps, x, side="left")
        sign = self.left_sign * np.where(k % 2 == 0, 1, -1)
        out = sign * dist
        return float(out[0]) if scalar else out


def phase_to_function(E: BinaryPhase, left_tail=None, right_tail=None) -> GridFunction:
    """Piecewise-constant +-1 realization of a phase with given exterior tails."""
    x1, x2 = E.omega
    nodes = np.concatenate([[x1], E.jumps, [x2]])
    if nodes.size < 3:
        nodes = np.array([x1, 0.5 * (x1 + x2), x2])
    cells = nodes.size - 1
    vals = np.empty(cells)
    for i in range(cells):
        vals[i] = E.sign_at(0.5 * (nodes[i] + nodes[i + 1]))
    return GridFunction(Grid1D(nodes, spacing_kind="phase"), vals,
                        left_tail, right_tail, interp="pconst")
