"""Double-well potentials W with their first two derivatives.

A well is admissible when it vanishes to second order at the pure phases:
W(-1) = W(1) = 0, W'(-1) = W'(1) = 0, W > 0 strictly between the wells,
and W''(+-1) > 0.  All solvers take the well as an explicit argument and
every report records its name, since the computed constants depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "DoubleWell",
    "WellValidation",
    "make_quartic",
    "get_well",
    "register_well",
    "validate_double_well",
]


@dataclass(frozen=True)
class DoubleWell:
    """Pure real-to-real energy density with derivatives.

    The callables must accept floats or numpy arrays and are assumed
    stateless, so instances are safe for concurrent read-only use.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    deriv2: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"

    def __call__(self, u):
        return self.eval(u)


@dataclass
class WellValidation:
    """Per-condition pass/fail record from validate_double_well."""

    zero_at_wells: bool
    critical_at_wells: bool
    positive_between: bool
    nondegenerate: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.zero_at_wells
            and self.critical_at_wells
            and self.positive_between
            and self.nondegenerate
        )


def make_quartic() -> DoubleWell:
    """Standard quartic well W(u) = (1 - u^2)^2 / 4."""
    return DoubleWell(
        eval=lambda u: 0.25 * (1.0 - np.asarray(u) ** 2) ** 2,
        deriv=lambda u: np.asarray(u) ** 3 - np.asarray(u),
        deriv2=lambda u: 3.0 * np.asarray(u) ** 2 - 1.0,
        name="quartic",
    )


_REGISTRY: dict[str, Callable[[], DoubleWell]] = {"quartic": make_quartic}


def register_well(name: str, factory: Callable[[], DoubleWell]) -> None:
    """Register a named well factory for config lookup."""
    _REGISTRY[name] = factory


def get_well(name: str) -> DoubleWell:
    if name not in _REGISTRY:
        raise KeyError(f"unknown potential {name!r}; known: {sorted(_REGISTRY)}")
    return _REGISTRY[name]()


def validate_double_well(W: DoubleWell, n_samples: int = 101, tol: float = 1e-12) -> WellValidation:
    """Check the four admissibility conditions on a uniform sample of (-1, 1).

    Failures are recorded per condition rather than raised; solvers should
    refuse wells whose validation does not pass.
    """
    if n_samples < 3:
        raise ValueError("n_samples must be at least 3")
    wm, wp = float(W.eval(-1.0)), float(W.eval(1.0))
    dm, dp = float(W.deriv(-1.0)), float(W.deriv(1.0))
    interior = np.linspace(-1.0, 1.0, n_samples + 2)[1:-1]
    vals = np.asarray(W.eval(interior), dtype=float)
    cm, cp = float(W.deriv2(-1.0)), float(W.deriv2(1.0))
    return WellValidation(
        zero_at_wells=abs(wm) <= tol and abs(wp) <= tol,
        critical_at_wells=abs(dm) <= tol and abs(dp) <= tol,
        positive_between=bool(np.all(vals > 0.0)),
        nondegenerate=cm > 0.0 and cp > 0.0,
        details={
            "W(-1)": wm,
            "W(1)": wp,
            "W'(-1)": dm,
            "W'(1)": dp,
            "min W on (-1,1) sample": float(vals.min()),
            "W''(-1)": cm,
            "W''(1)": cp,
        },
    )
