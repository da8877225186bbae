"""Unit systems and cavity configuration.

All formulas in the package carry hbar and c explicitly, so a configuration
evaluated in SI units produces SI outputs directly; the natural system
(hbar = c = 1) is the default and leaves q as the only scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .mirrors import MirrorModel


@dataclass(frozen=True)
class UnitSystem:
    name: str
    hbar: float
    c: float


NATURAL = UnitSystem("natural", 1.0, 1.0)
SI = UnitSystem("si", 1.054571817e-34, 299792458.0)

_UNITS = {"natural": NATURAL, "si": SI}


def units_by_name(name: str) -> UnitSystem:
    try:
        return _UNITS[name]
    except KeyError:
        raise PreconditionError(f"unknown unit system {name!r}") from None


@dataclass(frozen=True)
class CavityConfig:
    """Two mirror models separated by a distance q.

    Attributes
    ----------
    q : float
        Mirror separation (length). Must be positive.
    mirror1, mirror2 : MirrorModel
        Reflectivity models for the two mirrors.
    units : UnitSystem
        Unit system fixed at construction; all outputs carry it.
    """

    q: float
    mirror1: MirrorModel
    mirror2: MirrorModel
    units: UnitSystem = field(default=NATURAL)

    def __post_init__(self):
        if not (self.q > 0):
            raise PreconditionError(f"mirror separation must be positive, got {self.q}")

    @property
    def tau(self) -> float:
        """One-way light travel time q/c."""
        return self.q / self.units.c

    def with_q(self, q: float) -> "CavityConfig":
        return CavityConfig(q, self.mirror1, self.mirror2, self.units)
