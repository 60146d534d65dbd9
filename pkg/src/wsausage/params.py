"""Model parameters shared by the formula modules."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class ModelParams:
    """Dimension, ball radius and drift magnitude of a drifted Wiener sausage.

    The expected volume depends on the drift vector only through its norm,
    so only ``v_mag`` is stored.
    """

    d: int
    r: float
    v_mag: float = 0.0

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.d!r}")
        if not self.r > 0:
            raise DomainError(f"radius must be > 0, got {self.r!r}")
        if not self.v_mag >= 0:
            raise DomainError(f"drift magnitude must be >= 0, got {self.v_mag!r}")

    @property
    def nu(self) -> float:
        return self.d / 2 - 1

    @property
    def rv(self) -> float:
        """The dimensionless product r |v|."""
        return self.r * self.v_mag
