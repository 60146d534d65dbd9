"""Real numbers carried as (sign, log|x|) so products of huge and tiny factors
stay representable."""

from __future__ import annotations

import math
from dataclasses import dataclass

_LOG_MAX = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class LogScaled:
    """A real number ``sign * exp(logmag)``.

    ``logmag`` is ignored when ``sign == 0``.
    """

    sign: int
    logmag: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")

    @classmethod
    def from_float(cls, x: float) -> "LogScaled":
        if x == 0.0:
            return cls(0, 0.0)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, logmag: float, sign: int = 1) -> "LogScaled":
        return cls(sign, logmag)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.logmag > _LOG_MAX:
            return math.copysign(math.inf, self.sign)
        return self.sign * math.exp(self.logmag)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "LogScaled":
        return LogScaled(-self.sign, self.logmag)

    def __abs__(self) -> "LogScaled":
        return LogScaled(abs(self.sign), self.logmag)

    def __mul__(self, other) -> "LogScaled":
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return ZERO
        return LogScaled(self.sign * other.sign, self.logmag + other.logmag)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogScaled":
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogScaled")
        if self.sign == 0:
            return ZERO
        return LogScaled(self.sign * other.sign, self.logmag - other.logmag)

    def __rtruediv__(self, other) -> "LogScaled":
        return _coerce(other) / self

    def __pow__(self, k: int) -> "LogScaled":
        if not isinstance(k, int):
            raise TypeError("LogScaled supports integer powers only")
        if self.sign == 0:
            return ONE if k == 0 else ZERO
        return LogScaled(self.sign**k if k else 1, self.logmag * k)

    def __add__(self, other) -> "LogScaled":
        other = _coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.logmag >= other.logmag else (other, self)
        ratio = math.exp(small.logmag - big.logmag)
        if big.sign == small.sign:
            return LogScaled(big.sign, big.logmag + math.log1p(ratio))
        if ratio == 1.0:
            return ZERO
        return LogScaled(big.sign, big.logmag + math.log1p(-ratio))

    __radd__ = __add__

    def __sub__(self, other) -> "LogScaled":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LogScaled":
        return _coerce(other) - self

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogScaled(0)"
        return f"LogScaled({'+' if self.sign > 0 else '-'}exp({self.logmag!r}))"


def _coerce(x) -> LogScaled:
    if isinstance(x, LogScaled):
        return x
    return LogScaled.from_float(float(x))


ZERO = LogScaled(0, 0.0)
ONE = LogScaled(1, 0.0)
