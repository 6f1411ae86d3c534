"""Mantissa/exponent reals that do not overflow at high polynomial degree.

A :class:`ScaledReal` stores ``mantissa * 2**exponent`` with ``1 <= |mantissa| < 2``
(or the canonical zero ``(0.0, 0)``).  Values such as ``H_n(5)`` for ``n`` in the
hundreds are far outside the double range but are routine here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _split(x: float) -> tuple[float, int]:
    if x == 0.0:
        return 0.0, 0
    if not math.isfinite(x):
        raise ValueError(f"cannot scale non-finite value {x!r}")
    m, e = math.frexp(x)
    return 2.0 * m, e - 1


@dataclass(frozen=True)
class ScaledReal:
    mantissa: float
    exponent: int

    def __post_init__(self):
        m = self.mantissa
        if m == 0.0:
            if self.exponent != 0:
                object.__setattr__(self, "exponent", 0)
            object.__setattr__(self, "mantissa", 0.0)
            return
        if not (1.0 <= abs(m) < 2.0):
            nm, de = _split(m)
            object.__setattr__(self, "mantissa", nm)
            object.__setattr__(self, "exponent", int(self.exponent) + de)
        else:
            object.__setattr__(self, "exponent", int(self.exponent))

    @classmethod
    def from_float(cls, x: float) -> "ScaledReal":
        m, e = _split(float(x))
        return cls(m, e)

    @classmethod
    def from_log2(cls, log2abs: float, sign: float = 1.0) -> "ScaledReal":
        if sign == 0:
            return ZERO
        whole = math.floor(log2abs)
        return cls(math.copysign(2.0 ** (log2abs - whole), sign), whole)

    def __float__(self) -> float:
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    def to_float(self) -> float:
        return float(self)

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def log2abs(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return self.exponent + math.log2(abs(self.mantissa))

    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.mantissa, self.exponent)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.mantissa), self.exponent)

    def __mul__(self, other) -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(other)
        return ScaledReal(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(other)
        if other.mantissa == 0.0:
            raise ZeroDivisionError("ScaledReal division by zero")
        return ScaledReal(self.mantissa / other.mantissa, self.exponent - other.exponent)

    def __add__(self, other) -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(other)
        if self.mantissa == 0.0:
            return other
        if other.mantissa == 0.0:
            return self
        top = max(self.exponent, other.exponent)
        # terms more than ~1100 binary orders below vanish in ldexp, as they should
        s = math.ldexp(self.mantissa, self.exponent - top) + math.ldexp(
            other.mantissa, other.exponent - top
        )
        return ScaledReal(s, top) if s != 0.0 else ZERO

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.from_float(other)
        return self + (-other)

    def __rsub__(self, other) -> "ScaledReal":
        return (-self) + other

    def ratio(self, other: "ScaledReal") -> float:
        """``self / other`` as a plain float (may be 0 or inf)."""
        q = self / other
        return float(q)

    def __repr__(self) -> str:
        return f"ScaledReal({self.mantissa!r}, {self.exponent})"


ZERO = ScaledReal(0.0, 0)
ONE = ScaledReal(1.0, 0)


def scaled_sum(terms) -> ScaledReal:
    """Sum of ScaledReal terms, aligned to the largest exponent first."""
    terms = [t for t in terms if t.mantissa != 0.0]
    if not terms:
        return ZERO
    top = max(t.exponent for t in terms)
    s = math.fsum(math.ldexp(t.mantissa, t.exponent - top) for t in terms)
    return ScaledReal(s, top) if s != 0.0 else ZERO


def normalize_arrays(mant: np.ndarray, exp: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bring array-form scaled values back to the ``[1, 2)`` mantissa convention."""
    m, e = np.frexp(mant)
    nz = m != 0.0
    out_m = np.where(nz, 2.0 * m, 0.0)
    out_e = np.where(nz, exp + e.astype(np.int64) - 1, 0)
    return out_m, out_e.astype(np.int64)


def to_scaled_list(mant: np.ndarray, exp: np.ndarray) -> list[ScaledReal]:
    return [ScaledReal(float(m), int(e)) for m, e in zip(np.ravel(mant), np.ravel(exp))]
