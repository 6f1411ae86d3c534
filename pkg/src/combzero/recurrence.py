"""Orthogonal families given by their monic three-term recurrence.

``x p_n(x) = p_{n+1}(x) + b_n p_n(x) + chat_n p_{n-1}(x)`` with ``chat_n > 0``.
Families are defined by the coefficients alone; no measure is represented.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ._backend import kernels
from .errors import InvalidParameter, NonOrthogonalFamily, NormalizationTooShort
from .scaled import ScaledReal

KINDS = ("hermite", "prob_hermite", "laguerre", "jacobi", "custom")

_DEFAULT_SUPPORT = {
    "hermite": (-math.inf, math.inf),
    "prob_hermite": (-math.inf, math.inf),
    "laguerre": (0.0, math.inf),
    "jacobi": (-1.0, 1.0),
}


@dataclass(frozen=True)
class RecurrenceFamily:
    """Immutable description of an orthogonal family.

    Use the classmethod constructors rather than calling this directly.
    For ``custom`` families ``b_table`` holds ``b_0, b_1, ...`` and
    ``chat_table`` holds ``chat_1, chat_2, ...``.
    """

    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    b_table: tuple = ()
    chat_table: tuple = ()
    support: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown family kind {self.kind!r}")
        if self.kind in ("laguerre", "jacobi") and not self.alpha > -1:
            raise InvalidParameter(f"alpha must be > -1, got {self.alpha}")
        if self.kind == "jacobi" and not self.beta > -1:
            raise InvalidParameter(f"beta must be > -1, got {self.beta}")
        if self.support is None and self.kind in _DEFAULT_SUPPORT:
            object.__setattr__(self, "support", _DEFAULT_SUPPORT[self.kind])

    @classmethod
    def hermite(cls):
        return cls("hermite")

    @classmethod
    def prob_hermite(cls):
        return cls("prob_hermite")

    @classmethod
    def laguerre(cls, alpha=0.0):
        return cls("laguerre", alpha=float(alpha))

    @classmethod
    def jacobi(cls, alpha=0.0, beta=0.0):
        return cls("jacobi", alpha=float(alpha), beta=float(beta))

    @classmethod
    def custom(cls, b: Sequence[float], chat: Sequence[float], support=None):
        sup = None
        if support is not None:
            lo, hi = support
            sup = (-math.inf if lo is None else float(lo), math.inf if hi is None else float(hi))
        return cls(
            "custom",
            b_table=tuple(float(v) for v in b),
            chat_table=tuple(float(v) for v in chat),
            support=sup,
        )

    @classmethod
    def from_json(cls, doc):
        """Build a custom family from ``{"b": [...], "chat": [...], "support": [lo, hi]}``.

        ``doc`` may be a mapping, a JSON string, or a path to a JSON file.
        ``null`` ends of the support mean an unbounded side.
        """
        if isinstance(doc, str):
            text = doc
            if not doc.lstrip().startswith("{"):
                with open(doc) as fh:
                    text = fh.read()
            doc = json.loads(text)
        try:
            b, chat = doc["b"], doc["chat"]
        except (KeyError, TypeError) as exc:
            raise InvalidParameter("custom family needs 'b' and 'chat' arrays") from exc
        return cls.custom(b, chat, doc.get("support"))

    @property
    def label(self) -> str:
        if self.kind == "laguerre":
            return f"laguerre:{self.alpha:g}"
        if self.kind == "jacobi":
            return f"jacobi:{self.alpha:g}:{self.beta:g}"
        return self.kind

    # -- coefficients ------------------------------------------------------

    def b(self, n: int, exact: bool = False):
        if n < 0:
            raise InvalidParameter("b_n needs n >= 0")
        one = Fraction(1) if exact else 1.0
        if self.kind in ("hermite", "prob_hermite"):
            return 0 * one
        if self.kind == "laguerre":
            a = Fraction(self.alpha) if exact else self.alpha
            return 2 * n + a + 1
        if self.kind == "jacobi":
            a, bt = (Fraction(self.alpha), Fraction(self.beta)) if exact else (self.alpha, self.beta)
            s = a + bt
            if n == 0:
                return (bt - a) / (s + 2)
            return (bt * bt - a * a) / ((2 * n + s) * (2 * n + s + 2))
        if n >= len(self.b_table):
            raise InvalidParameter(f"custom table has no b_{n} (length {len(self.b_table)})")
        v = self.b_table[n]
        return Fraction(v) if exact else v

    def chat(self, n: int, exact: bool = False):
        if n < 1:
            raise InvalidParameter("chat_n needs n >= 1")
        if self.kind == "hermite":
            v = Fraction(n, 2) if exact else n / 2.0
        elif self.kind == "prob_hermite":
            v = Fraction(n) if exact else float(n)
        elif self.kind == "laguerre":
            a = Fraction(self.alpha) if exact else self.alpha
            v = n * (n + a)
        elif self.kind == "jacobi":
            a, bt = (Fraction(self.alpha), Fraction(self.beta)) if exact else (self.alpha, self.beta)
            s = a + bt
            if n == 1:
                # (n + a + b) / (2n + a + b - 1) cancels here; keeps a + b = -1 finite
                v = 4 * (1 + a) * (1 + bt) / ((2 + s) ** 2 * (3 + s))
            else:
                v = (4 * n * (n + a) * (n + bt) * (n + s)) / (
                    (2 * n + s - 1) * (2 * n + s) ** 2 * (2 * n + s + 1)
                )
        else:
            if n - 1 >= len(self.chat_table):
                raise InvalidParameter(
                    f"custom table has no chat_{n} (length {len(self.chat_table)})"
                )
            v = self.chat_table[n - 1]
            v = Fraction(v) if exact else v
        if not v > 0:
            raise NonOrthogonalFamily(f"chat_{n} = {v} is not positive")
        return v

    def arrays(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """``(b[0..n-1], chat[0..n-1])`` as float arrays; ``chat[0]`` is a 0 placeholder."""
        return _coefficient_arrays(self, n)


@lru_cache(maxsize=256)
def _coefficient_arrays(family: RecurrenceFamily, n: int):
    b = np.array([family.b(k) for k in range(n)], dtype=np.float64)
    chat = np.zeros(max(n, 1), dtype=np.float64)
    for k in range(1, n):
        chat[k] = family.chat(k)
    b.setflags(write=False)
    chat.setflags(write=False)
    return b, chat


def monic_coeffs(family: RecurrenceFamily, n: int):
    """``(b_n, chat_n)``; ``chat_n`` is ``None`` for ``n = 0``."""
    if n < 0:
        raise InvalidParameter("n must be nonnegative")
    return family.b(n), (family.chat(n) if n >= 1 else None)


def eval_monic_arrays(family: RecurrenceFamily, n: int, xs, m: int = 0):
    """Array form of the monic values ``p_{n-m} .. p_n`` at each x.

    Returns ``(mantissa, exponent)`` of shape ``(len(xs), m + 1)``.
    """
    if m > n or m < 0:
        raise InvalidParameter(f"tail length {m} invalid for degree {n}")
    b, chat = family.arrays(max(n, 1))
    return kernels.monic_tail(b, chat, np.atleast_1d(np.asarray(xs, dtype=np.float64)), n, m)


def eval_monic(family: RecurrenceFamily, n: int, x: float) -> ScaledReal:
    mant, expo = eval_monic_arrays(family, n, [x], 0)
    return ScaledReal(float(mant[0, 0]), int(expo[0, 0]))


def eval_normalized_tail(family: RecurrenceFamily, rho, n: int, x: float, m: int = 0):
    """``[p_{n-m}(x), ..., p_n(x)]`` with ``p_k = rho_k * monic_k``, as ScaledReal."""
    if rho.max_index is not None and n > rho.max_index:
        raise NormalizationTooShort(f"rho known up to {rho.max_index}, need {n}")
    mant, expo = eval_monic_arrays(family, n, [x], m)
    out = []
    for col in range(m + 1):
        k = n - m + col
        val = ScaledReal(float(mant[0, col]), int(expo[0, col]))
        out.append(val * ScaledReal.from_log2(rho.log2(k)))
    return out
