"""Shifted Chebyshev polynomials V_n(t) = U_{2n}(sqrt(t)/2).

``V_0 = 1``, ``V_1 = t - 1`` and ``V_{n+1} = (t - 2) V_n - V_{n-1}``.  The
recurrence is evaluated in whatever number type ``t`` has, so Fractions
give exact values.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = ["chebyshev_V", "chebyshev_V_all", "chebyshev_V_closed", "V_coefficients"]


def chebyshev_V(n: int, t):
    """V_n(t) by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 1, t - 1
    if n == 0:
        return t - t + 1
    for _ in range(n - 1):
        prev, cur = cur, (t - 2) * cur - prev
    return cur


def chebyshev_V_all(n_max: int, t) -> list:
    """[V_0(t), ..., V_{n_max}(t)]; ``t`` may be a scalar or numpy array."""
    out = [t - t + 1]
    if n_max >= 1:
        out.append(t - 1)
    for _ in range(n_max - 1):
        out.append((t - 2) * out[-1] - out[-2])
    return out


def chebyshev_V_closed(n: int, t: float) -> float:
    """V_n(t) from the trigonometric / hyperbolic closed forms.

    With t = 2(1 + cos a) on [0, 4], t = 2(1 + cosh a) above 4 and
    t = 2(1 - cosh a) below 0.  The sine/sinh ratios are rewritten with
    half angles (sin((n+1)a) + sin(na) = 2 sin((2n+1)a/2) cos(a/2), etc.)
    so the t = 0 and t = 4 endpoints need no limits.
    """
    t = float(t)
    if t < 0:
        y = math.asinh(math.sqrt(-t) / 2)
        return (-1) ** n * math.cosh((2 * n + 1) * y) / math.cosh(y)
    if t <= 4:
        x = math.acos(min(1.0, math.sqrt(t) / 2))
        s = math.sin(x)
        if s == 0.0:
            return float(2 * n + 1)
        return math.sin((2 * n + 1) * x) / s
    y = math.acosh(math.sqrt(t) / 2)
    return math.sinh((2 * n + 1) * y) / math.sinh(y)


@lru_cache(maxsize=None)
def V_coefficients(n: int) -> tuple[int, ...]:
    """Integer monomial coefficients of V_n, lowest degree first."""
    if n == 0:
        return (1,)
    prev = np.array([1], dtype=object)
    cur = np.array([-1, 1], dtype=object)
    for _ in range(n - 1):
        nxt = np.zeros(len(cur) + 1, dtype=object)
        nxt[1:] += cur
        nxt[: len(cur)] -= 2 * cur
        nxt[: len(prev)] -= prev
        prev, cur = cur, nxt
    return tuple(int(c) for c in cur)
