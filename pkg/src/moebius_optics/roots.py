"""Bracketed bisection and sign-change scanning."""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


class NoBracketError(ValueError):
    pass


def bisect(f: Callable[[float], float], a: float, b: float, xtol: float = 0.0, maxiter: int = 2000) -> float:
    """Root of ``f`` in ``[a, b]`` by bisection.

    Runs until the bracket is narrower than ``xtol`` or cannot be split any
    further in floating point (``xtol=0``). Returns the endpoint with the
    smaller ``|f|``.
    """
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise NoBracketError(f"f({a!r}) and f({b!r}) have the same sign")
    for _ in range(maxiter):
        mid = 0.5 * (a + b)
        if mid <= min(a, b) or mid >= max(a, b) or abs(b - a) <= xtol:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return a if abs(fa) <= abs(fb) else b


def sign_change_roots(f: Callable[[float], float], grid: Sequence[float], xtol: float = 0.0) -> list[tuple[float, int]]:
    """Bisect every sign change of ``f`` on an ascending ``grid``.

    Returns ``(root, direction)`` pairs; direction is +1 where ``f`` turns
    positive and -1 where it stops being positive.
    """
    positive = [f(x) > 0 for x in grid]
    out = []
    for i in range(len(grid) - 1):
        if positive[i] == positive[i + 1]:
            continue
        out.append((bisect(f, grid[i], grid[i + 1], xtol=xtol), 1 if positive[i + 1] else -1))
    return out
