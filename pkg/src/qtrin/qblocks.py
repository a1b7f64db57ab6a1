"""q-Pochhammer symbols and Gaussian binomial coefficients.

All exponents are in half-units of q^(1/2) (see series.py).  The ``step``
argument is the base of the symbol in half-units: step=2 means base q,
step=6 means base q^3 and so on.

Arguments of Pochhammer symbols are signed monomials a = sign * q^(exp/2)
with sign in {-1, 0, +1}; sign 0 encodes a = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .series import LaurentSeries, exact_divide


@dataclass(frozen=True)
class MonomialArg:
    """A signed monomial argument sign * q^(exp/2)."""
    sign: int
    exp: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")


Q = MonomialArg(1, 2)          # the variable q itself
ZERO_ARG = MonomialArg(0, 0)


def poch_finite(arg: MonomialArg, step: int, n: int) -> LaurentSeries:
    """(a; q_step)_n = prod_{k=0}^{n-1} (1 - a q_step^k), exact.

    Returns the empty product 1 for n = 0.
    """
    if step < 1:
        raise ValueError("step must be a positive half-exponent")
    if n < 0:
        raise ValueError("poch_finite needs n >= 0")
    out = LaurentSeries.one()
    if arg.sign == 0:
        return out
    for k in range(n):
        factor = LaurentSeries({0: 1, arg.exp + k * step: -arg.sign})
        out = out * factor
    return out


@lru_cache(maxsize=None)
def q_poch(n: int, step: int) -> LaurentSeries:
    """(q_step; q_step)_n, cached."""
    return poch_finite(MonomialArg(1, step), step, n)


def poch_infinite(arg: MonomialArg, step: int, cutoff: int) -> LaurentSeries:
    """(a; q_step)_infinity truncated at cutoff (half-units).

    Formal convergence requires arg.exp > 0 when the argument is nonzero.
    """
    if arg.sign != 0 and arg.exp <= 0:
        raise ValueError("infinite product diverges: argument exponent <= 0")
    out = LaurentSeries.one().truncate(cutoff)
    if arg.sign == 0:
        return out
    k = 0
    while arg.exp + k * step <= cutoff:
        factor = LaurentSeries({0: 1, arg.exp + k * step: -arg.sign})
        out = out * factor
        k += 1
    return out


def inv_poch_infinite(arg: MonomialArg, step: int, cutoff: int) -> LaurentSeries:
    """1 / (a; q_step)_infinity truncated at cutoff.

    Expanded as a product of geometric series, one per factor; exact below
    the cutoff.
    """
    if arg.sign != 0 and arg.exp <= 0:
        raise ValueError("infinite product diverges: argument exponent <= 0")
    out = LaurentSeries.one().truncate(cutoff)
    if arg.sign == 0:
        return out
    k = 0
    while arg.exp + k * step <= cutoff:
        e = arg.exp + k * step
        geom = {i * e: arg.sign ** i for i in range(cutoff // e + 1)}
        out = out * LaurentSeries(geom, cutoff)
        k += 1
    return out


def inv_poch_series(n: int, step: int, cutoff: int) -> LaurentSeries:
    """Truncated 1/(q_step; q_step)_n; the zero series for n < 0.

    The n < 0 branch is the convention that makes summands with
    out-of-range indices vanish, so negative n is a value, not an error.
    """
    if n < 0:
        return LaurentSeries.zero(cutoff)
    out = LaurentSeries.one().truncate(cutoff)
    for k in range(1, n + 1):
        e = k * step
        if e > cutoff:
            break
        geom = {i * e: 1 for i in range(cutoff // e + 1)}
        out = out * LaurentSeries(geom, cutoff)
    return out


@lru_cache(maxsize=None)
def _gaussian_base(top: int, bottom: int) -> LaurentSeries:
    num = q_poch(top, 2)
    den = q_poch(bottom, 2) * q_poch(top - bottom, 2)
    return exact_divide(num, den)


def gaussian_binomial(top: int, bottom: int, step: int = 2) -> LaurentSeries:
    """The q-binomial [top choose bottom] in base q_step, exact.

    Zero whenever the pair is out of range (bottom < 0, top < 0 or
    bottom > top), matching the extension used by all the summations here.
    """
    if step < 1:
        raise ValueError("step must be a positive half-exponent")
    if bottom < 0 or top < 0 or bottom > top:
        return LaurentSeries.zero()
    if step % 2 == 0:
        return _gaussian_base(top, bottom).scale_exponents(step // 2)
    num = q_poch(top, step)
    den = q_poch(bottom, step) * q_poch(top - bottom, step)
    return exact_divide(num, den)
