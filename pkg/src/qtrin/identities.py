"""Registry of the polynomial and q-series identities, plus verifiers.

Each identity id maps to a pair of side builders (LHS, RHS) over the
q-blocks and trinomial kernels.  Polynomial identities are verified
exactly; identities involving infinite products are verified below an
explicit cutoff (half-exponent units).

Also here: the Bailey-type transform, the trivariate generating-function
verifier, and limit-stabilization checks.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

from .series import LaurentSeries, TrivariateSeries, exact_divide
from .qblocks import (MonomialArg, gaussian_binomial, inv_poch_infinite,
                      inv_poch_series, poch_finite, poch_infinite, q_poch)
from .trinomials import (RefinedTParams, TParams, TrinomialParams,
                         refined_trinomial, round_trinomial, t_trinomial)

Side = Union[LaurentSeries, TrivariateSeries]


# ---------------------------------------------------------------------------
# instances and reports

@dataclass(frozen=True)
class IdentityInstance:
    id: str
    params: dict
    cutoff: Optional[int] = None   # half-exponent units; None = exact mode

    def key(self):
        return (self.id, tuple(sorted(self.params.items())), self.cutoff)


@dataclass
class VerificationReport:
    instance: IdentityInstance
    match: bool
    first_mismatch: Optional[tuple] = None   # (exponent, lhs_coeff, rhs_coeff)
    elapsed_ms: int = 0
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CapparelliQuadratic:
    """The quadratic form in the double-sum exponents."""
    m: int
    n: int

    @property
    def value(self) -> int:
        return 2 * self.m * self.m + 6 * self.m * self.n + 6 * self.n * self.n


def quad(m: int, n: int) -> int:
    return 2 * m * m + 6 * m * n + 6 * n * n


def mono(exp: int, coeff: int = 1) -> LaurentSeries:
    return LaurentSeries.monomial(coeff, exp)


# ---------------------------------------------------------------------------
# shared building blocks

@lru_cache(maxsize=None)
def _ratio3(L: int, n: int) -> LaurentSeries:
    """(q^3;q^3)_L / ((q;q)_{L-2n} (q^3;q^3)_n); zero when L-2n < 0."""
    if n < 0 or L - 2 * n < 0:
        return LaurentSeries.zero()
    return exact_divide(q_poch(L, 6), q_poch(L - 2 * n, 2) * q_poch(n, 6))


@lru_cache(maxsize=None)
def _ratio4(M: int, m: int, n: int) -> LaurentSeries:
    """(q^3;q^3)_M / ((q;q)_m (q^3;q^3)_n (q^3;q^3)_{M-2n-m})."""
    if m < 0 or n < 0 or M - 2 * n - m < 0:
        return LaurentSeries.zero()
    den = q_poch(m, 2) * q_poch(n, 6) * q_poch(M - 2 * n - m, 6)
    return exact_divide(q_poch(M, 6), den)


def _rt3(L: int, b: int, a: int) -> LaurentSeries:
    return round_trinomial(TrinomialParams(L, b, a, step=6))


def _t3(n: int, L: int, a: int) -> LaurentSeries:
    return t_trinomial(TParams(n, L, a, step=6))


def _double_sum(shift_fn: Callable[[int, int], int], cutoff: int) -> LaurentSeries:
    """sum_{m,n>=0} q^(shift/2) / ((q;q)_m (q^3;q^3)_n), truncated.

    ``shift_fn(m, n)`` gives the monomial exponent in half-units; it must
    grow quadratically so only finitely many terms land below the cutoff.
    """
    out = LaurentSeries.zero(cutoff)
    m = 0
    while shift_fn(m, 0) <= cutoff or m == 0:
        n = 0
        while shift_fn(m, n) <= cutoff:
            e = shift_fn(m, n)
            term = inv_poch_series(m, 2, cutoff - e) * \
                inv_poch_series(n, 6, cutoff - e)
            out = out + term.shift(e)
            n += 1
        m += 1
        if m > 4 * cutoff + 8:
            raise ValueError("double sum failed to terminate")
    return out


def _cap_product_first(cutoff: int) -> LaurentSeries:
    """(-q^2, -q^4; q^6)_inf (-q^3; q^3)_inf truncated."""
    return poch_infinite(MonomialArg(-1, 4), 12, cutoff) * \
        poch_infinite(MonomialArg(-1, 8), 12, cutoff) * \
        poch_infinite(MonomialArg(-1, 6), 6, cutoff)


def _cap_product_second(cutoff: int) -> LaurentSeries:
    """(-q, -q^5; q^6)_inf (-q^3; q^3)_inf truncated."""
    return poch_infinite(MonomialArg(-1, 2), 12, cutoff) * \
        poch_infinite(MonomialArg(-1, 10), 12, cutoff) * \
        poch_infinite(MonomialArg(-1, 6), 6, cutoff)


def _binom2(x: int) -> int:
    """x*(x-1)//2, valid for any integer x."""
    return x * (x - 1) // 2


# ---------------------------------------------------------------------------
# side builders, one pair per identity id

def _first_pair_lhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for n in range(L // 2 + 1):
        r = _ratio3(L, n)
        s = r.shift(3 * n * n + n).scale_coeffs((-1) ** n)
        s2 = r.shift(3 * n * n - n + 4 * L + 2).scale_coeffs((-1) ** n)
        out = out + s + s2
    return out


def _first_pair_rhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    # support detection: the second family is nonzero out to j = L + 1,
    # one past the symmetric range
    for j in range(-L - 1, L + 2):
        out = out + _rt3(L, j + 1, j).shift(2 * (L + j + 1))
        out = out + _rt3(L, j, j - 1).shift(2 * (L - j + 1))
    return out


def _second_pair_lhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for n in range(L // 2 + 1):
        out = out + _ratio3(L, n).shift(3 * n * n - n).scale_coeffs((-1) ** n)
    return out


def _second_pair_rhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for j in range(-L, L + 1):
        out = out + _rt3(L, j - 1, j).shift(2 * (2 * L - j))
    return out


def _third_pair_lhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for n in range(L // 2 + 1):
        out = out + _ratio3(L, n).shift(3 * n * n + n).scale_coeffs((-1) ** n)
    return out


def _third_pair_rhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for j in range(-L, L + 1):
        out = out + _rt3(L, j, j).shift(2 * (L - j))
    return out


def _first_pair_dual_lhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for n in range(L // 2 + 1):
        r = _ratio3(L, n)
        out = out + r.shift(2 * _binom2(L - 2 * n))
        out = out + r.shift(2 * (_binom2(L - 2 * n + 1) + n) + 2 * (L + 1))
    return out


def _first_pair_dual_rhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    # support of the reversed trinomials forces |j| <= L + 1; the sum has
    # genuine contributions at negative j
    for j in range(-L - 2, L + 2):
        combo = _t3(-1, L, j) + _t3(-1, L, j + 1)
        out = out + combo.shift(3 * j * j + j)
    return out


def _second_pair_dual_lhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for n in range(L // 2 + 1):
        out = out + _ratio3(L, n).shift(2 * _binom2(L - 2 * n))
    return out


def _second_pair_dual_rhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for j in range(-L, L + 1):
        out = out + _t3(1, L, j).shift(3 * j * j - j)
    return out


def _third_pair_dual_lhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for n in range(L // 2 + 1):
        out = out + _ratio3(L, n).shift((L - 2 * n) ** 2)
    return out


def _third_pair_dual_rhs(p, c):
    L = p["L"]
    out = LaurentSeries.zero()
    for j in range(-L, L + 1):
        out = out + _t3(0, L, j).shift(3 * j * j + 2 * j)
    return out


def _t0_sum_lhs(p, c):
    L, a = p["L"], p["a"]
    out = LaurentSeries.zero()
    for i in range(L + 1):
        out = out + (gaussian_binomial(L, i) *
                     t_trinomial(TParams(0, i, a))).shift(i * i)
    return out


def _t0_sum_rhs(p, c):
    L, a = p["L"], p["a"]
    return gaussian_binomial(2 * L, L - a).shift(a * a)


def _t1_sum_lhs(p, c):
    L, a = p["L"], p["a"]
    acc = LaurentSeries.zero()
    for i in range(L + 1):
        acc = acc + (gaussian_binomial(L, i) *
                     t_trinomial(TParams(1, i, a))).shift(2 * _binom2(i))
    return acc * (LaurentSeries({0: 1}) + LaurentSeries({2 * L: 1}))


def _t1_sum_rhs(p, c):
    L, a = p["L"], p["a"]
    # (1 + q^a) q^{binom(a,2)} = q^{a(a-1)/2} + q^{a(a+1)/2}
    pre = LaurentSeries({a * (a - 1): 1}) + LaurentSeries({a * (a + 1): 1})
    return gaussian_binomial(2 * L, L - a) * pre


def _tm1_sum_lhs(p, c):
    L, a = p["L"], p["a"]
    out = LaurentSeries.zero()
    for i in range(L + 1):
        combo = t_trinomial(TParams(-1, i, a)) + t_trinomial(TParams(-1, i, a + 1))
        out = out + (gaussian_binomial(L, i) * combo).shift(i * (i + 1))
    return out


def _tm1_sum_rhs(p, c):
    L, a = p["L"], p["a"]
    return gaussian_binomial(2 * L + 1, L - a).shift(a * (a + 1))


def _bmo_lhs(p, c):
    L, a = p["L"], p["a"]
    combo = t_trinomial(TParams(-1, L, a)) + t_trinomial(TParams(-1, L, a + 1))
    return combo * LaurentSeries({0: 1, 2 * (L + 1): -1})


def _bmo_rhs(p, c):
    L, a = p["L"], p["a"]
    return t_trinomial(TParams(1, L + 1, a)) - \
        t_trinomial(TParams(0, L + 1, a)).shift(L + 1 - a)


def _binom_shift_lhs(p, c):
    L, i = p["L"], p["i"]
    return gaussian_binomial(L, i) * LaurentSeries({0: 1, 2 * (L + 1): -1})


def _binom_shift_rhs(p, c):
    L, i = p["L"], p["i"]
    return gaussian_binomial(L + 1, i + 1) * LaurentSeries({0: 1, 2 * (i + 1): -1})


def _thm71_lhs(p, c):
    M = p["M"]
    out = LaurentSeries.zero()
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            out = out + _ratio4(M, m, n).shift(2 * quad(m, n))
    return out


def _thm71_rhs(p, c):
    M = p["M"]
    out = LaurentSeries.zero()
    for j in range(-M, M + 1):
        out = out + gaussian_binomial(2 * M, M + j, 6).shift(2 * (3 * j * j + j))
    return out


def _thm72_lhs(p, c):
    M = p["M"]
    acc = LaurentSeries.zero()
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            acc = acc + _ratio4(M, m, n).shift(2 * (quad(m, n) - 2 * m - 3 * n))
    return acc * (LaurentSeries({0: 1}) + LaurentSeries({6 * M: 1}))


def _thm72_rhs(p, c):
    M = p["M"]
    out = LaurentSeries.zero()
    for j in range(-M, M + 1):
        pre = LaurentSeries({2 * (3 * j * j - 2 * j): 1}) + \
            LaurentSeries({2 * (3 * j * j + j): 1})
        out = out + gaussian_binomial(2 * M, M + j, 6) * pre
    return out


def _fincap2m_lhs(p, c):
    M = p["M"]
    out = LaurentSeries.zero()
    for n in range(M // 2 + 1):
        for m in range(M - 2 * n + 1):
            r = _ratio4(M, m, n)
            out = out + r.shift(2 * (quad(m, n) + m + 3 * n))
            out = out + r.shift(2 * (quad(m, n) + 3 * m + 6 * n + 1))
    return out


def _fincap2m_rhs(p, c):
    M = p["M"]
    out = LaurentSeries.zero()
    for j in range(-M - 1, M + 1):
        out = out + gaussian_binomial(2 * M + 1, M - j, 6).shift(
            2 * (3 * j * j + 2 * j))
    return out


def _fincap1n_lhs(p, c):
    N = p["N"]
    out = LaurentSeries.zero()
    for n in range(N // 2 + 1):
        for m in range(N - 2 * n + 1):
            d = N - 2 * n - m
            term = gaussian_binomial(3 * d, m) * \
                gaussian_binomial(2 * d + n, n, 6)
            out = out + term.shift(2 * quad(m, n))
    return out


def _fincap1n_rhs(p, c):
    N = p["N"]
    out = LaurentSeries.zero()
    for l in range(N // 2 + 1):
        term = gaussian_binomial(N, 2 * l, 6) * \
            poch_finite(MonomialArg(-1, 4), 12, l) * \
            poch_finite(MonomialArg(-1, 8), 12, l)
        out = out + term.shift(6 * _binom2(N - 2 * l))
    return out


def _fincap2n_lhs(p, c):
    N = p["N"]
    out = LaurentSeries.zero()
    for n in range(N // 2 + 1):
        for m in range(N - 2 * n + 1):
            d = N - 2 * n - m
            t1 = gaussian_binomial(3 * d + 2, m) * \
                gaussian_binomial(2 * d + n + 1, n, 6)
            out = out + t1.shift(2 * (quad(m, n) + m + 3 * n))
            t2 = gaussian_binomial(3 * d, m) * \
                gaussian_binomial(2 * d + n, n, 6)
            out = out + t2.shift(2 * (quad(m, n) + 3 * m + 6 * n + 1))
    return out


def _fincap2n_rhs(p, c):
    N = p["N"]
    out = LaurentSeries.zero()
    for l in range(N + 1):
        term = gaussian_binomial(N + 1, 2 * l + 1, 6) * \
            poch_finite(MonomialArg(-1, 2), 12, l + 1) * \
            poch_finite(MonomialArg(-1, 10), 12, l)
        if term.is_zero():
            continue
        out = out + term.shift(6 * _binom2(N - 2 * l))
    return out


def _kr1_lhs(p, c):
    return _double_sum(lambda m, n: 2 * quad(m, n), c)


def _kr1_rhs(p, c):
    return _cap_product_first(c)


def _cap2_lhs(p, c):
    return _double_sum(lambda m, n: 2 * (quad(m, n) + m + 3 * n), c) + \
        _double_sum(lambda m, n: 2 * (quad(m, n) + 3 * m + 6 * n + 1), c)


def _cap2_rhs(p, c):
    return _cap_product_second(c)


def _outlook2_lhs(p, c):
    return _double_sum(lambda m, n: 2 * (quad(m, n) - 2 * m - 3 * n), c)


def _outlook2_rhs(p, c):
    return _cap_product_first(c) + _cap_product_second(c)


def _qbin_lhs(p, c):
    a = MonomialArg(p["a_sign"], p["a_exp"])
    zs, ze = p["z_sign"], p["z_exp"]
    out = LaurentSeries.zero(c)
    n = 0
    while n * ze <= c:
        term = poch_finite(a, 2, n) * inv_poch_series(n, 2, c)
        out = out + term.shift(n * ze).scale_coeffs(zs ** n)
        n += 1
    return out


def _qbin_rhs(p, c):
    a = MonomialArg(p["a_sign"], p["a_exp"])
    zs, ze = p["z_sign"], p["z_exp"]
    az = MonomialArg(a.sign * zs, a.exp + ze) if a.sign != 0 else MonomialArg(0)
    return poch_infinite(az, 2, c) * inv_poch_infinite(MonomialArg(zs, ze), 2, c)


def _qexp_lhs(p, c):
    zs, ze = p["z_sign"], p["z_exp"]
    out = LaurentSeries.zero(c)
    n = 0
    while n * (n - 1) + n * ze <= c:
        term = inv_poch_series(n, 2, c)
        out = out + term.shift(n * (n - 1) + n * ze).scale_coeffs(zs ** n)
        n += 1
    return out


def _qexp_rhs(p, c):
    zs, ze = p["z_sign"], p["z_exp"]
    return poch_infinite(MonomialArg(-zs, ze), 2, c)


def _jtp_lhs(p, c):
    zs, ze = p["z_sign"], p["z_exp"]
    out = LaurentSeries.zero(c)
    bound = int(math.isqrt(c)) + abs(ze) + 2
    for j in range(-bound, bound + 1):
        e = j * ze + 2 * j * j
        if e <= c:
            coeff = zs if j % 2 else 1          # zs^j for zs in {-1, +1}
            out = out + LaurentSeries({e: coeff}, c)
    return out


def _jtp_rhs(p, c):
    zs, ze = p["z_sign"], p["z_exp"]
    return poch_infinite(MonomialArg(1, 4), 4, c) * \
        poch_infinite(MonomialArg(-zs, 2 + ze), 4, c) * \
        poch_infinite(MonomialArg(-zs, 2 - ze), 4, c)


def _poch_reversal_lhs(p, c):
    return q_poch(p["n"], 2).reverse_exponents()


def _poch_reversal_rhs(p, c):
    # (-1)^n q^{-binom(n+1,2)} (q;q)_n: the sign of the exponent differs
    # from some printed statements of this reversal; direct expansion at
    # n = 1 pins it down (1 - 1/q = -q^{-1}(1 - q)).
    n = p["n"]
    return q_poch(n, 2).shift(-n * (n + 1)).scale_coeffs((-1) ** n)


def _outlook1_lhs(p, c):
    L, M = p["L"], p["M"]
    out = LaurentSeries.zero()
    for m in range(3 * M + 1):
        if (L - m) % 2 != 0:
            continue
        term = gaussian_binomial(3 * M, m) * \
            gaussian_binomial(2 * M + (L - m) // 2, 2 * M, 6)
        if term.is_zero():
            continue
        out = out + term.shift(m * m)
    return out


def _outlook1_rhs(p, c):
    L, M = p["L"], p["M"]
    out = LaurentSeries.zero()
    for j in range(-L - M - 1, L + M + 2):
        t = refined_trinomial(RefinedTParams(L, M, j, j, step=6))
        if t.is_zero():
            continue
        out = out + t.shift(3 * j * j + 2 * j)
    return out


def _hierarchy_lhs(p, c):
    nu, L = p["nu"], p["L"]
    out = LaurentSeries.zero()
    # enumerate the inner multiplicities n_1..n_nu with N_1 <= L
    def tuples(k, budget):
        if k == 0:
            yield ()
            return
        for v in range(budget + 1):
            for rest in tuples(k - 1, budget - v):
                yield (v,) + rest
    for ns in tuples(nu, L):
        Ns = [sum(ns[k:]) for k in range(nu)]   # N_1, ..., N_nu
        n_nu = ns[-1]
        Ntot = sum(Ns)
        for i in range(L - Ns[0] + 1):
            for m in range(3 * n_nu + 1):
                if (i + m - Ntot) % 2 != 0:
                    continue
                mid_top = 2 * n_nu + (i - Ntot - m) // 2
                term = gaussian_binomial(L - Ns[0], i, 6) * \
                    gaussian_binomial(3 * n_nu, m) * \
                    gaussian_binomial(mid_top, 2 * n_nu, 6)
                if term.is_zero():
                    continue
                for j in range(1, nu):
                    top = i - sum(Ns[:j]) + ns[j - 1]
                    term = term * gaussian_binomial(top, ns[j - 1], 6)
                    if term.is_zero():
                        break
                if term.is_zero():
                    continue
                e = m * m + 3 * (i * i + sum(N * N for N in Ns))
                out = out + term.shift(e)
    return out


def _hierarchy_rhs(p, c):
    nu, L = p["nu"], p["L"]
    out = LaurentSeries.zero()
    coef = 3 * (nu + 2) * (nu + 1) // 2          # 3 * binom(nu+2, 2)
    for j in range(-L, L + 1):
        a = (nu + 2) * j
        t = _rt3(L, a, a)
        if t.is_zero():
            continue
        out = out + t.shift(2 * (coef * j * j + j))
    return out


# ---------------------------------------------------------------------------
# genfun products: bivariate (t, q) cross-check of the three pair identities

def _pair_rhs_poly(pair: int, L: int) -> LaurentSeries:
    if pair == 1:
        return _first_pair_rhs({"L": L}, None)
    if pair == 2:
        return _second_pair_rhs({"L": L}, None)
    return _third_pair_rhs({"L": L}, None)


def _genfun_lhs(p, c):
    pair, tcut = p["pair"], p["t_cutoff"]
    out = TrivariateSeries({}, t_cutoff=tcut, q_cutoff=c)
    for L in range(tcut + 1):
        coeff = inv_poch_series(L, 6, c) * _pair_rhs_poly(pair, L)
        out = out + TrivariateSeries.term(L, 0, coeff,
                                          t_cutoff=tcut, q_cutoff=c)
    return out


def _genfun_rhs(p, c):
    pair, tcut = p["pair"], p["t_cutoff"]

    def tri(entries):
        return TrivariateSeries(entries, t_cutoff=tcut, q_cutoff=c)

    # (t^2 q^e; q^3)_inf via the q-exponential sum in base q^3
    def theta_factor(e_half):
        ent = {}
        for m in range(tcut // 2 + 1):
            s = inv_poch_series(m, 6, c).shift(m * e_half + 3 * m * (m - 1))
            ent[(2 * m, 0)] = s.scale_coeffs((-1) ** m)
        return tri(ent)

    inv_t = tri({(m, 0): inv_poch_series(m, 2, c) for m in range(tcut + 1)})
    if pair == 2:
        prod = theta_factor(2) * inv_t
    else:
        prod = theta_factor(4) * inv_t
    if pair == 1:
        one_plus_q = tri({(0, 0): LaurentSeries({0: 1, 2: 1})})
        inv_one_plus_tq = tri({(k, 0): LaurentSeries({2 * k: (-1) ** k})
                               for k in range(tcut + 1)})
        prod = prod * one_plus_q * inv_one_plus_tq
    return prod


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class IdentityDef:
    id: str
    param_names: tuple
    mode: str                    # "exact" | "truncated"
    lhs: Callable
    rhs: Callable
    check: Optional[Callable] = None   # extra parameter validation


def _nonneg(*names):
    def chk(p):
        for n in names:
            if p[n] < 0:
                raise ValueError(f"parameter {n} must be non-negative")
    return chk


def _qbin_check(p):
    if p["a_sign"] not in (-1, 0, 1) or p["z_sign"] not in (-1, 1):
        raise ValueError("signs must be in {-1, 0, +1} (z nonzero)")
    if p["z_exp"] < 1:
        raise ValueError("z must be a monomial with positive exponent")
    if p["a_sign"] != 0 and p["a_exp"] < 0:
        raise ValueError("a must have non-negative exponent")


def _jtp_check(p):
    if p["z_sign"] not in (-1, 1):
        raise ValueError("z sign must be +-1")
    if not -1 <= p["z_exp"] <= 1:
        raise ValueError("jtp needs z exponent in {-1, 0, 1} for convergence")


def _genfun_check(p):
    if p["pair"] not in (1, 2, 3):
        raise ValueError("pair must be 1, 2 or 3")
    if p["t_cutoff"] < 0:
        raise ValueError("t_cutoff must be non-negative")


def _hier_check(p):
    if p["nu"] < 1:
        raise ValueError("nu must be a positive integer")
    if p["L"] < 0:
        raise ValueError("L must be non-negative")


_DEFS = [
    IdentityDef("first_pair", ("L",), "exact", _first_pair_lhs,
                _first_pair_rhs, _nonneg("L")),
    IdentityDef("second_pair", ("L",), "exact", _second_pair_lhs,
                _second_pair_rhs, _nonneg("L")),
    IdentityDef("third_pair", ("L",), "exact", _third_pair_lhs,
                _third_pair_rhs, _nonneg("L")),
    IdentityDef("first_pair_dual", ("L",), "exact", _first_pair_dual_lhs,
                _first_pair_dual_rhs, _nonneg("L")),
    IdentityDef("second_pair_dual", ("L",), "exact", _second_pair_dual_lhs,
                _second_pair_dual_rhs, _nonneg("L")),
    IdentityDef("third_pair_dual", ("L",), "exact", _third_pair_dual_lhs,
                _third_pair_dual_rhs, _nonneg("L")),
    IdentityDef("t0_sum", ("L", "a"), "exact", _t0_sum_lhs, _t0_sum_rhs,
                _nonneg("L")),
    IdentityDef("t1_sum", ("L", "a"), "exact", _t1_sum_lhs, _t1_sum_rhs,
                _nonneg("L")),
    IdentityDef("tm1_sum", ("L", "a"), "exact", _tm1_sum_lhs, _tm1_sum_rhs,
                _nonneg("L")),
    IdentityDef("bmo_transform", ("L", "a"), "exact", _bmo_lhs, _bmo_rhs,
                _nonneg("L")),
    IdentityDef("binom_shift", ("L", "i"), "exact", _binom_shift_lhs,
                _binom_shift_rhs, _nonneg("L", "i")),
    IdentityDef("thm71", ("M",), "exact", _thm71_lhs, _thm71_rhs,
                _nonneg("M")),
    IdentityDef("thm72", ("M",), "exact", _thm72_lhs, _thm72_rhs,
                _nonneg("M")),
    IdentityDef("fincap2m", ("M",), "exact", _fincap2m_lhs, _fincap2m_rhs,
                _nonneg("M")),
    IdentityDef("fincap1n", ("N",), "exact", _fincap1n_lhs, _fincap1n_rhs,
                _nonneg("N")),
    IdentityDef("fincap2n", ("N",), "exact", _fincap2n_lhs, _fincap2n_rhs,
                _nonneg("N")),
    IdentityDef("kr1", (), "truncated", _kr1_lhs, _kr1_rhs),
    IdentityDef("cap2", (), "truncated", _cap2_lhs, _cap2_rhs),
    IdentityDef("outlook2", (), "truncated", _outlook2_lhs, _outlook2_rhs),
    IdentityDef("q_binomial_theorem",
                ("a_sign", "a_exp", "z_sign", "z_exp"), "truncated",
                _qbin_lhs, _qbin_rhs, _qbin_check),
    IdentityDef("q_exponential", ("z_sign", "z_exp"), "truncated",
                _qexp_lhs, _qexp_rhs,
                lambda p: _qbin_check({"a_sign": 0, "a_exp": 0, **p})),
    IdentityDef("jtp", ("z_sign", "z_exp"), "truncated", _jtp_lhs, _jtp_rhs,
                _jtp_check),
    IdentityDef("poch_reversal", ("n",), "exact", _poch_reversal_lhs,
                _poch_reversal_rhs, _nonneg("n")),
    IdentityDef("genfun_products", ("pair", "t_cutoff"), "truncated",
                _genfun_lhs, _genfun_rhs, _genfun_check),
    IdentityDef("outlook1", ("L", "M"), "exact", _outlook1_lhs, _outlook1_rhs,
                _nonneg("L", "M")),
    IdentityDef("hierarchy", ("nu", "L"), "exact", _hierarchy_lhs,
                _hierarchy_rhs, _hier_check),
]

REGISTRY: dict[str, IdentityDef] = {d.id: d for d in _DEFS}


def identity_ids() -> list[str]:
    return sorted(REGISTRY)


def _resolve(instance: IdentityInstance) -> IdentityDef:
    d = REGISTRY.get(instance.id)
    if d is None:
        raise KeyError(f"unknown identity id: {instance.id!r}")
    missing = [n for n in d.param_names if n not in instance.params]
    extra = [n for n in instance.params if n not in d.param_names]
    if missing or extra:
        raise ValueError(
            f"{instance.id}: expected parameters {list(d.param_names)}, "
            f"missing {missing}, unexpected {extra}")
    if d.check is not None:
        d.check(instance.params)
    if d.mode == "truncated" and instance.cutoff is None:
        raise ValueError(f"{instance.id} needs a truncation cutoff")
    if d.mode == "exact" and instance.cutoff is not None:
        raise ValueError(f"{instance.id} is an exact identity; no cutoff")
    return d


def compute_side(instance: IdentityInstance, side: str) -> Side:
    d = _resolve(instance)
    fn = d.lhs if side.upper() == "LHS" else d.rhs
    return fn(instance.params, instance.cutoff)


def verify_identity(instance: IdentityInstance) -> VerificationReport:
    start = time.monotonic()
    d = _resolve(instance)
    lhs = d.lhs(instance.params, instance.cutoff)
    rhs = d.rhs(instance.params, instance.cutoff)
    mism = lhs.first_mismatch(rhs)
    elapsed = int((time.monotonic() - start) * 1000)
    return VerificationReport(instance, mism is None, mism, elapsed)


# ---------------------------------------------------------------------------
# Bailey-type transform

def bailey_sides(kind: int, alpha: dict[int, LaurentSeries], L: int,
                 step: int = 2):
    """Both sides of the transformed identity for a finitely supported alpha.

    kind 0: F(i) = sum_a alpha(a) T_0(i, a)
            LHS sum_i Q^{i^2/2} [L, i] F(i); RHS sum_a alpha(a) Q^{a^2/2}
            [2L, L-a].
    kind 1 and -1 analogously, with the (1 + Q^L) factor resp. the
    T_{-1} pair combination.  Q = q^(step/2) is the working base.
    """
    if kind not in (-1, 0, 1):
        raise ValueError("kind must be -1, 0 or 1")
    if L < 0:
        raise ValueError("L must be non-negative")

    def halves(u_num: int, u_den: int = 1) -> int:
        # exponent u_num/u_den in Q-units -> half-units (1 Q-unit = step halves)
        v = u_num * step
        if v % u_den != 0:
            raise ValueError("non-half-integral exponent")
        return v // u_den

    def F(i: int) -> LaurentSeries:
        acc = LaurentSeries.zero()
        for a, coeff in alpha.items():
            if kind == -1:
                t = t_trinomial(TParams(-1, i, a, step)) + \
                    t_trinomial(TParams(-1, i, a + 1, step))
            else:
                t = t_trinomial(TParams(kind, i, a, step))
            acc = acc + coeff * t
        return acc

    lhs = LaurentSeries.zero()
    for i in range(L + 1):
        base = gaussian_binomial(L, i, step) * F(i)
        if kind == 0:
            lhs = lhs + base.shift(halves(i * i, 2))
        elif kind == 1:
            lhs = lhs + base.shift(halves(i * (i - 1), 2))
        else:
            lhs = lhs + base.shift(halves(i * (i + 1), 2))
    if kind == 1:
        lhs = lhs * (LaurentSeries({0: 1}) + LaurentSeries({L * step: 1}))

    rhs = LaurentSeries.zero()
    for a, coeff in alpha.items():
        if kind == 0:
            term = gaussian_binomial(2 * L, L - a, step).shift(halves(a * a, 2))
        elif kind == 1:
            pre = LaurentSeries({halves(a * (a - 1), 2): 1}) + \
                LaurentSeries({halves(a * (a + 1), 2): 1})
            term = gaussian_binomial(2 * L, L - a, step) * pre
        else:
            # exponent on the alpha side carries the support variable a,
            # not the bound summation index
            term = gaussian_binomial(2 * L + 1, L - a, step).shift(
                halves(a * (a + 1), 2))
        rhs = rhs + coeff * term
    return lhs, rhs


def apply_bailey_transform(kind: int, alpha: dict[int, LaurentSeries],
                           L: int, step: int = 2) -> VerificationReport:
    start = time.monotonic()
    lhs, rhs = bailey_sides(kind, alpha, L, step)
    mism = lhs.first_mismatch(rhs)
    inst = IdentityInstance(f"bailey_kind{kind}", {"L": L, "step": step})
    elapsed = int((time.monotonic() - start) * 1000)
    return VerificationReport(inst, mism is None, mism, elapsed)


# ---------------------------------------------------------------------------
# trivariate generating-function check (the three-variable lemma)

def verify_lemma31(n: int, t_cutoff: int, q_cutoff: int) -> VerificationReport:
    """Compare both sides of the trivariate generating function for the
    round trinomials, through t-degree t_cutoff and q exponent q_cutoff.

    |n| is kept small: the Laurent tail goes like q^{-n k}.
    """
    if abs(n) > 4:
        raise ValueError("|n| must be at most 4")
    start = time.monotonic()
    cw = q_cutoff + 4 * abs(n) * t_cutoff + 4 * t_cutoff + 4

    lhs_entries: dict = {}
    for L in range(t_cutoff + 1):
        for j in range(-L, L + 1):
            rt = round_trinomial(TrinomialParams(L, j - n, j, step=2))
            if rt.is_zero():
                continue
            need = cw - min(0, rt.min_exp())
            s = inv_poch_series(L, 2, need) * rt
            key = (L, j)
            cur = lhs_entries.get(key)
            lhs_entries[key] = s if cur is None else cur + s
    lhs = TrivariateSeries(lhs_entries, t_cutoff=t_cutoff, q_cutoff=cw)

    def tri(entries):
        return TrivariateSeries(entries, t_cutoff=t_cutoff, q_cutoff=cw)

    # numerator (t^2 q^{-n}; q)_inf via the q-exponential sum
    num_entries = {}
    for m in range(t_cutoff // 2 + 1):
        e = m * (m - 1) - 2 * n * m
        s = inv_poch_series(m, 2, cw - min(0, e)).shift(e)
        num_entries[(2 * m, 0)] = s.scale_coeffs((-1) ** m)
    numerator = tri(num_entries)

    def euler_inverse(x_exp_per_t: int, q_shift_per_t: int):
        # 1/(t x^? q^?; q)_inf = sum_m (t x^? q^?)^m / (q;q)_m
        ent = {}
        for m in range(t_cutoff + 1):
            e = m * q_shift_per_t
            ent[(m, m * x_exp_per_t)] = \
                inv_poch_series(m, 2, cw - min(0, e)).shift(e)
        return tri(ent)

    rhs = numerator * euler_inverse(0, 0) * \
        euler_inverse(-1, -2 * n) * euler_inverse(1, 0)

    mism = _trivariate_mismatch(lhs, rhs, q_cutoff)
    inst = IdentityInstance("lemma_genfun", {"n": n, "t_cutoff": t_cutoff},
                            q_cutoff)
    elapsed = int((time.monotonic() - start) * 1000)
    return VerificationReport(inst, mism is None, mism, elapsed)


def _trivariate_mismatch(a: TrivariateSeries, b: TrivariateSeries,
                         q_cutoff: int):
    """First mismatch through q_cutoff; raises if either side is not
    actually known that far (insufficient working cutoff)."""
    tcut = min(a.t_cutoff, b.t_cutoff)
    keys = sorted(k for k in set(a.entries) | set(b.entries) if k[0] <= tcut)
    for key in keys:
        sa, sb = a.entry(*key), b.entry(*key)
        for s in (sa, sb):
            if s.cutoff is not None and s.cutoff < q_cutoff:
                raise ValueError(
                    f"entry {key} only known to {s.cutoff} < {q_cutoff}; "
                    "increase the working cutoff")
        m = sa.truncate(q_cutoff).first_mismatch(sb.truncate(q_cutoff))
        if m is not None:
            return (key[0], key[1], m[0], m[1], m[2])
    return None


# ---------------------------------------------------------------------------
# limit stabilization

_LIMIT_TARGETS = {
    # the three pair identities stabilize to these products
    "first_pair": lambda c: inv_poch_infinite(MonomialArg(1, 2), 6, c),
    "second_pair": lambda c: inv_poch_infinite(MonomialArg(1, 4), 6, c),
    "third_pair": lambda c: inv_poch_infinite(MonomialArg(1, 2), 6, c),
}


def verify_limit_stabilization(id: str, window: int,
                               params: Optional[dict] = None,
                               search_bound: int = 30) -> VerificationReport:
    """Find the first index from which the family agrees with its limit
    below the degree window (half-units).  Errors if the window needs more
    than ``search_bound`` terms.
    """
    start = time.monotonic()
    params = dict(params or {})

    if id in _LIMIT_TARGETS:
        target = _LIMIT_TARGETS[id](window)
        def member(L):
            return compute_side(IdentityInstance(id, {"L": L}), "RHS")
    elif id == "binom_limit":
        m = params.get("m", 2)
        target = inv_poch_series(m, 2, window)
        def member(N):
            return gaussian_binomial(N, m)
    elif id == "binom_limit2":
        nu, j = params.get("nu", 0), params.get("j", 0)
        if nu not in (0, 1) or j < 0:
            raise ValueError("binom_limit2 needs nu in {0,1} and j >= 0")
        target = inv_poch_infinite(MonomialArg(1, 2), 2, window)
        def member(M):
            return gaussian_binomial(2 * M + nu, M - j)
    else:
        raise KeyError(f"no stabilization target for id {id!r}")

    target = target.truncate(window)
    agree_from = None
    for L in range(search_bound + 1):
        value = member(L).truncate(window)
        if value.first_mismatch(target) is None:
            if agree_from is None:
                agree_from = L
        else:
            agree_from = None
    elapsed = int((time.monotonic() - start) * 1000)
    inst = IdentityInstance(id, {**params, "window": window})
    if agree_from is None:
        return VerificationReport(inst, False, None, elapsed,
                                  {"error": "window too large for search bound"})
    return VerificationReport(inst, True, None, elapsed,
                              {"stabilized_at": agree_from})
