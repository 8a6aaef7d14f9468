"""q-integers, q-factorials and Gaussian binomials at a field element q.

The binomial uses the Pascal-type recursion

    [n choose i]_q = q^i [n-1 choose i]_q + [n-1 choose i-1]_q

which stays valid when intermediate q-factorials vanish (q a root of
unity), unlike the factorial quotient.
"""
from __future__ import annotations

from .cyclotomic import CycContext, CycNumber


def q_int(ctx: CycContext, q: CycNumber, n: int) -> CycNumber:
    """(n)_q = 1 + q + ... + q^(n-1); (0)_q = 0."""
    if n < 0:
        raise ValueError("q-integer needs n >= 0")
    acc = ctx.zero()
    power = ctx.one()
    for _ in range(n):
        acc = acc + power
        power = power * q
    return acc


def q_factorial(ctx: CycContext, q: CycNumber, n: int) -> CycNumber:
    """(n)!_q = (1)_q (2)_q ... (n)_q; empty product for n = 0."""
    if n < 0:
        raise ValueError("q-factorial needs n >= 0")
    acc = ctx.one()
    for k in range(1, n + 1):
        acc = acc * q_int(ctx, q, k)
    return acc


_BINOM_CACHE: dict[tuple, CycNumber] = {}


def q_binomial(ctx: CycContext, q: CycNumber, n: int, i: int) -> CycNumber:
    """Gaussian binomial [n choose i]_q by the q-Pascal recursion."""
    if i < 0 or i > n:
        raise ValueError(f"binomial index out of range: n={n}, i={i}")
    if i == 0 or i == n:
        return ctx.one()
    key = (ctx.N, q, n, i)
    hit = _BINOM_CACHE.get(key)
    if hit is not None:
        return hit
    val = (q ** i) * q_binomial(ctx, q, n - 1, i) + q_binomial(ctx, q, n - 1, i - 1)
    _BINOM_CACHE[key] = val
    return val
