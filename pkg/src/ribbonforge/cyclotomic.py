"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Numbers live in the power basis 1, z, ..., z^(d-1), where z = zeta_N and
d = deg Phi_N, with one shared positive integer denominator:

    (c_0 + c_1 z + ... + c_{d-1} z^(d-1)) / den

Everything is arbitrary-precision integer data; nothing is ever rounded.
The module also provides exact sparse linear algebra (solve, nullspace,
matrix inverse) over any field whose elements support +, -, *, / and
truthiness, which CycNumber does.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class LinearAlgebraError(Exception):
    pass


class SingularMatrixError(LinearAlgebraError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, lowest degree first)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_divmod(num, den):
    """Quotient and remainder for integer polynomials with monic divisor."""
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c:
            q[k] = c
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


def _divisors(N):
    out = [d for d in range(1, N) if N % d == 0]
    return out


_PHI_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first, computed by exact division
    of x^N - 1 by the product of Phi_d over proper divisors d of N."""
    if not isinstance(N, int) or N < 1:
        raise ValueError("N must be a positive integer")
    if N in _PHI_CACHE:
        return _PHI_CACHE[N]
    num = [-1] + [0] * (N - 1) + [1]
    den = [1]
    for d in _divisors(N):
        den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    q, r = _poly_divmod(num, den)
    if any(r) and r != [0]:
        raise ArithmeticError(f"Phi_{N} division left a remainder")
    phi = tuple(q)
    _PHI_CACHE[N] = phi
    return phi


# ---------------------------------------------------------------------------
# field context


class CycContext:
    """Shared data for Q(zeta_N): the minimal polynomial, power-reduction
    rows used by multiplication, and the table of root powers."""

    __slots__ = ("N", "phi", "degree", "red_rows", "_zpow", "_zero", "_one")

    def __init__(self, N: int):
        self.N = N
        self.phi = cyclotomic_polynomial(N)
        self.degree = len(self.phi) - 1
        d = self.degree
        # z^d = -(phi_0 + phi_1 z + ... + phi_{d-1} z^{d-1})
        top = [-c for c in self.phi[:d]]
        rows = []
        cur = top
        limit = max(2 * d - 2, N - 1)
        for _ in range(d, limit + 1):
            rows.append(tuple(cur))
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                for k in range(d):
                    nxt[k] += lead * top[k]
            cur = nxt
        # red_rows[t] is z^(d+t); kernels consume this table directly
        self.red_rows = tuple(rows)
        zp = []
        for k in range(N):
            if k < d:
                vec = [0] * d
                vec[k] = 1
                zp.append(tuple(vec))
            else:
                zp.append(self.red_rows[k - d])
        self._zpow = tuple(zp)
        self._zero = CycNumber(self, (0,) * d, 1)
        self._one = CycNumber(self, (1,) + (0,) * (d - 1), 1)

    def zero(self) -> "CycNumber":
        return self._zero

    def one(self) -> "CycNumber":
        return self._one

    def root(self) -> "CycNumber":
        return root_power(self, 1)

    def from_int(self, k: int) -> "CycNumber":
        return CycNumber(self, (k,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, fr) -> "CycNumber":
        fr = Fraction(fr)
        return CycNumber(
            self, (fr.numerator,) + (0,) * (self.degree - 1), fr.denominator
        )

    def __repr__(self):
        return f"CycContext(N={self.N}, degree={self.degree})"


_CONTEXTS: dict[int, CycContext] = {}


def make_context(N: int) -> CycContext:
    """Build (or fetch the cached) context for Q(zeta_N). N must be >= 1."""
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {N!r}")
    ctx = _CONTEXTS.get(N)
    if ctx is None:
        ctx = CycContext(N)
        _CONTEXTS[N] = ctx
    return ctx


def root_power(ctx: CycContext, k: int) -> "CycNumber":
    """zeta_N^k as a field element, any integer k."""
    return CycNumber(ctx, ctx._zpow[k % ctx.N], 1)


class CycNumber:
    """Immutable element of Q(zeta_N). num is an int tuple of length
    ctx.degree, den a positive int, with gcd(den, *num) == 1."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=1, _normalized=False):
        self.ctx = ctx
        if _normalized:
            self.num = num
            self.den = den
            return
        num = tuple(num)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.num = num
        self.den = den

    # -- queries

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if any(self.num[1:]):
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.ctx.N != self.ctx.N:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        if isinstance(other, Fraction):
            return self.ctx.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self, o
        num = tuple(
            ca * b.den + cb * a.den for ca, cb in zip(a.num, b.num)
        )
        return CycNumber(self.ctx, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(
            self.ctx, tuple(-c for c in self.num), self.den, _normalized=True
        )

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ctx.degree
        a, b = self.num, o.num
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        out = conv[:d]
        red = self.ctx.red_rows
        for e in range(d, 2 * d - 1):
            c = conv[e]
            if c:
                row = red[e - d]
                for k in range(d):
                    if row[k]:
                        out[k] += c * row[k]
        return CycNumber(self.ctx, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in
        Q[x] modulo Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError(
                f"inverse of zero in Q(zeta_{self.ctx.N})"
            )
        if self.is_rational():
            return self.ctx.from_fraction(1 / self.as_fraction())
        phi = [Fraction(c) for c in self.ctx.phi]
        a = [Fraction(c) for c in self.num]
        # ext gcd: s*a + t*phi = g (constant), inverse = s/g
        r0, r1 = phi, _frac_trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, rem = _frac_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
            if len(r0) == 1:
                break
        if len(r0) != 1 or r0[0] == 0:
            raise ZeroDivisionError("element is not invertible (degenerate modulus)")
        g = r0[0]
        inv_coeffs = [c / g for c in s0]
        inv_coeffs = inv_coeffs[: self.ctx.degree]
        inv_coeffs += [Fraction(0)] * (self.ctx.degree - len(inv_coeffs))
        den = 1
        for c in inv_coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = tuple(int(c * den) for c in inv_coeffs)
        # the inverse of num/den is den * inverse(num-as-poly)
        result = CycNumber(self.ctx, tuple(n * self.den for n in num), den)
        if result * self != self.ctx.one():
            raise ArithmeticError("inverse computation failed verification")
        return result

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return (
            self.ctx.N == other.ctx.N
            and self.den == other.den
            and self.num == other.num
        )

    def __hash__(self):
        return hash((self.ctx.N, self.num, self.den))

    # -- rendering

    def coeff_text(self, compact: bool = False) -> str:
        """The sum part of the canonical form, without the modulus suffix.
        With compact=True, zero monomials are dropped."""
        parts = []
        for k, c in enumerate(self.num):
            if compact and c == 0:
                continue
            fr = Fraction(c, self.den)
            if fr.denominator == 1:
                cs = str(fr.numerator)
            else:
                cs = f"{fr.numerator}/{fr.denominator}"
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append(f"{cs}*z")
            else:
                parts.append(f"{cs}*z^{k}")
        if not parts:
            return "0"
        return " + ".join(parts)

    def text(self) -> str:
        return f"{self.coeff_text()} (mod Phi_{self.ctx.N})"

    def __repr__(self):
        return f"Cyc({self.text()})"


def _frac_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _frac_trim(out)


def _frac_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _frac_trim(out)


def _frac_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv_lead
        if c:
            q[k] = c
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return _frac_trim(q), _frac_trim(a)


# ---------------------------------------------------------------------------
# exact sparse linear algebra
#
# Matrices are lists of rows; a row is either a dict {col: value} or a list.
# Elimination runs over dict rows with a cheap Markowitz-style pivot choice
# (sparsest available row first) and produces a full reduced echelon form,
# so solutions read off deterministically.


def _to_dict_rows(A, ncols=None):
    rows = []
    width = 0
    for row in A:
        if isinstance(row, dict):
            r = {c: v for c, v in row.items() if v}
            if r:
                width = max(width, max(r) + 1)
        else:
            r = {c: v for c, v in enumerate(row) if v}
            width = max(width, len(row))
        rows.append(r)
    if ncols is None:
        ncols = width
    return rows, ncols


def _rref(rows, ncols):
    """In-place reduced row echelon form. Returns list of (row_index, col)
    pivots in elimination order."""
    pivots = []
    used_cols = set()
    active = set(range(len(rows)))
    while True:
        best = None
        for ri in sorted(active):
            row = rows[ri]
            if not row:
                continue
            cand = min(c for c in row if c not in used_cols) if any(
                c not in used_cols for c in row
            ) else None
            if cand is None:
                continue
            key = (len(row), ri)
            if best is None or key < best[0]:
                best = (key, ri, cand)
        if best is None:
            break
        _, ri, col = best
        piv = rows[ri][col]
        inv = _field_one(piv) / piv
        rows[ri] = {c: v * inv for c, v in rows[ri].items()}
        rows[ri] = {c: v for c, v in rows[ri].items() if v}
        for rj in range(len(rows)):
            if rj == ri:
                continue
            fac = rows[rj].get(col)
            if fac is None or not fac:
                continue
            prow = rows[ri]
            out = dict(rows[rj])
            for c, v in prow.items():
                nv = out.get(c)
                nv = -fac * v if nv is None else nv - fac * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            rows[rj] = out
        pivots.append((ri, col))
        used_cols.add(col)
        active.discard(ri)
    pivots.sort(key=lambda p: p[1])
    return pivots


def _field_one(exemplar):
    return exemplar / exemplar


def _apply(rows_dict, vec, nrows):
    out = []
    for ri in range(nrows):
        acc = None
        for c, v in rows_dict[ri].items():
            term = v * vec[c]
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def solve_linear(A, b, ncols=None):
    """One exact solution of A x = b, or None if the system is inconsistent.
    Free variables are set to zero. The returned solution is re-multiplied
    through A as a verification step."""
    rows, ncols = _to_dict_rows(A, ncols)
    b = list(b)
    if len(b) != len(rows):
        raise ValueError("right-hand side length mismatch")
    aug = []
    bcol = ncols
    for r, bv in zip(rows, b):
        r = dict(r)
        if bv:
            r[bcol] = bv
        aug.append(r)
    pivots = _rref(aug, ncols + 1)
    for ri, col in pivots:
        if col == bcol:
            return None
    x = [None] * ncols
    zero = None
    for ri, col in pivots:
        x[col] = aug[ri].get(bcol)
    # fill explicit zeros; reuse any available exemplar to build 0 = v - v
    exemplar = None
    for r in rows:
        for v in r.values():
            exemplar = v
            break
        if exemplar is not None:
            break
    for bv in b:
        if exemplar is None and bv:
            exemplar = bv
    if exemplar is None:
        exemplar = Fraction(1)
    zero = exemplar - exemplar
    x = [zero if v is None else v for v in x]
    check = _apply(rows, x, len(rows))
    for got, want in zip(check, b):
        gv = zero if got is None else got
        if gv != want and bool(gv - want):
            raise LinearAlgebraError("solution verification failed")
    return x


def nullspace(A, ncols=None):
    """Basis of the exact nullspace of A, one vector per free column, in
    ascending free-column order. Each vector is verified against A."""
    rows, ncols = _to_dict_rows(A, ncols)
    exemplar = None
    for r in rows:
        for v in r.values():
            exemplar = v
            break
        if exemplar is not None:
            break
    if exemplar is None:
        exemplar = Fraction(1)
    one = _field_one(exemplar)
    zero = exemplar - exemplar
    work = [dict(r) for r in rows]
    pivots = _rref(work, ncols)
    pivot_cols = {col: ri for ri, col in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = one
        for col, ri in pivot_cols.items():
            coef = work[ri].get(f)
            if coef is not None and coef:
                vec[col] = -coef
        out = _apply(rows, vec, len(rows))
        for got in out:
            if got is not None and bool(got):
                raise LinearAlgebraError("nullspace verification failed")
        basis.append(vec)
    return basis


def invert_matrix(A):
    """Exact inverse of a square matrix, verified by multiplying back to the
    identity. Raises SingularMatrixError when no inverse exists."""
    rows, ncols = _to_dict_rows(A)
    n = len(rows)
    if ncols > n:
        raise SingularMatrixError("matrix is not square")
    exemplar = None
    for r in rows:
        for v in r.values():
            exemplar = v
            break
        if exemplar is not None:
            break
    if exemplar is None:
        raise SingularMatrixError("zero matrix")
    one = _field_one(exemplar)
    zero = exemplar - exemplar
    aug = []
    for i, r in enumerate(rows):
        r = dict(r)
        r[n + i] = one
        aug.append(r)
    pivots = _rref(aug, 2 * n)
    if len(pivots) != n or any(col >= n for _, col in pivots):
        raise SingularMatrixError("matrix is singular")
    inv = [[zero] * n for _ in range(n)]
    for ri, col in pivots:
        for c, v in aug[ri].items():
            if c >= n:
                inv[col][c - n] = v
    for i in range(n):
        acc = [zero] * n
        for c, v in rows[i].items():
            for j in range(n):
                if inv[c][j]:
                    acc[j] = acc[j] + v * inv[c][j]
        for j in range(n):
            want = one if i == j else zero
            if acc[j] != want and bool(acc[j] - want):
                raise LinearAlgebraError("inverse verification failed")
    return inv
