"""The Radford Hopf algebras R_mn(q) and the Taft algebras A_n(q).

R_mn(q) has dimension mn^2 with basis g^i x^j (0 <= i < mn, 0 <= j < n),
relations

    g^(mn) = 1,   x^n = g^n - 1,   x g = q g x

over Q(zeta_mn) with q = zeta_mn^m a primitive n-th root of unity, and

    Delta(g) = g (x) g,   Delta(x) = x (x) g + 1 (x) x,
    eps(g) = 1, eps(x) = 0,   S(g) = g^-1,   S(x) = -x g^-1.

The Taft algebra A_n(q) is the n^2-dimensional cousin with g^n = 1 and
x^n = 0 over Q(zeta_n), q = zeta_n. Comultiplication rows are produced by
actually multiplying out (Delta g)^i (Delta x)^j in the tensor square, and
antipode rows by multiplying S(x)^j S(g)^i, so no closed form is assumed
anywhere in the construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import make_context, root_power
from .hopf import (
    Element,
    HopfAlgebra,
    HopfError,
    TensorElement,
    comultiply,
    dual_hopf,
    multiply,
    tensor_of,
    verify_hopf_axioms,
)
from .qcalc import q_factorial, q_int


def _monomial_label(i: int, j: int) -> str:
    gpart = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
    xpart = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
    return (gpart + xpart) or "1"


def element_power(e: Element, k: int) -> Element:
    acc = e.algebra.one()
    for _ in range(k):
        acc = acc * e
    return acc


def _build_family(m: int, n: int, truncated: bool) -> HopfAlgebra:
    """Shared constructor. truncated=True gives x^n = 0 (Taft, with m = 1),
    truncated=False gives x^n = g^n - 1 (Radford)."""
    N = m * n
    ctx = make_context(N)
    order = N  # order of g
    dim = order * n

    def idx(i, j):
        return (i % order) * n + j

    labels = [_monomial_label(i, j) for i in range(order) for j in range(n)]

    qpow = [root_power(ctx, m * k) for k in range(n)]  # q^k, q = zeta^m

    mult_rows = {}
    for i in range(order):
        for j in range(n):
            for k in range(order):
                for l in range(n):
                    c = qpow[(j * k) % n]
                    row = {}
                    if j + l < n:
                        row[idx(i + k, j + l)] = c
                    elif not truncated:
                        s = j + l - n
                        # x^(j+l) = (g^n - 1) x^s
                        row[idx(i + k + n, s)] = c
                        row[idx(i + k, s)] = -c
                    if row:
                        mult_rows[(idx(i, j), idx(k, l))] = row
                    else:
                        mult_rows[(idx(i, j), idx(k, l))] = {}

    counit = {idx(i, 0): ctx.one() for i in range(order)}
    unit = {idx(0, 0): ctx.one()}

    H = HopfAlgebra(
        ctx,
        labels,
        name=f"radford({m},{n})" if not truncated else f"taft({n})",
        mult_rows=mult_rows,
        counit=counit,
        unit=unit,
    )

    # comultiplication by repeated tensor multiplication
    one = H.basis_element(idx(0, 0))
    g = H.basis_element(idx(1, 0))
    dx = None
    if n > 1:
        x = H.basis_element(idx(0, 1))
        dx = tensor_of(x, g) + tensor_of(one, x)
    dx_pow = [tensor_of(one, one)]
    for j in range(1, n):
        dx_pow.append(dx_pow[-1] * dx)
    comult_rows = {}
    for i in range(order):
        for j in range(n):
            row = {}
            for (a, b), c in dx_pow[j].coeffs.items():
                # left-multiply by g^i (x) g^i: shifts the group parts
                a_i, a_j = divmod(a, n)
                b_i, b_j = divmod(b, n)
                row[(idx(a_i + i, a_j), idx(b_i + i, b_j))] = c
            comult_rows[idx(i, j)] = row
    H._comult_rows = comult_rows

    # antipode by repeated multiplication of S(x)^j S(g)^i
    sg = H.basis_element(idx(-1, 0))
    sg_pow = [one]
    for _ in range(1, order):
        sg_pow.append(sg_pow[-1] * sg)
    if n > 1:
        sx = -(H.basis_element(idx(0, 1)) * sg)
    sx_pow = [one]
    for _ in range(1, n):
        sx_pow.append(sx_pow[-1] * sx)
    antipode_rows = {}
    for i in range(order):
        for j in range(n):
            img = sx_pow[j] * sg_pow[i % order]
            antipode_rows[idx(i, j)] = dict(img.coeffs)
    H._antipode_rows = antipode_rows

    gens = [g] + ([H.basis_element(idx(0, 1))] if n > 1 else [])
    H.generators = gens
    return H


def build_radford(m: int, n: int) -> HopfAlgebra:
    """Construct R_mn(q) with a full axiom verification before returning."""
    if not isinstance(m, int) or not isinstance(n, int):
        raise ValueError("m and n must be integers")
    if m < 2:
        raise ValueError(f"radford family needs m >= 2, got m={m}")
    if n < 1:
        raise ValueError(f"radford family needs n >= 1, got n={n}")
    H = _build_family(m, n, truncated=False)
    H.meta.update(
        family="radford", m=m, n=n, descriptor=f"radford({m},{n})", xi_power_of_q=m
    )
    report = verify_hopf_axioms(H, depth="full")
    if not report.ok:
        bad = report.first_failure()
        raise HopfError(f"radford({m},{n}) failed axiom {bad.name}: {bad.witness}")
    return H


def build_taft(n: int) -> HopfAlgebra:
    """Construct the Taft algebra A_n(q), q = zeta_n, verified in full."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"taft family needs integer n >= 2, got {n}")
    H = _build_family(1, n, truncated=True)
    H.meta.update(family="taft", m=1, n=n, descriptor=f"taft({n})", xi_power_of_q=1)
    report = verify_hopf_axioms(H, depth="full")
    if not report.ok:
        bad = report.first_failure()
        raise HopfError(f"taft({n}) failed axiom {bad.name}: {bad.witness}")
    return H


# ---------------------------------------------------------------------------
# distinguished generators of the dual


def alpha_beta(Hdual: HopfAlgebra):
    """The generators alpha = sum_i xi^i gbar^i and beta = sum_i gbar^i xbar
    of the dual, with their defining relations verified:

        alpha^(mn) = unit of H*,  beta^n = 0,  beta alpha = xi alpha beta

    and the products alpha^k beta^j verified to be a basis (spanning).
    For n = 1 beta is the zero functional and the relations degenerate."""
    H = Hdual.dual_of
    if H is None or "family" not in H.meta:
        raise HopfError("alpha_beta expects the dual of a radford/taft algebra")
    m, n = H.meta["m"], H.meta["n"]
    order = m * n  # order of the grouplike g (taft stores m = 1)
    ctx = Hdual.ctx

    def idx(i, j):
        return (i % order) * n + j

    alpha = Element(
        Hdual, {idx(i, 0): root_power(ctx, i) for i in range(order)}
    )
    if n > 1:
        beta = Element(Hdual, {idx(i, 1): ctx.one() for i in range(order)})
    else:
        beta = Hdual.zero()

    xi = ctx.root()
    unit = Hdual.one()
    if element_power(alpha, order) != unit:
        raise HopfError("alpha^(mn) != unit in the dual")
    if element_power(beta, n) != Hdual.zero():
        raise HopfError("beta^n != 0 in the dual")
    if beta * alpha != (alpha * beta).scale(xi):
        raise HopfError("beta alpha != xi alpha beta in the dual")

    rows = []
    apow = unit
    for k in range(order):
        row_base = apow
        bpow = unit
        for j in range(n):
            prod = row_base * bpow
            rows.append(dict(prod.coeffs))
            if j + 1 < n:
                bpow = bpow * beta
        apow = apow * alpha
    from .cyclotomic import _rref

    pivots = _rref([dict(r) for r in rows], Hdual.dim)
    if len(pivots) != Hdual.dim:
        raise HopfError("alpha^k beta^j do not span the dual")
    return alpha, beta


@dataclass
class DualStructureReport:
    descriptor: str
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def add(self, name, ok, detail=None):
        self.checks.append((name, ok, detail))

    def to_dict(self):
        return {
            "descriptor": self.descriptor,
            "ok": self.ok,
            "checks": [
                {"name": nm, "ok": ok, "detail": detail}
                for nm, ok, detail in self.checks
            ],
        }


def verify_dual_structure(m: int, n: int) -> DualStructureReport:
    """Exhaustively verify the structure of the dual of R_mn(q):

    1. the product of dual basis monomials ebar^(i,j) * ebar^(k,l) vanishes
       unless k = i + j (mod mn) and j + l < n, and otherwise equals
       [j+l choose j]_q ebar^(i, j+l);
    2. alpha^k beta^j = (j)!_q sum_i xi^(ik) ebar^(i,j);
    3. in the co-opposite dual: Delta(beta) = beta (x) 1 + alpha^m (x) beta
       and Delta(alpha) = alpha (x) alpha + (xi^n - 1) *
       sum_(k+l=n, 0<k<n) [1/((k)!_q (l)!_q)] alpha^(mk+1) beta^l (x) alpha beta^k;
    4. counits and antipodes: eps(alpha) = 1, eps(beta) = 0,
       S(alpha) = alpha^(mn-1) and S(beta) = -alpha^(-m) beta in the
       co-opposite dual.
    """
    from .hopf import antipode, coopposite, counit
    from .qcalc import q_binomial

    H = build_radford(m, n)
    Hd = dual_hopf(H)
    ctx = H.ctx
    order = m * n
    q = root_power(ctx, m)
    xi = ctx.root()
    rep = DualStructureReport(descriptor=f"radford({m},{n})")

    def idx(i, j):
        return (i % order) * n + j

    ok = True
    detail = None
    for i in range(order):
        for j in range(n):
            a = Hd.basis_element(idx(i, j))
            for k in range(order):
                for l in range(n):
                    got = a * Hd.basis_element(idx(k, l))
                    if k % order != (i + j) % order or j + l >= n:
                        want = Hd.zero()
                    else:
                        want = Hd.basis_element(idx(i, j + l)).scale(
                            q_binomial(ctx, q, j + l, j)
                        )
                    if got != want:
                        ok = False
                        detail = f"monomial product ({i},{j})*({k},{l})"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("dual_monomial_products", ok, detail)

    alpha, beta = alpha_beta(Hd)
    ok = True
    detail = None
    apow = Hd.one()
    for k in range(order):
        bpow = Hd.one()
        for j in range(n):
            got = apow * bpow
            fact = q_factorial(ctx, q, j)
            want = Element(
                Hd,
                {idx(i, j): fact * root_power(ctx, i * k) for i in range(order)},
            )
            if got != want:
                ok = False
                detail = f"alpha^{k} beta^{j}"
                break
            if j + 1 < n:
                bpow = bpow * beta
        if not ok:
            break
        apow = apow * alpha
    rep.add("alpha_beta_monomial_form", ok, detail)

    cop = coopposite(Hd)

    def lift(e):
        return Element(cop, dict(e.coeffs))

    a_c = lift(alpha)
    b_c = lift(beta)
    one_c = cop.one()
    got = comultiply(b_c)
    want = tensor_of(b_c, one_c) + tensor_of(lift(element_power(alpha, m)), b_c)
    rep.add("cop_comult_beta", got == want,
            None if got == want else "Delta(beta) mismatch")

    got = comultiply(a_c)
    want = tensor_of(a_c, a_c)
    extra = root_power(ctx, n) - 1
    for k in range(1, n):
        l = n - k
        coef = extra / (q_factorial(ctx, q, k) * q_factorial(ctx, q, l))
        left = lift(element_power(alpha, m * k + 1) * element_power(beta, l))
        right = lift(alpha * element_power(beta, k))
        want = want + tensor_of(left, right).scale(coef)
    rep.add("cop_comult_alpha", got == want,
            None if got == want else "Delta(alpha) cross terms mismatch")

    eps_ok = counit(a_c) == ctx.one() and counit(b_c).is_zero()
    rep.add("cop_counits", eps_ok, None if eps_ok else "counit values wrong")

    s_alpha = antipode(a_c)
    want_sa = lift(element_power(alpha, order - 1))
    ok_a = s_alpha == want_sa
    s_beta = antipode(b_c)
    want_sb = -lift(element_power(alpha, (order - m) % order or order) * beta) \
        if n > 1 else cop.zero()
    if n == 1:
        ok_b = s_beta == cop.zero()
    else:
        ok_b = s_beta == want_sb
    rep.add("cop_antipodes", ok_a and ok_b,
            None if ok_a and ok_b else "antipode of alpha or beta mismatch")
    return rep
