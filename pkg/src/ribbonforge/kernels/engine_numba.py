"""Compiled verification kernels.

Both checks stream difference terms into a dense scratch accumulator and
track the touched rows, so a reset costs only what the current probe
actually used. Coefficient vectors are multiplied as polynomials in the
field generator and folded with the reduction table.
"""
import numba
import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _fold_mul(va, vb, out, work, red, phi):
    for t in range(2 * phi - 1):
        work[t] = 0
    for a in range(phi):
        ca = va[a]
        if ca != 0:
            for b in range(phi):
                cb = vb[b]
                if cb != 0:
                    work[a + b] += ca * cb
    for t in range(2 * phi - 2, phi - 1, -1):
        c = work[t]
        if c != 0:
            ri = t - phi
            for e in range(phi):
                work[e] += c * red[ri, e]
            work[t] = 0
    for e in range(phi):
        out[e] = work[e]


@njit(cache=True)
def _assoc(d, phi, red, mindptr, mcol, mval):
    scratch = np.zeros((d, phi), dtype=np.int64)
    intouch = np.zeros(d, dtype=np.bool_)
    touched = np.empty(d, dtype=np.int64)
    work = np.empty(2 * phi - 1, dtype=np.int64)
    prod = np.empty(phi, dtype=np.int64)
    for i in range(d):
        for j in range(d):
            pij = i * d + j
            r0 = mindptr[pij]
            r1 = mindptr[pij + 1]
            for k in range(d):
                nt = 0
                for r in range(r0, r1):
                    l = mcol[r]
                    plk = l * d + k
                    for r2 in range(mindptr[plk], mindptr[plk + 1]):
                        s = mcol[r2]
                        _fold_mul(mval[r], mval[r2], prod, work, red, phi)
                        if not intouch[s]:
                            intouch[s] = True
                            touched[nt] = s
                            nt += 1
                        for e in range(phi):
                            scratch[s, e] += prod[e]
                pjk = j * d + k
                for r in range(mindptr[pjk], mindptr[pjk + 1]):
                    l = mcol[r]
                    pil = i * d + l
                    for r2 in range(mindptr[pil], mindptr[pil + 1]):
                        s = mcol[r2]
                        _fold_mul(mval[r], mval[r2], prod, work, red, phi)
                        if not intouch[s]:
                            intouch[s] = True
                            touched[nt] = s
                            nt += 1
                        for e in range(phi):
                            scratch[s, e] -= prod[e]
                bad = False
                for t in range(nt):
                    row = touched[t]
                    intouch[row] = False
                    for e in range(phi):
                        if scratch[row, e] != 0:
                            bad = True
                        scratch[row, e] = 0
                if bad:
                    return False, i, j, k
    return True, -1, -1, -1


@njit(cache=True)
def _comult_mult(d, phi, red, mindptr, mcol, mval,
                 cindptr, ca, cb, cval):
    scratch = np.zeros((d * d, phi), dtype=np.int64)
    intouch = np.zeros(d * d, dtype=np.bool_)
    touched = np.empty(d * d, dtype=np.int64)
    work = np.empty(2 * phi - 1, dtype=np.int64)
    cc = np.empty(phi, dtype=np.int64)
    cs = np.empty(phi, dtype=np.int64)
    v = np.empty(phi, dtype=np.int64)
    for i in range(d):
        for j in range(d):
            nt = 0
            for r1 in range(cindptr[i], cindptr[i + 1]):
                a1 = ca[r1]
                b1 = cb[r1]
                for r2 in range(cindptr[j], cindptr[j + 1]):
                    a2 = ca[r2]
                    b2 = cb[r2]
                    _fold_mul(cval[r1], cval[r2], cc, work, red, phi)
                    pa = a1 * d + a2
                    pb = b1 * d + b2
                    for rs in range(mindptr[pa], mindptr[pa + 1]):
                        s = mcol[rs]
                        _fold_mul(cc, mval[rs], cs, work, red, phi)
                        for rt in range(mindptr[pb], mindptr[pb + 1]):
                            t = mcol[rt]
                            _fold_mul(cs, mval[rt], v, work, red, phi)
                            key = s * d + t
                            if not intouch[key]:
                                intouch[key] = True
                                touched[nt] = key
                                nt += 1
                            for e in range(phi):
                                scratch[key, e] += v[e]
            pij = i * d + j
            for r in range(mindptr[pij], mindptr[pij + 1]):
                l = mcol[r]
                for r2 in range(cindptr[l], cindptr[l + 1]):
                    key = ca[r2] * d + cb[r2]
                    _fold_mul(mval[r], cval[r2], v, work, red, phi)
                    if not intouch[key]:
                        intouch[key] = True
                        touched[nt] = key
                        nt += 1
                    for e in range(phi):
                        scratch[key, e] -= v[e]
            bad = False
            for t in range(nt):
                row = touched[t]
                intouch[row] = False
                for e in range(phi):
                    if scratch[row, e] != 0:
                        bad = True
                    scratch[row, e] = 0
            if bad:
                return False, i, j
    return True, -1, -1


class NumbaEngine:
    name = "numba"

    def __init__(self, packed):
        self.p = packed

    def check_associativity(self):
        p = self.p
        ok, i, j, k = _assoc(p.dim, p.phi, p.red, p.mult_indptr,
                             p.mult_col, p.mult_val)
        if ok:
            return True, None
        return False, (int(i), int(j), int(k))

    def check_comult_multiplicative(self):
        p = self.p
        ok, i, j = _comult_mult(p.dim, p.phi, p.red, p.mult_indptr,
                                p.mult_col, p.mult_val, p.com_indptr,
                                p.com_a, p.com_b, p.com_val)
        if ok:
            return True, None
        return False, (int(i), int(j))
