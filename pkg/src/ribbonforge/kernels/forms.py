"""Packing of algebra structure tables into flat integer arrays.

The verification kernels only handle coefficients that are integer vectors
over the power basis of the field (denominator one). All structure tables
built here satisfy that, but pack() degrades gracefully: any fractional
coefficient, or a magnitude that could overflow 64-bit accumulation, makes
it return None and the caller falls back to the reference path.
"""
from __future__ import annotations

import numpy as np

INT64_HEADROOM = 1 << 62


class PackedHopf:
    """Multiplication and comultiplication tables of a based algebra in
    CSR-style int64 form, plus the power-basis reduction table."""

    def __init__(self, dim, phi, red, mult_indptr, mult_col, mult_val,
                 com_indptr, com_a, com_b, com_val):
        self.dim = dim
        self.phi = phi
        self.red = red
        self.mult_indptr = mult_indptr
        self.mult_col = mult_col
        self.mult_val = mult_val
        self.com_indptr = com_indptr
        self.com_a = com_a
        self.com_b = com_b
        self.com_val = com_val


def _int_vec(c):
    """Length-phi integer coefficient tuple of a field element, or None."""
    if c.den != 1:
        return None
    return c.num


def pack(H) -> PackedHopf | None:
    d = H.dim
    ctx = H.ctx
    phi = ctx.degree

    mult_indptr = np.zeros(d * d + 1, dtype=np.int64)
    mcols: list = []
    mvals: list = []
    max_row = 0
    bound = 0
    for i in range(d):
        for j in range(d):
            row = H.mult_row(i, j)
            items = sorted(row.items())
            mult_indptr[i * d + j + 1] = mult_indptr[i * d + j] + len(items)
            max_row = max(max_row, len(items))
            for k, c in items:
                vec = _int_vec(c)
                if vec is None:
                    return None
                mcols.append(k)
                mvals.append(vec)
                bound = max(bound, max(abs(x) for x in vec))

    com_indptr = np.zeros(d + 1, dtype=np.int64)
    cas: list = []
    cbs: list = []
    cvals: list = []
    max_com = 0
    for s in range(d):
        row = H.comult_row(s)
        items = sorted(row.items())
        com_indptr[s + 1] = com_indptr[s] + len(items)
        max_com = max(max_com, len(items))
        for (a, b), c in items:
            vec = _int_vec(c)
            if vec is None:
                return None
            cas.append(a)
            cbs.append(b)
            cvals.append(vec)
            bound = max(bound, max(abs(x) for x in vec))

    nred = max(phi - 1, 1)
    red = np.zeros((nred, phi), dtype=np.int64)
    red_bound = 1
    for t in range(phi - 1):
        row = ctx.red_rows[t]
        for e in range(phi):
            red[t, e] = row[e]
            red_bound = max(red_bound, abs(row[e]))

    # worst-case accumulated magnitude: each scratch entry collects at most
    # max_row * max(max_row, max_com^2 * max_row) products of three folded
    # coefficient vectors; bound it crudely but safely with exact ints
    fold_factor = 1 + phi * red_bound
    prod2 = phi * bound * bound * fold_factor
    prod3 = phi * prod2 * bound * fold_factor
    n_acc = d * max_row * max_row + max_com * max_com * max_row * max_row
    if n_acc * prod3 >= INT64_HEADROOM:
        return None

    return PackedHopf(
        d, phi, red,
        mult_indptr,
        np.asarray(mcols, dtype=np.int64),
        np.asarray(mvals, dtype=np.int64).reshape(len(mcols), phi),
        com_indptr,
        np.asarray(cas, dtype=np.int64),
        np.asarray(cbs, dtype=np.int64),
        np.asarray(cvals, dtype=np.int64).reshape(len(cas), phi),
    )
