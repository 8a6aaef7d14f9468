"""Vectorized fallback kernels.

Same checks as the compiled engine, expressed as record joins: expand the
sparse tables along the join index, form the difference terms, then group
by output key with a sort and segmented sum. Everything stays in int64;
the packing stage already guaranteed no overflow. Expansions are chunked
to bound peak memory.
"""
import numpy as np

CHUNK = 1 << 21


def _poly_mul_fold(va, vb, red, phi):
    n = va.shape[0]
    full = np.zeros((n, 2 * phi - 1), dtype=np.int64)
    for a in range(phi):
        ca = va[:, a:a + 1]
        if np.any(ca):
            full[:, a:a + phi] += ca * vb
    for t in range(2 * phi - 2, phi - 1, -1):
        c = full[:, t]
        if np.any(c):
            full[:, :phi] += c[:, None] * red[t - phi][None, :]
    return full[:, :phi]


def _expand(starts, ends):
    lens = ends - starts
    total = int(lens.sum())
    if total == 0:
        e = np.empty(0, dtype=np.int64)
        return e, e.copy()
    rep = np.repeat(np.arange(len(starts), dtype=np.int64), lens)
    offs = np.zeros(len(starts), dtype=np.int64)
    np.cumsum(lens[:-1], out=offs[1:])
    flat = np.arange(total, dtype=np.int64) - offs[rep] + starts[rep]
    return rep, flat


def _chunk_bounds(starts, ends, target):
    """Split record indices so each piece expands to at most ~target rows."""
    lens = (ends - starts).astype(np.int64)
    cuts = [0]
    acc = 0
    for idx, ln in enumerate(lens):
        acc += int(ln)
        if acc >= target:
            cuts.append(idx + 1)
            acc = 0
    if cuts[-1] != len(lens):
        cuts.append(len(lens))
    return cuts


def _group(keys, vals):
    if len(keys) == 0:
        return keys, vals
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    v = vals[order]
    starts = np.flatnonzero(np.concatenate(([True], k[1:] != k[:-1])))
    sums = np.add.reduceat(v, starts, axis=0)
    return k[starts], sums


def _first_nonzero_key(parts_k, parts_v):
    if parts_k:
        keys = np.concatenate(parts_k)
        vals = np.concatenate(parts_v)
    else:
        return None
    k, s = _group(keys, vals)
    nz = np.flatnonzero(np.any(s != 0, axis=1))
    if len(nz) == 0:
        return None
    return int(k[nz[0]])


class NumpyEngine:
    name = "numpy"

    def __init__(self, packed):
        self.p = packed
        d = packed.dim
        self._nnz_pair = np.repeat(
            np.arange(d * d, dtype=np.int64), np.diff(packed.mult_indptr)
        )
        self._com_row = np.repeat(
            np.arange(d, dtype=np.int64), np.diff(packed.com_indptr)
        )

    def check_associativity(self):
        p = self.p
        d, phi, red = p.dim, p.phi, p.red
        indptr, col, val = p.mult_indptr, p.mult_col, p.mult_val
        pair = self._nnz_pair
        for i in range(d):
            parts_k: list = []
            parts_v: list = []
            # (e_i e_j) e_k
            idx1 = np.arange(indptr[i * d], indptr[i * d + d], dtype=np.int64)
            if len(idx1):
                starts = indptr[col[idx1] * d]
                ends = indptr[col[idx1] * d + d]
                for c0, c1 in zip(*_two(_chunk_bounds(starts, ends, CHUNK))):
                    sl = slice(c0, c1)
                    rep, flat = _expand(starts[sl], ends[sl])
                    if len(rep) == 0:
                        continue
                    recs = idx1[sl][rep]
                    j = pair[recs] % d
                    k = pair[flat] % d
                    s = col[flat]
                    keys = (j * d + k) * d + s
                    vals = _poly_mul_fold(val[recs], val[flat], red, phi)
                    gk, gv = _group(keys, vals)
                    parts_k.append(gk)
                    parts_v.append(gv)
            # e_i (e_j e_k), negated
            idx2 = np.arange(indptr[0], indptr[d * d], dtype=np.int64)
            starts = indptr[i * d + col[idx2]]
            ends = indptr[i * d + col[idx2] + 1]
            for c0, c1 in zip(*_two(_chunk_bounds(starts, ends, CHUNK))):
                sl = slice(c0, c1)
                rep, flat = _expand(starts[sl], ends[sl])
                if len(rep) == 0:
                    continue
                recs = idx2[sl][rep]
                jk = pair[recs]
                s = col[flat]
                keys = jk * d + s
                vals = -_poly_mul_fold(val[recs], val[flat], red, phi)
                gk, gv = _group(keys, vals)
                parts_k.append(gk)
                parts_v.append(gv)
            bad = _first_nonzero_key(parts_k, parts_v)
            if bad is not None:
                return False, (i, bad // (d * d), (bad // d) % d)
        return True, None

    def check_comult_multiplicative(self):
        p = self.p
        d, phi, red = p.dim, p.phi, p.red
        indptr, col, val = p.mult_indptr, p.mult_col, p.mult_val
        cindptr, ca, cb, cval = p.com_indptr, p.com_a, p.com_b, p.com_val
        pair = self._nnz_pair
        cnnz = len(ca)
        com_row = self._com_row
        d2 = d * d
        for i in range(d):
            parts_k: list = []
            parts_v: list = []
            r1 = np.arange(cindptr[i], cindptr[i + 1], dtype=np.int64)
            block = max(1, (CHUNK // 8) // max(1, len(r1)))
            for b0 in range(0, cnnz, block):
                r2 = np.arange(b0, min(b0 + block, cnnz), dtype=np.int64)
                ri = np.repeat(r1, len(r2))
                rj = np.tile(r2, len(r1))
                if len(ri) == 0:
                    continue
                j = com_row[rj]
                pa = ca[ri] * d + ca[rj]
                pb = cb[ri] * d + cb[rj]
                cc = _poly_mul_fold(cval[ri], cval[rj], red, phi)
                rep, flat = _expand(indptr[pa], indptr[pa + 1])
                if len(rep) == 0:
                    continue
                s = col[flat]
                cs = _poly_mul_fold(cc[rep], val[flat], red, phi)
                je = j[rep]
                pbe = pb[rep]
                rep2, flat2 = _expand(indptr[pbe], indptr[pbe + 1])
                if len(rep2) == 0:
                    continue
                t = col[flat2]
                v = _poly_mul_fold(cs[rep2], val[flat2], red, phi)
                keys = je[rep2] * d2 + s[rep2] * d + t
                gk, gv = _group(keys, v)
                parts_k.append(gk)
                parts_v.append(gv)
            # subtract Delta(e_i e_j)
            idx = np.arange(indptr[i * d], indptr[i * d + d], dtype=np.int64)
            if len(idx):
                j = pair[idx] % d
                l = col[idx]
                rep, flat = _expand(cindptr[l], cindptr[l + 1])
                if len(rep):
                    keys = j[rep] * d2 + ca[flat] * d + cb[flat]
                    vals = -_poly_mul_fold(val[idx][rep], cval[flat], red, phi)
                    gk, gv = _group(keys, vals)
                    parts_k.append(gk)
                    parts_v.append(gv)
            bad = _first_nonzero_key(parts_k, parts_v)
            if bad is not None:
                return False, (i, bad // d2)
        return True, None


def _two(cuts):
    return cuts[:-1], cuts[1:]
