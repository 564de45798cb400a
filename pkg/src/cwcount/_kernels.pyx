# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled table kernels; same contracts as ``_kernels_py``."""


def convolve(dict t1, dict t2):
    cdef dict out = {}
    cdef tuple k1, k2, key
    cdef object v1, v2, old
    for k1, v1 in t1.items():
        for k2, v2 in t2.items():
            key = tuple(sorted(k1 + k2))
            old = out.get(key)
            out[key] = v1 * v2 if old is None else old + v1 * v2
    return out


def remap(dict table, dict code_map):
    cdef dict out = {}
    cdef tuple key, nk
    cdef list tmp
    cdef object v, c, old
    for key, v in table.items():
        tmp = []
        for c in key:
            tmp.append(code_map.get(c, c))
        tmp.sort()
        nk = tuple(tmp)
        old = out.get(nk)
        out[nk] = v if old is None else old + v
    return out


def apply_rows(dict table, active, row_of):
    cdef dict out = {}
    cdef dict row
    cdef tuple key, nk, inert_t, produced
    cdef list act, inert, tmp
    cdef object v, c, coef, old
    for key, v in table.items():
        act = []
        inert = []
        for c in key:
            if c in active:
                act.append(c)
            else:
                inert.append(c)
        if not act:
            old = out.get(key)
            out[key] = v if old is None else old + v
            continue
        inert_t = tuple(inert)
        row = row_of(tuple(act))
        for produced, coef in row.items():
            tmp = list(inert_t + produced)
            tmp.sort()
            nk = tuple(tmp)
            old = out.get(nk)
            out[nk] = v * coef if old is None else old + v * coef
    return out


def filter_keys(dict table, keep):
    cdef dict out = {}
    cdef tuple key
    for key, v in table.items():
        if keep(key):
            out[key] = v
    return out
