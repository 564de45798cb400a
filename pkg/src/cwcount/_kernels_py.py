"""Pure-Python versions of the table kernels (see ``_kernels.pyx``)."""


def convolve(t1, t2):
    """Sum of ``v1 * v2`` over all key pairs, keyed by the merged multiset."""
    out = {}
    get = out.get
    for k1, v1 in t1.items():
        for k2, v2 in t2.items():
            key = tuple(sorted(k1 + k2))
            out[key] = get(key, 0) + v1 * v2
    return out


def remap(table, code_map):
    """Rewrite every type through ``code_map``, summing collisions."""
    out = {}
    get = out.get
    for key, v in table.items():
        nk = tuple(sorted([code_map.get(c, c) for c in key]))
        out[nk] = get(nk, 0) + v
    return out


def apply_rows(table, active, row_of):
    """``out[inert + produced] += v * coef`` for every key of ``table``,
    where ``row_of(active_part)`` gives ``{produced: coef}``."""
    out = {}
    get = out.get
    for key, v in table.items():
        act = []
        inert = []
        for c in key:
            if c in active:
                act.append(c)
            else:
                inert.append(c)
        if not act:
            out[key] = get(key, 0) + v
            continue
        inert_t = tuple(inert)
        for produced, coef in row_of(tuple(act)).items():
            nk = tuple(sorted(inert_t + produced))
            out[nk] = get(nk, 0) + v * coef
    return out


def filter_keys(table, keep):
    return {k: v for k, v in table.items() if keep(k)}
