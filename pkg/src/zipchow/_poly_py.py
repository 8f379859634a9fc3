"""Pure-Python polynomial term kernels.

A polynomial lives here as a plain dict mapping exponent keys to
nonzero rational coefficients.  A key is a tuple of ints whose slot 0
is the exponent of the parameter p and whose remaining slots are the
variable exponents.  These functions are the only place term dicts are
combined; zipchow._speedups mirrors them in Cython and zipchow.kernels
picks whichever backend imports.

All functions return fresh dicts and never mutate their arguments.
Zero coefficients are never stored.
"""


def add_terms(a, b):
    if not b:
        return dict(a)
    if not a:
        return dict(b)
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def sub_terms(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = -c
        else:
            s = s - c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def neg_terms(a):
    return {k: -c for k, c in a.items()}


def scale_terms(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def add_scaled_terms(a, b, c):
    """a + c*b."""
    if not c:
        return dict(a)
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c * v
        else:
            s = s + c * v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def mul_terms(a, b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    items_b = list(b.items())
    for ka, ca in a.items():
        for kb, cb in items_b:
            k = tuple(x + y for x, y in zip(ka, kb))
            c = ca * cb
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def map_terms(terms, target, sign, pshift, nslots_out):
    """Apply the signed monomial substitution

        slot i  ->  sign[i] * p**pshift[i] * slot target[i]

    to every key.  Slot 0 is the p slot; target[0] must be 0 with
    sign[0] == 1 and pshift[0] == 0.  The map need not be injective on
    slots, so images may merge (with exact cancellation).
    """
    out = {}
    for k, c in terms.items():
        e = [0] * nslots_out
        neg = False
        for i, ki in enumerate(k):
            if ki:
                e[target[i]] += ki
                pe = pshift[i]
                if pe:
                    e[0] += pe * ki
                if sign[i] < 0 and ki & 1:
                    neg = not neg
        key = tuple(e)
        v = -c if neg else c
        s = out.get(key)
        if s is None:
            out[key] = v
        else:
            s = s + v
            if s:
                out[key] = s
            else:
                del out[key]
    return out
