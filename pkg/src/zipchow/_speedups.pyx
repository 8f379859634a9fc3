# cython: language_level=3
"""Cython mirror of zipchow._poly_py.

Same functions, same dict-of-tuples contract.  Coefficients stay
arbitrary Python objects (rationals), so the win here is the tight
key-combination loops, not coefficient arithmetic.
"""


def add_terms(dict a, dict b):
    if not b:
        return dict(a)
    if not a:
        return dict(b)
    cdef dict out = dict(a)
    cdef object k, c, s
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


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, c, s
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


def neg_terms(dict a):
    cdef dict out = {}
    cdef object k, c
    for k, c in a.items():
        out[k] = -c
    return out


def scale_terms(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    cdef object k, v
    for k, v in a.items():
        out[k] = c * v
    return out


def add_scaled_terms(dict a, dict b, c):
    if not c:
        return dict(a)
    cdef dict out = dict(a)
    cdef object k, v, s
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


def mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef list items_b = list(b.items())
    cdef tuple ka, kb, k
    cdef object ca, cb, c, s
    cdef Py_ssize_t n, i
    for ka, ca in a.items():
        n = len(ka)
        for kb, cb in items_b:
            k = tuple([<long> ka[i] + <long> kb[i] for i in range(n)])
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


def map_terms(dict terms, tuple target, tuple sign, tuple pshift, Py_ssize_t nslots_out):
    cdef dict out = {}
    cdef tuple k, key
    cdef object c, v, s
    cdef list e
    cdef Py_ssize_t i
    cdef long ki, pe
    cdef bint neg
    for k, c in terms.items():
        e = [0] * nslots_out
        neg = False
        for i in range(len(k)):
            ki = <long> k[i]
            if ki:
                e[<Py_ssize_t> target[i]] = <long> e[<Py_ssize_t> target[i]] + ki
                pe = <long> pshift[i]
                if pe:
                    e[0] = <long> e[0] + pe * ki
                if <long> sign[i] < 0 and ki & 1:
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
