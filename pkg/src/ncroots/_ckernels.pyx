# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled matrix kernels.

Same algorithms as ``_pykernels`` (flat row-major Fraction lists, one
normalized Fraction per output entry); C-level loop counters and list
access remove the interpreter overhead of the inner loops. Results are
bit-identical to the pure backend.
"""

from fractions import Fraction


NAME = "compiled"


def mul(list a, list b, Py_ssize_t m, Py_ssize_t n, Py_ssize_t p):
    """Product of an m*n and an n*p flat Fraction matrix."""
    cdef Py_ssize_t i, j, k, arow
    cdef list out = [None] * (m * p)
    for i in range(m):
        arow = i * n
        for j in range(p):
            num = 0
            den = 1
            for k in range(n):
                x = a[arow + k]
                y = b[k * p + j]
                xn = x.numerator * y.numerator
                if xn:
                    xd = x.denominator * y.denominator
                    num = num * xd + xn * den
                    den = den * xd
            out[i * p + j] = Fraction(num, den)
    return out


def inv(list a, Py_ssize_t n):
    """Gauss-Jordan inverse of a flat n*n Fraction matrix, or None if singular."""
    cdef Py_ssize_t col, r, j, piv
    cdef bint found
    cdef list work = list(a)
    cdef list out = [Fraction(i == j) for i in range(n) for j in range(n)]
    for col in range(n):
        found = False
        piv = col
        for r in range(col, n):
            if work[r * n + col]:
                piv = r
                found = True
                break
        if not found:
            return None
        if piv != col:
            for j in range(n):
                work[piv * n + j], work[col * n + j] = work[col * n + j], work[piv * n + j]
                out[piv * n + j], out[col * n + j] = out[col * n + j], out[piv * n + j]
        p = work[col * n + col]
        if p != 1:
            pn = p.numerator
            pd = p.denominator
            for j in range(n):
                x = work[col * n + j]
                work[col * n + j] = Fraction(x.numerator * pd, x.denominator * pn)
                x = out[col * n + j]
                out[col * n + j] = Fraction(x.numerator * pd, x.denominator * pn)
        for r in range(n):
            if r == col:
                continue
            f = work[r * n + col]
            if not f:
                continue
            fn = f.numerator
            fd = f.denominator
            for j in range(n):
                x = work[r * n + j]
                y = work[col * n + j]
                work[r * n + j] = Fraction(
                    x.numerator * fd * y.denominator - fn * y.numerator * x.denominator,
                    x.denominator * fd * y.denominator,
                )
                x = out[r * n + j]
                y = out[col * n + j]
                out[r * n + j] = Fraction(
                    x.numerator * fd * y.denominator - fn * y.numerator * x.denominator,
                    x.denominator * fd * y.denominator,
                )
    return out
