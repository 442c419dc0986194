"""Pure-Python matrix kernels, the fallback for the compiled extension.

Matrices are flat row-major lists of `fractions.Fraction`. The product
kernel accumulates raw numerator/denominator integer pairs and builds one
normalized Fraction per output entry, which avoids the per-operation gcd
that Fraction arithmetic would pay inside the inner loop. The compiled
kernels in ``_ckernels.pyx`` implement the same algorithms and must return
bit-identical results.
"""

from fractions import Fraction

NAME = "pure"


def mul(a, b, m, n, p):
    """Product of an m*n and an n*p flat Fraction matrix."""
    out = [None] * (m * p)
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
                    den *= xd
            out[i * p + j] = Fraction(num, den)
    return out


def inv(a, n):
    """Gauss-Jordan inverse of a flat n*n Fraction matrix, or None if singular.

    Partial pivoting on the first nonzero pivot; all arithmetic exact.
    """
    work = list(a)
    out = [Fraction(i == j) for i in range(n) for j in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r * n + col]:
                piv = r
                break
        if piv is None:
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
