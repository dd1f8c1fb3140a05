"""Pure-Python integer polynomial kernels.

Polynomials are plain lists of Python ints, index = power of the variable.
These are the reference implementations; ``_kernels.pyx`` provides the same
functions on top of GMP and must agree with them bit for bit.
"""

from __future__ import annotations


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of ``num / den`` for a monic ``den``.

    The remainder is returned padded to ``len(den) - 1`` entries.
    """
    dl = len(den)
    if dl == 0 or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num) + [0] * max(0, dl - 1 - len(num))
    ql = len(num) - dl + 1
    if ql <= 0:
        return [], rem[: dl - 1]
    quo = [0] * ql
    for i in range(ql - 1, -1, -1):
        c = rem[i + dl - 1]
        quo[i] = c
        if c:
            for j in range(dl - 1):
                rem[i + j] -= c * den[j]
    return quo, rem[: dl - 1]


def eval_at_nonpositive(poly: list[int], count: int) -> list[int]:
    """Values ``poly(0), poly(-1), ..., poly(-(count - 1))``."""
    out = []
    for m in range(count):
        acc = 0
        for c in reversed(poly):
            acc = acc * -m + c
        out.append(acc)
    return out


def pole_quotient_sum(weights: list[int]) -> list[int]:
    """Sum of ``w_k * q_k(s)`` where ``q_k`` is the polynomial part of
    ``(s)_k / (s + k)`` and ``(s)_k`` is the rising factorial.

    The result has ``len(weights) - 1`` coefficients (degree K - 1).
    """
    top = len(weights) - 1
    if top <= 0:
        return []
    acc = [0] * top
    rising = [1]
    for k in range(1, top + 1):
        # (s)_k = (s)_{k-1} * (s + k - 1)
        nxt = [0] * (k + 1)
        for i, c in enumerate(rising):
            nxt[i] += (k - 1) * c
            nxt[i + 1] += c
        rising = nxt
        w = weights[k]
        if not w:
            continue
        # synthetic division by (s + k); the remainder is dropped
        q = 1
        acc[k - 1] += w
        for i in range(k - 1, 0, -1):
            q = rising[i] - k * q
            acc[i - 1] += w * q
    return acc


def monomial_to_rising(coeffs: list[int]) -> list[int]:
    """Rewrite ``sum a_j s^j`` as ``sum c_l (s)_l``.

    Streams the signed Stirling numbers of the second kind row by row:
    ``s * (s)_l = (s)_{l+1} - l (s)_l``.
    """
    m = len(coeffs)
    out = [0] * m
    row = [0] * (m + 1)
    row[0] = 1
    for j, a in enumerate(coeffs):
        if a:
            for l in range(j + 1):
                if row[l]:
                    out[l] += a * row[l]
        for l in range(j + 1, 0, -1):
            row[l] = row[l - 1] - l * row[l]
        row[0] = 0
    return out
