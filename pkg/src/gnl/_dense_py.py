"""Pure-Python dense kernels (fallback when the compiled core is unavailable).

Coefficient lists are indexed by degree and hold Python ints.
"""

from operator import sub


def trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def mul_one_minus_power(coeffs, k, m):
    """Return coeffs * (1 - x^k)^m using m in-place shift-subtract passes."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    c = trim(coeffs)
    if not c or m == 0:
        return c
    c.extend([0] * (k * m))
    top = len(c) - k * m  # one past the current degree
    for _ in range(m):
        top += k
        # new[i] = old[i] - old[i-k] for k <= i < top
        c[k:top] = map(sub, c[k:top], c[: top - k])
    return trim(c)


def mul_dense(a, b):
    a = trim(a)
    b = trim(b)
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    n = len(a)
    for j, bj in enumerate(b):
        if bj == 0:
            continue
        seg = out[j : j + n]
        if bj == 1:
            out[j : j + n] = [s + x for s, x in zip(seg, a)]
        elif bj == -1:
            out[j : j + n] = [s - x for s, x in zip(seg, a)]
        else:
            out[j : j + n] = [s + bj * x for s, x in zip(seg, a)]
    return trim(out)


def l1_norm(coeffs):
    return sum(map(abs, coeffs))
