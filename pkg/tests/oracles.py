"""Slow, obviously-correct reference computations used to freeze expected values.

Nothing here imports gnl: each routine is a direct transcription of a
definition so the package is checked against something it does not share
code with.
"""

from fractions import Fraction
from itertools import combinations


def conv(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def one_minus_power(k):
    c = [0] * (k + 1)
    c[0], c[k] = 1, -1
    return c


def naive_product(factors):
    """prod (1 - x^k)^m by repeated schoolbook convolution."""
    acc = [1]
    for k, m in factors:
        for _ in range(m):
            acc = conv(acc, one_minus_power(k))
    return acc


def naive_length(factors):
    return sum(abs(c) for c in naive_product(factors))


def multi_product(factors):
    """Sparse multivariate prod (1 - x^alpha)^m as {exponent: coeff}."""
    acc = {tuple(0 for _ in factors[0][0]): 1}
    for alpha, m in factors:
        for _ in range(m):
            nxt = {}
            for e, c in acc.items():
                nxt[e] = nxt.get(e, 0) + c
                f = tuple(x + y for x, y in zip(e, alpha))
                nxt[f] = nxt.get(f, 0) - c
            acc = {e: c for e, c in nxt.items() if c}
    return acc


def gauss_rank(rows):
    """Rank over Q by textbook elimination on a dense Fraction copy."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def bracket_tensor(labels, brackets):
    """Dense c[i][j][k] from {(a, b): {c: coeff}} with antisymmetry filled in."""
    n = len(labels)
    pos = {lab: i for i, lab in enumerate(labels)}
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (a, b), out in brackets.items():
        for k, v in out.items():
            c[pos[a]][pos[b]][pos[k]] += Fraction(v)
            c[pos[b]][pos[a]][pos[k]] -= Fraction(v)
    return c


def derivation_dim(c):
    """dim Der from the dense Leibniz system D[ei,ej] = [Dei,ej] + [ei,Dej]."""
    n = len(c)
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                # unknown D[r][s] at r*n+s means coefficient of e_r in D(e_s)
                for l in range(n):
                    row[k * n + l] += c[i][j][l]
                    row[l * n + i] -= c[l][j][k]
                    row[l * n + j] -= c[i][l][k]
                if any(row):
                    rows.append(row)
    return n * n - gauss_rank(rows)


def ce_betti(c):
    """Betti numbers from dense differentials built form-by-form.

    d(alpha)(v_0..v_k) = sum_{i<j} (-1)^(i+j) alpha([v_i, v_j], v_0..^i..^j..v_k)
    evaluated on basis vectors.
    """
    n = len(c)
    subsets = [list(combinations(range(n), k)) for k in range(n + 1)]

    def dmat(k):
        src = {s: i for i, s in enumerate(subsets[k])}
        mat = []
        for T in subsets[k + 1]:
            row = [Fraction(0)] * len(subsets[k])
            for a in range(len(T)):
                for b in range(a + 1, len(T)):
                    rest = [T[t] for t in range(len(T)) if t not in (a, b)]
                    for l in range(n):
                        coef = c[T[a]][T[b]][l]
                        if not coef or l in rest:
                            continue
                        seq = [l] + rest
                        # sign of sorting seq
                        inv = sum(1 for x in rest if x < l)
                        key = tuple(sorted(seq))
                        row[src[key]] += (-1) ** (a + b) * (-1) ** inv * coef
            mat.append(row)
        return mat

    ranks = [gauss_rank(dmat(k)) if k < n else 0 for k in range(n + 1)]
    from math import comb
    return [comb(n, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


def heisenberg_betti(m):
    """Closed form b_k(h_m) = C(2m,k) - C(2m,k-2) for k <= m, mirrored above."""
    from math import comb

    low = [comb(2 * m, k) - (comb(2 * m, k - 2) if k >= 2 else 0) for k in range(m + 1)]
    return low + low[::-1]
