"""Multiplicative and additive compound matrices.

Rows and columns of a k-th compound are indexed by the strictly increasing
k-tuples of {1..n} in lexicographic order.  Tuples keep 1-based values (the
convention used throughout reports); ranks are 0-based.

The additive compound A^[k] has diagonal entries a_{i1,i1} + ... + a_{ik,ik},
and, where the row tuple ((i)) and column tuple ((j)) share all but one
index, the entry (-1)^(r+s) * a_{i_s, j_r} with s the 1-based position of the
leftover index of ((i)) and r that of ((j)).  This orientation reproduces the
standard closed-form templates for n = 3, 4, 5 and satisfies
A^[k] = d/dh C_k(I + hA) at h = 0.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from .linalg import as_square, determinant


def lex_tuples(n, k):
    """All C(n,k) strictly increasing k-tuples of 1..n, lexicographically sorted."""
    if not 1 <= k <= n:
        raise ValueError(f"order k must satisfy 1 <= k <= n, got k={k}, n={n}")
    return list(itertools.combinations(range(1, n + 1), k))


def tuple_rank(n, indices):
    """0-based lexicographic rank of a strictly increasing tuple of 1..n."""
    t = tuple(indices)
    k = len(t)
    if not 1 <= k <= n or any(not 1 <= v <= n for v in t) or list(t) != sorted(set(t)):
        raise ValueError(f"not a strictly increasing tuple of 1..{n}: {indices}")
    rank = 0
    prev = 0
    for pos, v in enumerate(t):
        for w in range(prev + 1, v):
            rank += comb(n - w, k - pos - 1)
        prev = v
    return rank


def tuple_unrank(n, k, rank):
    """Inverse of :func:`tuple_rank`."""
    if not 0 <= rank < comb(n, k):
        raise ValueError(f"rank {rank} out of range for C({n},{k})")
    out = []
    prev = 0
    r = rank
    for pos in range(k):
        v = prev + 1
        while r >= comb(n - v, k - pos - 1):
            r -= comb(n - v, k - pos - 1)
            v += 1
        out.append(v)
        prev = v
    return tuple(out)


def _minor(a, rows, cols):
    sub = a[np.ix_(rows, cols)]
    m = sub.shape[0]
    if m == 1:
        return sub[0, 0]
    if m == 2:
        return sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0]
    if m == 3:
        return (
            sub[0, 0] * (sub[1, 1] * sub[2, 2] - sub[1, 2] * sub[2, 1])
            - sub[0, 1] * (sub[1, 0] * sub[2, 2] - sub[1, 2] * sub[2, 0])
            + sub[0, 2] * (sub[1, 0] * sub[2, 1] - sub[1, 1] * sub[2, 0])
        )
    return determinant(sub)


def mult_compound(a, k):
    """C_k(A): the C(n,k) x C(n,k) matrix of all k x k minors det A(alpha|beta)."""
    m = as_square(a)
    n = m.shape[0]
    tups = lex_tuples(n, k)
    idx = [[v - 1 for v in t] for t in tups]
    size = len(tups)
    out = np.empty((size, size))
    for ri, rows in enumerate(idx):
        for ci, cols in enumerate(idx):
            out[ri, ci] = _minor(m, rows, cols)
    return out


def add_compound(a, k):
    """A^[k]: the k-th additive compound."""
    m = as_square(a)
    n = m.shape[0]
    tups = lex_tuples(n, k)
    size = len(tups)
    out = np.zeros((size, size))
    sets = [frozenset(t) for t in tups]
    for ri, ti in enumerate(tups):
        for ci, tj in enumerate(tups):
            if ri == ci:
                v = 0.0
                for t in ti:
                    v += m[t - 1, t - 1]
                out[ri, ci] = v
                continue
            only_i = sets[ri] - sets[ci]
            if len(only_i) != 1:
                continue
            i_s = next(iter(only_i))
            j_r = next(iter(sets[ci] - sets[ri]))
            s = ti.index(i_s) + 1
            r = tj.index(j_r) + 1
            v = m[i_s - 1, j_r - 1]
            out[ri, ci] = -v if (r + s) % 2 else v
    return out


def add_compound2_closed(a):
    """Second additive compound from the hard-coded closed-form template.

    Supported for n in {3, 4, 5}; equal to ``add_compound(a, 2)`` bit for bit.
    """
    m = as_square(a)
    n = m.shape[0]
    if n == 3:
        return _closed3(m)
    if n == 4:
        return _closed4(m)
    if n == 5:
        return _closed5(m)
    raise ValueError(f"closed-form template only for n in {{3, 4, 5}}, got n={n}")


def _closed3(a):
    return np.array([
        [a[0, 0] + a[1, 1], a[1, 2], -a[0, 2]],
        [a[2, 1], a[0, 0] + a[2, 2], a[0, 1]],
        [-a[2, 0], a[1, 0], a[1, 1] + a[2, 2]],
    ])


def _closed4(a):
    z = 0.0
    return np.array([
        [a[0, 0] + a[1, 1], a[1, 2], a[1, 3], -a[0, 2], -a[0, 3], z],
        [a[2, 1], a[0, 0] + a[2, 2], a[2, 3], a[0, 1], z, -a[0, 3]],
        [a[3, 1], a[3, 2], a[0, 0] + a[3, 3], z, a[0, 1], a[0, 2]],
        [-a[2, 0], a[1, 0], z, a[1, 1] + a[2, 2], a[2, 3], -a[1, 3]],
        [-a[3, 0], z, a[1, 0], a[3, 2], a[1, 1] + a[3, 3], a[1, 2]],
        [z, -a[3, 0], a[2, 0], -a[3, 1], a[2, 1], a[2, 2] + a[3, 3]],
    ])


def _closed5(a):
    z = 0.0
    return np.array([
        [a[0, 0] + a[1, 1], a[1, 2], a[1, 3], a[1, 4], -a[0, 2], -a[0, 3], -a[0, 4], z, z, z],
        [a[2, 1], a[0, 0] + a[2, 2], a[2, 3], a[2, 4], a[0, 1], z, z, -a[0, 3], -a[0, 4], z],
        [a[3, 1], a[3, 2], a[0, 0] + a[3, 3], a[3, 4], z, a[0, 1], z, a[0, 2], z, -a[0, 4]],
        [a[4, 1], a[4, 2], a[4, 3], a[0, 0] + a[4, 4], z, z, a[0, 1], z, a[0, 2], a[0, 3]],
        [-a[2, 0], a[1, 0], z, z, a[1, 1] + a[2, 2], a[2, 3], a[2, 4], -a[1, 3], -a[1, 4], z],
        [-a[3, 0], z, a[1, 0], z, a[3, 2], a[1, 1] + a[3, 3], a[3, 4], a[1, 2], z, -a[1, 4]],
        [-a[4, 0], z, z, a[1, 0], a[4, 2], a[4, 3], a[1, 1] + a[4, 4], z, a[1, 2], a[1, 3]],
        [z, -a[3, 0], a[2, 0], z, -a[3, 1], a[2, 1], z, a[2, 2] + a[3, 3], a[3, 4], -a[2, 4]],
        [z, -a[4, 0], z, a[2, 0], -a[4, 1], z, a[2, 1], a[4, 3], a[2, 2] + a[4, 4], a[2, 3]],
        [z, z, -a[4, 0], a[3, 0], z, -a[4, 1], a[3, 1], -a[4, 2], a[3, 2], a[3, 3] + a[4, 4]],
    ])
