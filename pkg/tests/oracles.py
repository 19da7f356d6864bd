"""Slow reference implementations that share no code with the package."""

from __future__ import annotations

import numpy as np


def fmul(a: int, b: int, modulus: int) -> int:
    """Shift-and-add product reduced bit by bit."""
    m = modulus.bit_length() - 1
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= modulus
    return acc


def fpow(a: int, e: int, modulus: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = fmul(out, a, modulus)
        a = fmul(a, a, modulus)
        e >>= 1
    return out


def finv(a: int, modulus: int) -> int:
    m = modulus.bit_length() - 1
    return fpow(a, (1 << m) - 2, modulus)


def frob(a: int, i: int, modulus: int) -> int:
    for _ in range(i):
        a = fmul(a, a, modulus)
    return a


def bits_matrix(values, width: int) -> np.ndarray:
    return np.array([[(v >> j) & 1 for j in range(width)] for v in values], dtype=np.uint8).reshape(
        len(values), width
    )


def gf2_rank(values, width: int) -> int:
    """Rank of the 0/1 matrix whose rows are the bits of ``values``."""
    a = bits_matrix(list(values), width)
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r, c]), None)
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def rank_weight(v, m: int) -> int:
    return gf2_rank(v, m)


def lin_compose(f, g, modulus: int) -> list[int]:
    """Coefficients of ``f(g(x))``: ``h_k = sum_{i+j=k} f_i g_j^(2^i)``."""
    if not f or not g:
        return []
    h = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        for j, gj in enumerate(g):
            h[i + j] ^= fmul(fi, frob(gj, i, modulus), modulus)
    while h and not h[-1]:
        h.pop()
    return h


def lin_eval(f, a: int, modulus: int) -> int:
    acc = 0
    for c in f:
        acc ^= fmul(c, a, modulus)
        a = fmul(a, a, modulus)
    return acc


def lin_reduce(f, m: int) -> list[int]:
    out = [0] * m
    for i, c in enumerate(f):
        out[i % m] ^= c
    while out and not out[-1]:
        out.pop()
    return out


def fmat_vec(v, mat, modulus: int) -> list[int]:
    """Row vector times matrix over the field."""
    out = [0] * len(mat[0])
    for x, row in zip(v, mat):
        for j, y in enumerate(row):
            out[j] ^= fmul(x, y, modulus)
    return out
