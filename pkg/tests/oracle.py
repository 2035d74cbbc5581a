"""Dense brute-force exterior algebra, independent of the package under test.

Forms of degree k on R^n are stored as fully antisymmetric ndarrays of shape
(n,)*k, with the convention T[i1,...,ik] = value of the form on the basis
vectors (e_{i1+1}, ..., e_{ik+1}).  Everything here is computed from first
principles (permutation sums, Levi-Civita contraction) so it can serve as an
oracle for the sparse implementation.
"""

import itertools
import math
from functools import lru_cache

import numpy as np


def perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def dense_from_terms(n, degree, terms):
    T = np.zeros((n,) * degree)
    for indices, coeff in terms.items():
        base = tuple(i - 1 for i in indices)
        for perm in itertools.permutations(range(degree)):
            T[tuple(base[p] for p in perm)] = perm_sign(perm) * coeff
    return T


def dense_to_terms(T, degree, tol=1e-12):
    n = T.shape[0] if degree else 0
    out = {}
    if degree == 0:
        value = float(T)
        return {(): value} if abs(value) > tol else {}
    for combo in itertools.combinations(range(n), degree):
        c = float(T[combo])
        if abs(c) > tol:
            out[tuple(i + 1 for i in combo)] = c
    return out


def antisymmetrize(T):
    k = T.ndim
    out = np.zeros_like(T)
    for perm in itertools.permutations(range(k)):
        out += perm_sign(perm) * np.transpose(T, perm)
    return out / math.factorial(k)


def dense_wedge(A, B):
    k, l = A.ndim, B.ndim
    raw = np.multiply.outer(A, B)
    factor = math.factorial(k + l) / (math.factorial(k) * math.factorial(l))
    return antisymmetrize(raw) * factor


def dense_interior(v, A):
    return np.tensordot(np.asarray(v, dtype=float), A, axes=(0, 0))


@lru_cache(maxsize=None)
def levi_civita(n):
    eps = np.zeros((n,) * n, dtype=np.int8)
    for perm in itertools.permutations(range(n)):
        eps[perm] = perm_sign(perm)
    return eps


def dense_hodge(A, n):
    k = A.ndim
    if k == 0:
        return float(A) * levi_civita(n).astype(float)
    eps = levi_civita(n).astype(float)
    contracted = np.tensordot(A, eps, axes=(tuple(range(k)), tuple(range(k))))
    return contracted / math.factorial(k)


def dense_inner(A, B):
    k = A.ndim
    if k == 0:
        return float(A) * float(B)
    return float(np.tensordot(A, B, axes=k)) / math.factorial(k)
