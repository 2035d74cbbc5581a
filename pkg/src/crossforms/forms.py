"""Sparse exterior algebra over Euclidean R^n.

A form of degree k is a map from strictly increasing 1-based index tuples
(blades) to nonzero real coefficients.  Conventions, fixed once for the whole
package:

* blades are orthonormal, ``<e_I, e_J> = delta_IJ``;
* the orientation is ``e_1 ^ ... ^ e_n``, and the Hodge star satisfies
  ``a ^ hodge(a) = |a|^2 vol``;
* wedge signs are exact integers obtained by counting merge inversions, so
  integer-coefficient inputs never pick up floating-point sign noise;
* a 2-form ``beta`` and a skew endomorphism ``A`` correspond through
  ``<A(e_i), e_j> = beta(e_i, e_j)``.

Coefficients whose magnitude drops below ``ZERO_EPS`` after arithmetic are
removed, which keeps the sparse maps canonical when inputs come from
eigenvalue-based pipelines.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

Blade = tuple[int, ...]

MAX_DIM = 10
ZERO_EPS = 1e-13
SKEW_TOL = 1e-12


def _clean(terms: dict[Blade, float]) -> dict[Blade, float]:
    return {idx: c for idx, c in terms.items() if abs(c) > ZERO_EPS}


class ExteriorForm:
    """Immutable sparse k-form on R^n."""

    __slots__ = ("_dim", "_degree", "_terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[Blade, float] | None = None):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {dim}")
        if not 0 <= degree <= dim:
            raise ValueError(f"degree must be in 0..{dim}, got {degree}")
        stored: dict[Blade, float] = {}
        for idx, coeff in (terms or {}).items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != degree:
                raise ValueError(f"blade {idx} does not have degree {degree}")
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError(f"blade {idx} has indices outside 1..{dim}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"blade {idx} is not strictly increasing")
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise ValueError(f"coefficient of blade {idx} is not finite")
            if coeff != 0.0:
                stored[idx] = coeff
        self._dim = dim
        self._degree = degree
        self._terms = stored

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[Blade, float]:
        return MappingProxyType(self._terms)

    def coeff(self, indices: Iterable[int]) -> float:
        return self._terms.get(tuple(indices), 0.0)

    def is_zero(self) -> bool:
        return not self._terms

    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self._terms.values()))

    def embed(self, dim: int) -> "ExteriorForm":
        """The same form viewed inside a larger ambient space."""
        if dim < self._dim:
            raise ValueError(f"cannot embed a form on R^{self._dim} into R^{dim}")
        return ExteriorForm(dim, self._degree, self._terms)

    # -- ring structure -----------------------------------------------------

    def _check_compatible(self, other: "ExteriorForm") -> None:
        if self._dim != other._dim or self._degree != other._degree:
            raise ValueError(
                f"incompatible forms: ({self._dim}, deg {self._degree}) vs "
                f"({other._dim}, deg {other._degree})"
            )

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        self._check_compatible(other)
        acc = dict(self._terms)
        for idx, c in other._terms.items():
            acc[idx] = acc.get(idx, 0.0) + c
        return ExteriorForm(self._dim, self._degree, _clean(acc))

    def __sub__(self, other: "ExteriorForm") -> "ExteriorForm":
        return self + (-other)

    def __neg__(self) -> "ExteriorForm":
        return ExteriorForm(self._dim, self._degree, {i: -c for i, c in self._terms.items()})

    def __mul__(self, scalar: float) -> "ExteriorForm":
        s = float(scalar)
        return ExteriorForm(self._dim, self._degree, _clean({i: s * c for i, c in self._terms.items()}))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "ExteriorForm":
        return self * (1.0 / float(scalar))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        return (
            self._dim == other._dim
            and self._degree == other._degree
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._dim, self._degree, frozenset(self._terms.items())))

    def isclose(self, other: "ExteriorForm", tol: float = 1e-10) -> bool:
        if self._dim != other._dim or self._degree != other._degree:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coeff(k) - other.coeff(k)) <= tol for k in keys)

    def __repr__(self) -> str:
        if not self._terms:
            body = "0"
        else:
            parts = []
            for idx in sorted(self._terms):
                c = self._terms[idx]
                blade = "e" + "".join(str(i) for i in idx) if idx else "1"
                parts.append(f"{'+' if c >= 0 else '-'}{abs(c):g}*{blade}")
            body = " ".join(parts)
        return f"ExteriorForm(R^{self._dim}, deg {self._degree}: {body})"

    # -- JSON encoding ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "dim": self._dim,
            "degree": self._degree,
            "terms": [
                {"indices": list(idx), "coeff": self._terms[idx]}
                for idx in sorted(self._terms)
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ExteriorForm":
        terms: dict[Blade, float] = {}
        for entry in payload["terms"]:
            idx = tuple(int(i) for i in entry["indices"])
            if idx in terms:
                raise ValueError(f"duplicate blade {idx}")
            terms[idx] = float(entry["coeff"])
        return cls(int(payload["dim"]), int(payload["degree"]), terms)


def zero_form(dim: int, degree: int) -> ExteriorForm:
    return ExteriorForm(dim, degree)


def blade(dim: int, indices: Iterable[int], coeff: float = 1.0) -> ExteriorForm:
    idx = tuple(indices)
    return ExteriorForm(dim, len(idx), {idx: coeff})


def one_form(v: np.ndarray) -> ExteriorForm:
    v = np.asarray(v, dtype=float)
    return ExteriorForm(len(v), 1, _clean({(i + 1,): float(c) for i, c in enumerate(v)}))


def form_to_vector(a: ExteriorForm) -> np.ndarray:
    if a.degree != 1:
        raise ValueError(f"expected a 1-form, got degree {a.degree}")
    v = np.zeros(a.dim)
    for (i,), c in a.terms.items():
        v[i - 1] = c
    return v


def volume_form(dim: int) -> ExteriorForm:
    return blade(dim, range(1, dim + 1))


def _merge_sign(a: Blade, b: Blade) -> tuple[int, Blade]:
    """Sign and sorted union of two increasing tuples; sign 0 if they overlap."""
    i = j = 0
    sign = 1
    out: list[int] = []
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, ()
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    if a.dim != b.dim:
        raise ValueError(f"wedge of forms on R^{a.dim} and R^{b.dim}")
    degree = a.degree + b.degree
    if degree > a.dim:
        raise ValueError(f"wedge degree {degree} exceeds dimension {a.dim}")
    acc: dict[Blade, float] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            sign, merged = _merge_sign(ia, ib)
            if sign:
                acc[merged] = acc.get(merged, 0.0) + sign * ca * cb
    return ExteriorForm(a.dim, degree, _clean(acc))


def wedge_power(a: ExteriorForm, power: int) -> ExteriorForm:
    if power < 1:
        raise ValueError("wedge power must be >= 1")
    out = a
    for _ in range(power - 1):
        out = wedge(out, a)
    return out


def interior(v: np.ndarray, a: ExteriorForm) -> ExteriorForm:
    """Contraction of the first slot of ``a`` with the vector ``v``."""
    v = np.asarray(v, dtype=float)
    if len(v) != a.dim:
        raise ValueError(f"vector of length {len(v)} against a form on R^{a.dim}")
    if a.degree < 1:
        raise ValueError("interior product needs a form of degree >= 1")
    acc: dict[Blade, float] = {}
    for idx, c in a.terms.items():
        for pos, i in enumerate(idx):
            comp = v[i - 1]
            if comp == 0.0:
                continue
            key = idx[:pos] + idx[pos + 1:]
            term = comp * c if pos % 2 == 0 else -comp * c
            acc[key] = acc.get(key, 0.0) + term
    return ExteriorForm(a.dim, a.degree - 1, _clean(acc))


def hodge(a: ExteriorForm) -> ExteriorForm:
    n = a.dim
    acc: dict[Blade, float] = {}
    for idx, c in a.terms.items():
        inside = set(idx)
        comp = tuple(i for i in range(1, n + 1) if i not in inside)
        # parity of the concatenation (idx, comp) as a permutation of 1..n
        inversions = sum(i - 1 - pos for pos, i in enumerate(idx))
        acc[comp] = c if inversions % 2 == 0 else -c
    return ExteriorForm(n, n - a.degree, acc)


def inner(a: ExteriorForm, b: ExteriorForm) -> float:
    if a.dim != b.dim or a.degree != b.degree:
        raise ValueError(
            f"inner product of ({a.dim}, deg {a.degree}) against ({b.dim}, deg {b.degree})"
        )
    small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    return sum(c * large[idx] for idx, c in small.items() if idx in large)


# -- 2-forms vs skew endomorphisms -------------------------------------------


def two_form_to_endo(beta: ExteriorForm) -> np.ndarray:
    if beta.degree != 2:
        raise ValueError(f"expected a 2-form, got degree {beta.degree}")
    n = beta.dim
    A = np.zeros((n, n))
    for (i, j), c in beta.terms.items():
        A[j - 1, i - 1] = c
        A[i - 1, j - 1] = -c
    return A


def check_skew(A: np.ndarray, tol: float = SKEW_TOL) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    breach = float(np.abs(A + A.T).max(initial=0.0))
    if breach > tol:
        raise ValueError(f"matrix is not skew-symmetric: max |A + A^T| = {breach:.3e} > {tol:g}")
    return A


def endo_to_two_form(A: np.ndarray, tol: float = SKEW_TOL) -> ExteriorForm:
    A = check_skew(A, tol)
    n = A.shape[0]
    terms: dict[Blade, float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = 0.5 * (A[j, i] - A[i, j])
            if abs(c) > ZERO_EPS:
                terms[(i + 1, j + 1)] = c
    return ExteriorForm(n, 2, terms)


def endo_action(A: np.ndarray, eta: ExteriorForm) -> ExteriorForm:
    """Derivation action of a skew endomorphism, sum_i A(e_i) ^ (e_i _| eta)."""
    A = np.asarray(A, dtype=float)
    n = eta.dim
    if A.shape != (n, n):
        raise ValueError(f"endomorphism of shape {A.shape} against a form on R^{n}")
    if eta.degree == 0:
        return zero_form(n, 0)
    out = zero_form(n, eta.degree)
    basis = np.eye(n)
    for i in range(n):
        col = A[:, i]
        if not col.any():
            continue
        out = out + wedge(one_form(col), interior(basis[i], eta))
    return out


# -- dense conversion (used for pullbacks) ------------------------------------


def to_dense(a: ExteriorForm) -> np.ndarray:
    if a.degree == 0:
        return np.array(a.coeff(()))
    T = np.zeros((a.dim,) * a.degree)
    for idx, c in a.terms.items():
        base = tuple(i - 1 for i in idx)
        for perm in permutations(range(a.degree)):
            sign = _permutation_sign(perm)
            T[tuple(base[p] for p in perm)] = sign * c
    return T


def from_dense(dim: int, degree: int, T: np.ndarray) -> ExteriorForm:
    if degree == 0:
        return ExteriorForm(dim, 0, _clean({(): float(T)}))
    terms: dict[Blade, float] = {}
    for combo in combinations(range(dim), degree):
        terms[tuple(i + 1 for i in combo)] = float(T[combo])
    return ExteriorForm(dim, degree, _clean(terms))


def _permutation_sign(perm: tuple[int, ...]) -> int:
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


def pullback(a: ExteriorForm, Q: np.ndarray) -> ExteriorForm:
    """Pullback along the linear map Q, (Q*a)(X1..Xk) = a(Q X1, ..., Q Xk)."""
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (a.dim, a.dim):
        raise ValueError(f"map of shape {Q.shape} against a form on R^{a.dim}")
    if a.degree == 0:
        return a
    T = to_dense(a)
    for _ in range(a.degree):
        T = np.tensordot(T, Q, axes=(0, 0))
    return from_dense(a.dim, a.degree, T)
