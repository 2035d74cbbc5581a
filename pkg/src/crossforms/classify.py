"""Decision procedures and orbit classification for 3-forms on R^n.

A 3-form is a *cross product* when ``|tau_X Y|^2 = |X ^ Y|^2`` for all X, Y.
It has a *constant contraction orbit* (here: generalized cross product) when
the contractions ``tau_X`` at all unit X lie in a single orthogonal conjugacy
class, equivalently when every trace power ``tr(tau_X^{2k})`` is a constant
multiple of ``|X|^{2k}``.  Since these are polynomial identities of bounded
degree, they can be decided exactly (up to floating point) by polarization
over basis tuples; that is the DETERMINISTIC mode.  SAMPLED mode compares
eigenvalue signatures at seeded random unit vectors instead, which is a Monte
Carlo check: it can only ever certify the sampled directions.

The classifier sorts nonzero 3-forms into: the volume class on R^3, the G2
class on R^7 (unit-scale cross products), the SU(3) class on R^6, or no
constant orbit at all.  A passing orbit check in any other dimension is
reported as an anomaly: no such form exists, so the numerics contradicted a
theorem and the contradiction is surfaced rather than swallowed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .forms import ExteriorForm, blade, pullback
from .spectral import (
    AmbiguousClustering,
    OrbitSignature,
    basis_contractions,
    contraction_endo,
    orbit_signature,
)

VCP_TOL = 1e-8
GVCP_TOL = 1e-8
ORTHOGONAL_TOL = 1e-10
DEFAULT_SAMPLES = 256
#: largest dimension for which the polarization check is run by default
DETERMINISTIC_MAX_DIM = 8


class Verdict(str, Enum):
    ZERO = "ZERO"
    VOL3 = "VOL3"
    G2 = "G2"
    SU3 = "SU3"
    NOT_GVCP = "NOT_GVCP"
    ANOMALY = "ANOMALY"


class Mode(str, Enum):
    DETERMINISTIC = "DETERMINISTIC"
    SAMPLED = "SAMPLED"


@dataclass(frozen=True)
class VcpCheck:
    """Outcome of the cross-product identity check, with the max polarization
    residual as a certificate."""

    ok: bool
    residual: float

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class GvcpCheck:
    """Outcome of the constant-orbit check.

    ``signature`` is the common orbit signature when the check passes, else
    None.  On failure ``witness`` holds two unit vectors whose contractions
    have different signatures (when one was found).
    """

    signature: OrbitSignature | None
    witness: tuple[np.ndarray, np.ndarray] | None
    residual: float
    mode: Mode
    notes: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.signature is not None


@dataclass
class ClassificationReport:
    verdict: Verdict
    scale: float | None = None
    signature: OrbitSignature | None = None
    witness: tuple[np.ndarray, np.ndarray] | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "diagnostics": list(self.diagnostics)}
        out["scale"] = self.scale
        out["signature"] = self.signature.to_json() if self.signature is not None else None
        if self.witness is not None:
            out["witness"] = [list(map(float, w)) for w in self.witness]
        return out


# -- canonical constructions ---------------------------------------------------


def _cross_form_r7() -> ExteriorForm:
    return ExteriorForm(
        7,
        3,
        {
            (1, 2, 7): 1.0,
            (3, 4, 7): 1.0,
            (5, 6, 7): 1.0,
            (1, 3, 5): 1.0,
            (1, 4, 6): -1.0,
            (2, 3, 6): -1.0,
            (2, 4, 5): -1.0,
        },
    )


def _su3_form_r6() -> ExteriorForm:
    return ExteriorForm(
        6, 3, {(1, 3, 5): 1.0, (1, 4, 6): -1.0, (2, 3, 6): -1.0, (2, 4, 5): -1.0}
    )


def _kahler_form_r6() -> ExteriorForm:
    return ExteriorForm(6, 2, {(1, 2): 1.0, (3, 4): 1.0, (5, 6): 1.0})


def _su3_dual_form_r6() -> ExteriorForm:
    return ExteriorForm(
        6, 3, {(1, 3, 6): 1.0, (1, 4, 5): 1.0, (2, 3, 5): 1.0, (2, 4, 6): -1.0}
    )


def _complex_structure_endo(n: int = 7) -> np.ndarray:
    """Block rotation pairing e_{2i-1} -> e_{2i}, with a kernel line if n is odd."""
    A = np.zeros((n, n))
    for i in range(n // 2):
        A[2 * i + 1, 2 * i] = 1.0
        A[2 * i, 2 * i + 1] = -1.0
    return A


_CANONICAL = {
    "TAU0": _cross_form_r7,
    "SIGMA0": _su3_form_r6,
    "VOL3": lambda: blade(3, (1, 2, 3)),
    "A0": _complex_structure_endo,
    "OMEGA0": _kahler_form_r6,
    "PSI_PLUS": _su3_form_r6,
    "PSI_MINUS": _su3_dual_form_r6,
}


def canonical(name: str):
    """Exact integer-coefficient model objects, looked up by name.

    TAU0 is the unit cross-product 3-form on R^7, SIGMA0 (= PSI_PLUS) the
    SU(3) 3-form on R^6, PSI_MINUS its Hodge dual, OMEGA0 the Kahler 2-form,
    VOL3 the volume form on R^3, and A0 the standard complex-structure
    endomorphism of R^7 with a one-dimensional kernel.
    """
    try:
        builder = _CANONICAL[name]
    except KeyError:
        raise ValueError(f"unknown canonical name {name!r}; expected one of {sorted(_CANONICAL)}")
    return builder()


# -- orthogonal group utilities ------------------------------------------------


def random_orthogonal(seed: int, n: int) -> np.ndarray:
    """Seeded Haar-ish orthogonal matrix via QR with sign-fixed diagonal."""
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def conjugate(form: ExteriorForm, Q: np.ndarray) -> ExteriorForm:
    """Pullback of a form along an orthogonal matrix (rejects non-orthogonal Q)."""
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (form.dim, form.dim):
        raise ValueError(f"matrix of shape {Q.shape} against a form on R^{form.dim}")
    defect = float(np.abs(Q.T @ Q - np.eye(form.dim)).max())
    if defect > ORTHOGONAL_TOL:
        raise ValueError(f"matrix is not orthogonal: max |Q^T Q - I| = {defect:.3e}")
    return pullback(form, Q)


def random_form(seed: int, n: int, degree: int = 3) -> ExteriorForm:
    """Seeded form with independent standard normal blade coefficients."""
    rng = np.random.default_rng(seed)
    terms = {}
    for combo in itertools.combinations(range(1, n + 1), degree):
        terms[combo] = rng.standard_normal()
    return ExteriorForm(n, degree, terms)


# -- cross-product identity ------------------------------------------------------


def is_vcp(tau: ExteriorForm, tol: float = VCP_TOL) -> VcpCheck:
    """Decide ``|tau_X Y|^2 = |X|^2 |Y|^2 - <X, Y>^2`` for all X and Y.

    Both sides are quadratic in X and in Y separately, so the identity holds
    everywhere iff its full polarization vanishes on all basis quadruples.
    The returned residual is the largest absolute polarized deviation.
    """
    if tau.degree != 3:
        raise ValueError(f"expected a 3-form, got degree {tau.degree}")
    n = tau.dim
    M = basis_contractions(tau)
    # polarization of |tau_X Y|^2: sym over the two X slots and two Y slots
    G = np.einsum("iab,jac->ijbc", M, M)
    Tq = 0.5 * (G + np.transpose(G, (0, 1, 3, 2)))
    eye = np.eye(n)
    Tg = (
        np.einsum("ij,kl->ijkl", eye, eye)
        - 0.5 * np.einsum("ik,jl->ijkl", eye, eye)
        - 0.5 * np.einsum("il,jk->ijkl", eye, eye)
    )
    residual = float(np.abs(Tq - Tg).max())
    return VcpCheck(residual <= tol, residual)


# -- constant-orbit decision -----------------------------------------------------


def _reference_vector(n: int) -> np.ndarray:
    """A fixed generic unit direction (incommensurate components)."""
    v = np.sqrt(np.arange(1, n + 1, dtype=float))
    return v / np.linalg.norm(v)


@lru_cache(maxsize=32)
def _polarization_tables(n: int, m: int):
    """Shared combinatorics for polarizing degree-m polynomials over basis tuples.

    Returns (unique count vectors U x n, inverse index per (tuple, subset),
    subset signs, number of tuples).  A degree-m homogeneous p satisfies
    ``T(x_1..x_m) = (1/m!) sum_{S nonempty} (-1)^{m-|S|} p(sum_{i in S} x_i)``,
    and on basis tuples every evaluation point is a small integer count vector,
    so all evaluations are shared through np.unique.
    """
    tuples = np.array(list(itertools.combinations_with_replacement(range(n), m)), dtype=np.int64)
    t_count = len(tuples)
    masks = np.arange(1, 2**m, dtype=np.int64)
    subset = ((masks[:, None] >> np.arange(m)) & 1).astype(np.int16)  # (S, m)
    signs = np.where((m - subset.sum(axis=1)) % 2, -1.0, 1.0)
    onehot = np.zeros((t_count, m, n), dtype=np.int16)
    rows = np.repeat(np.arange(t_count), m)
    cols = np.tile(np.arange(m), t_count)
    onehot[rows, cols, tuples.reshape(-1)] = 1
    counts = np.einsum("sp,tpn->tsn", subset, onehot)  # (T, S, n)
    flat = counts.reshape(-1, n)
    unique, inverse = np.unique(flat, axis=0, return_inverse=True)
    return unique.astype(float), inverse, signs, t_count


def _batched_trace_power(B: np.ndarray, k: int) -> np.ndarray:
    """tr(B^k) along the leading axis for symmetric B, k up to 5."""
    if k == 1:
        return np.trace(B, axis1=1, axis2=2)
    if k == 2:
        return np.einsum("uij,uji->u", B, B)
    if k == 3:
        return np.einsum("uij,ujk,uki->u", B, B, B)
    if k == 4:
        C = B @ B
        return np.einsum("uij,uji->u", C, C)
    if k == 5:
        C = B @ B
        return np.einsum("uij,ujk,uki->u", C, C, B)
    raise ValueError(f"trace power {k} not supported")


def _polarized_trace_residual(M: np.ndarray, a_k: float, k: int) -> float:
    """Max polarized deviation of tr(tau_X^{2k}) - a_k |X|^{2k} on basis tuples."""
    n = M.shape[0]
    m = 2 * k
    unique, inverse, signs, t_count = _polarization_tables(n, m)
    V = np.tensordot(unique, M, axes=(1, 0))  # (U, n, n) contraction at each count vector
    B = V @ V
    traces = _batched_trace_power(B, k)
    norms = (unique * unique).sum(axis=1)
    p = traces - a_k * norms**k
    per_tuple = (p[inverse].reshape(t_count, -1) * signs).sum(axis=1) / math.factorial(m)
    return float(np.abs(per_tuple).max())


def _signature_with_retry(
    A: np.ndarray, tol: float, retries: int = 2
) -> tuple[OrbitSignature, list[str]]:
    notes: list[str] = []
    t = tol
    while True:
        try:
            return orbit_signature(A, t), notes
        except AmbiguousClustering:
            if retries == 0:
                raise
            notes.append(f"ambiguous eigenvalue clustering at tol={t:g}, retrying at {t * 10:g}")
            t *= 10.0
            retries -= 1


def _sample_unit_vectors(rng: np.random.Generator, n: int, count: int):
    for _ in range(count):
        v = rng.standard_normal(n)
        yield v / np.linalg.norm(v)


def _witness_candidates(n: int, seed: int) -> list[np.ndarray]:
    basis = [np.eye(n)[i] for i in range(n)]
    mixed = []
    root2 = math.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            mixed.append((basis[i] + basis[j]) / root2)
            mixed.append((basis[i] - basis[j]) / root2)
    rng = np.random.default_rng(seed)
    return basis + mixed + list(_sample_unit_vectors(rng, n, 64))


def _find_witness(
    tau_unit: ExteriorForm, tol: float, seed: int
) -> tuple[np.ndarray, np.ndarray] | None:
    """Search for two unit vectors whose contraction signatures differ."""
    found: list[tuple[np.ndarray, OrbitSignature]] = []
    for x in _witness_candidates(tau_unit.dim, seed):
        try:
            sig, _ = _signature_with_retry(contraction_endo(tau_unit, x), tol)
        except AmbiguousClustering:
            continue
        for prev_x, prev_sig in found:
            if not sig.isclose(prev_sig, tol=max(tol, 1e-10)):
                return prev_x, x
        found.append((x, sig))
    return None


def is_gvcp(
    tau: ExteriorForm,
    mode: Mode | str | None = None,
    tol: float = GVCP_TOL,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> GvcpCheck:
    """Decide whether all unit contractions of ``tau`` share one conjugacy class.

    DETERMINISTIC mode polarizes the trace identities ``tr(tau_X^{2k}) =
    a_k |X|^{2k}`` for k up to n // 2, which characterizes the property; this
    is exact up to floating point for n <= 8.  SAMPLED mode compares orbit
    signatures at ``samples`` seeded random unit vectors, so a pass certifies
    only the sampled directions.  The returned signature carries the original
    scale of ``tau``.
    """
    if tau.degree != 3:
        raise ValueError(f"expected a 3-form, got degree {tau.degree}")
    if tau.is_zero():
        raise ValueError("the zero form is excluded: a generalized cross product is nonzero")
    n = tau.dim
    if mode is None:
        mode = Mode.DETERMINISTIC if n <= DETERMINISTIC_MAX_DIM else Mode.SAMPLED
    mode = Mode(mode.upper() if isinstance(mode, str) else mode)

    notes: list[str] = []
    unit = tau / tau.norm()
    xref = _reference_vector(n)

    if mode is Mode.DETERMINISTIC:
        M = basis_contractions(unit)
        Aref = np.tensordot(xref, M, axes=1)
        Bref = Aref @ Aref
        kmax = n // 2
        worst = 0.0
        power = np.eye(n)
        for k in range(1, kmax + 1):
            power = power @ Bref
            a_k = float(np.trace(power))
            residual = _polarized_trace_residual(M, a_k, k)
            worst = max(worst, residual)
            if residual > tol:
                witness = _find_witness(unit, tol, seed)
                if witness is None:
                    notes.append("trace identity fails but no explicit witness pair was found")
                return GvcpCheck(None, witness, residual, mode, tuple(notes))
    else:
        ref_sig, ref_notes = _signature_with_retry(contraction_endo(unit, xref), tol)
        notes.extend(ref_notes)
        worst = 0.0
        rng = np.random.default_rng(seed)
        for x in _sample_unit_vectors(rng, n, samples):
            sig, sig_notes = _signature_with_retry(contraction_endo(unit, x), tol)
            notes.extend(sig_notes)
            if not sig.isclose(ref_sig, tol):
                return GvcpCheck(None, (xref, x), math.inf, mode, tuple(notes))

    sig, sig_notes = _signature_with_retry(contraction_endo(tau, xref), tol)
    notes.extend(sig_notes)
    if n not in (3, 6, 7):
        notes.append(
            f"constant contraction orbit detected in dimension {n}, where none can exist"
        )
    return GvcpCheck(sig, None, worst, mode, tuple(notes))


# -- classification ---------------------------------------------------------------


def _scale_from_signature(
    sig: OrbitSignature, nonzero_mult: int, zero_mult: int
) -> float | None:
    """Extract the scale when the signature is {(-lambda^2, nonzero_mult), (0, zero_mult)}."""
    expected_pairs = 2 if zero_mult else 1
    if len(sig.pairs) != expected_pairs:
        return None
    if zero_mult:
        if sig.pairs[1][0] != 0.0 or sig.pairs[1][1] != zero_mult:
            return None
    if sig.pairs[0][0] >= 0.0 or sig.pairs[0][1] != nonzero_mult:
        return None
    return math.sqrt(-sig.pairs[0][0])


def classify(
    tau: ExteriorForm,
    mode: Mode | str | None = None,
    tol: float = GVCP_TOL,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ClassificationReport:
    """Sort a 3-form into ZERO / VOL3 / G2 / SU3 / NOT_GVCP / ANOMALY.

    G2 and SU3 verdicts are re-verified constructively: the form is rescaled
    to unit contractions and must pass the cross-product identity, on R^7
    directly and on R^6 after lifting through its Hermitian structure.  Any
    contradiction between the orbit check and these constructions, or a
    constant orbit in a dimension where none can exist, yields ANOMALY.
    """
    if tau.degree != 3:
        raise ValueError(f"expected a 3-form, got degree {tau.degree}")
    if tau.is_zero():
        return ClassificationReport(Verdict.ZERO)

    check = is_gvcp(tau, mode=mode, tol=tol, samples=samples, seed=seed)
    diagnostics = list(check.notes)
    diagnostics.append(f"orbit check residual {check.residual:.3e} in {check.mode.value} mode")
    if not check:
        return ClassificationReport(
            Verdict.NOT_GVCP, witness=check.witness, diagnostics=diagnostics
        )

    sig = check.signature
    n = tau.dim

    if n == 3:
        lam = abs(tau.coeff((1, 2, 3)))
        return ClassificationReport(Verdict.VOL3, scale=lam, signature=sig, diagnostics=diagnostics)

    if n == 7:
        lam = _scale_from_signature(sig, nonzero_mult=6, zero_mult=1)
        if lam is None:
            diagnostics.append(
                "constant orbit on R^7 without the cross-product spectrum; impossible"
            )
            return ClassificationReport(Verdict.ANOMALY, signature=sig, diagnostics=diagnostics)
        vcp = is_vcp(tau / lam, tol=tol)
        diagnostics.append(f"cross-product identity residual {vcp.residual:.3e} at unit scale")
        if not vcp:
            return ClassificationReport(Verdict.ANOMALY, signature=sig, diagnostics=diagnostics)
        return ClassificationReport(Verdict.G2, scale=lam, signature=sig, diagnostics=diagnostics)

    if n == 6:
        lam = _scale_from_signature(sig, nonzero_mult=4, zero_mult=2)
        if lam is None:
            diagnostics.append(
                "constant orbit on R^6 without the SU(3) spectrum; impossible"
            )
            return ClassificationReport(Verdict.ANOMALY, signature=sig, diagnostics=diagnostics)
        from . import lifting  # local import; lifting depends on this module

        try:
            lifted = lifting.lift_unit(tau / lam)
        except lifting.HermitianStructureError as exc:
            diagnostics.append(f"Hermitian structure rejected: {exc}")
            return ClassificationReport(Verdict.ANOMALY, signature=sig, diagnostics=diagnostics)
        vcp = is_vcp(lifted, tol=tol)
        diagnostics.append(f"lifted cross-product identity residual {vcp.residual:.3e}")
        if not vcp:
            return ClassificationReport(Verdict.ANOMALY, signature=sig, diagnostics=diagnostics)
        return ClassificationReport(Verdict.SU3, scale=lam, signature=sig, diagnostics=diagnostics)

    diagnostics.append(
        f"constant contraction orbit in dimension {n} contradicts the classification"
    )
    return ClassificationReport(Verdict.ANOMALY, signature=sig, diagnostics=diagnostics)
