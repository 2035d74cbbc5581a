"""The flat SU(3) model on R^6 and its pointwise algebraic identities.

The frame consists of the Kahler 2-form omega, the real and imaginary parts
psi_plus / psi_minus of the complex volume form, and the compatible complex
structure J.  In the orthonormal-blade convention used throughout the package
``<psi_plus, psi_plus> = 4``, which is exactly the statement that
``psi_plus ^ hodge(psi_plus) / 4`` is the volume form.

``check_identities`` evaluates the five pointwise identities that the frame
satisfies (all residuals should be zero):

* the 2-form ``X _| psi_minus`` acts on psi_plus as ``-2 X ^ omega`` and on
  psi_minus as ``-2 JX ^ omega``;
* J acts on psi_plus as ``+3 psi_minus`` and on psi_minus as ``-3 psi_plus``;
* ``X _| psi_minus = -(JX) _| psi_plus``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import canonical
from .forms import (
    ExteriorForm,
    endo_action,
    endo_to_two_form,
    hodge,
    inner,
    interior,
    one_form,
    two_form_to_endo,
    wedge,
)

FRAME_TOL = 1e-12


@dataclass
class Su3Frame:
    omega: ExteriorForm
    psi_plus: ExteriorForm
    psi_minus: ExteriorForm
    J: np.ndarray

    def __post_init__(self):
        n = self.omega.dim
        if (self.psi_plus.dim, self.psi_minus.dim) != (n, n) or self.J.shape != (n, n):
            raise ValueError("frame pieces live on different spaces")
        if float(np.abs(self.J @ self.J + np.eye(n)).max()) > FRAME_TOL:
            raise ValueError("J is not a complex structure: J^2 != -id")
        if not endo_to_two_form(self.J).isclose(self.omega, FRAME_TOL):
            raise ValueError("omega is not the 2-form of J")
        if not hodge(self.psi_plus).isclose(self.psi_minus, FRAME_TOL):
            raise ValueError("psi_minus is not the Hodge dual of psi_plus")
        if abs(inner(self.psi_plus, self.psi_plus) - 4.0) > FRAME_TOL:
            raise ValueError("psi_plus ^ *psi_plus does not give 4 volumes")

    @classmethod
    def from_three_form(cls, psi_plus: ExteriorForm) -> "Su3Frame":
        """Rebuild the whole frame from the real 3-form via its Hermitian map."""
        from .lifting import f_two_form

        J = f_two_form(psi_plus).endo
        return cls(
            omega=endo_to_two_form(J),
            psi_plus=psi_plus,
            psi_minus=hodge(psi_plus),
            J=J,
        )


def standard_frame() -> Su3Frame:
    return Su3Frame(
        omega=canonical("OMEGA0"),
        psi_plus=canonical("PSI_PLUS"),
        psi_minus=canonical("PSI_MINUS"),
        J=two_form_to_endo(canonical("OMEGA0")),
    )


def check_identities(frame: Su3Frame, X: np.ndarray) -> dict[str, float]:
    """Residual norms of the five frame identities at the vector X."""
    X = np.asarray(X, dtype=float)
    if X.shape != (frame.omega.dim,):
        raise ValueError(f"vector of shape {X.shape} against a frame on R^{frame.omega.dim}")
    JX = frame.J @ X
    act = two_form_to_endo(interior(X, frame.psi_minus))

    def x_wedge_omega(vec: np.ndarray) -> ExteriorForm:
        return wedge(one_form(vec), frame.omega)

    return {
        "action_on_psi_plus": (
            endo_action(act, frame.psi_plus) + 2.0 * x_wedge_omega(X)
        ).norm(),
        "action_on_psi_minus": (
            endo_action(act, frame.psi_minus) + 2.0 * x_wedge_omega(JX)
        ).norm(),
        "j_on_psi_plus": (endo_action(frame.J, frame.psi_plus) - 3.0 * frame.psi_minus).norm(),
        "j_on_psi_minus": (endo_action(frame.J, frame.psi_minus) + 3.0 * frame.psi_plus).norm(),
        "anti_invariant_exchange": (
            interior(X, frame.psi_minus) + interior(JX, frame.psi_plus)
        ).norm(),
    }


def anti_invariant_embed(X: np.ndarray, frame: Su3Frame) -> ExteriorForm:
    """The J-anti-invariant 2-form ``X _| psi_minus`` attached to a vector.

    The map is injective and its image is orthogonal to omega, which is how
    tangent vectors parametrize the (2,0) + (0,2) part of the 2-forms.
    """
    X = np.asarray(X, dtype=float)
    if X.shape != (frame.psi_minus.dim,):
        raise ValueError(f"vector of shape {X.shape} against a frame on R^{frame.psi_minus.dim}")
    return interior(X, frame.psi_minus)
