"""Exterior algebra on Euclidean R^n and the classification of 3-forms whose
contractions fill a single orthogonal conjugacy class."""

from .forms import (
    ExteriorForm,
    blade,
    endo_action,
    endo_to_two_form,
    hodge,
    inner,
    interior,
    one_form,
    pullback,
    two_form_to_endo,
    volume_form,
    wedge,
    wedge_power,
    zero_form,
)
from .spectral import (
    AmbiguousClustering,
    OrbitSignature,
    basis_contractions,
    contraction_endo,
    newton_traces,
    orbit_signature,
)
from .classify import (
    ClassificationReport,
    GvcpCheck,
    Mode,
    VcpCheck,
    Verdict,
    canonical,
    classify,
    conjugate,
    is_gvcp,
    is_vcp,
    random_form,
    random_orthogonal,
)
from .lifting import (
    HermitianCandidate,
    HermitianStructureError,
    f_map,
    f_two_form,
    lift,
    psi,
    restrict,
)
from .su3 import Su3Frame, anti_invariant_embed, check_identities, standard_frame

__version__ = "0.1.0"

__all__ = [
    "AmbiguousClustering",
    "ClassificationReport",
    "ExteriorForm",
    "GvcpCheck",
    "HermitianCandidate",
    "HermitianStructureError",
    "Mode",
    "OrbitSignature",
    "Su3Frame",
    "VcpCheck",
    "Verdict",
    "anti_invariant_embed",
    "basis_contractions",
    "blade",
    "canonical",
    "check_identities",
    "classify",
    "conjugate",
    "contraction_endo",
    "endo_action",
    "endo_to_two_form",
    "f_map",
    "f_two_form",
    "hodge",
    "inner",
    "interior",
    "is_gvcp",
    "is_vcp",
    "lift",
    "newton_traces",
    "one_form",
    "orbit_signature",
    "psi",
    "pullback",
    "random_form",
    "random_orthogonal",
    "restrict",
    "standard_frame",
    "two_form_to_endo",
    "volume_form",
    "wedge",
    "wedge_power",
    "zero_form",
]
