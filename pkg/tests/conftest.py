import itertools

import hypothesis.strategies as st
import numpy as np

from crossforms import ExteriorForm


@st.composite
def sparse_forms(draw, dim=None, degree=None, max_dim=5, max_coeff=4):
    """Sparse forms with small integer coefficients (all arithmetic stays exact)."""
    n = dim if dim is not None else draw(st.integers(1, max_dim))
    k = degree if degree is not None else draw(st.integers(0, n))
    blades = list(itertools.combinations(range(1, n + 1), k))
    coeffs = draw(
        st.lists(
            st.integers(-max_coeff, max_coeff), min_size=len(blades), max_size=len(blades)
        )
    )
    return ExteriorForm(n, k, {b: float(c) for b, c in zip(blades, coeffs) if c})


@st.composite
def form_pairs_for_wedge(draw, max_dim=5):
    n = draw(st.integers(2, max_dim))
    p = draw(st.integers(0, n))
    q = draw(st.integers(0, n - p))
    return (
        draw(sparse_forms(dim=n, degree=p)),
        draw(sparse_forms(dim=n, degree=q)),
    )


def unit(n, i):
    return np.eye(n)[i]
