"""Bootstrap: compute derived expected values with the dense oracle."""
import sys

sys.path.insert(0, "tests")
import numpy as np

from oracle import (
    dense_from_terms,
    dense_to_terms,
    dense_wedge,
    dense_interior,
    dense_hodge,
    dense_inner,
)

SIGMA0 = {(1, 3, 5): 1.0, (1, 4, 6): -1.0, (2, 3, 6): -1.0, (2, 4, 5): -1.0}
TAU0 = {
    (1, 2, 7): 1.0,
    (3, 4, 7): 1.0,
    (5, 6, 7): 1.0,
    (1, 3, 5): 1.0,
    (1, 4, 6): -1.0,
    (2, 3, 6): -1.0,
    (2, 4, 5): -1.0,
}
OMEGA0 = {(1, 2): 1.0, (3, 4): 1.0, (5, 6): 1.0}

sigma0 = dense_from_terms(6, 3, SIGMA0)
tau0 = dense_from_terms(7, 3, TAU0)

# wedge checks
a = dense_from_terms(6, 2, {(3, 5): 1.0, (4, 6): -1.0})
print("(e35-e46)^2 =", dense_to_terms(dense_wedge(a, a), 4))

# hodge of sigma0
print("*sigma0 =", dense_to_terms(dense_hodge(sigma0, 6), 3))

# Im of complex volume form (independent route)
z1 = np.zeros(6, complex); z1[0] = 1; z1[1] = 1j
z2 = np.zeros(6, complex); z2[2] = 1; z2[3] = 1j
z3 = np.zeros(6, complex); z3[4] = 1; z3[5] = 1j
vol_c = dense_wedge(dense_wedge(z1, z2), z3)
print("Re(z-vol) =", dense_to_terms(vol_c.real, 3))
print("Im(z-vol) =", dense_to_terms(vol_c.imag, 3))

# inner products
print("<tau0,tau0> =", dense_inner(tau0, tau0))
print("<sigma0,sigma0> =", dense_inner(sigma0, sigma0))

# interior products
e1 = np.eye(6)[0]
e2 = np.eye(6)[1]
e3 = np.eye(6)[2]
print("e1 _| sigma0 =", dense_to_terms(dense_interior(e1, sigma0), 2))
print("e3 _| sigma0 =", dense_to_terms(dense_interior(e3, sigma0), 2))
print("e1 _| tau0 =", dense_to_terms(dense_interior(np.eye(7)[0], tau0), 2))

# psi values for sigma0: (sigma_X ^ sigma_X)/2
for i, name in [(0, "e1"), (2, "e3")]:
    sx = dense_interior(np.eye(6)[i], sigma0)
    psi = dense_wedge(sx, sx) / 2.0
    print(f"psi_{name}(sigma0) =", dense_to_terms(psi, 4))

# f_map values: *(X ^ psi_X)/|X|^2
for i, name in [(0, "e1"), (1, "e2"), (2, "e3")]:
    X = np.eye(6)[i]
    sx = dense_interior(X, sigma0)
    psi = dense_wedge(sx, sx) / 2.0
    five = dense_wedge(X, psi)
    F = dense_hodge(five, 6)
    print(f"F({name}) =", np.round(F, 12))

# full F matrix for sigma0
F = np.zeros((6, 6))
for i in range(6):
    X = np.eye(6)[i]
    sx = dense_interior(X, sigma0)
    psi = dense_wedge(sx, sx) / 2.0
    F[:, i] = dense_hodge(dense_wedge(X, psi), 6)
print("F matrix:\n", np.round(F, 12))

# psi_minus = *sigma0; e1 _| psi_minus
psim = dense_hodge(sigma0, 6)
print("e1 _| *sigma0 =", dense_to_terms(dense_interior(e1, psim), 2))

# lift: e7 ^ omega0(embedded) + sigma0(embedded)
omega7 = dense_from_terms(7, 2, OMEGA0)
e7 = np.eye(7)[6]
lifted = dense_wedge(e7, omega7) + dense_from_terms(7, 3, SIGMA0)
print("e7^omega0 + sigma0 =", dense_to_terms(lifted, 3))
print("equals tau0:", dense_to_terms(lifted, 3) == dense_to_terms(tau0, 3))

# contraction endo spectra
def endo_from_two_form_terms(n, terms):
    A = np.zeros((n, n))
    for (i, j), c in terms.items():
        A[j - 1, i - 1] = c
        A[i - 1, j - 1] = -c
    return A

B = endo_from_two_form_terms(6, dense_to_terms(dense_interior(e1, sigma0), 2))
print("eig of (sigma0_e1)^2:", np.round(np.linalg.eigvalsh(B @ B), 9))

M1 = endo_from_two_form_terms(7, dense_to_terms(dense_interior(np.eye(7)[0], tau0), 2))
print("tr (tau0_e1)^2 =", np.trace(M1 @ M1), " tr^4 =", np.trace(np.linalg.matrix_power(M1, 4)))

# witness signatures for e123+e456
split = dense_from_terms(6, 3, {(1, 2, 3): 1.0, (4, 5, 6): 1.0})
for X, name in [(np.eye(6)[0], "e1"), ((np.eye(6)[0] + np.eye(6)[3]) / np.sqrt(2), "(e1+e4)/sqrt2")]:
    M = endo_from_two_form_terms(6, dense_to_terms(dense_interior(X, split), 2))
    print(f"eig of split_{name}^2:", np.round(np.linalg.eigvalsh(M @ M), 9))

# hodge small cases
print("*(1) on R3 =", dense_to_terms(dense_hodge(np.array(1.0), 3), 3))
print("*(e12) on R3 =", dense_to_terms(dense_hodge(dense_from_terms(3, 2, {(1, 2): 1.0}), 3), 1))

# rank of X -> X _| psi_minus coefficient matrix (6 x 15)
rows = []
for i in range(6):
    t = dense_to_terms(dense_interior(np.eye(6)[i], psim), 2)
    import itertools as it
    row = [t.get(c, 0.0) for c in it.combinations(range(1, 7), 2)]
    rows.append(row)
print("rank of X -> X_|psi_minus:", np.linalg.matrix_rank(np.array(rows)))

# <X _| psi_minus, omega> for basis X
om = dense_from_terms(6, 2, OMEGA0)
print("<e_i _| psi_minus, omega>:", [round(dense_inner(dense_interior(np.eye(6)[i], psim), om), 12) for i in range(6)])
