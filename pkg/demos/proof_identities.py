"""Rebuild the trial-function machinery behind the cap gap bound, numerically.

The gap bound for clamped caps comes from testing the second-eigenvalue
variational principle with coordinate-weighted copies of the ground state:
phi_alpha = x_alpha u_1 - C_alpha u_1, one per ambient coordinate.  Every
step of that argument is an integral identity that can be checked by
quadrature on the computed ground state:

  * each phi_alpha is gradient-orthogonal to u_1,
  * two divergence-style sums collapse to closed forms in n and lambda_1,
  * a Cauchy-Schwarz pairing links the trial gradients to the bracket norm,
  * the resulting Rayleigh quotient really dominates lambda_2.

The identities hold for any smooth clamped radial profile, not only for
eigenfunctions, so the script first demonstrates them on a hand-chosen
cosine bump (an independent oracle for the code paths), then runs the full
suite on the computed ground state of a unit-aperture cap.

Run:  python3 demos/proof_identities.py
"""

import math

import numpy as np

import capspectra as cs
from capspectra import fem, prooflab


def manufactured_profile_demo():
    print("structural identities on a hand-chosen clamped profile")
    print("=" * 62)
    n, aperture, m = 3, 1.2, 64
    domain = cs.make_cap("spherical", n, aperture)
    mesh = cs.build_mesh(domain, m)
    g = lambda t: np.cos(np.pi * t / aperture) + 1.0
    gp = lambda t: -np.pi / aperture * np.sin(np.pi * t / aperture)
    raw = prooflab.RadialEigenfunction(domain, mesh, 1.0, fem.interpolate_profile(mesh, g, gp))
    scale = 1.0 / math.sqrt(raw.integrate(raw.g1**2))
    dirichlet = raw.integrate(raw.lap**2) * scale**2
    u = prooflab.RadialEigenfunction(
        domain, mesh, dirichlet, scale * fem.interpolate_profile(mesh, g, gp)
    )
    print(f"profile: 1 + cos(pi t / {aperture}), n = {n}, Dirichlet quotient {dirichlet:.6f}")

    d, d_closed = cs.d_alpha_sum(u)
    print(f"  coefficient sum      {d:+.12f}   closed form {d_closed:+.12f}")
    br, br_closed = cs.bracket_norm_sum(u)
    print(f"  bracket norm sum     {br:.12f}   closed form {br_closed:.12f}")
    q, q_closed = cs.identity_quadratic_sum(u)
    print(f"  quadratic identity   {q:+.12f}   closed form {q_closed:+.12f}")
    b, b_closed = cs.identity_bilaplacian_sum(u)
    print(f"  bilaplacian identity {b:.12f}   closed form {b_closed:.12f}")
    print("  (no eigenvalue equation was used: these are integration-by-parts")
    print("   facts and hold for every clamped profile)")
    print()


def ground_state_suite():
    print("full identity suite on a computed ground state (n = 2, aperture 1.0)")
    print("=" * 62)
    domain = cs.make_cap("spherical", 2, 1.0)
    reports = cs.run_identity_suite(domain, m=128)
    print(f"{'identity':>18} {'computed':>16} {'closed form':>16} {'residual':>10} {'ok':>4}")
    for r in reports:
        print(
            f"{r.identity_id:>18} {r.computed:>16.9f} {r.closed_form:>16.9f} "
            f"{r.rel_residual:>10.2e} {'yes' if r.passed else 'NO':>4}"
        )
    print()
    print("the one-sided rows keep their inequality gap in the residual")
    print("column; the two-sided rows sit at quadrature roundoff because the")
    print("integration rule shares the solver's elements exactly.")


def main():
    manufactured_profile_demo()
    ground_state_suite()


if __name__ == "__main__":
    main()
