"""Hermite-cubic C1 finite elements for the per-sector quadratic forms.

Each node carries a value DOF and a slope DOF, so the fourth-order clamped
conditions f(t0) = f'(t0) = 0 and the pole regularity conditions are imposed
exactly by dropping rows and columns.  The two assembled forms are

    a(f, g) = int (L_l f)(L_l g) w dt      (bending)
    b(f, g) = int (f' g' + l(l+n-2) s^2 f g) w dt   (membrane)

with the radial operator, weight w, and coefficients from the domain module.
Slope DOFs are scaled by the element size so value and slope coefficients
stay comparable in magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import (
    CapDomain,
    SectorIndex,
    angular_factor_sq,
    curvature_term,
    gauss_legendre_rule,
    make_sector,
    weight_values,
)

__all__ = [
    "Mesh",
    "OperatorPencil",
    "build_mesh",
    "assemble_sector_forms",
    "free_dof_indices",
    "interpolate_profile",
    "eval_radial_solution",
]


@dataclass(frozen=True)
class Mesh:
    """Uniform 1-D mesh on [0, aperture] with m elements."""

    nodes: np.ndarray

    @property
    def num_elements(self) -> int:
        return self.nodes.size - 1

    @property
    def element_size(self) -> float:
        return float(self.nodes[1] - self.nodes[0])

    @property
    def aperture(self) -> float:
        return float(self.nodes[-1])


def build_mesh(domain: CapDomain, m: int) -> Mesh:
    """m >= 4 uniform elements between the centre and the clamped boundary."""
    if m < 4:
        raise ValueError(f"need at least 4 elements (got {m})")
    return Mesh(nodes=np.linspace(0.0, domain.aperture, m + 1))


# Reference cubic Hermite shapes on [0, 1]; rows are (value0, slope0,
# value1, slope1) before the element-size scaling of the slope DOFs.


def _shape_values(xi: np.ndarray, h: float, deriv: int) -> np.ndarray:
    """4 x len(xi) array of shape-function derivatives with slope scaling h."""
    xi = np.asarray(xi, dtype=float)
    if deriv == 0:
        rows = [
            1.0 - 3.0 * xi**2 + 2.0 * xi**3,
            h * (xi - 2.0 * xi**2 + xi**3),
            3.0 * xi**2 - 2.0 * xi**3,
            h * (-(xi**2) + xi**3),
        ]
    elif deriv == 1:
        rows = [
            (-6.0 * xi + 6.0 * xi**2) / h,
            1.0 - 4.0 * xi + 3.0 * xi**2,
            (6.0 * xi - 6.0 * xi**2) / h,
            -2.0 * xi + 3.0 * xi**2,
        ]
    elif deriv == 2:
        rows = [
            (-6.0 + 12.0 * xi) / h**2,
            (-4.0 + 6.0 * xi) / h,
            (6.0 - 12.0 * xi) / h**2,
            (-2.0 + 6.0 * xi) / h,
        ]
    else:
        raise ValueError(f"deriv must be 0, 1, or 2 (got {deriv})")
    return np.stack(rows)


def free_dof_indices(m: int, l: int) -> list[int]:
    """Global Hermite DOF indices that survive the sector constraints.

    Global DOF 2j is the value at node j, 2j+1 the slope.  The boundary
    node is always fully clamped; at the centre the sector degree decides:
    l=0 keeps the value (even profile, zero slope), l=1 keeps the slope
    (profile vanishing linearly), l>=2 keeps neither.
    """
    if l == 0:
        drop = {1}
    elif l == 1:
        drop = {0}
    else:
        drop = {0, 1}
    drop |= {2 * m, 2 * m + 1}
    return [k for k in range(2 * (m + 1)) if k not in drop]


@dataclass(frozen=True)
class OperatorPencil:
    """Constrained symmetric pencil (A, B) for one harmonic sector."""

    A: np.ndarray
    B: np.ndarray
    dof_map: tuple[tuple[int, int], ...]
    sector: SectorIndex
    domain: CapDomain
    mesh: Mesh
    quad_order: int


def assemble_sector_forms(domain: CapDomain, l: int, mesh: Mesh, quad_order: int = 6) -> OperatorPencil:
    """Assemble the bending and membrane forms for sector l.

    The singular coefficients cot(t) and 1/sin(t)^2 (or 1/t and 1/t^2) are
    evaluated as written at interior Gauss points; their analytic
    cancellation against the admissible shapes happens in floating point.
    """
    if quad_order < 4:
        raise ValueError(f"quad_order must be >= 4 (got {quad_order})")
    if l < 0:
        raise ValueError(f"sector degree must be >= 0 (got {l})")
    sector = make_sector(domain.dim, l)
    n = domain.dim
    m = mesh.num_elements
    h = mesh.element_size
    kappa = float(sector.angular_eigenvalue)

    ref = gauss_legendre_rule(quad_order, 0.0, 1.0)
    xi, wref = ref.nodes, ref.weights
    B0 = _shape_values(xi, h, 0)
    B1 = _shape_values(xi, h, 1)
    B2 = _shape_values(xi, h, 2)

    # Gauss points of all elements at once, shape (m, G)
    theta = mesh.nodes[:-1, None] + h * xi[None, :]
    W = weight_values(domain, theta) * (h * wref)[None, :]
    c = curvature_term(domain, theta)
    s2 = angular_factor_sq(domain, theta)

    # L_l applied to each shape at each Gauss point, shape (m, 4, G)
    Lphi = B2[None, :, :] + (n - 1) * c[:, None, :] * B1[None, :, :] - kappa * s2[:, None, :] * B0[None, :, :]

    Ae = np.einsum("eig,ejg,eg->eij", Lphi, Lphi, W)
    Be = np.einsum("ig,jg,eg->eij", B1, B1, W) + np.einsum("ig,jg,eg->eij", B0, B0, kappa * s2 * W)
    Ae = 0.5 * (Ae + Ae.transpose(0, 2, 1))
    Be = 0.5 * (Be + Be.transpose(0, 2, 1))

    ndof = 2 * (m + 1)
    idx = 2 * np.arange(m)[:, None] + np.arange(4)[None, :]
    A = np.zeros((ndof, ndof))
    B = np.zeros((ndof, ndof))
    np.add.at(A, (idx[:, :, None], idx[:, None, :]), Ae)
    np.add.at(B, (idx[:, :, None], idx[:, None, :]), Be)

    free = free_dof_indices(m, l)
    A = A[np.ix_(free, free)]
    B = B[np.ix_(free, free)]
    dof_map = tuple((k // 2, k % 2) for k in free)
    return OperatorPencil(A=A, B=B, dof_map=dof_map, sector=sector, domain=domain, mesh=mesh, quad_order=quad_order)


def expand_coefficients(mesh: Mesh, coeffs: np.ndarray, dof_map) -> np.ndarray:
    """Scatter a free-DOF vector into the full nodal (value, slope) vector."""
    full = np.zeros(2 * (mesh.num_elements + 1))
    for value, (node, kind) in zip(coeffs, dof_map):
        full[2 * node + kind] = value
    return full


def interpolate_profile(mesh: Mesh, f, fp) -> np.ndarray:
    """Full nodal coefficient vector of the Hermite interpolant of f."""
    full = np.empty(2 * (mesh.num_elements + 1))
    full[0::2] = [f(t) for t in mesh.nodes]
    full[1::2] = [fp(t) for t in mesh.nodes]
    return full


def eval_radial_solution(mesh: Mesh, coeffs: np.ndarray, t, deriv: int = 0, dof_map=None):
    """Evaluate the piecewise-cubic solution (or derivative) at t.

    ``coeffs`` is the full nodal vector unless ``dof_map`` is given, in
    which case it is the free-DOF vector and constrained DOFs are zero.
    Accepts scalar or array t in [0, aperture]; the second derivative is
    the piecewise-linear one of the cubic.
    """
    if deriv not in (0, 1, 2):
        raise ValueError(f"deriv must be 0, 1, or 2 (got {deriv})")
    if dof_map is not None:
        coeffs = expand_coefficients(mesh, np.asarray(coeffs, dtype=float), dof_map)
    else:
        coeffs = np.asarray(coeffs, dtype=float)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0.0) or np.any(t_arr > mesh.aperture * (1.0 + 1e-12)):
        raise ValueError(f"t must lie in [0, {mesh.aperture}]")
    h = mesh.element_size
    m = mesh.num_elements
    elem = np.minimum((t_arr / h).astype(int), m - 1)
    xi = (t_arr - mesh.nodes[elem]) / h
    shapes = _shape_values(xi, h, deriv)  # (4, len(t))
    local = np.stack(
        [coeffs[2 * elem], coeffs[2 * elem + 1], coeffs[2 * elem + 2], coeffs[2 * elem + 3]]
    )
    out = np.sum(shapes * local, axis=0)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out
