"""Exact walk quantities via linear algebra on the weighted Laplacian.

Everything here is computed by grounded dense solves, never by the
closed-form conductance ratios, so the closed forms can be checked
against an independent method. Grounding (deleting the row and column of
one vertex) makes the singular Laplacian invertible without touching
pseudoinverses.

Dense LU with partial pivoting is deliberate: target networks are desk
scale (thousands of vertices at most) and determinism matters more than
asymptotics. Each factorization carries a reciprocal-condition estimate;
a grounded system estimated worse than 1e12 emits IllConditionedWarning
instead of failing, since extreme conductance ratios are legal inputs.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, get_lapack_funcs, lu_factor, lu_solve

from .errors import IllConditionedWarning, SameVertex, SingularSystem
from .network import Distribution, Network, VertexId

CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class Laplacian:
    """Weighted Laplacian: C_y on the diagonal, -C_yz off it, with the
    label -> row-index map used to build it."""

    matrix: np.ndarray
    index: dict[VertexId, int]


@dataclass(frozen=True, eq=False)
class HittingProfile:
    """Expected steps to reach ``target`` from every vertex, in walk steps.

    values[target] is 0; every other entry satisfies the first-step
    equation h(x) = 1 + sum_z P(x, z) h(z).
    """

    target: VertexId
    values: dict[VertexId, float]


def build_laplacian(net: Network) -> Laplacian:
    n = net.n
    L = np.zeros((n, n))
    for y, z, c in net.edges:
        iy, iz = net.index[y], net.index[z]
        L[iy, iz] -= c
        L[iz, iy] -= c
    for v in net.vertices:
        L[net.index[v], net.index[v]] = net.vertex_conductance[v]
    return Laplacian(matrix=L, index=dict(net.index))


def _grounded(L: np.ndarray, ground: int) -> np.ndarray:
    keep = [i for i in range(L.shape[0]) if i != ground]
    return L[np.ix_(keep, keep)]


def _factor(A: np.ndarray):
    """LU-factor a grounded system, with the condition guard."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        try:
            lu, piv = lu_factor(A)
        except (LinAlgWarning, np.linalg.LinAlgError) as exc:
            raise SingularSystem(f"grounded system is singular: {exc}") from exc
    gecon = get_lapack_funcs("gecon", (A,))
    rcond, _ = gecon(lu, np.linalg.norm(A, 1))
    if rcond == 0.0 or not math.isfinite(rcond):
        raise SingularSystem("grounded system is numerically singular")
    if 1.0 / rcond > CONDITION_LIMIT:
        warnings.warn(
            f"grounded system condition estimate {1.0 / rcond:.3e} exceeds "
            f"{CONDITION_LIMIT:.0e}; results may lose precision",
            IllConditionedWarning,
            stacklevel=3,
        )
    return lu, piv


def _solve_grounded(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    x = lu_solve(_factor(A), b)
    if not np.all(np.isfinite(x)):
        raise SingularSystem("grounded solve produced non-finite values")
    return x


def effective_resistance(net: Network, x: VertexId, y: VertexId) -> float:
    """Effective resistance between x and y (ohms, conductances as siemens).

    Solves the grounded system: column/row y deleted, unit current pushed
    in at x and pulled out at the ground. Symmetric in its arguments and
    zero exactly when x == y.
    """
    net.require(x)
    net.require(y)
    if x == y:
        return 0.0
    L = build_laplacian(net).matrix
    iy = net.index[y]
    ix = net.index[x]
    b = np.zeros(net.n)
    b[ix] = 1.0
    b = np.delete(b, iy)
    v = _solve_grounded(_grounded(L, iy), b)
    return float(v[ix - 1 if ix > iy else ix])


def resistance_matrix(net: Network) -> np.ndarray:
    """All-pairs effective resistances from one grounded factorization.

    Entry (i, j) follows vertex order. Same grounded-solve method as
    effective_resistance, amortized: with G the grounded inverse (ground =
    first vertex), R_xy = G_xx + G_yy - 2 G_xy.
    """
    n = net.n
    L = build_laplacian(net).matrix
    G = np.zeros((n, n))
    if n > 1:
        inv = _solve_grounded(_grounded(L, 0), np.eye(n - 1))
        inv = 0.5 * (inv + inv.T)
        G[1:, 1:] = inv
    d = np.diagonal(G)
    R = d[:, None] + d[None, :] - 2.0 * G
    np.fill_diagonal(R, 0.0)
    return R


def hitting_time(net: Network, target: VertexId) -> HittingProfile:
    """Expected first-visit times to ``target`` from every start vertex.

    First-step analysis: h(target) = 0 and h(x) = 1 + sum_z P(x, z) h(z)
    elsewhere. Row x of that system scaled by C_x is exactly the grounded
    Laplacian row, so the whole profile comes from one grounded solve with
    the vertex conductances as right-hand side.
    """
    net.require(target)
    L = build_laplacian(net).matrix
    it = net.index[target]
    b = np.array([net.vertex_conductance[v] for v in net.vertices])
    b = np.delete(b, it)
    h = _solve_grounded(_grounded(L, it), b)
    values = {target: 0.0}
    for v in net.vertices:
        iv = net.index[v]
        if iv != it:
            values[v] = float(h[iv - 1 if iv > it else iv])
    return HittingProfile(target=target, values=values)


def commute_time(net: Network, x: VertexId, y: VertexId) -> float:
    """Expected round trip x -> y -> x, as the sum of the two hitting times."""
    net.require(x)
    net.require(y)
    if x == y:
        raise SameVertex(f"commute time needs two distinct vertices, got {x!r} twice")
    return hitting_time(net, y).values[x] + hitting_time(net, x).values[y]


def return_time(net: Network, z: VertexId) -> float:
    """Expected first-return time to z, from first-step analysis.

    One step plus the conductance-weighted average of the neighbours'
    hitting times back to z. Deliberately never reads the closed-form
    ratio, so it serves as the independent oracle for it.
    """
    net.require(z)
    profile = hitting_time(net, z).values
    cz = net.vertex_conductance[z]
    return 1.0 + math.fsum(c / cz * profile[y] for y, c in net.neighbors[z])


def return_time_formula(net: Network, z: VertexId) -> float:
    """Closed-form expected return time: total over vertex conductance."""
    net.require(z)
    return net.total_conductance / net.vertex_conductance[z]


def stationary_distribution(net: Network) -> Distribution:
    """Stationary law of the induced walk: each vertex weighted C_z / C."""
    C = net.total_conductance
    return Distribution({z: net.vertex_conductance[z] / C for z in net.vertices})
