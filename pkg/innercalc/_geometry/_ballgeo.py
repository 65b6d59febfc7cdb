# -*- coding: utf-8 -*-
"""
Geometry of the closed matrix ball

Implements the linear fractional action of U(n, n) on the ball, the
Krein-Shmul'yan maps attached to unitary matrices and their circledast
product, and the classification of boundary points into strata together with
the automorphisms that move a boundary point into canonical position.

Points are treated as row-vector graphs ``(v, v z)``, so the action satisfies
``mobius(g, mobius(h, z)) == mobius(h @ g, z)``.
"""

# Standard imports
from __future__ import annotations

from dataclasses import dataclass, InitVar

# Third party imports
import numpy as np
import scipy.linalg as la

# Local imports
from ._matcore import (
    NotUnitary,
    ToleranceConfig,
    checked_inverse,
    checked_solve,
    hermitian_inv_sqrt,
    identity,
    is_pseudo_unitary,
    op_norm,
    pseudo_unitary_form,
    unitarity_defect,
)
from .. import utils
from ..utils import ComplexMatrix, InnerCalcError

# Typing
from typing import (
    Optional,
)

_unit_band = utils.settings["GEOMETRY"]["unit_band"]


class SingularPivot(InnerCalcError):
    """The pivot of a fractional map is numerically singular at this point"""


class NotInBall(InnerCalcError):
    """A point lies outside the closed matrix ball"""


class NotInterior(InnerCalcError):
    """A point is not in the open matrix ball"""


class NotOnBoundary(InnerCalcError):
    """A point expected on the boundary of the ball lies in its interior"""


def check_ball(u: ComplexMatrix, tol: ToleranceConfig, what: str = "point") -> None:
    size = op_norm(u)
    if size > 1 + tol.scaled(u.shape[0]):
        raise NotInBall(f"{what} has operator norm {size:.6g} > 1")


def feedback(
    a: ComplexMatrix,
    b: ComplexMatrix,
    c: ComplexMatrix,
    d: ComplexMatrix,
    u: ComplexMatrix,
    tol: Optional[ToleranceConfig] = None,
) -> ComplexMatrix:
    """
    Evaluates ``a + b u (1 - d u)^{-1} c``

    This is the common kernel of Krein-Shmul'yan maps and of characteristic
    functions of colligations.

    Raises:
        SingularPivot: 1 - d u is numerically singular
    """
    tol = ToleranceConfig.resolve(tol)
    if u.shape[0] == 0:
        return a.copy()
    pivot = identity(d.shape[0]) - d @ u
    x = checked_solve(pivot, c, SingularPivot, tol=tol, what="1 - d u")
    return a + b @ (u @ x)


@dataclass(frozen=True, eq=False)
class KSMorphism:
    """
    A unitary matrix of size n + m read as a Krein-Shmul'yan map from the
    closed ball of m x m matrices to the closed ball of n x n matrices

    Parameters:
        n: Size of the target ball
        m: Size of the source ball
        zeta: Unitary matrix of size n + m with blocks a (n x n), b (n x m),
            c (m x n) and d (m x m)
        validate: Verify unitarity
        tol: Tolerance of the unitarity check, defaults to the package
            tolerance

    Raises:
        NotUnitary: zeta is not unitary
        ValueError: zeta does not have size n + m
    """

    n: int
    m: int
    zeta: ComplexMatrix
    validate: InitVar[bool] = True
    tol: InitVar[Optional[ToleranceConfig]] = None

    def __post_init__(self, validate: bool, tol: Optional[ToleranceConfig]) -> None:
        object.__setattr__(self, "n", utils.ensure_count(self.n, "n"))
        object.__setattr__(self, "m", utils.ensure_count(self.m, "m"))
        zeta = utils.as_matrix(self.zeta, "zeta")
        size = self.n + self.m
        if zeta.shape != (size, size):
            raise ValueError(f"zeta must be {size}x{size}, received {zeta.shape}")
        if validate:
            defect = unitarity_defect(zeta)
            if defect > ToleranceConfig.resolve(tol).scaled(size):
                raise NotUnitary("zeta", defect)
        object.__setattr__(self, "zeta", utils.frozen(zeta))

    def __repr__(self) -> str:
        return f"<KSMorphism B_{self.m} -> B_{self.n}>"

    @property
    def a(self) -> ComplexMatrix:
        return self.zeta[: self.n, : self.n]

    @property
    def b(self) -> ComplexMatrix:
        return self.zeta[: self.n, self.n :]

    @property
    def c(self) -> ComplexMatrix:
        return self.zeta[self.n :, : self.n]

    @property
    def d(self) -> ComplexMatrix:
        return self.zeta[self.n :, self.n :]


@dataclass(frozen=True)
class BoundaryStratum:
    """
    The U(n, n) orbit of a point of the closed ball

    Attributes:
        ambient: Size n of the ball
        defect_rank: Number of unit singular values of the point
        witness: The classified point
    """

    ambient: int
    defect_rank: int
    witness: ComplexMatrix

    def __post_init__(self) -> None:
        if not 0 <= self.defect_rank <= self.ambient:
            raise ValueError(
                f"defect_rank {self.defect_rank} outside 0..{self.ambient}"
            )

    @property
    def interior(self) -> bool:
        return self.defect_rank == 0

    @property
    def shilov(self) -> bool:
        """True when the point is unitary"""
        return self.defect_rank == self.ambient


def ks_map(
    zeta: KSMorphism, u: ComplexMatrix, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """
    The Krein-Shmul'yan map ``sigma[zeta; u] = a + b u (1 - d u)^{-1} c``

    Parameters:
        zeta: The morphism
        u: An m x m point of the closed ball

    Returns:
        The n x n image of u

    Raises:
        NotInBall: op_norm(u) > 1
        SingularPivot: u lies in the discontinuity set of zeta
    """
    tol = ToleranceConfig.resolve(tol)
    u = utils.as_matrix(u, "u")
    if u.shape != (zeta.m, zeta.m):
        raise ValueError(f"u must be {zeta.m}x{zeta.m}, received {u.shape}")
    check_ball(u, tol, "u")
    return feedback(zeta.a, zeta.b, zeta.c, zeta.d, u, tol)


def star_blocks(
    zeta: ComplexMatrix,
    n: int,
    upsilon: ComplexMatrix,
    k: int,
    tol: Optional[ToleranceConfig] = None,
    error: type[Exception] = SingularPivot,
) -> ComplexMatrix:
    """
    The circledast product on raw matrices

    'zeta' has an n x n upper left block, 'upsilon' has a k x k lower right
    block and the remaining sizes must agree.

    Raises:
        error: 1 - p d is numerically singular
    """
    tol = ToleranceConfig.resolve(tol)
    a, b = zeta[:n, :n], zeta[:n, n:]
    c, d = zeta[n:, :n], zeta[n:, n:]
    m = upsilon.shape[0] - k
    if d.shape[0] != m:
        raise ValueError(
            f"Source of the outer map has size {d.shape[0]}, target of the inner map has size {m}"
        )
    p, q = upsilon[:m, :m], upsilon[:m, m:]
    r, t = upsilon[m:, :m], upsilon[m:, m:]

    inv = checked_inverse(identity(m) - p @ d, error, tol=tol, what="1 - p d")
    # (1 - dp)^{-1} = 1 + d (1 - pd)^{-1} p
    dual = identity(m) + d @ inv @ p
    return np.block(
        [
            [a + b @ inv @ p @ c, b @ inv @ q],
            [r @ dual @ c, t + r @ d @ inv @ q],
        ]
    )


def circledast(
    zeta: KSMorphism,
    upsilon: KSMorphism,
    tol: Optional[ToleranceConfig] = None,
    validate: bool = True,
) -> KSMorphism:
    """
    The circledast product realizing composition of Krein-Shmul'yan maps

    For upsilon mapping B_k into B_m and zeta mapping B_m into B_n, the
    product satisfies ``ks_map(circledast(zeta, upsilon), u) ==
    ks_map(zeta, ks_map(upsilon, u))``.

    Parameters:
        zeta: The outer map, B_m -> B_n
        upsilon: The inner map, B_k -> B_m
        validate: Verify unitarity of the product

    Returns:
        A KSMorphism from B_k to B_n

    Raises:
        SingularPivot: 1 - p d is numerically singular, where p is the upper
            left block of upsilon and d the lower right block of zeta
        ValueError: upsilon does not map into the source of zeta
    """
    if upsilon.n != zeta.m:
        raise ValueError(
            f"upsilon maps into B_{upsilon.n} but zeta is defined on B_{zeta.m}"
        )
    block = star_blocks(zeta.zeta, zeta.n, upsilon.zeta, upsilon.m, tol)
    return KSMorphism(zeta.n, upsilon.m, block, validate=validate, tol=tol)


def mobius(
    g: ComplexMatrix, z: ComplexMatrix, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """
    The linear fractional action ``(A + z C)^{-1} (B + z D)`` of U(n, n)

    Parameters:
        g: Element of U(n, n) with n x n blocks A, B, C, D
        z: Point of the closed ball

    Raises:
        ValueError: g is not pseudo-unitary or sizes disagree
        NotInBall: op_norm(z) > 1
        SingularPivot: A + z C is numerically singular
    """
    tol = ToleranceConfig.resolve(tol)
    z = utils.as_matrix(z, "z")
    n = z.shape[0]
    g = utils.as_matrix(g, "g")
    if not is_pseudo_unitary(g, n, tol):
        raise ValueError(f"g is not an element of U({n},{n})")
    check_ball(z, tol, "z")
    A, B = g[:n, :n], g[:n, n:]
    C, D = g[n:, :n], g[n:, n:]
    return _right_solve(A + z @ C, B + z @ D, tol)


def _right_solve(pivot: ComplexMatrix, rhs: ComplexMatrix, tol: ToleranceConfig) -> ComplexMatrix:
    return checked_solve(pivot, rhs, SingularPivot, tol=tol, what="A + z C")


def pseudo_inverse_action(h: ComplexMatrix) -> ComplexMatrix:
    """The inverse ``J h* J`` of an element of U(n, n)"""
    h = utils.as_matrix(h, "h")
    J = pseudo_unitary_form(h.shape[0] // 2)
    return J @ h.conj().T @ J


def mobius_ks(h: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> KSMorphism:
    """
    The Krein-Shmul'yan morphism whose map is ``mobius(h, .)``

    The blocks are ``A^{-1}B``, ``A^{-1}``, ``D - C A^{-1} B`` and
    ``-C A^{-1}``. The assembly is checked against mobius at a probe point.

    Raises:
        ValueError: h is not pseudo-unitary
        NotUnitary: the assembled matrix is not unitary
    """
    tol = ToleranceConfig.resolve(tol)
    h = utils.as_matrix(h, "h")
    n = h.shape[0] // 2
    if not is_pseudo_unitary(h, n, tol):
        raise ValueError(f"h is not an element of U({n},{n})")
    A, B = h[:n, :n], h[:n, n:]
    C, D = h[n:, :n], h[n:, n:]
    # A A* = 1 + B B* for pseudo-unitary h, so A is always invertible
    A_inv = checked_inverse(A, SingularPivot, tol=tol, what="A")
    zeta = KSMorphism(n, n, np.block([[A_inv @ B, A_inv], [D - C @ A_inv @ B, -C @ A_inv]]), tol=tol)

    probe = np.full((n, n), 0.5 / max(n, 1), dtype=complex)
    error = op_norm(ks_map(zeta, probe, tol) - mobius(h, probe, tol))
    if error > tol.scaled(n) * _unit_band:
        raise ValueError(f"Möbius realization does not reproduce the action (error {error:.3e})")
    return zeta


def transvection_to(S0: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> ComplexMatrix:
    """
    An element h of U(n, n) with ``mobius(h, 0) == S0``

    Built from the Hermitian roots ``(1 - S0 S0*)^{-1/2}`` and
    ``(1 - S0* S0)^{-1/2}``. Both properties are verified before returning.

    Raises:
        NotInterior: op_norm(S0) >= 1 - atol
    """
    tol = ToleranceConfig.resolve(tol)
    S0 = utils.as_matrix(S0, "S0")
    n = S0.shape[0]
    if S0.shape != (n, n):
        raise ValueError(f"S0 must be square, received {S0.shape}")
    if op_norm(S0) >= 1 - tol.atol:
        raise NotInterior(f"transvection target has operator norm {op_norm(S0):.6g}")

    left = hermitian_inv_sqrt(identity(n) - S0 @ S0.conj().T, NotInterior, "1 - S0 S0*")
    right = hermitian_inv_sqrt(identity(n) - S0.conj().T @ S0, NotInterior, "1 - S0* S0")
    h = np.block([[left, left @ S0], [right @ S0.conj().T, right]])

    if not is_pseudo_unitary(h, n, tol):
        raise NotInterior("transvection is not pseudo-unitary at this tolerance")
    if op_norm(mobius(h, np.zeros((n, n)), tol) - S0) > tol.scaled(n):
        raise NotInterior("transvection does not reach the target at this tolerance")
    return h


def stratum(u: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> BoundaryStratum:
    """
    Classifies a point of the closed ball by its number of unit singular values

    A singular value s counts as 1 iff ``1 - s <= unit_band * atol``.

    Raises:
        NotInBall: op_norm(u) > 1 + atol
    """
    tol = ToleranceConfig.resolve(tol)
    u = utils.as_matrix(u, "u")
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"u must be square, received {u.shape}")
    n = u.shape[0]
    if n == 0:
        return BoundaryStratum(0, 0, u)
    values = la.svdvals(u)
    if values[0] > 1 + tol.atol:
        raise NotInBall(f"point has operator norm {values[0]:.6g} > 1")
    rank = int(np.sum(1 - values <= _unit_band * tol.atol))
    return BoundaryStratum(n, rank, u)


def _permutation_form(u: ComplexMatrix, k: int, band: float) -> Optional[ComplexMatrix]:
    """Block-diagonal permutation h when u already splits off 1_k on coordinates"""
    n = u.shape[0]
    fixed = []
    for i in range(n):
        off_row = np.delete(u[i, :], i)
        off_col = np.delete(u[:, i], i)
        if abs(u[i, i] - 1) <= band and np.all(np.abs(off_row) <= band) and np.all(np.abs(off_col) <= band):
            fixed.append(i)
    if len(fixed) != k:
        return None
    order = [i for i in range(n) if i not in fixed] + fixed
    P = utils.permutation_matrix(order)
    return utils.block_diag(P.T, P.T)


def canonical_component_form(
    u: ComplexMatrix, tol: Optional[ToleranceConfig] = None
) -> tuple[ComplexMatrix, int]:
    """
    Moves a boundary point into the form diag(u', 1_k)

    Coordinate permutations are tried first, so a point that already splits
    off an identity block only has its coordinates reordered. Otherwise the
    singular value decomposition ``u = V diag(s) W*`` supplies the unitary
    blocks of h.

    Parameters:
        u: A point on the boundary of the ball

    Returns:
        (h, k) such that mobius(h, u) == diag(u', 1_k) with op_norm(u') < 1

    Raises:
        NotOnBoundary: u is interior, or the form cannot be certified
    """
    tol = ToleranceConfig.resolve(tol)
    u = utils.as_matrix(u, "u")
    n = u.shape[0]
    k = stratum(u, tol).defect_rank
    if k == 0:
        raise NotOnBoundary("point lies in the open ball")
    band = _unit_band * tol.atol

    h = _permutation_form(u, k, band)
    if h is None:
        V, _, Wh = la.svd(u)
        order = list(range(k, n)) + list(range(k))
        Pi = utils.permutation_matrix(order)
        h = utils.block_diag(V @ Pi.T, Wh.conj().T @ Pi.T)

    image = mobius(h, u, tol)
    moving = image[: n - k, : n - k]
    rest = image.copy()
    rest[: n - k, : n - k] = 0
    residual = op_norm(rest - utils.block_diag(np.zeros((n - k, n - k)), identity(k)))
    if residual > band * n or op_norm(moving) >= 1:
        raise NotOnBoundary(f"canonical form could not be certified (residual {residual:.3e})")
    return h, k
