# -*- coding: utf-8 -*-
"""
Dense complex linear algebra shared by every other innercalc module

All matrices are plain complex numpy arrays. The helpers in this module pin
the conventions the rest of the package depends on: the Kronecker product
ordering, the operator norm, unitarity and pseudo-unitarity tests, seeded
sampling, and linear solves guarded by a condition number cap.

Examples:
    .. highlight:: python
    .. code:: python

        import numpy as np
        from innercalc import kron, identity

        S = np.array([[0, 1], [0, 0]])

        # Blocks of the result are s_ij * 1_2
        K = kron(identity(2), S)
"""

# Standard imports
from __future__ import annotations

from dataclasses import dataclass

# Third party imports
import numpy as np
import scipy.linalg as la

# Local imports
from .. import utils
from ..utils import ComplexMatrix, InnerCalcError, SeedLike

# Typing
from typing import (
    ClassVar,
    Optional,
    Type,
)

_geometry = utils.settings["GEOMETRY"]


class NotUnitary(InnerCalcError, ValueError):
    """Raised when a matrix required to be unitary is not"""

    def __init__(self, what: str, defect: float) -> None:
        self.defect = defect
        super().__init__(f"{what} is not unitary (defect {defect:.3e})")


@dataclass(frozen=True)
class ToleranceConfig:
    """
    Numerical tolerances used by every predicate and guarded solve

    Parameters:
        atol:
            Absolute tolerance. Checks on an n x n matrix compare against
            ``atol * n``.
        cond_cap:
            Largest condition number a pivot may have before it is treated
            as singular.
    """

    atol: float = 1e-9
    cond_cap: float = 1e12

    _default: ClassVar[Optional[ToleranceConfig]] = None

    def __post_init__(self) -> None:
        if not self.atol > 0:
            raise ValueError(f"atol must be positive, received {self.atol}")
        if not self.cond_cap > 1:
            raise ValueError(f"cond_cap must exceed 1, received {self.cond_cap}")

    def scaled(self, dim: int) -> float:
        """The absolute tolerance for an object of dimension 'dim'"""
        return self.atol * max(dim, 1)

    @classmethod
    def default(cls) -> ToleranceConfig:
        """The package wide default, configurable through innercalc.globals"""
        if cls._default is None:
            config = utils.settings["TOLERANCE"]
            cls._default = cls(atol=config["atol"], cond_cap=config["cond_cap"])
        return cls._default

    @classmethod
    def resolve(cls, tol: Optional[ToleranceConfig]) -> ToleranceConfig:
        """Returns tol, or the package default when tol is None"""
        return cls.default() if tol is None else tol


def identity(n: int) -> ComplexMatrix:
    """The n x n complex identity"""
    return np.eye(n, dtype=complex)


def kron(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    """
    Tensor product of A and B in the ordering used throughout innercalc

    The (mu, nu) block of the result has the shape of A and equals
    ``B[mu, nu] * A``, so ``kron(identity(j), S)`` is the block matrix
    whose blocks are ``s_{mu nu} * 1_j``.

    Parameters:
        A: The inner factor
        B: The outer factor

    Returns:
        A matrix of shape (rows(A) * rows(B), cols(A) * cols(B))
    """
    return np.kron(B, A)


def op_norm(z: ComplexMatrix) -> float:
    """
    The operator norm (largest singular value) of a matrix

    Matrices whose larger side is at most the configured ``svd_max_dim``
    use a full singular value decomposition, larger ones use power
    iteration on z*z.
    """
    z = np.asarray(z, dtype=complex)
    if z.size == 0:
        return 0.0
    if max(z.shape) <= _geometry["svd_max_dim"]:
        return float(la.svdvals(z)[0])
    return _power_norm(z)


def _power_norm(z: ComplexMatrix) -> float:
    gram = z.conj().T @ z
    vec = np.ones(gram.shape[0], dtype=complex) / np.sqrt(gram.shape[0])
    estimate = 0.0
    for _ in range(_geometry["power_maxiter"]):
        nxt = gram @ vec
        size = np.linalg.norm(nxt)
        if size == 0:
            return 0.0
        vec = nxt / size
        if abs(size - estimate) <= _geometry["power_tol"] * max(size, 1.0):
            estimate = size
            break
        estimate = size
    return float(np.sqrt(estimate))


def unitarity_defect(U: ComplexMatrix) -> float:
    """op_norm(U*U - 1) of a square matrix"""
    return op_norm(U.conj().T @ U - identity(U.shape[0]))


def is_unitary(U: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> bool:
    """
    Whether a square matrix is unitary within tolerance

    Returns True iff ``op_norm(U*U - 1) <= atol * dim(U)``.
    """
    tol = ToleranceConfig.resolve(tol)
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return unitarity_defect(U) <= tol.scaled(U.shape[0])


def pseudo_unitary_form(n: int) -> ComplexMatrix:
    """The form J = diag(-1_n, 1_n) preserved by U(n, n)"""
    return np.diag(np.concatenate([-np.ones(n), np.ones(n)])).astype(complex)


def is_pseudo_unitary(
    g: ComplexMatrix, n: int, tol: Optional[ToleranceConfig] = None
) -> bool:
    """
    Whether g belongs to U(n, n), i.e. g J g* = J with J = diag(-1_n, 1_n)

    Raises:
        ValueError: g is not of size 2n x 2n
    """
    tol = ToleranceConfig.resolve(tol)
    g = np.asarray(g, dtype=complex)
    if g.shape != (2 * n, 2 * n):
        raise ValueError(
            f"Expected a {2 * n}x{2 * n} matrix for U({n},{n}), received {g.shape}"
        )
    J = pseudo_unitary_form(n)
    return op_norm(g @ J @ g.conj().T - J) <= tol.scaled(2 * n)


def haar_unitary(n: int, seed: SeedLike = None) -> ComplexMatrix:
    """
    A Haar distributed random unitary of size n

    QR decomposes a matrix of standard complex gaussians and multiplies Q on
    the right by the phases of diag(R).

    Parameters:
        n: The size of the unitary
        seed: Anything accepted by numpy.random.default_rng, or a Generator

    Returns:
        The sampled unitary. Deterministic for a fixed integer seed.
    """
    n = utils.ensure_count(n, "n")
    rng = utils.get_rng(seed)
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    gauss = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = la.qr(gauss)
    diag = np.diag(R)
    phases = diag / np.abs(diag)
    return Q * phases[np.newaxis, :]


def sample_ball_point(m: int, radius: float, seed: SeedLike = None) -> ComplexMatrix:
    """
    A random m x m matrix of operator norm at most 'radius'

    Samples a complex gaussian G and returns radius * G / op_norm(G) scaled
    by a uniform factor in (0, 1].

    Raises:
        ValueError: radius is outside [0, 1)
    """
    m = utils.ensure_count(m, "m")
    if not 0 <= radius < 1:
        raise ValueError(f"radius must lie in [0, 1), received {radius}")
    rng = utils.get_rng(seed)
    gauss = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    factor = 1.0 - rng.random()
    size = op_norm(gauss)
    if radius == 0 or size == 0:
        return np.zeros((m, m), dtype=complex)
    return radius * factor * gauss / size


def checked_solve(
    M: ComplexMatrix,
    rhs: ComplexMatrix,
    error: Type[Exception],
    tol: Optional[ToleranceConfig] = None,
    what: str = "pivot",
) -> ComplexMatrix:
    """
    Solves M x = rhs by LU with partial pivoting, guarding the condition

    Parameters:
        M: Square system matrix (may be 0 x 0)
        rhs: Right hand side with as many rows as M
        error: Exception class raised when M is numerically singular
        tol: Supplies the condition number cap
        what: Names the pivot in the error message

    Raises:
        error: cond(M) exceeds tol.cond_cap or is not finite
    """
    tol = ToleranceConfig.resolve(tol)
    if M.shape[0] == 0:
        return np.zeros(rhs.shape, dtype=complex)
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > tol.cond_cap:
        raise error(f"{what} is numerically singular (condition number {cond:.3e})")
    return la.lu_solve(la.lu_factor(M), rhs)


def checked_inverse(
    M: ComplexMatrix,
    error: Type[Exception],
    tol: Optional[ToleranceConfig] = None,
    what: str = "pivot",
) -> ComplexMatrix:
    """The inverse of M through checked_solve"""
    return checked_solve(M, identity(M.shape[0]), error, tol=tol, what=what)


def hermitian_inv_sqrt(H: ComplexMatrix, error: Type[Exception], what: str) -> ComplexMatrix:
    """
    H^{-1/2} of a positive definite Hermitian matrix via eigendecomposition

    Eigenvalues are clamped at zero before the root is taken.

    Raises:
        error: H has a vanishing eigenvalue after clamping
    """
    if H.shape[0] == 0:
        return np.zeros((0, 0), dtype=complex)
    herm = (H + H.conj().T) / 2
    w, V = la.eigh(herm)
    w = np.clip(w, 0, None)
    if w.min() <= 0:
        raise error(f"{what} is not positive definite")
    return (V / np.sqrt(w)[np.newaxis, :]) @ V.conj().T
