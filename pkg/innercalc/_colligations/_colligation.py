# -*- coding: utf-8 -*-
"""
Unitary colligations and their characteristic functions

A colligation of shape (alpha, m, j) is a unitary matrix of size
alpha + m*j split into blocks a (alpha x alpha), b (alpha x mj),
c (mj x alpha) and d (mj x mj). The internal coordinates are ordered as m
consecutive groups of j slots, matching ``kron(identity(j), S)``. Its
characteristic function is

    Theta[g; S] = a + b (1_j (x) S) (1 - d (1_j (x) S))^{-1} c,

a rational inner function from the closed ball of m x m matrices to the
closed ball of alpha x alpha matrices. Two colligations conjugate under
``diag(1_alpha, T, ..., T)`` with T in U(j) have the same characteristic
function, so comparisons are always made pointwise on Theta.
"""

# Standard imports
from __future__ import annotations

from dataclasses import dataclass, InitVar
from functools import partial

# Third party imports
from p_tqdm import p_map
import numpy as np
import scipy.linalg as la

# Local imports
from .._geometry import (
    KSMorphism,
    NotUnitary,
    SingularPivot,
    ToleranceConfig,
    check_ball,
    feedback,
    haar_unitary,
    identity,
    kron,
    mobius_ks,
    op_norm,
    sample_ball_point,
    unitarity_defect,
)
from .. import utils
from ..utils import ComplexMatrix, InnerCalcError, SeedLike

# Typing
from typing import (
    Optional,
)

INTERIOR_RADIUS = 0.99
"""Radius of the interior points sampled by certify_inner"""


class SingularSystem(InnerCalcError):
    """The elimination system of a colligation is numerically singular"""


@dataclass(frozen=True, eq=False)
class Colligation:
    """
    A unitary matrix of size alpha + m*j with its block shape

    Parameters:
        alpha: Size of the target ball
        m: Size of the source ball
        j: Internal multiplicity
        U: The unitary matrix
        validate: Verify unitarity
        tol: Tolerance of the unitarity check, defaults to the package
            tolerance

    Raises:
        NotUnitary: U is not unitary
        ValueError: U does not have size alpha + m*j
    """

    alpha: int
    m: int
    j: int
    U: ComplexMatrix
    validate: InitVar[bool] = True
    tol: InitVar[Optional[ToleranceConfig]] = None

    def __post_init__(self, validate: bool, tol: Optional[ToleranceConfig]) -> None:
        for name in ("alpha", "m", "j"):
            object.__setattr__(self, name, utils.ensure_count(getattr(self, name), name))
        U = utils.as_matrix(self.U, "U") if np.size(self.U) else np.zeros((0, 0), dtype=complex)
        if U.shape != (self.size, self.size):
            raise ValueError(
                f"A colligation of shape ({self.alpha}, {self.m}, {self.j}) "
                f"needs a {self.size}x{self.size} matrix, received {U.shape}"
            )
        if validate:
            defect = unitarity_defect(U)
            if defect > ToleranceConfig.resolve(tol).scaled(self.size):
                raise NotUnitary("colligation matrix", defect)
        object.__setattr__(self, "U", utils.frozen(U))

    def __repr__(self) -> str:
        return f"<Colligation alpha={self.alpha} m={self.m} j={self.j}>"

    @property
    def size(self) -> int:
        """alpha + m * j"""
        return self.alpha + self.m * self.j

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.alpha, self.m, self.j)

    @property
    def a(self) -> ComplexMatrix:
        return self.U[: self.alpha, : self.alpha]

    @property
    def b(self) -> ComplexMatrix:
        return self.U[: self.alpha, self.alpha :]

    @property
    def c(self) -> ComplexMatrix:
        return self.U[self.alpha :, : self.alpha]

    @property
    def d(self) -> ComplexMatrix:
        return self.U[self.alpha :, self.alpha :]

    def lift(self, S: ComplexMatrix) -> ComplexMatrix:
        """The internal operator 1_j (x) S"""
        return kron(identity(self.j), S)

    def __call__(self, S: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> ComplexMatrix:
        return theta_eval(self, S, tol)


@dataclass(frozen=True)
class InnerCertificate:
    """
    Numerical evidence that a characteristic function is inner

    Attributes:
        trials: Number of sampled unitary / interior point pairs
        max_unitarity_defect: Largest op_norm(Theta* Theta - 1) at unitary S
        max_interior_norm_excess: Largest (op_norm(Theta) - 1)+ at interior S
        skipped_singular: Trials discarded because a pivot was singular
    """

    trials: int
    max_unitarity_defect: float
    max_interior_norm_excess: float
    skipped_singular: int

    def __post_init__(self) -> None:
        if self.max_unitarity_defect < 0 or self.max_interior_norm_excess < 0:
            raise ValueError("defects must be nonnegative")
        if not 0 <= self.skipped_singular <= self.trials:
            raise ValueError(f"skipped_singular must lie in 0..{self.trials}")

    @property
    def max_defect(self) -> float:
        return max(self.max_unitarity_defect, self.max_interior_norm_excess)

    def merge(self, other: InnerCertificate) -> InnerCertificate:
        """Combines certificates by max / sum"""
        return InnerCertificate(
            self.trials + other.trials,
            max(self.max_unitarity_defect, other.max_unitarity_defect),
            max(self.max_interior_norm_excess, other.max_interior_norm_excess),
            self.skipped_singular + other.skipped_singular,
        )


def _check_point(g: Colligation, S: ComplexMatrix) -> ComplexMatrix:
    S = utils.as_matrix(S, "S") if np.size(S) else np.zeros((g.m, g.m), dtype=complex)
    if S.shape != (g.m, g.m):
        raise ValueError(f"S must be {g.m}x{g.m}, received {S.shape}")
    return S


def theta_eval(
    g: Colligation, S: ComplexMatrix, tol: Optional[ToleranceConfig] = None
) -> ComplexMatrix:
    """
    The characteristic function Theta[g; S] by its closed formula

    Parameters:
        g: The colligation
        S: An m x m point of the closed ball

    Returns:
        The alpha x alpha value of the characteristic function

    Raises:
        NotInBall: op_norm(S) > 1
        SingularPivot: det(1 - d (1_j (x) S)) vanishes numerically

    Examples:
        .. code:: pycon

            >>> g = Colligation(1, 1, 1, [[0, 1], [1, 0]])
            >>> theta_eval(g, [[0.5]])
            array([[0.5+0.j]])
    """
    tol = ToleranceConfig.resolve(tol)
    S = _check_point(g, S)
    check_ball(S, tol, "S")
    if g.j == 0 or g.m == 0:
        return np.array(g.a, dtype=complex)
    return feedback(g.a, g.b, g.c, g.d, g.lift(S), tol)


def theta_oracle(
    g: Colligation,
    S: ComplexMatrix,
    q: ComplexMatrix,
    tol: Optional[ToleranceConfig] = None,
) -> ComplexMatrix:
    """
    Output p of the colligation for input q, by eliminating the internal
    variables from the full linear system

    Solves ``p - b K x = a q`` and ``(1 - d K) x = c q`` with K = 1_j (x) S as
    one (alpha + mj) dimensional system by LU with partial pivoting. The
    closed formula is never used.

    Parameters:
        g: The colligation
        S: An m x m point
        q: Input of shape (alpha, r)

    Returns:
        p of shape (alpha, r), equal to theta_eval(g, S) @ q

    Raises:
        SingularSystem: the eliminated block is numerically singular
    """
    tol = ToleranceConfig.resolve(tol)
    S = _check_point(g, S)
    q = np.asarray(q, dtype=complex)
    if q.ndim == 1:
        q = q[:, np.newaxis]
    if q.shape[0] != g.alpha:
        raise ValueError(f"q must have {g.alpha} rows, received {q.shape}")

    internal = g.m * g.j
    if internal == 0:
        return g.a @ q
    K = g.lift(S)
    system = np.block(
        [
            [identity(g.alpha), -g.b @ K],
            [np.zeros((internal, g.alpha)), identity(internal) - g.d @ K],
        ]
    )
    rhs = np.vstack([g.a @ q, g.c @ q])
    cond = np.linalg.cond(system)
    if not np.isfinite(cond) or cond > tol.cond_cap:
        raise SingularSystem(f"elimination system has condition number {cond:.3e}")
    solution = la.lu_solve(la.lu_factor(system), rhs)
    return solution[: g.alpha]


def conjugate(g: Colligation, T: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> Colligation:
    """
    Conjugates g by ``diag(1_alpha, T, ..., T)`` with m copies of T

    Raises:
        NotUnitary: T is not a j x j unitary
    """
    tol = ToleranceConfig.resolve(tol)
    if g.j == 0:
        return g
    T = utils.as_matrix(T, "T")
    if T.shape != (g.j, g.j):
        raise ValueError(f"T must be {g.j}x{g.j}, received {T.shape}")
    defect = unitarity_defect(T)
    if defect > tol.scaled(g.j):
        raise NotUnitary("T", defect)
    h = utils.block_diag(identity(g.alpha), *([T] * g.m))
    return Colligation(g.alpha, g.m, g.j, h @ g.U @ h.conj().T, tol=tol)


def _certify_chunk(
    g: Colligation, tol: ToleranceConfig, trials: int, seed: np.random.SeedSequence
) -> InnerCertificate:
    rng = np.random.default_rng(seed)
    unitary_defect = 0.0
    interior_excess = 0.0
    skipped = 0
    for _ in range(trials):
        S_unitary = haar_unitary(g.m, rng)
        S_interior = sample_ball_point(g.m, INTERIOR_RADIUS, rng)
        try:
            theta = theta_eval(g, S_unitary, tol)
            inner = theta_eval(g, S_interior, tol)
        except SingularPivot:
            skipped += 1
            continue
        unitary_defect = max(unitary_defect, unitarity_defect(theta))
        interior_excess = max(interior_excess, op_norm(inner) - 1, 0.0)
    return InnerCertificate(trials, unitary_defect, interior_excess, skipped)


def certify_inner(
    g: Colligation,
    trials: int,
    seed: SeedLike = None,
    tol: Optional[ToleranceConfig] = None,
    workers: Optional[int] = None,
) -> InnerCertificate:
    """
    Samples the characteristic function of g to certify that it is inner

    Each trial draws a Haar unitary S and an interior point. The unitary
    sample contributes op_norm(Theta* Theta - 1), the interior sample
    contributes (op_norm(Theta) - 1)+. Trials with a singular pivot are
    skipped and counted.

    Trials are split into chunks seeded from the master seed, so the result
    does not depend on 'workers'. With workers > 1 the chunks run in
    separate processes through p_tqdm.

    Raises:
        ValueError: trials < 1
    """
    tol = ToleranceConfig.resolve(tol)
    if utils.ensure_count(trials, "trials") < 1:
        raise ValueError("certify_inner needs at least one trial")
    size = utils.settings["HARNESS"]["chunk"]
    chunks = [len(batch) for batch in utils.get_batches(range(trials), size)]
    seeds = utils.spawn_seeds(seed, len(chunks))
    run = partial(_certify_chunk, g, tol)

    if workers is not None and workers > 1:
        results = p_map(run, chunks, seeds, num_cpus=workers, disable=True)
    else:
        results = [run(n, s) for n, s in zip(chunks, seeds)]

    certificate = results[0]
    for other in results[1:]:
        certificate = certificate.merge(other)
    return certificate


def is_char_interior(g: Colligation, tol: Optional[ToleranceConfig] = None) -> bool:
    """
    Whether Theta[g; .] maps the open ball into the open ball

    Since Theta[g; 0] = a, this holds iff op_norm(a) < 1.
    """
    tol = ToleranceConfig.resolve(tol)
    return op_norm(g.a) < 1 - tol.atol


def constant_colligation(a: ComplexMatrix, m: int) -> Colligation:
    """The j = 0 colligation with constant characteristic function a"""
    a = utils.as_matrix(a, "a") if np.size(a) else np.zeros((0, 0), dtype=complex)
    return Colligation(a.shape[0], m, 0, a)


def identity_colligation(alpha: int, m: int) -> Colligation:
    """The constant colligation with Theta identically 1_alpha"""
    return Colligation(alpha, m, 0, identity(alpha))


def random_colligation(alpha: int, m: int, j: int, seed: SeedLike = None) -> Colligation:
    """A colligation with a Haar distributed matrix"""
    return Colligation(alpha, m, j, haar_unitary(alpha + m * j, seed))


def ks_colligation(zeta: KSMorphism, tol: Optional[ToleranceConfig] = None) -> Colligation:
    """
    A Krein-Shmul'yan morphism B_m -> B_n read as the colligation of shape
    (n, m, 1); its characteristic function is ks_map(zeta, .)
    """
    return Colligation(zeta.n, zeta.m, 1, zeta.zeta, tol=tol)


def mobius_colligation(h: ComplexMatrix, tol: Optional[ToleranceConfig] = None) -> Colligation:
    """The (n, n, 1) colligation whose characteristic function is mobius(h, .)"""
    return ks_colligation(mobius_ks(h, tol), tol)
