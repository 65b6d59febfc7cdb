# -*- coding: utf-8 -*-
"""
Operations on colligations

Each operation builds a new colligation whose characteristic function is the
direct sum, pointwise product, pointwise tensor product or composition of
the characteristic functions of its inputs, splits off diagonal blocks, or
restricts to and from boundary components of the ball. Contracts are stated
on characteristic functions only; the matrices themselves carry no canonical
form.

Internal coordinates of a colligation of shape (alpha, m, j) are ordered as m
groups of j slots. The interleavings below are explicit index maps into that
layout.
"""

# Standard imports
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

# Third party imports
import numpy as np

# Local imports
from ._colligation import (
    Colligation,
    identity_colligation,
    mobius_colligation,
    theta_eval,
)
from .._geometry import (
    NotInterior,
    SingularPivot,
    ToleranceConfig,
    canonical_component_form,
    identity,
    mobius,
    op_norm,
    pseudo_inverse_action,
    star_blocks,
    stratum,
    transvection_to,
    unitarity_defect,
)
from .. import utils
from ..utils import ComplexMatrix, InnerCalcError

# Typing
from typing import (
    Iterable,
    Optional,
    Sequence,
)

_calculus = utils.settings["CALCULUS"]
_unit_band = utils.settings["GEOMETRY"]["unit_band"]


class CompositionSingular(InnerCalcError):
    """Neither the direct composition nor the probe reduction has a regular pivot"""


class NotBlockDiagonal(InnerCalcError):
    """A characteristic function is not block diagonal for the requested split"""


class SplitSingular(InnerCalcError):
    """Every pivot tried while splitting off a summand was singular"""


class SingularOnComponent(InnerCalcError):
    """The characteristic function is singular on the requested boundary component"""


class ImageNotInComponent(InnerCalcError):
    """The image of a characteristic function does not lie in a single boundary component"""


@dataclass(frozen=True)
class SplitSpec:
    """
    Target block sizes for split_off

    Parameters:
        alpha1: Size of the leading diagonal block
        alpha2: Size of the trailing diagonal block
        lambda_twist: Unimodular number other than 1, used when the plain
            splitting pivot is singular
    """

    alpha1: int
    alpha2: int
    lambda_twist: complex = _calculus["lambda_twist"]

    def __post_init__(self) -> None:
        utils.ensure_count(self.alpha1, "alpha1")
        utils.ensure_count(self.alpha2, "alpha2")
        if abs(abs(self.lambda_twist) - 1) > 1e-12:
            raise ValueError(f"lambda_twist must be unimodular, received {self.lambda_twist}")
        if abs(self.lambda_twist - 1) < 1e-12:
            raise ValueError("lambda_twist must differ from 1")


def probe_points(m: int, count: Optional[int] = None) -> list[ComplexMatrix]:
    """
    Deterministic interior points used to check open conditions

    The zero matrix comes first, followed by pseudo random points of norm at
    most the configured probe radius.
    """
    count = _calculus["probes"] if count is None else count
    rng = np.random.default_rng(m)
    points = [np.zeros((m, m), dtype=complex)]
    while len(points) < count:
        gauss = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        size = op_norm(gauss)
        points.append(_calculus["probe_radius"] * gauss / size if size else gauss)
    return points[:count]


def _embedding(outer: Iterable[int], m: int, width: int, offset: int, j: int, base: int) -> list[int]:
    """
    Positions in a target colligation of the coordinates of a source one

    Outer coordinates map to 'outer'. Internal slot s of group mu maps to
    ``base + mu * width + offset + s``.
    """
    return list(outer) + [base + mu * width + offset + s for mu in range(m) for s in range(j)]


def _place(U: ComplexMatrix, index: list[int], size: int) -> ComplexMatrix:
    """Acts as U on the coordinates 'index' and as the identity elsewhere"""
    out = identity(size)
    out[np.ix_(index, index)] = U
    return out


def direct_sum(g: Colligation, h: Colligation) -> Colligation:
    """
    Colligation of the direct sum of two characteristic functions

    Parameters:
        g: Colligation of shape (alpha, m, i)
        h: Colligation of shape (beta, m, j)

    Returns:
        A colligation of shape (alpha + beta, m, i + j) with
        Theta = diag(Theta[g], Theta[h])

    Raises:
        ValueError: g and h have different m
    """
    if g.m != h.m:
        raise ValueError(f"direct_sum needs equal m, received {g.m} and {h.m}")
    alpha, beta, m = g.alpha, h.alpha, g.m
    width = g.j + h.j
    base = alpha + beta
    size = base + m * width

    U = np.zeros((size, size), dtype=complex)
    g_index = _embedding(range(alpha), m, width, 0, g.j, base)
    h_index = _embedding(range(alpha, base), m, width, g.j, h.j, base)
    U[np.ix_(g_index, g_index)] = g.U
    U[np.ix_(h_index, h_index)] = h.U
    return Colligation(base, m, width, U)


def odot_product(g: Colligation, h: Colligation) -> Colligation:
    """
    Colligation of the pointwise product Theta[g] Theta[h]

    Parameters:
        g: Colligation of shape (alpha, m, i)
        h: Colligation of shape (alpha, m, j)

    Returns:
        A colligation of shape (alpha, m, i + j)

    Raises:
        ValueError: alpha or m differ
    """
    if g.alpha != h.alpha or g.m != h.m:
        raise ValueError(
            f"odot_product needs equal alpha and m, received {g.shape} and {h.shape}"
        )
    alpha, m = g.alpha, g.m
    width = g.j + h.j
    size = alpha + m * width
    left = _place(g.U, _embedding(range(alpha), m, width, 0, g.j, alpha), size)
    right = _place(h.U, _embedding(range(alpha), m, width, g.j, h.j, alpha), size)
    return Colligation(alpha, m, width, left @ right)


def inflate_left(g: Colligation, beta: int) -> Colligation:
    """
    Colligation of ``kron(identity(beta), Theta[g])``

    The internal multiplicity becomes j * beta.
    """
    beta = utils.ensure_count(beta, "beta")
    return Colligation(g.alpha * beta, g.m, g.j * beta, kron_identity(g.U, beta))


def kron_identity(U: ComplexMatrix, beta: int) -> ComplexMatrix:
    """kron(identity(beta), U), i.e. every entry of U blown up to a beta x beta block"""
    return np.kron(U, identity(beta))


def inflate_right(g: Colligation, beta: int) -> Colligation:
    """
    Colligation of ``kron(Theta[g], identity(beta))``, the block diagonal
    matrix with beta copies of Theta[g]
    """
    beta = utils.ensure_count(beta, "beta")
    copies = [g] * beta
    return reduce(direct_sum, copies, Colligation(0, g.m, 0, np.zeros((0, 0))))


def tensor_product(g: Colligation, h: Colligation) -> Colligation:
    """
    Colligation of the pointwise tensor product kron(Theta[g], Theta[h])

    Built as the odot product of ``kron(identity(alpha), Theta[h])`` and
    ``kron(Theta[g], identity(beta))``, whose product is the tensor product.

    Parameters:
        g: Colligation of shape (alpha, m, i)
        h: Colligation of shape (beta, m, j)

    Returns:
        A colligation of shape (alpha * beta, m, i * beta + alpha * j)

    Raises:
        ValueError: g and h have different m
    """
    if g.m != h.m:
        raise ValueError(f"tensor_product needs equal m, received {g.m} and {h.m}")
    return odot_product(inflate_left(h, g.alpha), inflate_right(g, h.alpha))


def tensor_power(g: Colligation, power: int) -> Colligation:
    """
    The iterated tensor product of 'power' copies of g

    The zeroth power is the constant 1 x 1 colligation [1].
    """
    power = utils.ensure_count(power, "power")
    if power == 0:
        return identity_colligation(1, g.m)
    return reduce(tensor_product, [g] * (power - 1), g)


def _compose_direct(G: Colligation, F: Colligation, tol: ToleranceConfig) -> Colligation:
    """The circledast construction; raises SingularPivot when (1 - p d) is singular"""
    inner = kron_identity(F.U, G.j)
    block = star_blocks(G.U, G.alpha, inner, F.m * F.j * G.j, tol)
    result = Colligation(G.alpha, F.m, F.j * G.j, block, validate=False)
    defect = unitarity_defect(result.U)
    if defect > tol.scaled(result.size) * _unit_band:
        raise SingularPivot(f"composition lost unitarity (defect {defect:.3e})")
    return result


def compose(
    G: Colligation,
    F: Colligation,
    probe: Optional[ComplexMatrix] = None,
    tol: Optional[ToleranceConfig] = None,
) -> Colligation:
    """
    Colligation of the composition Theta[G] o Theta[F]

    The direct construction requires det(1 - d (1_j (x) p)) != 0 where d
    belongs to G and p is the upper left block of F. When it fails, F is
    first precomposed with the transvection sending 0 to 'probe', composed,
    and the transvection is undone.

    Parameters:
        G: Colligation of shape (gamma, beta, j)
        F: Colligation of shape (beta, alpha, i)
        probe: Interior point of the source ball of F, defaults to 0

    Returns:
        A colligation of shape (gamma, alpha, i * j)

    Raises:
        CompositionSingular: both constructions fail
        ValueError: F does not map into the source ball of G
    """
    tol = ToleranceConfig.resolve(tol)
    if G.m != F.alpha:
        raise ValueError(
            f"Cannot compose: G is defined on B_{G.m} but F maps into B_{F.alpha}"
        )
    try:
        return _compose_direct(G, F, tol)
    except SingularPivot as direct:
        if probe is None:
            raise CompositionSingular(f"composition pivot is singular: {direct}") from direct

    S0 = utils.as_matrix(probe, "probe") if np.size(probe) else np.zeros((F.m, F.m), dtype=complex)
    if S0.shape != (F.m, F.m) or not np.any(S0):
        raise CompositionSingular("composition pivot is singular at the probe")
    try:
        h = transvection_to(S0, tol)
        moved = _compose_direct(F, mobius_colligation(h, tol), tol)
        joined = _compose_direct(G, moved, tol)
        return _compose_direct(joined, mobius_colligation(pseudo_inverse_action(h), tol), tol)
    except (SingularPivot, NotInterior) as reduced:
        raise CompositionSingular(
            f"composition pivot is singular directly and at the probe: {reduced}"
        ) from reduced


def aut_precompose(
    F: Colligation,
    h: ComplexMatrix,
    probe: Optional[ComplexMatrix] = None,
    tol: Optional[ToleranceConfig] = None,
) -> Colligation:
    """
    Colligation of ``S -> Theta[F; mobius(h, S)]`` for h in U(m, m)

    Raises:
        CompositionSingular: as compose
    """
    return compose(F, mobius_colligation(h, tol), probe=probe, tol=tol)


def aut_postcompose(
    F: Colligation,
    h: ComplexMatrix,
    probe: Optional[ComplexMatrix] = None,
    tol: Optional[ToleranceConfig] = None,
) -> Colligation:
    """
    Colligation of ``S -> mobius(h, Theta[F; S])`` for h in U(alpha, alpha)

    Raises:
        CompositionSingular: as compose
    """
    return compose(mobius_colligation(h, tol), F, probe=probe, tol=tol)


def _selector(first: int, second: int, keep_first: bool, twist: complex) -> Colligation:
    """
    The (kept, first + second, 1) colligation mapping diag(u1, u2) to the
    kept block, with the other block fed back through 'twist'
    """
    kept = first if keep_first else second
    total = first + second
    U = np.zeros((kept + total, kept + total), dtype=complex)
    kept_slots = range(kept, kept + first) if keep_first else range(kept + first, kept + total)
    other_slots = range(kept + first, kept + total) if keep_first else range(kept, kept + first)
    for i, slot in enumerate(kept_slots):
        U[i, slot] = 1
        U[slot, i] = 1
    for slot in other_slots:
        U[slot, slot] = twist
    return Colligation(kept, total, 1, U)


def _off_diagonal(theta: ComplexMatrix, alpha1: int) -> float:
    return max(op_norm(theta[:alpha1, alpha1:]), op_norm(theta[alpha1:, :alpha1]))


def split_off(
    F: Colligation, spec: SplitSpec, tol: Optional[ToleranceConfig] = None
) -> tuple[Colligation, Colligation]:
    """
    Splits a block diagonal characteristic function into its diagonal blocks

    Each block is obtained by composing F with a Krein-Shmul'yan colligation
    that reads off one block and feeds the other back. The plain feedback is
    singular when the other block takes eigenvalue 1 (for instance when it is
    the constant 1_k), in which case the feedback is twisted by
    spec.lambda_twist. Probe points are tried in turn for each variant.

    Parameters:
        F: Colligation whose Theta is block diagonal with blocks
            (alpha1, alpha2)
        spec: The block sizes

    Returns:
        Colligations of shape (alpha1, m, .) and (alpha2, m, .)

    Raises:
        NotBlockDiagonal: Theta[F] has off diagonal entries at a probe point
        SplitSingular: every pivot tried is singular
    """
    tol = ToleranceConfig.resolve(tol)
    if spec.alpha1 + spec.alpha2 != F.alpha:
        raise ValueError(
            f"Split sizes {spec.alpha1} + {spec.alpha2} do not add up to {F.alpha}"
        )
    empty = Colligation(0, F.m, 0, np.zeros((0, 0)))
    if spec.alpha2 == 0:
        return F, empty
    if spec.alpha1 == 0:
        return empty, F

    probes = probe_points(F.m)
    checked = 0
    for point in probes:
        try:
            theta = theta_eval(F, point, tol)
        except SingularPivot:
            continue
        checked += 1
        residual = _off_diagonal(theta, spec.alpha1)
        if residual > tol.scaled(F.alpha) * _unit_band:
            raise NotBlockDiagonal(
                f"off diagonal block has norm {residual:.3e} at a probe point"
            )
    if not checked:
        raise SplitSingular("characteristic function is singular at every probe point")

    parts = []
    for keep_first in (True, False):
        parts.append(_split_part(F, spec, keep_first, probes, tol))
    return parts[0], parts[1]


def _split_part(
    F: Colligation,
    spec: SplitSpec,
    keep_first: bool,
    probes: Sequence[ComplexMatrix],
    tol: ToleranceConfig,
) -> Colligation:
    for twist in (1.0, spec.lambda_twist):
        selector = _selector(spec.alpha1, spec.alpha2, keep_first, twist)
        for point in probes:
            try:
                return compose(selector, F, probe=point, tol=tol)
            except CompositionSingular:
                continue
    raise SplitSingular(
        f"no regular pivot found for block {'1' if keep_first else '2'} of the split"
    )


def _embedding_colligation(m: int, k: int) -> Colligation:
    """The (m, m - k, 1) colligation with Theta(u) = diag(u, 1_k)"""
    free = m - k
    a = utils.block_diag(np.zeros((free, free)), identity(k))
    b = np.vstack([identity(free), np.zeros((k, free))])
    U = np.block([[a, b], [b.T, np.zeros((free, free))]])
    return Colligation(m, free, 1, U)


def restrict_to_component(
    F: Colligation,
    k: int,
    reducer: Optional[ComplexMatrix] = None,
    probe: Optional[ComplexMatrix] = None,
    tol: Optional[ToleranceConfig] = None,
) -> Colligation:
    """
    Restricts Theta[F] to a boundary component of the source ball

    The component is the image under mobius(reducer, .) of the canonical
    component ``{diag(u, 1_k)}``, which is a copy of the smaller ball
    B_{m - k}. Without a reducer the canonical component is used.

    Parameters:
        F: Colligation of shape (alpha, m, j)
        k: Corank of the component, 0 <= k < m
        reducer: Element of U(m, m) locating the component
        probe: Point of the component, either as its (m - k) x (m - k)
            coordinate u or as the m x m point itself

    Returns:
        A colligation of shape (alpha, m - k, .) whose characteristic function
        is ``u -> Theta[F; mobius(reducer, diag(u, 1_k))]``

    Raises:
        SingularOnComponent: the pivot is singular at the probe
    """
    tol = ToleranceConfig.resolve(tol)
    k = utils.ensure_count(k, "k")
    if not k < max(F.m, 1):
        raise ValueError(f"k must satisfy 0 <= k < m = {F.m}, received {k}")
    if k == 0 and reducer is None:
        return F
    free = F.m - k

    point = None
    if probe is not None:
        point = utils.as_matrix(probe, "probe")
        if point.shape == (F.m, F.m):
            if reducer is not None:
                point = mobius(pseudo_inverse_action(reducer), point, tol)
            point = point[:free, :free]
        if point.shape != (free, free):
            raise ValueError(f"probe must be {free}x{free} or {F.m}x{F.m}")
    try:
        moved = F if reducer is None else aut_precompose(F, reducer, tol=tol)
        return compose(moved, _embedding_colligation(F.m, k), probe=point, tol=tol)
    except CompositionSingular as e:
        raise SingularOnComponent(f"characteristic function is singular on the component: {e}") from e


def corestrict_from_component(F: Colligation, tol: Optional[ToleranceConfig] = None) -> Colligation:
    """
    Corestricts Theta[F] to the boundary component of the target ball that
    contains its image

    The corank k is read off Theta[F; 0] = a. An automorphism moving a into
    the form diag(a', 1_k) is applied to F, the constant 1_k block is
    checked at probe points and the moving block is split off.

    Returns:
        A colligation of shape (alpha - k, m, .); F itself when k = 0

    Raises:
        ImageNotInComponent: the moved function lacks the constant 1_k block
    """
    tol = ToleranceConfig.resolve(tol)
    k = stratum(F.a, tol).defect_rank
    if k == 0:
        return F
    h, _ = canonical_component_form(F.a, tol)
    moved = F if np.allclose(h, identity(h.shape[0])) else aut_postcompose(F, h, tol=tol)

    free = F.alpha - k
    target = identity(k)
    for point in probe_points(F.m):
        try:
            theta = theta_eval(moved, point, tol)
        except SingularPivot:
            continue
        residual = max(
            op_norm(theta[free:, free:] - target), _off_diagonal(theta, free)
        )
        if residual > tol.scaled(F.alpha) * _unit_band:
            raise ImageNotInComponent(
                f"image leaves the boundary component of corank {k} (residual {residual:.3e})"
            )
    return split_off(moved, SplitSpec(free, k), tol)[0]

