# -*- coding: utf-8 -*-
"""
Polynomial representations of GL(n) and their composition with
characteristic functions

An irreducible polynomial representation is labelled by a signature
m_1 >= ... >= m_n >= 0. It is realized inside the tensor product of exterior
powers ``Lambda^k`` taken with multiplicity m_k - m_{k+1}, as the cyclic span
of the highest weight vector, i.e. the tensor product of the vectors
e_1 ^ ... ^ e_k. All tensor products use the ordering of
:func:`innercalc.kron`.
"""

# Standard imports
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from math import comb, factorial
import warnings

# Third party imports
import numpy as np
import scipy.linalg as la

# Local imports
from ._calculus import SplitSpec, split_off, tensor_power
from ._colligation import Colligation
from .._geometry import ToleranceConfig, haar_unitary, identity, kron, op_norm
from .. import utils
from ..utils import ComplexMatrix, InnerCalcError, SeedLike

# Typing
from typing import (
    Optional,
    Sequence,
)

_repn = utils.settings["REPN"]


class DimensionMismatch(InnerCalcError):
    """The sampled orbit span has a different rank than the Weyl dimension"""

    def __init__(self, sig: Signature, rank: int, expected: int) -> None:
        self.rank = rank
        self.expected = expected
        super().__init__(
            f"orbit span of {sig} has rank {rank}, expected {expected}; retry with more samples"
        )


@dataclass(frozen=True)
class Signature:
    """
    A weakly decreasing tuple of nonnegative integers labelling an
    irreducible polynomial representation of GL(n)

    Raises:
        ValueError: parts are increasing somewhere or negative
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(isinstance(p, bool) or not isinstance(p, (int, np.integer)) for p in self.parts):
            raise TypeError(f"Signature parts must be integers, received {self.parts}")
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"Signature {parts} has negative parts; only polynomial representations are supported")
        if any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"Signature {parts} is not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    def __str__(self) -> str:
        return str(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def boxes(self) -> int:
        return sum(self.parts)

    def factors(self) -> tuple[int, ...]:
        """The exterior power degrees k, each repeated m_k - m_{k+1} times"""
        padded = self.parts + (0,)
        return tuple(
            k + 1 for k in range(self.n) for _ in range(padded[k] - padded[k + 1])
        )


@dataclass(frozen=True, eq=False)
class PolyRep:
    """
    An irreducible polynomial representation realized inside a tensor
    product of exterior powers

    Attributes:
        sig: The signature
        n: Size of the group GL(n)
        dim: Dimension of the representation
        ambient_dim: Dimension of the tensor space
        embed: Isometric embedding (ambient_dim x dim) of the invariant subspace
    """

    sig: Signature
    n: int
    dim: int
    ambient_dim: int
    embed: ComplexMatrix

    def __post_init__(self) -> None:
        if self.embed.shape != (self.ambient_dim, self.dim):
            raise ValueError(f"embed has shape {self.embed.shape}, expected {(self.ambient_dim, self.dim)}")
        defect = op_norm(self.embed.conj().T @ self.embed - identity(self.dim))
        if defect > ToleranceConfig.default().scaled(self.dim) * 10:
            raise ValueError(f"embed is not an isometry (defect {defect:.3e})")
        object.__setattr__(self, "embed", utils.frozen(self.embed))

    def __repr__(self) -> str:
        return f"<PolyRep {self.sig} of GL({self.n}), dim {self.dim}>"

    @property
    def factors(self) -> tuple[int, ...]:
        return self.sig.factors()


def wedge_rep(k: int, g: ComplexMatrix) -> ComplexMatrix:
    """
    The matrix of the k-th exterior power of g

    Rows and columns are indexed by k-subsets in lexicographic order; the
    (I, J) entry is the minor of g on rows I and columns J.

    Raises:
        ValueError: k outside 0..n
    """
    g = utils.as_matrix(g, "g")
    n = g.shape[0]
    if g.shape != (n, n):
        raise ValueError(f"g must be square, received {g.shape}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, received {k}")
    if k == 0:
        return np.ones((1, 1), dtype=complex)
    subsets = [list(s) for s in combinations(range(n), k)]
    rows = np.asarray(subsets)
    # minors[I, J] = det(g[I][:, J])
    blocks = g[rows[:, np.newaxis, :, np.newaxis], rows[np.newaxis, :, np.newaxis, :]]
    return np.linalg.det(blocks)


def weyl_dim(sig: Signature) -> int:
    """
    Dimension of the irreducible representation with signature 'sig'

    ``prod_{i<j} (m_i - m_j + j - i) / (j - i)``
    """
    parts = sig.parts
    total = Fraction(1)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total *= Fraction(parts[i] - parts[j] + j - i, j - i)
    return int(total)


def wedge_embedding(n: int, k: int) -> ComplexMatrix:
    """
    Isometric embedding of Lambda^k(C^n) into the k-fold tensor power

    The column of subset I is the normalized antisymmetrization of
    e_{I_1} (x) ... (x) e_{I_k}. It intertwines wedge_rep(k, g) with the
    k-fold tensor power of g.
    """
    if k == 0:
        return np.ones((1, 1), dtype=complex)
    basis = identity(n)
    subsets = list(combinations(range(n), k))
    out = np.zeros((n**k, len(subsets)), dtype=complex)
    scale = 1 / np.sqrt(factorial(k))
    for col, subset in enumerate(subsets):
        for perm in permutations(range(k)):
            sign = np.linalg.det(identity(k)[list(perm)]).real
            vectors = [basis[:, [subset[p]]] for p in perm]
            out[:, [col]] += sign * scale * reduce(kron, vectors)
    return out


def ambient_apply(factors: Sequence[int], g: ComplexMatrix) -> ComplexMatrix:
    """The tensor product of wedge_rep(k, g) over the given degrees"""
    return reduce(kron, [wedge_rep(k, g) for k in factors], np.ones((1, 1), dtype=complex))


def _check_invariant(
    factors: Sequence[int],
    embed: ComplexMatrix,
    g: ComplexMatrix,
    sig: Signature,
    tol: ToleranceConfig,
) -> None:
    image = ambient_apply(factors, g) @ embed
    leak = op_norm(image - embed @ (embed.conj().T @ image))
    if leak > tol.scaled(embed.shape[0]) * 10:
        raise DimensionMismatch(sig, embed.shape[1], weyl_dim(sig))


def build_irrep(
    sig: Signature,
    samples: Optional[int] = None,
    seed: SeedLike = None,
    tol: Optional[ToleranceConfig] = None,
    retries: Optional[int] = None,
) -> PolyRep:
    """
    Realizes the irreducible representation 'sig' as the orbit span of its
    highest weight vector

    The highest weight vector is the first basis vector of the ambient
    space. Its images under 'samples' Haar unitaries are orthonormalized by
    an SVD with the configured rank cutoff. The rank is checked against
    weyl_dim; on disagreement the sample count is doubled and the span is
    rebuilt, up to 'retries' times.

    Parameters:
        sig: The signature
        samples: Orbit samples, defaults to sample_factor * weyl_dim(sig)
        seed: Seed of the sampled unitaries

    Raises:
        DimensionMismatch: the rank still disagrees after all retries
    """
    tol = ToleranceConfig.resolve(tol)
    n = sig.n
    dim = weyl_dim(sig)
    factors = sig.factors()
    ambient_dim = reduce(lambda acc, k: acc * comb(n, k), factors, 1)
    samples = _repn["sample_factor"] * dim if samples is None else samples
    retries = _repn["retries"] if retries is None else retries
    rng = utils.get_rng(seed)

    rank = 0
    for attempt in range(retries + 1):
        columns = [utils.unit(ambient_dim, 0)]
        for _ in range(samples):
            columns.append(ambient_apply(factors, haar_unitary(n, rng))[:, [0]])
        span = np.hstack(columns)
        U, s, _ = la.svd(span, full_matrices=False)
        rank = int(np.sum(s > _repn["rank_cutoff"]))
        if rank == dim:
            embed = U[:, :rank]
            _check_invariant(factors, embed, haar_unitary(n, rng), sig, tol)
            return PolyRep(sig, n, dim, ambient_dim, embed)
        if attempt < retries:
            warnings.warn(
                f"orbit span of {sig} has rank {rank}, expected {dim}; retrying with {2 * samples} samples"
            )
        samples *= 2
    raise DimensionMismatch(sig, rank, dim)


def rep_apply(rep: PolyRep, g: ComplexMatrix) -> ComplexMatrix:
    """
    The matrix of g in the representation, ``embed* A(g) embed``

    g may be any n x n matrix, singular ones included.
    """
    g = utils.as_matrix(g, "g")
    if g.shape != (rep.n, rep.n):
        raise ValueError(f"g must be {rep.n}x{rep.n}, received {g.shape}")
    return rep.embed.conj().T @ ambient_apply(rep.factors, g) @ rep.embed


def highest_weight_coefficient(sig: Signature, g: ComplexMatrix) -> complex:
    """
    The matrix coefficient of the highest weight vector,
    ``prod_k det(g[:k, :k]) ** (m_k - m_{k+1})``
    """
    g = utils.as_matrix(g, "g")
    value = complex(1)
    for k in sig.factors():
        value *= np.linalg.det(g[:k, :k])
    return value


def rep_compose_colligation(
    rep: PolyRep,
    F: Colligation,
    seed: SeedLike = None,
    tol: Optional[ToleranceConfig] = None,
) -> Colligation:
    """
    Colligation of ``S -> rep_apply(rep, Theta[F; S])``

    Takes the tensor power of F whose degree is the number of boxes of the
    signature, rotates its outer block so that the representation space
    comes first, and splits that block off.

    Parameters:
        rep: A representation of GL(alpha)
        F: Colligation of shape (alpha, m, j)
        seed: Seed of the random completion of the embedding to a unitary

    Returns:
        A colligation of shape (rep.dim, m, .)

    Raises:
        SplitSingular, NotBlockDiagonal: as split_off
    """
    tol = ToleranceConfig.resolve(tol)
    if rep.n != F.alpha:
        raise ValueError(f"representation of GL({rep.n}) cannot act on a {F.alpha}x{F.alpha} function")
    power = tensor_power(F, rep.sig.boxes)
    intertwiner = reduce(
        kron, [wedge_embedding(rep.n, k) for k in rep.factors], np.ones((1, 1), dtype=complex)
    )
    W = intertwiner @ rep.embed
    total = W.shape[0]

    rng = utils.get_rng(seed)
    fill = rng.standard_normal((total, total - rep.dim)) + 1j * rng.standard_normal((total, total - rep.dim))
    Q, _ = la.qr(np.hstack([W, fill]))
    Q[:, : rep.dim] = W

    frame = utils.block_diag(Q, identity(power.size - total))
    rotated = Colligation(total, power.m, power.j, frame.conj().T @ power.U @ frame, tol=tol)
    return split_off(rotated, SplitSpec(rep.dim, total - rep.dim), tol)[0]
