# -*- coding: utf-8 -*-
"""
The theorem suites of innercalc's verification harness

Each class checks one identity of the colligation calculus on random
inputs. Defining a class registers it under its theorem id, which is how
``innercalc verify`` finds it. Scale parameters (number of trials,
evaluation points, largest block sizes) live in the SUITES section of
settings.yml.
"""

# Standard imports
from __future__ import annotations

# Third party imports
import numpy as np

# Local imports
from .._colligations import (
    Colligation,
    PolyRep,
    Signature,
    SplitSpec,
    build_irrep,
    certify_inner,
    compose,
    corestrict_from_component,
    direct_sum,
    identity_colligation,
    odot_product,
    random_colligation,
    rep_apply,
    rep_compose_colligation,
    restrict_to_component,
    split_off,
    tensor_product,
    theta_eval,
)
from .._geometry import (
    KSMorphism,
    SingularPivot,
    circledast,
    haar_unitary,
    identity,
    kron,
    ks_map,
    mobius,
    sample_ball_point,
    transvection_to,
    unitarity_defect,
)
from .._verify import Suite, TrialOutcome
from .. import utils

# Typing
from typing import (
    Any,
    Optional,
)


class DirectSumSuite(Suite, theorem="T1a"):
    """Theta[direct_sum(g, h)] == diag(Theta[g], Theta[h])"""

    def trial(self, rng: np.random.Generator) -> float:
        m = self.sample_size("max_m", rng)
        g = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng, 0), rng)
        h = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng, 0), rng)
        F = direct_sum(g, h)
        return max(
            self.discrepancy(
                theta_eval(F, S, self.tol),
                utils.block_diag(theta_eval(g, S, self.tol), theta_eval(h, S, self.tol)),
            )
            for S in self.ball_points(m, rng)
        )


class SplitSuite(Suite, theorem="T1b"):
    """
    split_off(direct_sum(g, h)) recovers Theta[g] and Theta[h]

    Half of the trials use the constant h == 1_k, which makes the plain
    splitting pivot singular and exercises the twisted one.
    """

    def trial(self, rng: np.random.Generator) -> float:
        m = self.sample_size("max_m", rng)
        g = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng, 0), rng)
        if rng.random() < 0.5:
            h = identity_colligation(self.sample_size("max_alpha", rng), m)
        else:
            h = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng, 0), rng)
        first, second = split_off(direct_sum(g, h), SplitSpec(g.alpha, h.alpha), self.tol)
        errors = []
        for S in self.ball_points(m, rng):
            errors.append(self.discrepancy(theta_eval(first, S, self.tol), theta_eval(g, S, self.tol)))
            errors.append(self.discrepancy(theta_eval(second, S, self.tol), theta_eval(h, S, self.tol)))
        return max(errors)


class ProductSuite(Suite, theorem="T2"):
    """Theta[odot_product(g, h)] == Theta[g] Theta[h]"""

    def trial(self, rng: np.random.Generator) -> float:
        alpha, m = self.sample_size("max_alpha", rng), self.sample_size("max_m", rng)
        g = random_colligation(alpha, m, self.sample_size("max_j", rng, 0), rng)
        h = random_colligation(alpha, m, self.sample_size("max_j", rng, 0), rng)
        F = odot_product(g, h)
        return max(
            self.discrepancy(theta_eval(F, S, self.tol), theta_eval(g, S, self.tol) @ theta_eval(h, S, self.tol))
            for S in self.ball_points(m, rng)
        )


class TensorSuite(Suite, theorem="T3"):
    """Theta[tensor_product(g, h)] == kron(Theta[g], Theta[h])"""

    def trial(self, rng: np.random.Generator) -> float:
        m = self.sample_size("max_m", rng)
        g = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng, 0), rng)
        h = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng, 0), rng)
        F = tensor_product(g, h)
        return max(
            self.discrepancy(theta_eval(F, S, self.tol), kron(theta_eval(g, S, self.tol), theta_eval(h, S, self.tol)))
            for S in self.ball_points(m, rng)
        )


class CompositionSuite(Suite, theorem="T4"):
    """Theta[compose(G, F); S] == Theta[G; Theta[F; S]]"""

    def trial(self, rng: np.random.Generator) -> float:
        alpha = self.sample_size("max_m", rng)
        beta = self.sample_size("max_alpha", rng)
        gamma = self.sample_size("max_alpha", rng)
        F = random_colligation(beta, alpha, self.sample_size("max_j", rng, 0), rng)
        G = random_colligation(gamma, beta, self.sample_size("max_j", rng, 0), rng)
        H = compose(G, F, tol=self.tol)
        return max(
            self.discrepancy(theta_eval(H, S, self.tol), theta_eval(G, theta_eval(F, S, self.tol), self.tol))
            for S in self.ball_points(alpha, rng)
        )


class RepresentationSuite(Suite, theorem="T5"):
    """
    Theta[rep_compose_colligation(rho, F)] == rho(Theta[F]) for polynomial
    representations rho of GL(alpha)

    Signatures have at most three boxes. Irreducible realizations are cached
    per signature and built from a fixed seed.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self._irreps: dict[Signature, PolyRep] = {}

    def irrep(self, sig: Signature) -> PolyRep:
        if sig not in self._irreps:
            self._irreps[sig] = build_irrep(sig, seed=0, tol=self.tol)
        return self._irreps[sig]

    def sample_signature(self, alpha: int, rng: np.random.Generator) -> Signature:
        parts = sorted((int(p) for p in rng.integers(0, 2, size=alpha, endpoint=True)), reverse=True)
        while sum(parts) > 3:
            parts[0] -= 1
            parts = sorted(parts, reverse=True)
        if not any(parts):
            parts[0] = 1
        return Signature(tuple(parts))

    def trial(self, rng: np.random.Generator) -> float:
        alpha = self.sample_size("max_alpha", rng)
        m = self.sample_size("max_m", rng)
        rep = self.irrep(self.sample_signature(alpha, rng))
        F = random_colligation(alpha, m, self.sample_size("max_j", rng), rng)
        R = rep_compose_colligation(rep, F, seed=rng, tol=self.tol)
        return max(
            self.discrepancy(theta_eval(R, S, self.tol), rep_apply(rep, theta_eval(F, S, self.tol)))
            for S in self.ball_points(m, rng)
        )


class CorestrictionSuite(Suite, theorem="T6a"):
    """
    A function whose image lies in a boundary component corestricts to that
    component

    The function is Theta[g] padded with a constant 1_k block and with its
    coordinates interleaved at random; corestriction must give back Theta[g].
    g is drawn with alpha <= m * j, so that its own image is interior: when
    alpha > m * j the map S -> Theta[g](S) has a constant unit direction and
    corestriction splits that off as well.
    """

    def trial(self, rng: np.random.Generator) -> float:
        m = self.sample_size("max_m", rng)
        j = self.sample_size("max_j", rng)
        alpha = int(rng.integers(1, min(self.settings["max_alpha"], m * j) + 1))
        g = random_colligation(alpha, m, j, rng)
        k = self.sample_size("max_alpha", rng)
        F = direct_sum(g, identity_colligation(k, m))

        # Interleave the 1_k coordinates, keeping the order of the free ones
        alpha = F.alpha
        fixed = sorted(rng.choice(alpha, size=k, replace=False).tolist())
        free = [i for i in range(alpha) if i not in fixed]
        positions = utils.permutation_matrix(free + fixed).T
        frame = utils.block_diag(positions, identity(F.size - alpha))
        F = Colligation(alpha, m, F.j, frame @ F.U @ frame.T, tol=self.tol)

        G = corestrict_from_component(F, self.tol)
        return max(
            self.discrepancy(theta_eval(G, S, self.tol), theta_eval(g, S, self.tol))
            for S in self.ball_points(m, rng)
        )


class RestrictionSuite(Suite, theorem="T6b"):
    """
    restrict_to_component agrees with Theta[F] along the embedding
    ``u -> mobius(reducer, diag(u, 1_k))``

    Half of the trials use a random transvection as the reducer.
    """

    def trial(self, rng: np.random.Generator) -> float:
        m = self.sample_size("max_m", rng, 2)
        k = int(rng.integers(1, m))
        F = random_colligation(self.sample_size("max_alpha", rng), m, self.sample_size("max_j", rng), rng)
        reducer = transvection_to(sample_ball_point(m, 0.5, rng), self.tol) if rng.random() < 0.5 else None
        R = restrict_to_component(F, k, reducer=reducer, tol=self.tol)

        errors = []
        for u in self.ball_points(m - k, rng):
            point = utils.block_diag(u, identity(k))
            if reducer is not None:
                point = mobius(reducer, point, self.tol)
            errors.append(self.discrepancy(theta_eval(R, u, self.tol), theta_eval(F, point, self.tol)))
        return max(errors)


def _random_morphisms(
    settings: dict, rng: np.random.Generator
) -> tuple[KSMorphism, KSMorphism]:
    n, m, k = (int(x) for x in rng.integers(1, settings["max_n"], size=3, endpoint=True))
    zeta = KSMorphism(n, m, haar_unitary(n + m, rng))
    upsilon = KSMorphism(m, k, haar_unitary(m + k, rng))
    return zeta, upsilon


class KreinShmulyanSuite(Suite, theorem="L23"):
    """ks_map(circledast(zeta, upsilon), u) == ks_map(zeta, ks_map(upsilon, u))"""

    def trial(self, rng: np.random.Generator) -> float:
        zeta, upsilon = _random_morphisms(self.settings, rng)
        product = circledast(zeta, upsilon, self.tol, validate=False)
        return max(
            self.discrepancy(ks_map(product, u, self.tol), ks_map(zeta, ks_map(upsilon, u, self.tol), self.tol))
            for u in self.ball_points(upsilon.m, rng)
        )


class CircledastUnitarySuite(Suite, theorem="P21"):
    """
    circledast products of unitary matrices are unitary

    Reports the raw op_norm(zeta* zeta - 1) of the product, without the
    dimension normalization the other suites apply.
    """

    def trial(self, rng: np.random.Generator) -> float:
        zeta, upsilon = _random_morphisms(self.settings, rng)
        product = circledast(zeta, upsilon, self.tol, validate=False)
        return unitarity_defect(product.zeta)


class InnerSuite(Suite, theorem="INNER"):
    """
    Characteristic functions are inner

    Samples colligations with alpha + m*j <= max_size, or certifies a fixed
    colligation when one is given.

    Points skipped on a singular pivot are reported as skipped samples and
    held to max_sample_skip_rate.

    Parameters:
        colligation: Certify this colligation in every trial
    """

    def __init__(self, *args: Any, colligation: Optional[Colligation] = None, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self.colligation = colligation

    def sample(self, rng: np.random.Generator) -> Colligation:
        size = self.settings["max_size"]
        alpha = int(rng.integers(1, min(3, size - 1), endpoint=True))
        m = int(rng.integers(1, min(3, size - alpha), endpoint=True))
        j = int(rng.integers(0, (size - alpha) // m, endpoint=True))
        return random_colligation(alpha, m, j, rng)

    def trial(self, rng: np.random.Generator) -> TrialOutcome:
        g = self.colligation if self.colligation is not None else self.sample(rng)
        certificate = certify_inner(g, self.settings["points"], rng, self.tol)
        if certificate.skipped_singular == certificate.trials:
            raise SingularPivot("every sampled point hit a singular pivot")
        return TrialOutcome(
            certificate.max_defect / max(g.alpha, 1),
            certificate.trials,
            certificate.skipped_singular,
        )
