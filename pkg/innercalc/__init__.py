# -*- coding: utf-8 -*-
"""
The top-level innercalc module for building colligations, evaluating their
characteristic functions and combining them with the calculus operations,
as well as interacting with the package globals and the verification
harness

Examples:
    .. highlight:: python
    .. code:: python

         import numpy as np
         import innercalc as ic

         # Two random colligations with the same source ball B_2
         g = ic.random_colligation(1, 2, 1, seed=1)
         h = ic.random_colligation(1, 2, 2, seed=2)

         # Their pointwise product
         F = ic.odot_product(g, h)
         S = 0.5 * np.eye(2)
         np.allclose(F(S), g(S) @ h(S))

         # Global defaults
         ic.globals.seed = 7

         # Running a theorem suite
         report = ic.run_verify("T2", trials=50)
"""

# Standard imports
from __future__ import annotations

# Local imports
from ._geometry import (
    BoundaryStratum,
    KSMorphism,
    ToleranceConfig,
    canonical_component_form,
    circledast,
    haar_unitary,
    identity,
    is_pseudo_unitary,
    is_unitary,
    kron,
    ks_map,
    mobius,
    mobius_ks,
    op_norm,
    pseudo_inverse_action,
    pseudo_unitary_form,
    sample_ball_point,
    stratum,
    transvection_to,
    unitarity_defect,
)
from ._colligations import (
    Colligation,
    InnerCertificate,
    PolyRep,
    Signature,
    SplitSpec,
    ambient_apply,
    aut_postcompose,
    aut_precompose,
    build_irrep,
    certify_inner,
    compose,
    conjugate,
    constant_colligation,
    corestrict_from_component,
    direct_sum,
    highest_weight_coefficient,
    identity_colligation,
    inflate_left,
    inflate_right,
    is_char_interior,
    ks_colligation,
    mobius_colligation,
    odot_product,
    random_colligation,
    rep_apply,
    rep_compose_colligation,
    restrict_to_component,
    split_off,
    tensor_power,
    tensor_product,
    theta_eval,
    theta_oracle,
    wedge_embedding,
    wedge_rep,
    weyl_dim,
)
from ._io import deserialize, from_document, load, save, serialize, to_document
from ._verify import (
    Suite,
    TrialOutcome,
    VerificationReport,
    aggregate_reports,
    run_verify,
    theorems as _theorems,
)
from ._globals import __globals
from . import suites
from . import utils
from . import dtypes as _dtypes_module

# Typing
from typing import (
    Any,
)


class _dtypes(tuple):
    """
    Controls access to the dtypes module by rerouting attribute access.
    """

    def __new__(cls, types_list: list[type], organized: dict[str, list]) -> _dtypes:
        return super().__new__(cls, tuple(types_list))  # type: ignore[arg-type]

    def __init__(self, to_tuple: list[type], organized: dict[str, list]) -> None:
        self.organized = organized

    def __getattr__(self, attr: str) -> Any:
        try:
            return getattr(_dtypes_module, attr)
        except AttributeError as e:
            try:
                return self.organized[attr]
            except KeyError:
                raise e


dtypes = _dtypes(_dtypes_module._alltypes, _dtypes_module._alltypes_organized)


def __getattr__(name: str) -> Any:
    if name == "globals":
        return __globals

    if name == "theorems":
        return _theorems

    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")


# Organization of objects in All determines order in the documentation.
# Please make sure they are ordered correctly when adding new items
__all__ = [
    # matrix core
    "ToleranceConfig",
    "identity",
    "kron",
    "op_norm",
    "unitarity_defect",
    "is_unitary",
    "pseudo_unitary_form",
    "is_pseudo_unitary",
    "haar_unitary",
    "sample_ball_point",
    # ball geometry
    "KSMorphism",
    "BoundaryStratum",
    "ks_map",
    "circledast",
    "mobius",
    "mobius_ks",
    "pseudo_inverse_action",
    "transvection_to",
    "stratum",
    "canonical_component_form",
    # colligations
    "Colligation",
    "InnerCertificate",
    "theta_eval",
    "theta_oracle",
    "conjugate",
    "certify_inner",
    "is_char_interior",
    "constant_colligation",
    "identity_colligation",
    "random_colligation",
    "ks_colligation",
    "mobius_colligation",
    # calculus
    "SplitSpec",
    "direct_sum",
    "odot_product",
    "inflate_left",
    "inflate_right",
    "tensor_product",
    "tensor_power",
    "compose",
    "aut_precompose",
    "aut_postcompose",
    "split_off",
    "restrict_to_component",
    "corestrict_from_component",
    # representations
    "Signature",
    "PolyRep",
    "wedge_rep",
    "wedge_embedding",
    "weyl_dim",
    "ambient_apply",
    "build_irrep",
    "rep_apply",
    "highest_weight_coefficient",
    "rep_compose_colligation",
    # serialization and verification
    "serialize",
    "deserialize",
    "to_document",
    "from_document",
    "save",
    "load",
    "Suite",
    "TrialOutcome",
    "VerificationReport",
    "run_verify",
    "aggregate_reports",
]
