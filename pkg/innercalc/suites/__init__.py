# -*- coding: utf-8 -*-
"""The theorem suites run by innercalc's verification harness"""
from ._lib import (
    CircledastUnitarySuite,
    CompositionSuite,
    CorestrictionSuite,
    DirectSumSuite,
    InnerSuite,
    KreinShmulyanSuite,
    ProductSuite,
    RepresentationSuite,
    RestrictionSuite,
    SplitSuite,
    TensorSuite,
)

__all__ = [
    "DirectSumSuite",
    "SplitSuite",
    "ProductSuite",
    "TensorSuite",
    "CompositionSuite",
    "RepresentationSuite",
    "CorestrictionSuite",
    "RestrictionSuite",
    "KreinShmulyanSuite",
    "CircledastUnitarySuite",
    "InnerSuite",
]
