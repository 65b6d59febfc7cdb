from ._matcore import (
    NotUnitary,
    ToleranceConfig,
    checked_inverse,
    checked_solve,
    haar_unitary,
    identity,
    is_pseudo_unitary,
    is_unitary,
    kron,
    op_norm,
    pseudo_unitary_form,
    sample_ball_point,
    unitarity_defect,
)
from ._ballgeo import (
    BoundaryStratum,
    KSMorphism,
    NotInBall,
    NotInterior,
    NotOnBoundary,
    SingularPivot,
    canonical_component_form,
    check_ball,
    circledast,
    feedback,
    ks_map,
    mobius,
    mobius_ks,
    pseudo_inverse_action,
    star_blocks,
    stratum,
    transvection_to,
)
