from ._colligation import (
    Colligation,
    InnerCertificate,
    SingularSystem,
    certify_inner,
    conjugate,
    constant_colligation,
    identity_colligation,
    is_char_interior,
    ks_colligation,
    mobius_colligation,
    random_colligation,
    theta_eval,
    theta_oracle,
)
from ._calculus import (
    CompositionSingular,
    ImageNotInComponent,
    NotBlockDiagonal,
    SingularOnComponent,
    SplitSingular,
    SplitSpec,
    aut_postcompose,
    aut_precompose,
    compose,
    corestrict_from_component,
    direct_sum,
    inflate_left,
    inflate_right,
    odot_product,
    probe_points,
    restrict_to_component,
    split_off,
    tensor_power,
    tensor_product,
)
from ._repn import (
    DimensionMismatch,
    PolyRep,
    Signature,
    ambient_apply,
    build_irrep,
    highest_weight_coefficient,
    rep_apply,
    rep_compose_colligation,
    wedge_embedding,
    wedge_rep,
    weyl_dim,
)
