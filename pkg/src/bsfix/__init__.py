"""Exact computation of fixed subgroups and stabilizers in BS(1, n) = Z[1/n] x| Z."""
from .errors import (
    BSError,
    DomainError,
    NoMaximalRoot,
    NotAUnit,
    NotInvertible,
    NotInZn,
    ParseError,
)
from .fixstab import (
    EStabResult,
    FixResult,
    StabResult,
    closure,
    eclosure,
    estab,
    fix,
    per,
    period_two,
    stab_aut,
    stab_power_check,
    stab_subgroup,
)
from .group import (
    BsElem,
    bs_from_word,
    bs_inv,
    bs_kth_root,
    bs_mul,
    bs_pow,
    bs_root_closure,
    bs_to_matrix,
    classify_subgroup,
    element,
)
from .morphisms import (
    Affine,
    TypeII,
    affine,
    apply,
    aut_inverse,
    compose,
    identity_morphism,
    inner,
    is_automorphism,
    morph_pow,
)
from .ring import Base, ZnElem, mu, mult_order, q_ratio

__version__ = "0.1.0"

__all__ = [
    "BSError",
    "DomainError",
    "NoMaximalRoot",
    "NotAUnit",
    "NotInvertible",
    "NotInZn",
    "ParseError",
    "EStabResult",
    "FixResult",
    "StabResult",
    "closure",
    "eclosure",
    "estab",
    "fix",
    "per",
    "period_two",
    "stab_aut",
    "stab_power_check",
    "stab_subgroup",
    "BsElem",
    "bs_from_word",
    "bs_inv",
    "bs_kth_root",
    "bs_mul",
    "bs_pow",
    "bs_root_closure",
    "bs_to_matrix",
    "classify_subgroup",
    "element",
    "Affine",
    "TypeII",
    "affine",
    "apply",
    "aut_inverse",
    "compose",
    "identity_morphism",
    "inner",
    "is_automorphism",
    "morph_pow",
    "Base",
    "ZnElem",
    "mu",
    "mult_order",
    "q_ratio",
]
