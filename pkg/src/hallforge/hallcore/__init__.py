"""Truncated completed Hall algebras and identity checkers."""

from .algebra import HallAlgebra, HallElement, TensorElement
from .category import Category, QuiverCategory, SingleVertexSymbolic
from .checks import (
    CheckResult,
    PreconditionError,
    a2_pentagon_check,
    an_pentagonal_pair_check,
    coassociativity_check,
    conjugation_check,
    coproduct,
    coproduct_exp_check,
    degenerate_brick_check,
    exp_product,
    exp_sequence_check,
    fund_rel_check,
    green_check,
    key_identity_0_check,
    key_identity_a_check,
    nu,
    reineke_inverse,
    riedtmann_check,
    serre_check,
    source_order_factorization_check,
    verify_inverse,
)
from .simples import express_in_simples, render

__all__ = [
    "Category",
    "CheckResult",
    "HallAlgebra",
    "HallElement",
    "PreconditionError",
    "QuiverCategory",
    "SingleVertexSymbolic",
    "TensorElement",
    "a2_pentagon_check",
    "an_pentagonal_pair_check",
    "coassociativity_check",
    "conjugation_check",
    "coproduct",
    "coproduct_exp_check",
    "degenerate_brick_check",
    "exp_product",
    "exp_sequence_check",
    "express_in_simples",
    "fund_rel_check",
    "green_check",
    "key_identity_0_check",
    "key_identity_a_check",
    "nu",
    "reineke_inverse",
    "riedtmann_check",
    "render",
    "serre_check",
    "source_order_factorization_check",
    "verify_inverse",
]
