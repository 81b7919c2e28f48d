"""Exact verification of Yang-Baxter structures and related identities."""

from .algebras import ALGEBRAS, AlgebraTable, CoalgebraTable, MultTable, dual_coalgebra
from .reports import CheckReport
from .set_theoretic import FiniteMap, enumerate_solutions, fm_check_braid
from .tensor import Operator, compose, identity, invert, lift, tensor, twist
from .yang_baxter import (
    Variant,
    WxzTriple,
    algebra_yb_inverse,
    algebra_yb_operator,
    check_braid,
    check_implications,
    check_qybe,
    check_variant,
    check_wxz,
    glue,
)

__all__ = [
    "ALGEBRAS",
    "AlgebraTable",
    "CheckReport",
    "CoalgebraTable",
    "FiniteMap",
    "MultTable",
    "Operator",
    "Variant",
    "WxzTriple",
    "algebra_yb_inverse",
    "algebra_yb_operator",
    "check_braid",
    "check_implications",
    "check_qybe",
    "check_variant",
    "check_wxz",
    "compose",
    "dual_coalgebra",
    "enumerate_solutions",
    "fm_check_braid",
    "glue",
    "identity",
    "invert",
    "lift",
    "tensor",
    "twist",
]
