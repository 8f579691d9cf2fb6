"""Repairable threshold secret sharing over GF(p^m) with regenerating codes."""

from .errors import *  # noqa: F401,F403
from .gf import ExtensionField, FieldElement, ext_field_new, prime_field
from .linpoly import LinearizedPolynomial, interpolate, is_fp_independent, moore_matrix, random_linpoly
from .regcode import (
    CodeParams,
    LinearRegenCode,
    mbr_code,
    naive_example_code,
    paper_example_code,
    product_matrix_mbr,
    repair_by_transfer_mbr,
    validate_code,
)
from .scheme import (
    LINEARIZED,
    NAIVE,
    RepairPacket,
    SchemeConfig,
    Share,
    mbr_params,
    naive_split,
    recover,
    repair_assemble,
    repair_contribute,
    split,
)
from .audit import dimension_check, rates, repair_leakage_check, run_audit, secrecy_exhaustive, secrecy_rank_check
from .kernels import BACKEND

__version__ = "0.1.0"
