"""Generic constructions over models."""
from .cokleisli import CoKleisli, MissingPrimitive, cokleisli, concrete_m_x
from .formulas import UnknownDerived, derived, derived_names
from .slice import SliceModel, slice_model
from .split import (InvalidSplitMap, NotIdempotent, NotLinear, SplitModel,
                    default_split_cokleisli, split_idempotents)
from .storage import (NotBilinear, check_bilinear, classify, cokleisli_diff, is_linear,
                      is_linear_in_slice, linear_candidates_agree, reconstruct_d_tensor,
                      tensor_lift)

__all__ = [
    "CoKleisli", "MissingPrimitive", "cokleisli", "concrete_m_x", "UnknownDerived", "derived",
    "derived_names", "SliceModel", "slice_model", "InvalidSplitMap", "NotIdempotent", "NotLinear",
    "SplitModel", "default_split_cokleisli", "split_idempotents", "NotBilinear", "check_bilinear",
    "classify", "cokleisli_diff", "is_linear", "is_linear_in_slice", "linear_candidates_agree",
    "reconstruct_d_tensor", "tensor_lift",
]
