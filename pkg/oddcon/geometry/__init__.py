"""Vector fields, one-forms, coordinate changes and mixed tensors."""

from oddcon.geometry.changes import (
    CoordinateChange,
    change_library,
    identity_change,
    linear_change,
    scaling_change,
    shear_change,
    transform_oneform,
    transform_vector,
)
from oddcon.geometry.fields import (
    OneForm,
    VectorField,
    basis_fields,
    basis_forms,
    coordinate_field,
    coordinate_form,
    format_field,
    pairing,
    vf_apply,
    vf_bracket,
)
from oddcon.geometry.tensors import MixedTensor, evaluate, transform_tensor

__all__ = [
    "CoordinateChange",
    "MixedTensor",
    "OneForm",
    "VectorField",
    "basis_fields",
    "basis_forms",
    "change_library",
    "coordinate_field",
    "coordinate_form",
    "evaluate",
    "format_field",
    "identity_change",
    "linear_change",
    "pairing",
    "scaling_change",
    "shear_change",
    "transform_oneform",
    "transform_tensor",
    "transform_vector",
    "vf_apply",
    "vf_bracket",
]
