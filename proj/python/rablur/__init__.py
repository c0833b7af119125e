"""Blow-up atom structures, saturation, and certificates."""

from _rablur import (
    __version__,
    atom_count,
    axiom_violations,
    blur_conditions_ok,
    certify_alpha,
    certify_blur,
    check_certificate,
    chromatic_number,
    cylindric_basis_ok,
    girth,
    matrix_count,
    n_complex_blur,
    represent,
    sample_graph,
)

__all__ = [
    "__version__",
    "atom_count",
    "axiom_violations",
    "blur_conditions_ok",
    "certify_alpha",
    "certify_blur",
    "check_certificate",
    "chromatic_number",
    "cylindric_basis_ok",
    "girth",
    "matrix_count",
    "n_complex_blur",
    "represent",
    "sample_graph",
]
