"""Quaternionic hyperbolic isometries, reversers and strongly doubly reversible pairs.

Matrices are float arrays of shape (rows, cols, 4) holding (w, x, y, z) per
entry; quaternions are 4-tuples.
"""

import numpy as np

from ._core import (
    QhrError,
    cartan_invariant,
    classify,
    dimension_audit,
    eigenvalue_classes,
    genericity_experiment,
    interchanging_skew_involution,
    membership_residual,
    normal_form,
    quat_mul,
    reverser_space,
    sdr_so3,
    sdr_so4,
    sdr_sp1,
    sdr_sp11,
    sdr_vs_standard_predicate,
    so4_factor,
    solve_orthogonal_phase,
    solve_reflection_axis,
)


def qmatrix(rows):
    """Nested rows of quaternions (4-sequences or real scalars) to a (r, c, 4) array."""
    out = []
    for row in rows:
        line = []
        for q in row:
            if isinstance(q, complex):
                line.append((q.real, q.imag, 0.0, 0.0))
            elif np.isscalar(q):
                line.append((float(q), 0.0, 0.0, 0.0))
            else:
                line.append(tuple(float(v) for v in q))
        out.append(line)
    return np.asarray(out, dtype=float)


__all__ = [
    "QhrError",
    "cartan_invariant",
    "classify",
    "dimension_audit",
    "eigenvalue_classes",
    "genericity_experiment",
    "interchanging_skew_involution",
    "membership_residual",
    "normal_form",
    "qmatrix",
    "quat_mul",
    "reverser_space",
    "sdr_so3",
    "sdr_so4",
    "sdr_sp1",
    "sdr_sp11",
    "sdr_vs_standard_predicate",
    "so4_factor",
    "solve_orthogonal_phase",
    "solve_reflection_axis",
]
