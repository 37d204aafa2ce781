"""Closed-form band edges and the QES engine."""

from .deltas import Deltas, deltas
from .qes import QesBlock, ansatz_matrix, cubic_coefficients, cubic_lambda, qes_block, qes_states
from .states import AnalyticState, count_nodes, period_class_of, schrodinger_residual, sort_states
from .tables import gap_delta2, lame_energies, lame_states, named_states, parabola_spec, table3_states

__all__ = [
    "AnalyticState", "Deltas", "QesBlock", "ansatz_matrix", "count_nodes",
    "cubic_coefficients", "cubic_lambda", "deltas", "gap_delta2", "lame_energies", "lame_states",
    "named_states", "parabola_spec", "period_class_of", "qes_block", "qes_states",
    "schrodinger_residual", "sort_states", "table3_states",
]
