"""Exact simulation of a reversible level map that builds the uniform
superposition of all Hamiltonian cycles, with TSP post-processing."""

from .builder import (
    DEFAULT_BUDGET,
    LevelRecord,
    ProbabilityLedger,
    build_superposition,
    expand_level,
    expected_measurement_cost,
    phase_scramble_then_expand,
    reverse_level,
    sample_repetitions,
)
from .encoding import (
    EdgeIndexer,
    decode_cycle,
    edge_to_index,
    encode_cycle,
    index_to_edge,
    to_ket,
)
from .errors import CapacityExceeded, NotACycle, ZeroProbability
from .mapping import (
    SubOpSpec,
    apply_sub_op,
    apply_um,
    apply_um_aux,
    apply_um_dagger,
    matrix_element_check,
)
from .oracle import WeightMatrix, enumerate_cycles, min_tour, tour_weight
from .qstate import (
    BasisLabel,
    SparseState,
    attach_ancilla_uniform,
    initial_state,
    inner_product,
    project_ancilla_zero,
    project_aux_one,
)

__version__ = "0.1.0"
