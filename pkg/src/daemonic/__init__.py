"""Ergotropy, daemonic ergotropy and daemonic gain for a qubit and its ancilla
under local and memory-correlated amplitude damping."""

from .channels import (
    KrausChannel,
    MemoryChannelSpec,
    amplitude_damping,
    apply,
    apply_local_to_system,
    apply_memory,
    is_unital,
    memory_amplitude_damping,
)
from .states import (
    DensityMatrix,
    classically_correlated,
    initial_state,
    is_diagonal_in_computational_product_basis,
    make_density,
    partial_trace_ancilla,
)
from .work import (
    GainResult,
    OptimizerSettings,
    ProjectivePair,
    QubitHamiltonian,
    daemonic_ergotropy,
    daemonic_gain,
    ergotropy,
    mean_energy,
    measure_ancilla,
    passive_state,
    qubit_projectors,
)

__version__ = "0.1.0"
