"""Simulation and analysis toolkit for deterministic generation of
multidimensional photonic cluster states from a single cavity-coupled spin
with time-delay feedback."""

from .cavity import (CavityParams, ChiralParams, ReflectionPair, chiral_reflection,
                     cooperativity_offres, cooperativity_resonant, from_ghz,
                     quantum_dot_params, reflection_general, spin_dependent_reflection,
                     zeeman_detuning)
from .errors import ResourceLimitError
from .gates import (CPHASE, ErrorSplit, GateTensorPair, chiral_phase_fix,
                    error_split, nearest_neighbor_gate, standard_gate, svd_split,
                    u_cr, u_rf)
from .lattice import EdgeSpec, LatticeDims, chain_edges, coord_of, linear_index
from .metrics import (ErrorModel, FidelityReport, FitResult, SweepCell, alpha,
                      fidelity_curve, fidelity_f0, fidelity_f1, fit_beta,
                      generation_rate, scaling_points, success_probability,
                      sweep_beta)
from .scheduler import Schedule, build_schedule, delay_lengths, validate_schedule
from .tensornet import (SequentialMPS, build_state, ideal_edge_gates, inner_product,
                        peps_site_tensor_1d, photon_edge_gates)

__version__ = "0.1.0"
