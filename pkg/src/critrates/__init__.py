"""Emission-rate engine for emitters near critical composite media.

Public surface re-exported from the submodules; see the package README
for the physics conventions.
"""

from .quadrature import (QuadratureConfig, IntegralResult, QuadratureError,
                         adaptive_gk)
from .materials import (DrudeModel, LorentzTerm, DrudeLorentzModel,
                        TabulatedModel, load_material, BruggemanError,
                        bruggeman_effective, bruggeman_residual,
                        percolation_threshold)
from .hysteresis import (HysteresisTable, read_table, write_table,
                         synthetic_table)
from .greens import (fresnel_te, fresnel_tm, plasmon_pole_index, trace_free,
                     coherent_free, trace_scattered, purcell_scattered,
                     coherent_scattered)
from .rates import (DecoherenceRates, CollectiveRates, decoherence_rates,
                    collective_rates, angular_frequency, bose_occupation,
                    thermal_factor, thermal_decoherence_rates,
                    symmetric_decay_rate)
from .dynamics import (BASIS_LABELS, SYMMETRIC_STATE, lindblad_rhs, evolve,
                       symmetric_population, gibbs_state,
                       symmetric_rate_residual, fit_symmetric_decay,
                       decay_fit_window)
from .sweep import (Axis, SweepConfig, SweepConfigError, SweepTable,
                    load_config, config_to_dict, validate_config, run_sweep,
                    emit_csv, emit_json, read_csv, read_json,
                    resolve_data_source, write_metadata)
from .presets import PRESET_NAMES, preset_config

__version__ = "0.1.0"
