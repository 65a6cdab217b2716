"""Growth of free-monoid and free-group actions, Stallings cores with exact
deficit analytics, graph surgeries, and module growth over free algebras."""

__version__ = "0.1.0"

from .words import (ZParams, apply_nielsen, apply_nielsen_inverse,
                    count_avoiding, count_occurrences, cyclic_decompose,
                    free_reduce, inverse, multiply, sample_reduced,
                    shortlex_key, z_membership)
from .stallings import (CoreAutomaton, build_core, core_from_json,
                        core_to_json, deficit, embed_check, extend_core,
                        index, membership, rank, schreier_basis)
from .growth import (GrowthSeries, LazyCosetGraph, boundary_measure_bounds,
                     classify, faithfulness_scan, growth_series,
                     leading_term_decompose, validate_series)
from .acts import (Act, act_growth, build_k_transitive, build_prescribed,
                   check_property_dagger)
from .linmod import (Echelon, RuleModule, build_extension_example, build_residually_finite_module,
                     cogrowth, free_gens, free_module, golod_bound_check,
                     module_growth, nil_step, quasi_convert)
from .surgery import (ElementarySpec, TowerStep, adjoin_power,
                      attach_elementary, basis_change_experiment, link_tuples,
                      tower)
