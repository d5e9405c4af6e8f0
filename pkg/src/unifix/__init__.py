"""Fixed points of contractive multifunctions over finite pseudometric families."""
from .checker import (Box, ConditionReport, ContractionParams, condition_sides, corollary_sides,
                      holds_at, scan, uniqueness_applicable)
from .hyperspace import FiniteSet, hausdorff, hyper_entourage_contains, nearest_point, point_set_distance
from .multifunction import (BuiltinSpec, ConfigError, Multifunction, evaluate, lift_single_valued,
                            make_builtin)
from .solver import (OrbitTrace, SolveOptions, SolveReport, residual, solve, step, uniqueness_probe,
                     verify_geometric_decay, verify_tail_bound)
from .space import (Entourage, InputError, Point, Pseudometric, PseudometricFamily, as_point,
                    augmented_diameter, entourage_contains, eval_pseudometric)

__version__ = "0.1.0"
