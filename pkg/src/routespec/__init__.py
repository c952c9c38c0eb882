"""Route-matrix analysis of activities-on-arrows project networks."""

from .errors import (CycleError, DimensionError, NumericalError, ParseError,
                     PathBudgetExceeded, RouteSpecError, ValidationError)
from .lp import LpModel, build_lp, export_lp
from .network import (Activity, IncidenceMatrix, ProjectNetwork, ValidationReport,
                      add_virtual_terminals, flow_rhs, incidence_matrix, load_project,
                      parse_project, serialize_project, topological_order, validate)
from .paths import (DEFAULT_MAX_PATHS, RouteMatrix, SimplePath, count_paths,
                    enumerate_paths, route_matrix_from_array)
from .schedule import (ScheduleReport, apply_duration_shift, completion_time,
                       critical_paths, forward_pass, path_durations, project_stress,
                       schedule, total_float)
from .spectral import (NullspaceBasis, Reachability, RelevanceReport, SpectralExpansion,
                       SvdDecomposition, least_squares_durations, minimal_spectral_order,
                       nullspace_basis, pseudoinverse, reachability, relevance,
                       spectral_networks, svd, svd_nullspace, threshold_reconstruct)

__version__ = "0.1.0"
