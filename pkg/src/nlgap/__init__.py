"""Linear and nonlinear spectral gaps of finite weighted graphs."""

__version__ = "0.1.0"

from .errors import GapError  # noqa: E402
from .formulas import (bourgain_ratio_bound, distortion_lower_bound,  # noqa: E402
                       hamming_identity_value, pn_mu1, rearrangement_phi,
                       tree_cut_upper_bound, tree_lower_bound)
from .gap import (GapResult, QuotientValue, cut_quotient, gap_exact,  # noqa: E402
                  gap_search, identity_upper_bound, poincare_quotient)
from .graph import (WeightedGraph, build_graph, gen_complete, gen_cycle,  # noqa: E402
                    gen_hamming, gen_path, gen_random_regular, gen_tree_ball,
                    graph_metric_space)
from .metric import (EuclideanConfig, FiniteMetricSpace, distortion_of_map,  # noqa: E402
                     real_points_space, two_point_space, validate_metric)
from .paths import (EdgeWeightW, PathAssignment, bfs_paths, congestion_A,  # noqa: E402
                    gamma_length_w, hamming_bitfix_paths, path_method_lower_bound,
                    tree_exponential_w, tree_geodesic_paths, uniform_w)
from .spectral import Spectrum, laplacian_spectrum, mu1  # noqa: E402
