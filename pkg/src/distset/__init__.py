"""Finite-depth distance-set constructions, exact verification and 3-point spectrum search."""
from .constructors import (
    DistanceTarget,
    GlueSchedule,
    MetricViolation,
    ScheduleViolation,
    build_cantor_ultrametric,
    build_compact_finite,
    build_compact_tree_space,
    build_discrete_ultrametric,
    build_tree_space,
    canonical_net,
    check_tree_space,
    glue_spaces,
)
from .exact import parse_rational, pi_of_word, two_pow_neg, word_of_dyadic
from .metrics import (
    FiniteMetricSpace,
    SpectrumSet,
    distance_set,
    eps_net,
    is_metric,
    is_ultrametric,
    scale,
    spectrum,
    spectrum_project,
)
from .spectra import ColoredClique, TriangleSet, brute_force_oracle, realize_spec3, realize_spec3_upto
from .trees import (
    BinaryTree,
    LimitPointViolation,
    TreeNode,
    TruncatedTree,
    make_choices,
    mutual_predecessor,
    project_first,
)

__version__ = "0.1.0"
