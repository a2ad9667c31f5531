"""Li-Yorke pairs and Hausdorff dimension for coupled-expanding interval maps."""
from .coupled_expanding import (
    BasicSet,
    Branch,
    PiecewiseExpandingMap,
    basic_set,
    code_orbit,
    coded_point,
    diameter_bound,
    limit_set_cover,
    star_contractions,
    synthesize,
    verify,
)
from .dimension import DimensionEstimate, box_count, compare_to_moran, estimate_dimension
from .errors import *  # noqa: F401,F403
from .ifs import (
    MoranRoot,
    Similarity,
    SimilarityIFS,
    bernoulli_cylinder_mass,
    code_point,
    cylinder_weight,
    moran_root,
    moran_root_star,
    validate_ifs,
)
from .intervals import Interval
from .symbolic import (
    Cylinder,
    SymbolStream,
    SymbolWord,
    is_admissible,
    metric,
    phi,
    phi_inverse,
    shift,
)
from .transition_matrix import (
    TransitionMatrix,
    branching_row,
    count_admissible_words,
    enumerate_admissible_words,
    is_irreducible,
    is_star,
    spectral_radius,
    star_core,
)
from .witness import (
    WitnessSchedule,
    build_witness,
    delta_k,
    flip,
    local_dimension_probe,
    membership_violations,
    pr_map,
    verify_liyorke_geometric,
    verify_liyorke_symbolic,
)

__version__ = "0.1.0"
