"""proxkit: a verification workbench for proximity relations and set algebras."""

from .algebra import SetAlgebra, all_partition_algebras
from .duality import (
    algebra_from_proximity,
    check_prox_iff_measurable,
    is_proximity_map,
    is_zero_dimensional,
    proximity_from_algebra,
)
from .laws import CATALOG, RunOptions, run_law
from .maps import FunctionSpec, compose, identity_map
from .proximity import Proximity
from .reports import LawReport, Witness
from .sequences import FunctionSequence, SetSequence
from .sigma import (
    check_cor_zero_sets,
    check_factorization,
    check_pointwise_closure,
    check_sigma_iff_p_aleph1,
    coreflection,
    is_p_aleph1,
    is_prec_chain,
    lindelof_cozero_chain,
    proximally_baire,
    proximally_zero_from_chain,
)
from .stone import Ideal, StoneSpace, check_smirnov_identity, emit_dot, quotient_algebra, stone_map, ultrafilters
from .universe import (
    INFINITY,
    Cardinality,
    Interval,
    SymSet,
    Universe,
    distance,
    interval_closure,
    probe_window,
)

__version__ = "0.1.0"
