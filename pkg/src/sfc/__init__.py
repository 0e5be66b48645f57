"""Finite-field linear-code workbench.

Builds [q+1, 2, q] MDS codes over GF(q) from a polynomial catalog, derives
their GF(p) subfield codes, enumerates weight distributions exactly, checks
classical bounds, evaluates character sums against closed forms, and
machine-verifies the claim registry in sfc.verify.
"""

from .galois import FiniteField, make_field, cached_field, load_tables, save_tables
from .lincode import (
    GenMatrix,
    LinearCode,
    WeightDistribution,
    dual_min_distance_upto,
    griesmer_min_length,
    is_griesmer_nearly_optimal,
    mds_weight_formula,
    pless_dual_low_weights,
    row_reduce,
    sphere_packing_max_dim,
    weight_distribution,
)
from .construct import PolySpec, build_G, catalog, gcd_condition, mds_conditions, oval_check
from .subfield import Basis, expand_subfield, trace_code, walsh, weight_via_walsh
from .verify import TheoremId, predicted, probe_conjecture, run_verification

__version__ = "0.1.0"
