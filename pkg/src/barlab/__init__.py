"""barlab: persistence barcodes of heavy-tailed extreme point clouds.

Samples Poisson clouds with regularly varying radial tails, computes Čech
persistence exactly at desk scale, evaluates the limit-law quantities the
scaled barcode statistics converge to, and runs the statistical
confrontation between the two.
"""

from .cech import (
    ComplexityBudgetError,
    FilteredComplex,
    Simplex,
    build_filtered_complex,
    miniball,
    simplex_value,
)
from .estimates import LimitEstimate
from .harness import (
    DistributionTests,
    ExperimentConfig,
    ExperimentReport,
    distribution_tests,
    palm_identity_check,
    run_regime_experiment,
)
from .indicators import (
    d_overlap,
    h,
    h_component,
    h_ij,
    h_minus,
    h_plus,
    static_betti,
    union_volume,
)
from .limits import (
    ProcessPath,
    ZSeriesResult,
    c_k,
    indicator_integral,
    mu_integral,
    simulate_V,
    simulate_V_pm,
    simulate_Y,
    simulate_Z,
    xi_integral,
    z_covariance,
    z_mean,
)
from .persistence import (
    Barcode,
    BettiCurve,
    barcode,
    betti_curve,
    lifetime_sum,
    lifetime_sum_by_integration,
)
from .sampling import (
    DensitySpec,
    PointCloud,
    RegimeSpec,
    regime_radius,
    restrict_outside,
    sample_cloud,
    sample_restricted,
)

__version__ = "0.1.0"
