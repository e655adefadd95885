"""Gap functionals of convex functions, global Jensen-gap bounds and
weighted Hermite-Hadamard enclosures, with brute-force checks."""

from .bounds import BoundReport, prop_z_check, t_opt, t_prime
from .convex_core import (
    Certificate,
    ConvexFunction,
    Interval,
    WeightPair,
    WeightVector,
    chain4_bounds,
    chord_sum_check,
    jensen_functional,
    lemma1_check,
    midpoint_gap,
    weighted_gap,
)
from .harness import (
    ConvexGeneratorSpec,
    GridOracleResult,
    fstar_counterexample_search,
    generate_convex,
    grid_max_F,
    grid_max_Fstar,
)
from .quadrature import (
    Enclosure,
    Kernel,
    hh_recover,
    integrate,
    log_limit_kernel,
    power_kernel,
    sine_kernel,
    symmetric_convolution_enclosure,
    weighted_enclosure,
)

__version__ = "0.1.0"
