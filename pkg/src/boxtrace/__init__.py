"""Heat traces of the Dirichlet operator sum_i (-d_i^2)^s on hyperrectangles.

Four routes to the trace (direct spectral sums, exact closed forms at
s = 1/2 and s = 1, the intrinsic-volume expansion, the method of images)
plus the box geometry the expansion is written in.
"""

from .convex_geom import (
    CornerSpec,
    GeometryReport,
    HyperBox,
    corner_correction,
    geometry_report,
    intrinsic_volumes,
    mean_breadth,
    quermassintegrals,
    regular_polygon_correction,
    steiner_volume,
    steiner_volume_quermass,
)
from .errors import ConvergenceError, DomainError, ResourceError, ValidityWarning
from .images import (
    ImageSeriesSpec,
    ImageTraceReport,
    QuadratureSpec,
    free_cdf,
    free_density,
    image_density,
    image_density_2d_gaussian,
    image_trace,
    images_2d_gaussian_trace,
    return_density,
    spatial_cutoff,
)
from .special_fn import (
    BernoulliTable,
    ball_volume,
    bernoulli_poly,
    bernoulli_table,
    elementary_symmetric,
    gamma,
    sphere_area,
    theta,
)
from .spectrum import (
    SpectralModel,
    counting_function,
    eigenvalue,
    enumerate_spectrum,
    weyl_prediction,
)
from .trace import (
    AsymptoticExpansion,
    TraceCurve,
    TruncationSpec,
    em_sum,
    expansion_coefficients,
    trace_1d_direct,
    trace_asymptotic,
    trace_asymptotic_product,
    trace_curve,
    trace_direct,
    trace_exact_half,
    trace_theta_s1,
    verify_em_constant,
    weyl_scale,
)

__version__ = "0.1.0"
