"""Concurrence and negativity of two-qubit states, and where they disagree."""

from .errors import (
    BandViolation,
    ConsistencyError,
    EntanglementError,
    InvalidMatrix,
    InvalidState,
    NegativeEigenvalue,
    NoConvergence,
    NonHermitianInput,
    NotOrthogonal,
    NotSeparable,
    ParamOutOfRange,
    RootFindingFailure,
    ZeroVector,
)
from .measures import (
    MeasureSet,
    binary_entropy,
    concurrence,
    eof_from_concurrence,
    log_negativity,
    measure_all,
    negativity,
    pure_measures,
)
from .ordering import (
    CNPoint,
    PairComparison,
    Verdict,
    classify_region,
    compare,
    delta_grid,
    extremal_gaps,
    lower_bound_negativity,
    numeric_extremal_search,
)
from .sampler import SampleReport, SamplerConfig, Xoshiro256, random_density, random_pure, sample_pairs
from .states import (
    KAPPA,
    DensityMatrix,
    FamilySpec,
    PureState,
    density_of,
    family_xv,
    family_xy,
    family_xz,
    horodecki,
    min_neg_state,
    mixture,
    pure_from_amplitudes,
    pure_theta,
    q_prime,
    q_triple_prime,
    werner,
)

__version__ = "0.1.0"
