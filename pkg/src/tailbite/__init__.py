"""Self-dual quasi-cyclic block codes as tailbiting convolutional codes.

Construction of the rate-1/2 code family (pure quasi-cyclic, first-row
replacement, double circulants), exhaustive weight-enumerator verification,
and tailbiting Viterbi encoding/decoding with a reproducible simulation
harness.
"""

from .bitlinalg import (
    BitMatrix,
    BitVector,
    contains,
    cyclic_shift,
    is_self_orthogonal,
    rank,
    row_space_equal,
    weight,
)
from .construction import (
    CodeSpec,
    PolynomialPair,
    a3_generator,
    bordered_double_circulant,
    build_generator,
    circulant,
    mixed_string,
    pure_double_circulant,
    qc_generator,
)
from .analysis import (
    EnumeratorTemplate,
    TemplateFit,
    WeightDistribution,
    extremal_bound,
    fit_template,
    is_quasi_cyclic,
    is_self_dual,
    macwilliams_selfcheck,
    min_distance,
    parity_class,
    weight_distribution_gray,
    weight_distribution_naive,
)
from .tbcc import a3_encode, tb_encode
from .decode import (
    ChannelModel,
    DecodeResult,
    ReceivedFrame,
    SimReport,
    apply_channel,
    build_trellis,
    simulate,
    viterbi_exact_ml,
    viterbi_wava,
)
from .errors import (
    ConstructionError,
    DegenerateCodeError,
    ParameterError,
    ResourceRefusalError,
    TailbiteError,
)
from .registry import Registry, load_registry

__version__ = "0.1.0"
