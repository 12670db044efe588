"""Quantum serial turbo-codes: convolutional seeds, distance spectra,
exact SISO decoding, and Monte Carlo word-error-rate estimation."""

from qturbo.channel import (
    PauliChannel,
    channel_from_config,
    depolarizing,
    hashing_rate,
    priors,
    sample,
)
from qturbo.conv_code import (
    ConvEncoder,
    InverseResult,
    SeedTransformation,
    encode,
    inverse_encode,
    load_seed,
    store_seed,
    syndrome,
)
from qturbo.errors import (
    CatastrophicSeedError,
    QTurboError,
    ResourceBudgetError,
    SisoFailure,
    ValidationError,
)
from qturbo.gf2_symplectic import (
    PauliString,
    SymplecticMatrix,
    apply,
    invert,
    matmul,
    random_symplectic,
    star,
    weight,
    xz_split,
)
from qturbo.montecarlo import (
    SearchResult,
    TrialReport,
    run_wer,
    search_codes,
    wilson,
)
from qturbo.seeds import shipped_seed
from qturbo.siso import (
    SisoInput,
    SisoOutput,
    siso_decode,
    uniform_logical_priors,
)
from qturbo.spectrum import DistanceSpectrum, compute_spectrum, turbo_dmin_bound
from qturbo.state_graph import (
    StateDiagram,
    build_state_diagram,
    is_non_catastrophic,
    is_recursive,
    kernel_graph,
    zero_weight_cycles,
)
from qturbo.turbo import (
    QuantumInterleaver,
    TurboCode,
    TurboDecodeResult,
    TurboInverse,
    random_interleaver,
    turbo_decode,
    turbo_encode_inverse,
    turbo_syndromes,
)

__version__ = "0.1.0"

__all__ = [
    "CatastrophicSeedError",
    "ConvEncoder",
    "DistanceSpectrum",
    "InverseResult",
    "PauliChannel",
    "PauliString",
    "QTurboError",
    "QuantumInterleaver",
    "ResourceBudgetError",
    "SearchResult",
    "SeedTransformation",
    "SisoFailure",
    "SisoInput",
    "SisoOutput",
    "StateDiagram",
    "SymplecticMatrix",
    "TrialReport",
    "TurboCode",
    "TurboDecodeResult",
    "TurboInverse",
    "ValidationError",
    "apply",
    "build_state_diagram",
    "channel_from_config",
    "compute_spectrum",
    "depolarizing",
    "encode",
    "hashing_rate",
    "inverse_encode",
    "invert",
    "is_non_catastrophic",
    "is_recursive",
    "kernel_graph",
    "load_seed",
    "matmul",
    "priors",
    "random_interleaver",
    "random_symplectic",
    "run_wer",
    "sample",
    "search_codes",
    "shipped_seed",
    "siso_decode",
    "star",
    "store_seed",
    "syndrome",
    "turbo_decode",
    "turbo_dmin_bound",
    "turbo_encode_inverse",
    "turbo_syndromes",
    "uniform_logical_priors",
    "weight",
    "wilson",
    "xz_split",
    "zero_weight_cycles",
]
