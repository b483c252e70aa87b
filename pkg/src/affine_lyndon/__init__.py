"""Standard Lyndon words for untwisted affine root systems and their chain periodicity."""

from .chains import (
    ChainId,
    ChainProfile,
    ChunkFormat,
    Literal,
    Run,
    chain_profile,
    chain_words,
    irr_chains,
    l_value,
    mod_delta,
    to_chunk_format,
    u_value,
    v_bound,
    y_word,
)
from .errors import AffineLyndonError, ConfigurationError, DepthError, UsageError
from .leclerc import SLTable, bracket_nonzero, compare_extended, generate_up_to_delta, sl
from .root_core import ExtendedRoot, FiniteRootSystem, FiniteType, build_system, classify, decompositions
from .verify import CheckRecord, SuiteConfig, VerificationReport, run_suite
from .words import (
    LetterOrder,
    Ordering,
    Word,
    canonical_factorization,
    compare,
    costandard_factorization,
    is_lyndon,
    standard_factorization,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
