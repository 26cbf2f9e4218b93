"""First-order separability for regular languages of countable ordinal words."""

from .decision import (
    LanguageRecognizer,
    Outcome,
    check_certificate,
    cover,
    pointlikes,
    separate,
)
from .derivation import EquivDerivation, check_derivation
from .errors import BoundsExceeded, InconsistencyError, MalformedInput
from .fileformat import load_presentation, parse_presentation, print_presentation
from .green import greens
from .monoid import (
    LetterMap,
    OrdinalMonoid,
    idempotent_power,
    is_aperiodic,
    power_plus,
    validate_presentation,
)
from .powerset import SubsetElement, p_merge, p_omega, p_product
from .saturation import saturate, saturate_letters
from .witness import witness_pair, witnesses
from .words import eval_expr, parse_expr

__all__ = [
    "BoundsExceeded",
    "EquivDerivation",
    "InconsistencyError",
    "LanguageRecognizer",
    "LetterMap",
    "MalformedInput",
    "OrdinalMonoid",
    "Outcome",
    "SubsetElement",
    "check_certificate",
    "check_derivation",
    "cover",
    "eval_expr",
    "greens",
    "idempotent_power",
    "is_aperiodic",
    "load_presentation",
    "p_merge",
    "p_omega",
    "p_product",
    "parse_expr",
    "parse_presentation",
    "pointlikes",
    "power_plus",
    "print_presentation",
    "saturate",
    "saturate_letters",
    "separate",
    "validate_presentation",
    "witness_pair",
    "witnesses",
]
