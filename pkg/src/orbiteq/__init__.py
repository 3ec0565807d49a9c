"""Executable orbit-equivalence machinery for one-sided shifts of finite type.

Semigroup actions of N_0^k by surjective local homeomorphisms, their
semi-groupoids and transformation groupoids, and exact depth-bounded
verifiers for the continuous (one-sided) orbit equivalences between them.
"""

from orbiteq.errors import OrbitEqError
from orbiteq.shift import Sft, TruncatedPoint, ClopenSet, validate_sft, admissible_words
from orbiteq.maps import (
    ProgressiveMap,
    ProgressiveHomeo,
    EqualityCertificate,
    apply_map,
    compose_maps,
    maps_equal,
    check_local_homeo,
)
from orbiteq.action import MonoidAction

__version__ = "0.1.0"

__all__ = [
    "OrbitEqError",
    "Sft",
    "TruncatedPoint",
    "ClopenSet",
    "validate_sft",
    "admissible_words",
    "ProgressiveMap",
    "ProgressiveHomeo",
    "EqualityCertificate",
    "apply_map",
    "compose_maps",
    "maps_equal",
    "check_local_homeo",
    "MonoidAction",
]
