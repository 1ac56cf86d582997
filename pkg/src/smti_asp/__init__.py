"""Stable marriage with ties and incomplete lists, solved through answer-set programs.

The modules, bottom up:

- ``model``: instances, matchings, weak stability and costs
- ``oracle``: brute-force enumeration and optimisation
- ``gs``: deferred acceptance with tie-breaking
- ``asp``: a small exact answer-set kernel
- ``encode``: the program encodings and DLV text
- ``threedim``: the man/woman/child variant
- ``instances`` and ``cli``: file format, generators, command line
"""
from .errors import (
    BoundExceededError,
    InvalidInstanceError,
    MalformedMatchingError,
    ParseError,
    SmtiError,
    UnacceptablePartnerError,
)
from .model import (
    Criterion,
    CriterionKind,
    Direction,
    Matching,
    PersonRef,
    PreferenceList,
    SmtiInstance,
    block_report,
    is_weakly_stable,
    matching_cost,
)
from .instances import format_instance, generate_instance, generate_instance_3d, parse_instance
from .threedim import Matching3, Smti3dInstance

__version__ = "0.1.0"

__all__ = [
    "BoundExceededError",
    "Criterion",
    "CriterionKind",
    "Direction",
    "InvalidInstanceError",
    "MalformedMatchingError",
    "Matching",
    "Matching3",
    "ParseError",
    "PersonRef",
    "PreferenceList",
    "Smti3dInstance",
    "SmtiError",
    "SmtiInstance",
    "UnacceptablePartnerError",
    "block_report",
    "format_instance",
    "generate_instance",
    "generate_instance_3d",
    "is_weakly_stable",
    "matching_cost",
    "parse_instance",
]
