from dataclasses import dataclass, field
from typing import List, Optional

from llycurv.reportschema.report_model import CheckType, PolePairType, RationalType

__NAMESPACE__ = "urn:llycurv:report:1"


@dataclass
class KappaMinType(RationalType):
    """
    :ivar witness_source: First endpoint of the edge realizing kappa_min.
    :ivar witness_target: Second endpoint.
    """

    witness_source: Optional[str] = field(
        default=None,
        metadata={
            "name": "WitnessSource",
            "type": "Attribute",
            "required": True,
        },
    )
    witness_target: Optional[str] = field(
        default=None,
        metadata={
            "name": "WitnessTarget",
            "type": "Attribute",
            "required": True,
        },
    )


@dataclass
class StructureType:
    """
    :ivar r: Window parameter; absent when the middle degree is not 3(r+1).
    :ivar t: d_x - 2r.
    """

    r: Optional[int] = field(
        default=None,
        metadata={
            "name": "R",
            "type": "Attribute",
        },
    )
    t: Optional[int] = field(
        default=None,
        metadata={
            "name": "T",
            "type": "Attribute",
        },
    )


@dataclass
class SharpnessReport:
    """
    :ivar kappa_min: Minimum edge curvature.
    :ivar pole_pair: Every vertex pair at distance L.
    :ivar check: Results of the pole suite (strict runs only).
    :ivar structure: Diameter-3 parameters of irregular sharp graphs.
    :ivar diameter: L.
    :ivar sharp: kappa_min * L == 2.
    """

    class Meta:
        name = "SharpnessReport"
        namespace = "urn:llycurv:report:1"

    kappa_min: Optional[KappaMinType] = field(
        default=None,
        metadata={
            "name": "KappaMin",
            "type": "Element",
            "required": True,
        },
    )
    pole_pair: List[PolePairType] = field(
        default_factory=list,
        metadata={
            "name": "PolePair",
            "type": "Element",
            "min_occurs": 1,
        },
    )
    check: List[CheckType] = field(
        default_factory=list,
        metadata={
            "name": "Check",
            "type": "Element",
        },
    )
    structure: Optional[StructureType] = field(
        default=None,
        metadata={
            "name": "Structure",
            "type": "Element",
        },
    )
    diameter: Optional[int] = field(
        default=None,
        metadata={
            "name": "Diameter",
            "type": "Attribute",
            "required": True,
        },
    )
    sharp: Optional[bool] = field(
        default=None,
        metadata={
            "name": "Sharp",
            "type": "Attribute",
            "required": True,
        },
    )
