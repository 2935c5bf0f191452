from dataclasses import dataclass, field
from typing import List, Optional

from llycurv.reportschema.report_model import OracleType, RationalType, TransferType

__NAMESPACE__ = "urn:llycurv:report:1"


@dataclass
class EdgeType:
    """
    :ivar kappa: Exact curvature of the edge.
    :ivar upper_bound: (|N(x) ∩ N(y)| + 2) / d_y.
    :ivar oracle: Independent recomputations of kappa.
    :ivar transfer: Positive entries of the optimal coupling.
    :ivar source: Edge endpoint as requested.
    :ivar target: Other endpoint.
    :ivar cost: Optimal transport cost in blow-up units.
    :ivar bound_attained: Whether H1 has a perfect matching.
    :ivar agrees: Whether every oracle matched (absent when none ran).
    """

    kappa: Optional[RationalType] = field(
        default=None,
        metadata={
            "name": "Kappa",
            "type": "Element",
            "namespace": "urn:llycurv:report:1",
            "required": True,
        },
    )
    upper_bound: Optional[RationalType] = field(
        default=None,
        metadata={
            "name": "UpperBound",
            "type": "Element",
            "namespace": "urn:llycurv:report:1",
            "required": True,
        },
    )
    oracle: List[OracleType] = field(
        default_factory=list,
        metadata={
            "name": "Oracle",
            "type": "Element",
            "namespace": "urn:llycurv:report:1",
        },
    )
    transfer: List[TransferType] = field(
        default_factory=list,
        metadata={
            "name": "Transfer",
            "type": "Element",
            "namespace": "urn:llycurv:report:1",
        },
    )
    source: Optional[str] = field(
        default=None,
        metadata={
            "name": "Source",
            "type": "Attribute",
            "required": True,
        },
    )
    target: Optional[str] = field(
        default=None,
        metadata={
            "name": "Target",
            "type": "Attribute",
            "required": True,
        },
    )
    cost: Optional[int] = field(
        default=None,
        metadata={
            "name": "Cost",
            "type": "Attribute",
            "required": True,
        },
    )
    bound_attained: Optional[bool] = field(
        default=None,
        metadata={
            "name": "BoundAttained",
            "type": "Attribute",
            "required": True,
        },
    )
    agrees: Optional[bool] = field(
        default=None,
        metadata={
            "name": "Agrees",
            "type": "Attribute",
        },
    )


@dataclass
class CurvatureReport:
    class Meta:
        name = "CurvatureReport"
        namespace = "urn:llycurv:report:1"

    edge: List[EdgeType] = field(
        default_factory=list,
        metadata={
            "name": "Edge",
            "type": "Element",
        },
    )
