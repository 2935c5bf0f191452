from dataclasses import dataclass, field
from typing import List, Optional

__NAMESPACE__ = "urn:llycurv:report:1"


@dataclass
class RationalType:
    """
    :ivar numerator: Numerator in lowest terms.
    :ivar denominator: Positive denominator in lowest terms.
    :ivar approx: Decimal rendering for display only.
    """

    numerator: Optional[int] = field(
        default=None,
        metadata={
            "name": "Numerator",
            "type": "Attribute",
            "required": True,
        },
    )
    denominator: Optional[int] = field(
        default=None,
        metadata={
            "name": "Denominator",
            "type": "Attribute",
            "required": True,
        },
    )
    approx: Optional[str] = field(
        default=None,
        metadata={
            "name": "Approx",
            "type": "Attribute",
            "required": True,
        },
    )


@dataclass
class OracleType(RationalType):
    """
    :ivar name: Oracle that produced the value (lp, ollivier, lipschitz,
        star).
    """

    name: Optional[str] = field(
        default=None,
        metadata={
            "name": "Name",
            "type": "Attribute",
            "required": True,
        },
    )


@dataclass
class TransferType:
    """
    :ivar from_value: Vertex the mass leaves.
    :ivar to: Vertex the mass reaches.
    :ivar mass: Integer blow-up mass moved.
    """

    from_value: Optional[str] = field(
        default=None,
        metadata={
            "name": "From",
            "type": "Attribute",
            "required": True,
        },
    )
    to: Optional[str] = field(
        default=None,
        metadata={
            "name": "To",
            "type": "Attribute",
            "required": True,
        },
    )
    mass: Optional[int] = field(
        default=None,
        metadata={
            "name": "Mass",
            "type": "Attribute",
            "required": True,
        },
    )


@dataclass
class CheckType:
    """
    :ivar witness: One violation per element.
    :ivar name: Check name.
    :ivar pass_value: Whether the check passed.
    :ivar applicable: Whether the check's hypothesis held.
    """

    witness: List[str] = field(
        default_factory=list,
        metadata={
            "name": "Witness",
            "type": "Element",
            "namespace": "urn:llycurv:report:1",
        },
    )
    name: Optional[str] = field(
        default=None,
        metadata={
            "name": "Name",
            "type": "Attribute",
            "required": True,
        },
    )
    pass_value: Optional[bool] = field(
        default=None,
        metadata={
            "name": "Pass",
            "type": "Attribute",
            "required": True,
        },
    )
    applicable: Optional[bool] = field(
        default=None,
        metadata={
            "name": "Applicable",
            "type": "Attribute",
        },
    )


@dataclass
class PolePairType:
    first: Optional[str] = field(
        default=None,
        metadata={
            "name": "First",
            "type": "Attribute",
            "required": True,
        },
    )
    second: Optional[str] = field(
        default=None,
        metadata={
            "name": "Second",
            "type": "Attribute",
            "required": True,
        },
    )
