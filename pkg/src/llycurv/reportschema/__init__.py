from llycurv.reportschema.curvature_report import CurvatureReport, EdgeType
from llycurv.reportschema.report_model import (
    CheckType,
    OracleType,
    PolePairType,
    RationalType,
    TransferType,
)
from llycurv.reportschema.sharpness_report import (
    KappaMinType,
    SharpnessReport,
    StructureType,
)

__all__ = [
    "CheckType",
    "CurvatureReport",
    "EdgeType",
    "KappaMinType",
    "OracleType",
    "PolePairType",
    "RationalType",
    "SharpnessReport",
    "StructureType",
    "TransferType",
]
