from supertime.__version__ import __version__  # noqa: F401
from supertime.actions import VierbeinParams, berezin_reduce, build_action
from supertime.coeff_ring import RatFunc, ScalarRing
from supertime.grassmann import Session, SuperNumber, default_session, ginv
from supertime.parser import parse_expr, parse_vierbein, print_expr
from supertime.report import ReportEntry, VerificationReport
from supertime.sections import (
    AlgebraSection,
    CpiSection,
    CurvatureSection,
    DthetaSection,
    OspSection,
    QpiSection,
)
from supertime.supermatrix import SuperMatrix, sdet, sinv
from supertime.verify import verify_eval, verify_run

__all__ = [
    "ScalarRing",
    "RatFunc",
    "Session",
    "SuperNumber",
    "SuperMatrix",
    "VierbeinParams",
    "ReportEntry",
    "VerificationReport",
    "AlgebraSection",
    "OspSection",
    "CpiSection",
    "DthetaSection",
    "QpiSection",
    "CurvatureSection",
    "default_session",
    "ginv",
    "sdet",
    "sinv",
    "build_action",
    "berezin_reduce",
    "parse_expr",
    "parse_vierbein",
    "print_expr",
    "verify_run",
    "verify_eval",
]
