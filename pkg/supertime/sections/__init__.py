from supertime.sections.algebra import AlgebraSection
from supertime.sections.cpi import CpiSection
from supertime.sections.curvature import CurvatureSection
from supertime.sections.dtheta import DthetaSection
from supertime.sections.osp import OspSection
from supertime.sections.qpi import QpiSection

__all__ = [
    "AlgebraSection",
    "OspSection",
    "CpiSection",
    "DthetaSection",
    "QpiSection",
    "CurvatureSection",
]
