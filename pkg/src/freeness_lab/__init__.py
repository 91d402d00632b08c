"""Exact classification of plane curves as free, nearly free or neither,
with Kummer-cover predictions for the curve families built on top of it."""

import logging

from .algebra import GF, QQ, Field, HomPoly, parse_poly
from .families import make_family
from .freeness import CurveClass, CurveReport, analyze

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = ["GF", "QQ", "Field", "HomPoly", "parse_poly", "make_family", "CurveClass", "CurveReport", "analyze"]
