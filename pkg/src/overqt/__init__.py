"""Exact over-(q,t)-binomial coefficients: computation, identities,
involutions and conjecture scans."""
from .algebra import MPoly, RationalMPoly, USeries, gaussian, pochhammer, qmultinomial
from .combinatorics import Overpartition, conjugate, durfee, reconstruct
from .overbinomial import B, delannoy_number, ob_coefficient, ob_compute, sagan_q_delannoy

__all__ = [
    "B",
    "MPoly",
    "Overpartition",
    "RationalMPoly",
    "USeries",
    "conjugate",
    "delannoy_number",
    "durfee",
    "gaussian",
    "ob_coefficient",
    "ob_compute",
    "pochhammer",
    "qmultinomial",
    "reconstruct",
    "sagan_q_delannoy",
]
__version__ = "0.1.0"
