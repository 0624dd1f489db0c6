"""Walks on ordinals below epsilon_0 and their higher-dimensional versions."""

__version__ = "0.1.0"

from .clubs import HigherCSequence, parse_cseq
from .ordinal import Ordinal, ord_, parse, render
from .walks_classic import rho1, rho2, upper_trace
from .walks_higher import expand_tr, rho2n, rho2t

__all__ = [
    "__version__",
    "HigherCSequence",
    "Ordinal",
    "expand_tr",
    "ord_",
    "parse",
    "parse_cseq",
    "render",
    "rho1",
    "rho2",
    "rho2n",
    "rho2t",
    "upper_trace",
]
