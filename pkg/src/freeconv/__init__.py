"""freeconv: numerical and combinatorial free probability.

Non-crossing partition combinatorics, the moment/cumulant transform
algebra (R and S), free additive and multiplicative convolution, free
compression and limit theorems, random-matrix Monte Carlo against exact
pairing/Weingarten predictions, and radial Brown measures of R-diagonal
operators.
"""

__version__ = "0.1.0"

from .errors import NumericalError  # noqa: F401
from .series import (  # noqa: F401
    CumulantSequence,
    MomentSequence,
    TruncatedSeries,
)
