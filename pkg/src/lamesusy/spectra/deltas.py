"""Square-root abbreviations that appear in the closed-form energies."""

import math
from dataclasses import dataclass

from ..elliptic import check_modulus


@dataclass(frozen=True)
class Deltas:
    m: float
    a: float
    delta: float
    delta1: float
    delta2: float
    delta3: float
    delta4: float
    delta5: float
    delta6: float
    delta7: float
    delta8: float
    delta9: float
    B: float


def deltas(m, a=2.0) -> Deltas:
    """All deltas at modulus m; delta4..delta7 depend on the strength a."""
    m = check_modulus(m)
    s = math.sqrt
    d = s(1 - m + m * m)
    return Deltas(
        m=m,
        a=float(a),
        delta=d,
        delta1=s(1 - m + 4 * m * m),
        delta2=s(4 - m + m * m),
        delta3=s(4 - 7 * m + 4 * m * m),
        delta4=s(1 - m + m * m * (a - 1) ** 2),
        delta5=s(4 - 7 * m + 2 * m * a + m * m * (a - 2) ** 2),
        delta6=s(4 - m - 2 * m * a + m * m * (a - 1) ** 2),
        delta7=s(9 - 9 * m + m * m * (a - 2) ** 2),
        delta8=s(16 - 16 * m + m * m),
        delta9=s(4 - 4 * m + 25 * m * m),
        B=1 + m + d,
    )
