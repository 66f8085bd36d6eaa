import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ngon_xc.ngon import slack_coefficient  # noqa: E402

# the integer hexagon slack matrix and its rank-5 factorization as printed
HEXAGON_S = np.array([
    [0, 1, 2, 2, 1, 0],
    [0, 0, 1, 2, 2, 1],
    [1, 0, 0, 1, 2, 2],
    [2, 1, 0, 0, 1, 2],
    [2, 2, 1, 0, 0, 1],
    [1, 2, 2, 1, 0, 0],
], dtype=float)

HEXAGON_U = np.array([
    [0, 0, 0, 1, 2],
    [0, 1, 0, 0, 1],
    [0, 1, 1, 0, 0],
    [0, 0, 2, 1, 0],
    [1, 0, 1, 0, 0],
    [1, 0, 0, 0, 1],
], dtype=float)

HEXAGON_V = np.array([
    [1, 2, 1, 0, 0, 0],
    [0, 0, 0, 1, 2, 1],
    [1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 1, 0, 0],
], dtype=float)


def nonagon_factors():
    """The explicit 9x7 and 7x9 factors of S_9 from the worked example."""
    c1, c2, c3, c4 = (slack_coefficient(9, k) for k in range(1, 5))
    d, e, f = (c2 - c1) / c1, (c3 - c2) / c1, (c4 - c3) / c1
    U = np.array([
        [0, c1, c2, 0, c3 - c1, 0, 0],
        [0, 0, c1, 0, c2, 0, c4 - c2],
        [c1, 0, 0, 0, c1, 0, c3 - c1],
        [c1, 0, 0, c1, 0, 0, c2],
        [0, 0, c1, c2, 0, 0, c1],
        [0, 0, c1, c2, 0, c1, 0],
        [c1, 0, 0, c1, 0, c2, 0],
        [c1, 0, 0, 0, c1, c3 - c1, 0],
        [0, 0, c1, 0, c2, c4 - c2, 0],
    ])
    V = np.array([
        [1, 0, 0, 0, 1, 0, 0, 0, 1],
        [0, 1, 0, 1, 0, 1, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1, 0, 0],
        [d, 1, 0, 0, 0, 0, 0, 1, d],
        [0, 0, 0, 1, d, 1, 0, 0, 0],
        [f, e, d, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, d, e, f],
    ])
    return U, V


@pytest.fixture
def hexagon():
    return HEXAGON_S, HEXAGON_U, HEXAGON_V
