import math
import os

import pytest
from hypothesis import HealthCheck, settings

from mcgraph.curves import curve_from_weights
from mcgraph.surface_core import SurfaceSig

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=int(os.environ.get("MCGRAPH_HYPOTHESIS_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

S11 = SurfaceSig(1, 1)
S05 = SurfaceSig(0, 5)
S12 = SurfaceSig(1, 2)
S06 = SurfaceSig(0, 6)
S04 = SurfaceSig(0, 4)

# on the canonical once-punctured torus the three edges carry the slopes
# 1/0, 0/1 and 1/1, and the curve of slope p/q crosses the edge of slope
# s/t exactly |p t - q s| times
_EDGE_SLOPES = [(1, 0), (0, 1), (1, 1)]


def slope_curve(p, q):
    return curve_from_weights(S11, [abs(p * sy - q * sx) for sx, sy in _EDGE_SLOPES])


def primitive_slopes(bound):
    return [(p, q) for p in range(-bound, bound + 1) for q in range(0, bound + 1)
            if math.gcd(p, q) == 1 and (q > 0 or p == 1)]


@pytest.fixture
def slope():
    return slope_curve
