"""Extension complexity of regular n-gons.

Slack matrices, the explicit recursive nonnegative factorization, closed-form
lower bounds and an exact rectangle covering solver.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundsRow,
    MinFkzResult,
    binomial,
    bounds_row,
    faces,
    geometric_lower_bound,
    improved_boolean_bound,
    minimize_fkz,
    sperner_bound,
    trivial_log_bound,
)
from .factorize import (
    BlockSpec,
    ConstructionError,
    ExtendedFormulation,
    Factorization,
    Kind,
    NonnegativityError,
    RankOneFactor,
    SlackIdentityError,
    VerificationReport,
    correction_matrix,
    extension_from_factorization,
    rank_one_correction,
    recursive_factorize,
    trivial_base_factorize,
    upper_bound_size,
    verify_factorization,
)
from .ngon import SlackMatrix, slack_coefficient, slack_matrix
from .rectcover import (
    RcResult,
    Rectangle,
    SupportPattern,
    maximal_rectangles,
    rectangle_cover_number,
    slack_rectangle_cover,
    support_pattern,
)
