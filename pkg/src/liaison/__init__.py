"""Castelnuovo-Mumford regularity bounds via generic linkage.

Polynomial arithmetic, Groebner bases, ideal operations, minimal free
resolutions and the linkage constructions needed to check regularity bounds
for log canonical projective schemes on concrete ideals.
"""

from .errors import (BoundViolation, LiaisonError, ParseError, PreconditionError,
                     ResourceCapError)
from .groebner import GroebnerBasis, buchberger, normal_form
from .ideals import (HilbertSeries, Ideal, codimension, colon, eliminate, hilbert_series,
                     ideal_product, ideal_sum, intersection, krull_dimension, saturation)
from .linkage import (LinkageResult, graded_generic_link, intersection_divisor,
                      max_generator_degree, symbolic_residual)
from .polyring import GF, QQ, MonomialOrder, Polynomial, RingContext, polynomial_ring
from .resolution import (BettiTable, GradedFreeModule, ModuleMap, Resolution, betti_table,
                         canonical_module, minimal_free_resolution, module_regularity,
                         regularity, syzygies)
from .verify import BoundReport, SuiteConfig, bel_bound, check_ideal, niu_bound, run_suite, sigma

__version__ = "0.1.0"
