"""Exact-arithmetic engine for level-l K-theoretic Grassmannian invariants,
gl_n Verlinde fusion numbers, Quot-scheme localization, and the rank <= 2
correspondence between them."""

from .fusion import FusionElement, fusion_product, genus0_verlinde
from .grassmann import (FixedPointClass, chi, flag_pushforward_bwb,
                        mukai_pairing_matrix, schur_class, tautological_class)
from .ifunction import (MuFunction, VertexTerm, degree_bounds, i_function,
                        laurent_property_check, mu)
from .partitions import (DegreeVector, ParabolicType, Partition, complement,
                         coset_reps, degree_vectors, level_membership,
                         parabolic_degree_slope, parabolic_type_of,
                         skyscraper_chi, theta_exponent)
from .quot import (Insertion, InsertionSpec, QuotFixedComponent,
                   correspondence_check, fixed_components, glsm_invariant)
from .rings import (ConsistencyError, DomainError, LaurentPoly, LaurentRing,
                    PoleAtZeroError, RationalFunctionQ, UnsupportedPoleError,
                    expand_at_zero, minimal_annihilator_check, residue_pair,
                    vanishes_at_infinity)
from .schur import (GradedCoefficient, lr_coeff, rim_hook_reduce, schur_eval,
                    schur_dimension)
from .walls import WallData, critical_values, flip_rank, restriction_weight, walls_rank2

__version__ = "0.1.0"
