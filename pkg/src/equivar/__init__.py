"""Symbolic equivariant differential forms with delta-distribution
coefficients, and exact equivariant index pipelines over torus actions.

The core objects are finitely presented graded-commutative algebras
(FormalModel) whose elements may carry one delta-derivative factor evaluated
on the closed arguments of a co-orientation frame.  The canonical closed
form of a frame, its verification (closedness, frame independence, the
Fourier fibre-integral identity), and fixed-point index evaluation against
independent representation-theoretic oracles are all exact over the
rationals.
"""

from .charclass import (FixedLocusDatum, SeriesPolicy, TaylorSeries,
                        a_hat_squared, dh_factor, fixed_point_contribution,
                        j_h_function, localize_index, td_factor)
from .characters import (EXAMPLES, cp1_sheaf_character_oracle,
                         frobenius_multiplicity_oracle, hrr_cp1_oracle,
                         index_cp1_pipeline, index_hopf_pipeline,
                         index_s3_contact_pipeline, index_torus_zero_op,
                         run_pipeline, weyl_character_oracle)
from .errors import (DeltaClash, EquivarError, InvariantViolation,
                     MissingExpansionDirection, MissingFibre,
                     NonIntegerCoefficients, NonOrientable, NotDifferentiable,
                     NotNormal, NotPrincipal, NotTransverse, OutOfRange,
                     ParseError, RankDataMissing, SplittingMissing,
                     UnknownExample, ZeroWeight)
from .genco import (delta_linear_substitute, delta_rewrite,
                    fourier_fibre_integrate, taylor_expand_delta,
                    with_fibre_coordinates)
from .jform import (JForm, chern_weil_pair, check_closed, check_transversality,
                    frame_change_compare, j_form, transformed_j_form)
from .laurent import (DenomFactor, DistributionalCharacter, LaurentPoly,
                      RationalCharacter, expand_box, expand_to_degree,
                      lattice_comb, multiplicity)
from .modelfile import (builtin_names, load_builtin, load_model, loads_model,
                        parse_element)
from .report import (make_report, render_element, render_frame_value,
                     report_to_json)
from .superalg import (DeltaFactor, Element, FormalModel, FrameDecl, Generator,
                       Term, add, equivariant_differential, multiply,
                       normal_form, product, validate_model)

__version__ = "0.1.0"
