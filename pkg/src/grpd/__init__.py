"""Finite groupoid correspondences: validation, composition, coherence,
convolution algebras, Hilbert bimodules, and discrete fibrations."""

from .errors import (AxiomViolation, CocycleViolation, CoherenceViolation,
                     CompatibilityViolation, CorrespondenceMismatch,
                     EndpointMismatch, FactorizationNotBijective, GrpdError,
                     GroupoidMismatch, HexagonViolation, InfiniteGroup,
                     InputError, NodeNotDiscrete, NotAFunctor, NotAnAction,
                     NotConduche, NotFree, NotSameOrbit, UnknownLetter,
                     UnknownWord)
from .scalars import I, ONE, ZERO, Scalar, scalar
from .groupoid import (FiniteGroupoid, disjoint_union, group_as_groupoid,
                       group_identity, is_slice, make_groupoid, slice_product,
                       slice_star, space_as_groupoid, transformation_groupoid,
                       unit_slice)
from .correspondence import (Correspondence, bracket, classify,
                             cocycle_gauge, identity_correspondence,
                             make_correspondence, orbit_decomposition,
                             self_similar_graph_correspondence,
                             self_similar_group_correspondence,
                             validate_correspondence)
from .bicategory import (Composition, TwoArrow, associator, check_coherence,
                         compose, horizontal_compose, identity_two_arrow,
                         is_bijective, make_two_arrow, naturality_squares,
                         pentagon_identity, triangle_identity, unitor_left,
                         unitor_right, vertical_compose)
from .algebra import (AlgebraElement, RegularRepresentation, convolve, delta,
                      indicator, involute, make_element, operator_norm,
                      sup_norm, zero_element)
from .module import (ModuleElement, delta_point, indicator_points, inner,
                     left_action, left_action_operator_norm,
                     left_multiplier_rank_ones, make_module_element,
                     module_norm, mu, positivity_witness, right_action,
                     tensor_inner, theta, two_arrow_isometry,
                     zero_module_element)
from .category import (FibrationFunctor, FiniteCategory, Presentation,
                       check_conduche, cuntz_pimsner_presentation,
                       is_row_finite, make_category, make_functor)
from .diagrams import (Diagram, MonoidIndex, diagram_to_fibration, fiber,
                       fibration_to_diagram, multiply, validate_diagram,
                       word_id)
from .kgraph import (KGraph, KGraphGroup, canonical_words,
                     diagram_from_kgraph, kgraph_fibration, make_kgraph,
                     normalize_word)
from .selfsimilar import (SelfSimilarAction, act_on_word,
                          automaton_self_similar_action, check_cocycle,
                          faithfulness_report, finite_self_similar_action,
                          free_reduce, parse_group_word, split_letter_word,
                          to_correspondence)

__version__ = "0.1.0"
