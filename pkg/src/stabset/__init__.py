"""Stable sets of substitutions: desubstitution, S-adic limits and word properties."""
from .desub import (DesubTree, FixedPointReport, LimitPoint, Parse, SubstitutionSet,
                    balanced_desub_step, desubstitute_prefix, directive_parses,
                    fixed_point_analysis, genstabfin_bounded, in_stabfin, is_fixed_by_power,
                    limit_points, stablet_graph, stablet_of_directive, stabultlet_bounded)
from .directive import DirectiveSpec
from .morphisms import (GeneratorDecomposition, GeneratorName, Morphism, apply,
                        canonical_LR_exch, classify_episturmian_preserving,
                        classify_sturmian_preserving, compose, first_letter_map, is_P_class,
                        is_permutation, make_E, make_L, make_P, make_R, norm, parse_morphism,
                        peel_left, peel_right)
from .properties import (PropertyReport, detect_ultimate_period, episturmian_necessary,
                         is_balanced, is_LSP_prefixal, is_lyndon_bounded,
                         is_recurrent_bounded, left_special_report)
from .sadic import (FamilyDescriptor, family_members, generate_prefix, normalize_directive,
                    validate_directive_for_family)
from .verdict import Fails, Holds, ThreeValued, Unknown
from .words import (Alphabet, Comparison, EventuallyPeriodicWord, PrefixStream, abelian_vector,
                    expand, factor_set, lex_compare, smallest_period)

__version__ = "0.1.0"
