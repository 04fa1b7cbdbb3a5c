"""Finite involutive quantales, pseudogroups and etale groupoids."""

from .config import Limits
from .errors import (InputError, PreconditionError, QlabError,
                     ResourceLimitError, TheoremViolation, UnsupportedCaseError)
from .lattice import FiniteLattice, Lattice, PowersetLattice
from .quantale import (InvolutiveQuantale, PointwiseQuantale, RelationQuantale,
                       TableQuantale, check_axioms, classify, covering_holds,
                       is_gelfand, is_projection, is_quantal_frame,
                       is_stably_gelfand, is_strongly_gelfand, is_supported,
                       partial_units, projections, rel_quantale, two_sided)
from .semigroup import (FiniteInverseSemigroup, is_pseudogroup,
                        symmetric_inverse_monoid, verify_inverse_semigroup)
from .completion import Completion, compatible_ideals, extend_hom, principal_ideal
from .projections import (ProjectionDossier, ideal_join_map,
                          inverse_quantal_frame_check, is_localic,
                          localic_equivalence_report, partial_units_relative,
                          pseudogroup_of)
from .groupoid import (FiniteGroupoid, bisections, discrete_groupoid,
                       empty_groupoid, full_subgroupoid, germ_groupoid,
                       groupoid_isomorphism, opens_quantale, orbit_groupoid,
                       pair_groupoid, quotient_iso, random_groupoid)
from .qmaps import (QuantaleMap, comparison_map, direct_image, frobenius_check,
                    identity_map, is_semiopen, is_surjection, make_map, map_pb,
                    reflection_component_check, split_surjection_check)

__version__ = "0.1.0"
