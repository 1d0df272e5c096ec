"""Decategorified invariants of species and module categories over fusion rings."""

from .equivariant import (EquivariantQuiver, directed_graph_of, grothendieck_module, induced_quiver,
                          internal_end, internal_ext, orbits, pointed_module_data, species_of,
                          validate_equivariant)
from .groups import FiniteGroup, cyclic_group, direct_product
from .ring import (FusionRing, dual_element, fibonacci_ring, fpdim, group_ring, multiply, trivial_ring,
                   validate_ring)
from .species import (Arrow, Species, Vertex, connected_components, graded_component, hereditary_report,
                      is_acyclic, total_class, underlying_graph, validate_species)
from .unfold import OrdinaryQuiver, pointed_unfold, round_trip, unfold_quiver_species
from .zplus import (ZPlusModule, decompose_free, enumerate_irreducible, equivalence_classes, is_regular_iso,
                    regular_module, validate_module)

__version__ = "0.1.0"
