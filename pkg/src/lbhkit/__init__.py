"""Finite-groupoid convolution algebras, normalisers and the local bisection hypothesis."""

from .algebra import (AlgebraElement, Cocycle, build_fk_sequence, cartan_check,
                      commutant_dimension, convolve, expectation, involute, is_normaliser,
                      reduced_norm, regular_rep, support)
from .constructions import (action_groupoid, corpus, cyclic_group, disjoint_union,
                            group_bundle, pair_groupoid)
from .groupoid import (ArrowSet, FiniteGroupoid, element_order, is_bisection, is_effective,
                       is_principal, isotropy, isotropy_interior, nice_bisection, set_inverse,
                       set_product, validate)
from .witness import Witness, build_witness, find_torsion_isotropy

__version__ = "0.1.0"
