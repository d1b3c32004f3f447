"""Extended affine root systems: membership, reflectable bases and Weyl group words."""
from .earoot import (ExtAffineRootSystem, Membership, Root, build_ears, canonical_base,
                     ears_from_json, ears_from_residues, index_of, root_string, verify_axioms)
from .finroot import FiniteRootSystem, build_finite
from .lattice import Semilattice, Sublattice, hnf_span, semilattice_validate

__version__ = "0.1.0"
