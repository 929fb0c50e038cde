"""Finite distributive lattices, spectral spaces, supports and sheaves on finite frames."""
from .dlattice import (
    DistLattice,
    LatticeMap,
    Poset,
    boolean_lattice,
    build_lattice,
    chain,
    check_map,
    free_dlattice,
    opposite,
    quotient,
)
from .duality import (
    SpectralSpace,
    birkhoff_counit,
    birkhoff_unit,
    downset_lattice,
    hochster_dual,
    homeomorphism,
    join_irreducibles,
    spectral_space_of,
)
from .formats import parse_presentation, parse_presheaf, parse_support
from .ring_oracle import FiniteCommRing, all_ideals, hnb_check, parse_ring, prime_spectrum, radical_ideal_lattice
from .sheaf import (
    FinitePresheaf,
    binary_descent_check,
    check_sheaf,
    mv_pullback_check,
    sheafify,
    stalk_at,
    structure_presheaf,
)
from .support import SupportDatum, factor_support, support_from_frame_map, verify_support
from .ttlattice import TTPresentation, is_local, is_zariski_cover, localize, realize, spc, spc_via_stone, stalk

__version__ = "0.1.0"
