"""Modular convex hulls of flags in finite semimodular lattices."""

from .errors import *  # noqa: F401,F403
from .flags import (
    Flag,
    JHPermutation,
    as_flag,
    count_flags,
    enumerate_flags,
    flag_distance,
    flag_neighbours,
    flags_adjacent,
    gallery_distance_bfs,
    inversion_number,
    iter_flags,
    jordan_holder,
    shortest_gallery,
    shortest_gallery_flags,
)
from .generators import GeneratorSpec, generate
from .hull import (
    AxiomReport,
    HullResult,
    SetFamily,
    compute_z,
    extract_antimatroid,
    hull_as_preantimatroid,
    is_antimatroid,
    is_preantimatroid,
    mconv_fixpoint,
    mconv_recursive,
    phi,
    phi_bar,
)
from .io import dump_lattice, load_lattice, loads_lattice
from .lattice import (
    Interval,
    Lattice,
    build_lattice,
    interval,
    is_modular_lattice,
    is_modular_pair,
    is_semimodular,
    rank_modular_pair,
)

__version__ = "0.1.0"
