"""Exact fusion data, ranks and Chern characters of bundles of coinvariants."""

__version__ = "0.1.0"

from .chern import (
    chern_character,
    chern_smooth,
    edge_series,
    first_chern_closed_form,
    first_chern_from_character,
    moduli_dimension,
    total_chern_smooth,
)
from .fusion import (
    AxiomError,
    FusionDatum,
    FusionVector,
    SemisimpleError,
    StructuralError,
    Violation,
    cyclic_datum,
    fuse,
    group_datum,
    holomorphic_datum,
    pairing,
    semisimple_decomposition,
    validate,
)
from .graphs import StableGraph, aut_order, canonical_form, canonicalize, enumerate_graphs
from .lattice import (
    A2_GRAM,
    E8_GRAM,
    InvalidLatticeError,
    conformal_dimension,
    discriminant_group,
    fusion_datum_from_gram,
    smith_normal_form,
    validate_gram,
)
from .ranks import rank_crosscheck, rank_exact, rank_semisimple
from .taut import Generator, TautClass, make_generator

__all__ = [name for name in dir() if not name.startswith("_")]
