"""Exact decay computations on relative root systems."""

from .catalog import GroupCatalogEntry, load_catalog
from .decay import (
    DecayThreshold,
    Exponent,
    OscillatorBound,
    SubgroupBound,
    combine_subgroup_decay,
    holder_combine,
    isolation_check,
    oscillator_sharp_q,
    restrict_weight,
    sharp_p_from_exponents,
    weyl_search,
)
from .parabolic import (
    heisenberg_radical,
    heisenberg_tower,
    conjugate_subsystem,
    modular_weight,
    radical_to_parabolic,
    subsystem_delta,
)
from .pipeline import DecayReport, pipeline
from .rootcore import (
    RootSystem,
    Subsystem,
    WeylElement,
    apply_weyl,
    build_root_system,
    classify,
    enumerate_weyl,
    highest_root,
    orthogonal_subsystem,
    pairing,
    weyl_element,
)

__version__ = "0.1.0"
