"""Lattice cover games: classification, selection principles, counter-plays."""

from .catalog import chain, generate, m3, n5, named, powerset, random_topology, sierpinski
from .counterplay import (
    BranchFamily,
    CutVector,
    TailFamily,
    history_wedge_strategy,
    inf_of_cut,
    lift_strategy,
    meets_family,
    menger_counterplay,
    project_selection,
    rothberger_counterplay,
    rothberger_pick,
    severe_defeat_play,
    tail_family,
    union_family,
    verify_tail_set,
)
from .covers import (
    Cover,
    IncreasingCover,
    f_bounded_select,
    hurewicz_check,
    is_cover,
    normalize_increasing,
    s1_select,
    sfin_select,
    wedge,
    wedge_all,
)
from .games import (
    G1,
    GFIN,
    ConstantStrategy,
    NiceStrategyTree,
    Outcome,
    PlayTranscript,
    PlayerIStrategy,
    SeededStrategy,
    adjudicate,
    game_value,
    normalize_to_nice,
    play,
)
from .order import (
    ClassificationReport,
    Elem,
    FiniteLattice,
    SpectrumSpace,
    build_finite_lattice,
    classify,
    has_enough_primes,
    is_frame_distributive,
    lattice_from_closed_sets,
    primes,
    product,
    spectrum,
    sup_family,
)
from .symbolic import (
    AlmostConstantLattice,
    FiniteCofiniteLattice,
    SymbolicSet,
    almost_constant,
    finite_cofinite,
)

__version__ = "0.1.0"
