"""Finite 2-colored posets, homomorphisms between them, and the families of
finite sets (with monotone reductions) that they encode."""
from .classes import (
    ClassReport,
    PatternMatch,
    is_embeddable,
    is_finite_branching,
    is_shrub,
    one_neighbors,
    pattern_embeds,
    str_decr,
    str_incr,
)
from .errors import *  # noqa: F401,F403
from .families import FamilySpec, embeddable_corpus, fixture, fixture_names, gen_P, gen_Q
from .game import (
    GameState,
    Strategy,
    judge,
    move_I,
    move_II,
    new_game,
    pass_I,
    play_vs_strategy,
    repl,
    respond,
    wins_all_scripts,
)
from .hom import ComparisonVerdict, Homomorphism, SearchResult, compare, find_hom, matrix, search_hom, verify_hom
from .poset import (
    ColoredPoset,
    from_relation,
    immediate_predecessors,
    is_bounded_complete,
    is_ideal,
    predecessors,
    supremum,
)
from .scott import (
    TOP,
    Labeling,
    MonotoneMap,
    SetFamily,
    alternation_rank,
    brute_force_reduction_exists,
    build_A,
    build_reduction,
    extract_hom,
    is_approximable,
    label,
    sup_label,
    verify_reduction,
)

__version__ = "0.1.0"
