"""Exact solver and verification workbench for Hackenbush positions."""

from .core import (
    Color,
    Dyadic,
    InvalidPositionError,
    Move,
    Outcome,
    Player,
    PlayConvention,
    Position,
    SumPosition,
    compare_outcomes,
    disjunctive_sum,
    encode,
    flower,
    generalized_flower,
    graft,
    mirror,
    options,
    prune,
    sprig,
    stalk,
    string,
    sum_positions,
)
from .nimsum import ChainOp, ChainStep, chain_eval, lower, lower_slow, upper, upper_slow, xor
from .oracle import Solver, simplest_between
from .classify import (
    FlowerSpec,
    FlowerbedSpec,
    InvalidSpecError,
    SprigsSummary,
    Strength,
    SumSpec,
    evil_twin,
    flowerbed1_outcome,
    flowerbed_outcome,
    make_flowerbed,
    nim_outcome,
    realize_flowerbed,
    realize_sum,
    shrub_value,
    sign_expansion,
    sprigs_outcome,
    star_based_outcomes,
    strength_compare,
    sum_outcome,
    trim,
    trimmed_sprig_outcome,
)
from .dsl import ParseError, PositionDoc, parse, print_doc

__all__ = [name for name in dir() if not name.startswith("_")]
