"""Deterministic enumeration and seeded sampling of position families.

Enumerations are exhaustive and duplicate-free up to labeled encoding;
sampled families are reproducible from their seed.  Everything emitted
satisfies its family's defining predicate by construction (tests assert
this rather than filter).
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass

from .core import (
    Color,
    Dyadic,
    Player,
    Position,
    options,
    prune,
    stalk,
    string,
    sum_positions,
)
from .classify import FlowerSpec, FlowerbedSpec, SumSpec, sign_expansion, trim
from .oracle import (
    ArbitraryHackenbush,
    ContextFamily,
    DicotTrees,
    Stalks,
    StarBasedSums,
)


#: Default blossom magnitudes for sampled generalized flowers, realized as
#: red-blue strings and oracle-verified once per test run.
BLOSSOM_MENU = (Dyadic(1, 1), Dyadic(1), Dyadic(3, 1), Dyadic(2))


@dataclass(frozen=True)
class FamilyParams:
    """Reproducibility record for one generated family; its label goes
    into verification report records."""

    family: str
    bounds: tuple[tuple[str, int], ...]
    seed: int | None = None

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.bounds)
        if self.seed is not None:
            inner = f"{inner},seed={self.seed}" if inner else f"seed={self.seed}"
        return f"{self.family}({inner})"


def describe_family(family: ContextFamily, seed: int | None = None) -> FamilyParams:
    name = {
        DicotTrees: "dicot-trees",
        StarBasedSums: "star-based-sums",
        Stalks: "stalks",
        ArbitraryHackenbush: "arbitrary-hackenbush",
    }[type(family)]
    bounds = tuple(sorted(vars(family).items()))
    return FamilyParams(name, bounds, seed)


# ============================================================================
# Rooted tree shapes as canonical nested tuples
# ============================================================================
# A forest is a sorted tuple of trees; a tree is the forest of its children.

@functools.lru_cache(maxsize=None)
def _forests(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = set()
    for k in range(1, n + 1):  # edges used by one tree, root edge included
        for child_forest in _forests(k - 1):
            for rest in _forests(n - k):
                out.add(tuple(sorted((child_forest,) + rest)))
    return tuple(sorted(out))


def _forest_to_position(forest) -> Position:
    edges = []
    counter = itertools.count(1)

    def grow(parent: int, children) -> None:
        for child in children:
            v = next(counter)
            edges.append((parent, v, Color.GREEN))
            grow(v, child)

    grow(0, forest)
    return Position(tuple(edges), frozenset({0}))


def enum_shrubs(max_edges: int):
    """All green rooted trees with a degree-1 root on the ground, up to
    max_edges edges, one representative per shape."""
    if max_edges < 1:
        raise ValueError("need at least one edge")
    for n in range(1, max_edges + 1):
        for child_forest in _forests(n - 1):
            yield _forest_to_position((child_forest,))


@functools.lru_cache(maxsize=None)
def _colored_forests(n: int, colors: tuple[Color, ...]) -> tuple:
    if n == 0:
        return ((),)
    out = set()
    for k in range(1, n + 1):
        for color in colors:
            for child_forest in _colored_forests(k - 1, colors):
                for rest in _colored_forests(n - k, colors):
                    out.add(tuple(sorted(((color.value, child_forest),) + rest)))
    return tuple(sorted(out))


def _colored_forest_to_position(forest) -> Position:
    edges = []
    counter = itertools.count(1)

    def grow(parent: int, children) -> None:
        for letter, child in children:
            v = next(counter)
            edges.append((parent, v, Color(letter)))
            grow(v, child)

    grow(0, forest)
    return Position(tuple(edges), frozenset({0}))


def enum_colored_trees(max_edges: int, colors=(Color.RED, Color.BLUE)):
    """All grounded trees up to max_edges edges over the given edge colors,
    one representative per colored shape."""
    colors = tuple(colors)
    for n in range(1, max_edges + 1):
        for forest in _colored_forests(n, colors):
            yield _colored_forest_to_position(forest)


def enum_redblue_strings(max_len: int):
    """All grounded red-blue paths of length 1..max_len."""
    for length in range(1, max_len + 1):
        for colors in itertools.product((Color.RED, Color.BLUE), repeat=length):
            yield string(colors)


def enum_redblue_color_seqs(max_len: int):
    for length in range(1, max_len + 1):
        yield from itertools.product((Color.RED, Color.BLUE), repeat=length)


# ============================================================================
# Abstract spec families
# ============================================================================

def enum_stalk_multisets(max_count: int, max_height: int):
    for size in range(max_count + 1):
        yield from itertools.combinations_with_replacement(
            range(1, max_height + 1), size
        )


def enum_flowerbed_specs(
    blue_count: int,
    red_count: int,
    max_height: int,
    blossom_magnitudes,
    stalk_multisets,
    include_canceling: bool = True,
):
    """All flowerbeds with the exact per-side counts, stem heights up to
    max_height, blossom magnitudes from the menu and stalks from the given
    multisets.  Canceling pairs can be excluded to match no-cancel
    hypotheses."""
    magnitudes = tuple(Dyadic._coerce(m) for m in blossom_magnitudes)
    choices = [(h, m) for h in range(1, max_height + 1) for m in magnitudes]
    blues = list(itertools.combinations_with_replacement(choices, blue_count))
    reds = list(itertools.combinations_with_replacement(choices, red_count))
    for bw, rw, st in itertools.product(blues, reds, tuple(stalk_multisets)):
        spec = FlowerbedSpec(
            tuple(FlowerSpec(h, m) for h, m in bw),
            tuple(FlowerSpec(h, -m) for h, m in rw),
            tuple(st),
        )
        if not include_canceling and trim(spec)[1]:
            continue
        yield spec


def enum_sprig_games(
    max_per_side: int,
    blossom_magnitudes,
    stalk_multisets,
    include_canceling: bool = True,
):
    """All generalized-sprigs games (flower heights 1) with up to the given
    number of sprigs per side."""
    for nb in range(max_per_side + 1):
        for nr in range(max_per_side + 1):
            yield from enum_flowerbed_specs(
                nb, nr, 1, blossom_magnitudes, stalk_multisets, include_canceling
            )


# ============================================================================
# Seeded random families
# ============================================================================

_ALL_COLORS = (Color.RED, Color.BLUE, Color.GREEN)


def _random_star_tree(rng: random.Random, max_depth: int, edge_budget: int = 8) -> Position:
    """A tree with a single green grounded edge and random colors above."""
    edges = [(0, 1, Color.GREEN)]
    counter = itertools.count(2)

    def grow(v: int, depth: int) -> None:
        if depth <= 0 or len(edges) >= edge_budget:
            return
        for _ in range(rng.randint(0, 2)):
            if len(edges) >= edge_budget:
                return
            w = next(counter)
            edges.append((v, w, rng.choice(_ALL_COLORS)))
            grow(w, depth - 1)

    grow(1, max_depth - 1)
    return Position(tuple(edges), frozenset({0}))


def _random_graph(rng: random.Random, max_edges: int) -> Position:
    n_edges = rng.randint(0, max_edges)
    n_ground = rng.randint(1, 2)
    n_vertices = n_ground + rng.randint(0, max(1, n_edges))
    edges = []
    for _ in range(n_edges):
        u = rng.randrange(n_vertices)
        v = rng.randrange(n_vertices)
        edges.append((u, v, rng.choice(_ALL_COLORS)))
    return prune(tuple(edges), frozenset(range(n_ground)))


def sample_contexts(family: ContextFamily, n: int | None, seed: int) -> list[Position]:
    """n positions from the family, reproducible from the seed.  For the
    exhaustive Stalks family, n=None means the whole family."""
    rng = random.Random(seed)
    if isinstance(family, Stalks):
        all_sets = [
            sum_positions(stalk(h) for h in heights)
            for heights in enum_stalk_multisets(family.max_count, family.max_height)
        ]
        if n is None or n >= len(all_sets):
            return all_sets
        return rng.sample(all_sets, n)
    if n is None:
        raise ValueError("sample size required for random families")
    if isinstance(family, DicotTrees):
        return [_random_star_tree(rng, family.max_depth) for _ in range(n)]
    if isinstance(family, StarBasedSums):
        out = []
        for _ in range(n):
            k = rng.randint(1, family.max_components)
            out.append(
                sum_positions(
                    _random_star_tree(rng, family.max_height) for _ in range(k)
                )
            )
        return out
    if isinstance(family, ArbitraryHackenbush):
        return [_random_graph(rng, family.max_edges) for _ in range(n)]
    raise ValueError(f"unknown context family {family!r}")


def sample_sum_specs(
    count: int,
    seed: int,
    max_shrub_edges: int = 4,
    max_flower_height: int = 3,
    blossom_menu=BLOSSOM_MENU,
    max_stalk_height: int = 3,
    max_components: int = 3,
    max_total_edges: int = 12,
) -> list[SumSpec]:
    """Seeded random sums of shrubs, generalized flowers and stalks, with
    the realized edge total capped to keep the oracle fast."""
    rng = random.Random(seed)
    shrub_pool = list(enum_shrubs(max_shrub_edges))
    menu = [Dyadic._coerce(v) for v in blossom_menu]
    menu += [-v for v in menu if -v not in menu]

    def component_cost(comp) -> int:
        if isinstance(comp, Position):
            return comp.edge_count
        if isinstance(comp, FlowerSpec):
            return comp.height + len(sign_expansion(comp.blossom))
        return comp

    specs = []
    for _ in range(count):
        parts = []
        budget = max_total_edges
        for _ in range(rng.randint(1, max_components)):
            kind = rng.choice(("shrub", "flower", "stalk"))
            if kind == "shrub":
                comp = rng.choice(shrub_pool)
            elif kind == "flower":
                comp = FlowerSpec(rng.randint(1, max_flower_height), rng.choice(menu))
            else:
                comp = rng.randint(1, max_stalk_height)
            cost = component_cost(comp)
            if cost > budget:
                continue
            budget -= cost
            parts.append(comp)
        specs.append(SumSpec(tuple(parts)))
    return specs


# ============================================================================
# Family soundness checks
# ============================================================================

def is_dicot_position(p: Position) -> bool:
    """True when in every reachable nonempty position both players have a
    move.  Checked over all cut sequences, a superset of actual play."""
    seen = {p}
    stack = [p]
    while stack:
        q = stack.pop()
        if q.is_empty():
            continue
        left = options(q, Player.LEFT)
        right = options(q, Player.RIGHT)
        if not left or not right:
            return False
        for child in left + right:
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return True


def is_shrub(p: Position) -> bool:
    """Green tree whose single ground vertex has degree one."""
    if not p.is_impartial() or p.is_empty():
        return False
    if len(p.ground) != 1:
        return False
    (root,) = p.ground
    degree = sum((u == root) + (v == root) for u, v, _ in p.edges)
    if degree != 1:
        return False
    # A connected pruned graph is a tree iff edges = vertices - 1.
    return p.edge_count == len(p.vertices) - 1
