"""Closed-form outcome classifiers for stalks, shrubs, sprigs and flowerbeds.

These operate on abstract descriptions (heights and blossom values) rather
than graphs.  Misere outcomes are answered through the twin construction:
a sum whose components all have height one gets an extra height-1 stalk,
and the normal-play outcome of the twin is the misere outcome of the
original (and vice versa).  The brute-force oracle stays the ground truth;
every rule here is validated against it in the test suites.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from .core import (
    Color,
    Dyadic,
    Outcome,
    Player,
    PlayConvention,
    Position,
    flower as flower_position,
    generalized_flower,
    prune,
    stalk,
    string,
    sum_positions,
)
from .nimsum import lower, upper, xor_all
from .oracle import Solver, simplest_between


class InvalidSpecError(ValueError):
    """Raised when a classifier is handed a spec outside its contract."""


# ============================================================================
# Specs
# ============================================================================

@dataclass(frozen=True)
class FlowerSpec:
    """A generalized flower: green stem of the given height supporting a
    red-blue position with the given normal-play value.  Positive blossom
    means blue, negative red; zero-blossom flowers behave as stalks."""

    height: int
    blossom: Dyadic

    def __post_init__(self):
        if self.height < 1:
            raise InvalidSpecError("flower height must be at least 1")
        if not isinstance(self.blossom, Dyadic):
            object.__setattr__(self, "blossom", Dyadic._coerce(self.blossom))

    @property
    def color(self) -> Color | None:
        if self.blossom > 0:
            return Color.BLUE
        if self.blossom < 0:
            return Color.RED
        return None

    def mirrored(self) -> "FlowerSpec":
        return FlowerSpec(self.height, -self.blossom)


class Strength(Enum):
    WEAKER = "weaker"
    STRONGER = "stronger"
    EQUALLY_WEAK = "equally-weak"  # same height, same magnitude, opposite sign
    TIE = "tie"  # identical height and signed blossom


def strength_compare(f1: FlowerSpec, f2: FlowerSpec) -> Strength:
    """Taller stems are weaker; at equal height, smaller blossom magnitude
    is weaker.  Opposite-sign flowers of equal height and magnitude are
    equally weak (they cancel); same-sign ones are a plain tie."""
    if f1.height != f2.height:
        return Strength.WEAKER if f1.height > f2.height else Strength.STRONGER
    m1, m2 = abs(f1.blossom), abs(f2.blossom)
    if m1 != m2:
        return Strength.WEAKER if m1 < m2 else Strength.STRONGER
    return Strength.TIE if f1.blossom == f2.blossom else Strength.EQUALLY_WEAK


def _weakness_key(f: FlowerSpec):
    return (-f.height, abs(f.blossom))


@dataclass(frozen=True)
class FlowerbedSpec:
    """Blue and red generalized flowers plus a multiset of stalk heights.
    Flower lists are kept sorted weakest-first (stable on insertion order);
    outcomes never depend on the insertion order."""

    blue: tuple[FlowerSpec, ...] = ()
    red: tuple[FlowerSpec, ...] = ()
    stalks: tuple[int, ...] = ()

    def __post_init__(self):
        blue = tuple(sorted(self.blue, key=_weakness_key))
        red = tuple(sorted(self.red, key=_weakness_key))
        for f in blue:
            if not f.blossom > 0:
                raise InvalidSpecError("blue flowers need positive blossoms")
        for f in red:
            if not f.blossom < 0:
                raise InvalidSpecError("red flowers need negative blossoms")
        if any(h < 1 for h in self.stalks):
            raise InvalidSpecError("stalk heights must be at least 1")
        object.__setattr__(self, "blue", blue)
        object.__setattr__(self, "red", red)
        object.__setattr__(self, "stalks", tuple(sorted(self.stalks)))

    @property
    def flowers(self) -> tuple[FlowerSpec, ...]:
        return self.blue + self.red

    def component_heights(self) -> tuple[int, ...]:
        return tuple(f.height for f in self.flowers) + self.stalks

    def mirrored(self) -> "FlowerbedSpec":
        return FlowerbedSpec(
            tuple(f.mirrored() for f in self.red),
            tuple(f.mirrored() for f in self.blue),
            self.stalks,
        )


def make_flowerbed(flowers, stalks=()) -> FlowerbedSpec:
    """Sort arbitrary flower specs into a flowerbed, demoting zero-blossom
    flowers to stalks and dropping height-0 stalks."""
    blue, red, extra = [], [], []
    for f in flowers:
        if f.blossom > 0:
            blue.append(f)
        elif f.blossom < 0:
            red.append(f)
        else:
            extra.append(f.height)
    kept = [h for h in tuple(stalks) + tuple(extra) if h > 0]
    return FlowerbedSpec(tuple(blue), tuple(red), tuple(kept))


@dataclass(frozen=True)
class SprigsSummary:
    """Advantage (blue minus red sprig count), edge (difference of minimal
    blossom magnitudes, zero when either side is empty) and stalk nim-sum."""

    advantage: int
    edge: Dyadic
    stalk_nimsum: int


def sprigs_summary(xs, ys, stalks) -> SprigsSummary:
    xs, ys = tuple(xs), tuple(ys)
    edge = Dyadic(0) if not xs or not ys else min(xs) - min(ys)
    return SprigsSummary(len(xs) - len(ys), edge, xor_all(stalks))


# A disjunctive-sum description: shrub graphs, flower specs, stalk heights.
SumComponent = Union[Position, FlowerSpec, int]


@dataclass(frozen=True)
class SumSpec:
    components: tuple[SumComponent, ...]


# ============================================================================
# Nim and shrubs
# ============================================================================

def nim_outcome(heights, convention: PlayConvention) -> Outcome:
    """Outcome of a stalks game.  Normal play is the zero-nim-sum rule;
    misere play goes through the twin (add a height-1 stalk when every
    height is 1, including the empty game)."""
    hs = [h for h in heights if h > 0]
    if any(h < 0 for h in heights):
        raise InvalidSpecError("stalk heights must be non-negative")
    if convention is PlayConvention.MISERE and all(h == 1 for h in hs):
        hs.append(1)
    return Outcome.P if xor_all(hs) == 0 else Outcome.N


def shrub_value(t: Position) -> int:
    """Nim-heap value of a grounded green tree, folded leaf-down: the value
    at a vertex is the xor over its child edges of (1 + child value).  For
    a shrub this is its normal-play nim-value, and the shrub is
    interchangeable with a stalk of this height in any misere context."""
    if not t.is_impartial():
        raise InvalidSpecError("shrubs are all green")
    adjacent: dict[int, list[tuple[int, int]]] = {}
    for i, (u, v, _) in enumerate(t.edges):
        if u == v:
            raise InvalidSpecError("shrubs are trees; loops form cycles")
        adjacent.setdefault(u, []).append((v, i))
        adjacent.setdefault(v, []).append((u, i))

    visited = set(t.ground)

    def value(v: int, in_edge: int | None) -> int:
        acc = 0
        for w, i in adjacent.get(v, ()):
            if i == in_edge:
                continue
            if w in visited:
                raise InvalidSpecError("shrubs are trees; found a cycle")
            visited.add(w)
            acc ^= 1 + value(w, i)
        return acc

    return xor_all(value(g, None) for g in sorted(t.ground))


def evil_twin(s: SumSpec) -> SumSpec:
    """Twin of a sum of shrubs, generalized flowers and stalks: shrubs are
    replaced by their equivalent stalks, zero-blossom flowers demoted, and
    one extra height-1 stalk is appended exactly when every remaining
    component has height 1 (vacuously so for the empty sum)."""
    parts: list[SumComponent] = []
    heights: list[int] = []
    for comp in s.components:
        if isinstance(comp, Position):
            h = shrub_value(comp)
            if h > 0:
                parts.append(h)
                heights.append(h)
        elif isinstance(comp, FlowerSpec):
            if comp.blossom == 0:
                parts.append(comp.height)
            else:
                parts.append(comp)
            heights.append(comp.height)
        elif isinstance(comp, int):
            if comp < 0:
                raise InvalidSpecError("stalk heights must be non-negative")
            if comp > 0:
                parts.append(comp)
                heights.append(comp)
        else:
            raise InvalidSpecError(f"unknown component {comp!r}")
    if all(h == 1 for h in heights):
        parts.append(1)
    return SumSpec(tuple(parts))


def flowerbed_twin(f: FlowerbedSpec) -> FlowerbedSpec:
    """The twin decision on the untrimmed component list."""
    heights = f.component_heights()
    if all(h == 1 for h in heights):
        return replace(f, stalks=f.stalks + (1,))
    return f


# ============================================================================
# Sprigs (all flower heights 1)
# ============================================================================

def _sprigs_normal(delta: int, edge: Dyadic, a: int) -> Outcome:
    """Normal-play outcome of a sprigs-and-stalks game from its advantage,
    edge and stalk nim-sum (no canceling pair)."""
    if delta >= 2:
        return Outcome.L
    if delta <= -2:
        return Outcome.R
    if delta == 1:
        if a != 0 or edge > 0:
            return Outcome.L
        return Outcome.N
    if delta == -1:
        if a != 0 or edge < 0:
            return Outcome.R
        return Outcome.N
    if a != 0:
        return Outcome.N
    if edge > 0:
        return Outcome.L
    if edge < 0:
        return Outcome.R
    return Outcome.P


def sprigs_outcome(xs, ys, stalks, convention: PlayConvention) -> Outcome:
    """Outcome of a sum of generalized sprigs and stalks.

    xs are the blue blossom values, ys the red blossom magnitudes (both
    positive); the caller must have trimmed canceling pairs."""
    xs = tuple(Dyadic._coerce(x) for x in xs)
    ys = tuple(Dyadic._coerce(y) for y in ys)
    stalks = tuple(stalks)
    if any(not x > 0 for x in xs) or any(not y > 0 for y in ys):
        raise InvalidSpecError("blossom values must be positive")
    if any(x == y for x in xs for y in ys):
        raise InvalidSpecError("canceling pair present; trim first")
    if any(h < 1 for h in stalks):
        raise InvalidSpecError("stalk heights must be at least 1")
    if convention is PlayConvention.MISERE and all(h == 1 for h in stalks):
        stalks = stalks + (1,)  # twin: sprigs themselves always have height 1
    summary = sprigs_summary(xs, ys, stalks)
    return _sprigs_normal(summary.advantage, summary.edge, summary.stalk_nimsum)


# ============================================================================
# Flowerbeds with one flower per side
# ============================================================================

def flowerbed1_outcome(b1: int, x1, c1: int, y1, a: int) -> Outcome:
    """Outcome of one blue flower (height b1, blossom x1 > 0) against one
    red flower (height c1, blossom magnitude y1 > 0) plus stalks with
    nim-sum a.  The result holds under both play conventions."""
    x1, y1 = Dyadic._coerce(x1), Dyadic._coerce(y1)
    if b1 < 1 or c1 < 1:
        raise InvalidSpecError("flower heights must be at least 1")
    if not x1 > 0 or not y1 > 0:
        raise InvalidSpecError("blossom values must be positive magnitudes")
    if b1 == 1 and c1 == 1:
        raise InvalidSpecError("two height-1 flowers form a sprigs game")
    if a < 0:
        raise InvalidSpecError("nim-sum must be non-negative")
    if b1 < c1:
        return Outcome.N if upper(a, b1 - 1) >= c1 else Outcome.L
    if c1 < b1:
        return Outcome.N if upper(a, c1 - 1) >= b1 else Outcome.R
    # Equal heights at least 2: split on the 2-adic valuation of the height.
    threshold = 1 << ((b1 & -b1).bit_length() - 1)
    if a >= threshold:
        return Outcome.N
    if x1 == y1:
        return Outcome.N if a != 0 else Outcome.P
    return Outcome.L if x1 > y1 else Outcome.R


# ============================================================================
# Trimming
# ============================================================================

def trim(
    f: FlowerbedSpec, cancel_star_stalks: bool = False
) -> tuple[FlowerbedSpec, tuple[tuple[FlowerSpec, FlowerSpec], ...]]:
    """Remove blue/red flower pairs of equal height and blossom magnitude.

    The removal is a maximal matching per (height, magnitude) class, so the
    result does not depend on list order.  Pairs of height-1 stalks are
    canceled only on request: that reduction is a misere-universe identity
    and must stay out of normal-play computations."""
    pool: dict[tuple[int, Dyadic], list[FlowerSpec]] = {}
    for fl in f.blue:
        pool.setdefault((fl.height, abs(fl.blossom)), []).append(fl)
    kept_red: list[FlowerSpec] = []
    removed: list[tuple[FlowerSpec, FlowerSpec]] = []
    for fl in f.red:
        match = pool.get((fl.height, abs(fl.blossom)))
        if match:
            removed.append((match.pop(), fl))
        else:
            kept_red.append(fl)
    kept_blue = tuple(fl for group in pool.values() for fl in group)
    stalks = f.stalks
    if cancel_star_stalks:
        ones = sum(1 for h in stalks if h == 1)
        stalks = tuple(h for h in stalks if h != 1) + (1,) * (ones % 2)
    trimmed = FlowerbedSpec(kept_blue, tuple(kept_red), stalks)
    return trimmed, tuple(removed)


# ============================================================================
# General flowerbeds
# ============================================================================

def _favorable(out: Outcome, player: Player) -> bool:
    if player is Player.LEFT:
        return out in (Outcome.N, Outcome.L)
    return out in (Outcome.N, Outcome.R)


def _one_vs_one(blue: FlowerSpec, red: FlowerSpec, a: int) -> Outcome:
    if blue.height == 1 and red.height == 1:
        return _sprigs_normal(0, blue.blossom - abs(red.blossom), a)
    return flowerbed1_outcome(
        blue.height, blue.blossom, red.height, abs(red.blossom), a
    )


def _first_player_wins(
    mover: Player,
    blue: tuple[FlowerSpec, ...],
    red: tuple[FlowerSpec, ...],
    a: int,
) -> bool:
    """Does the mover win a balanced no-cancel flowerbed, moving first?

    a is the running nim-sum of the stalks.  When the opponent holds the
    weakest flower the mover wins outright.  Otherwise play proceeds in
    rounds of cut-downs: the mover fells one opposing flower, driving the
    stalk nim-sum as high as a stem cut allows (upper nim-sum with
    height-1), the opponent fells one of the mover's flowers, driving it
    as low as possible (lower nim-sum).  Branching is over flower choice
    only, and each resulting bed is re-evaluated here, so a reply that
    hands the weakest flower to the opponent is punished by the outright
    win above rather than forbidden up front."""
    if not blue and not red:
        return a != 0
    if all(f.height == 1 for f in blue + red):
        edge = min(f.blossom for f in blue) - min(abs(f.blossom) for f in red)
        return _favorable(_sprigs_normal(0, edge, a), mover)
    if len(blue) == 1:
        return _favorable(_one_vs_one(blue[0], red[0], a), mover)
    own, opp = (blue, red) if mover is Player.LEFT else (red, blue)
    weakest_side = strength_compare(own[0], opp[0])
    if weakest_side is Strength.STRONGER:
        # The second player holds the weakest flower: the mover wins.
        return True
    if weakest_side is not Strength.WEAKER:
        raise InvalidSpecError("canceling pair survived trimming")
    tried = set()
    for i, target in enumerate(opp):
        key = (target.height, target.blossom)
        if key in tried:
            continue
        tried.add(key)
        raised = upper(a, target.height - 1)
        opp_rest = opp[:i] + opp[i + 1 :]
        replied = set()
        for j, victim in enumerate(own):
            rkey = (victim.height, victim.blossom)
            if rkey in replied:
                continue
            replied.add(rkey)
            lowered = lower(raised, victim.height - 1)
            own_rest = own[:j] + own[j + 1 :]
            next_blue, next_red = (
                (own_rest, opp_rest) if mover is Player.LEFT else (opp_rest, own_rest)
            )
            if not _first_player_wins(mover, next_blue, next_red, lowered):
                break
        else:
            return True
    return False


def _flowerbed_normal(f: FlowerbedSpec) -> Outcome:
    f, _ = trim(f)
    delta = len(f.blue) - len(f.red)
    if delta >= 2:
        return Outcome.L
    if delta <= -2:
        return Outcome.R
    a = xor_all(f.stalks)
    if delta != 0:
        # One flower ahead: the advantaged side wins moving first; moving
        # second it loses unless cutting an advantaged flower's stem wins.
        advantaged = f.blue if delta == 1 else f.red
        spare = f.red if delta == 1 else f.blue
        cutter = Player.RIGHT if delta == 1 else Player.LEFT
        tried = set()
        for i, fl in enumerate(advantaged):
            key = (fl.height, fl.blossom)
            if key in tried:
                continue
            tried.add(key)
            rest = advantaged[:i] + advantaged[i + 1 :]
            for h2 in range(fl.height):
                stalks2 = f.stalks + ((h2,) if h2 else ())
                sub = FlowerbedSpec(
                    rest if delta == 1 else spare,
                    spare if delta == 1 else rest,
                    stalks2,
                )
                out = _flowerbed_normal(sub)
                # The cut wins for the cutter iff the opponent, moving
                # next in the balanced remainder, loses.
                if not _favorable(out, cutter.opponent):
                    return Outcome.N
        return Outcome.L if delta == 1 else Outcome.R
    if not f.blue:
        return nim_outcome(f.stalks, PlayConvention.NORMAL)
    if all(fl.height == 1 for fl in f.flowers):
        edge = min(fl.blossom for fl in f.blue) - min(
            abs(fl.blossom) for fl in f.red
        )
        return _sprigs_normal(0, edge, a)
    left_first = _first_player_wins(Player.LEFT, f.blue, f.red, a)
    right_first = _first_player_wins(Player.RIGHT, f.blue, f.red, a)
    if left_first and right_first:
        return Outcome.N
    if left_first:
        return Outcome.L
    if right_first:
        return Outcome.R
    return Outcome.P


def flowerbed_outcome(f: FlowerbedSpec, convention: PlayConvention) -> Outcome:
    """Outcome of a sum of generalized flowers and stalks.  Misere play is
    answered as the normal-play outcome of the twin, decided on the
    untrimmed component heights."""
    if convention is PlayConvention.MISERE:
        f = flowerbed_twin(f)
    return _flowerbed_normal(f)


def sum_outcome(s: SumSpec, convention: PlayConvention) -> Outcome:
    """Outcome of a spec sum: shrubs stand in for their equivalent stalks
    (valid in any context under both conventions), then the flowerbed
    classifier decides."""
    flowers: list[FlowerSpec] = []
    stalk_heights: list[int] = []
    for comp in s.components:
        if isinstance(comp, Position):
            stalk_heights.append(shrub_value(comp))
        elif isinstance(comp, FlowerSpec):
            flowers.append(comp)
        elif isinstance(comp, int):
            if comp < 0:
                raise InvalidSpecError("stalk heights must be non-negative")
            stalk_heights.append(comp)
        else:
            raise InvalidSpecError(f"unknown component {comp!r}")
    bed = make_flowerbed(flowers, [h for h in stalk_heights if h > 0])
    return flowerbed_outcome(bed, convention)


def trimmed_sprig_outcome(
    f: FlowerbedSpec, convention: PlayConvention = PlayConvention.MISERE
) -> Outcome:
    """Direct table for flowerbeds whose trimmed form is a sprigs game and
    whose stalks all have height 1: N on odd stalk count, otherwise by the
    sign of the trimmed edge.  Stalk count enters as parity (height-1
    stalk pairs cancel).  Redundant cross-check of the twin path."""
    if len(f.blue) != len(f.red):
        raise InvalidSpecError("needs equal flower counts")
    if any(h != 1 for h in f.stalks):
        raise InvalidSpecError("needs all stalks of height 1")
    trimmed, _ = trim(f)
    if any(fl.height != 1 for fl in trimmed.flowers):
        raise InvalidSpecError("trimmed form must be a sprigs game")
    if len(f.stalks) % 2:
        return Outcome.N
    if not trimmed.blue:
        return Outcome.P
    edge = min(fl.blossom for fl in trimmed.blue) - min(
        abs(fl.blossom) for fl in trimmed.red
    )
    if edge > 0:
        return Outcome.L
    if edge < 0:
        return Outcome.R
    return Outcome.P


# ============================================================================
# Star-based positions
# ============================================================================

def star_based_outcomes(
    p: Position, solver: Solver | None = None
) -> tuple[Outcome, Outcome]:
    """Outcomes (normal, misere) of a position with exactly one grounded
    edge, which must be green.  Normal play is always a next-player win
    (cut the grounded edge); the misere outcome equals the normal-play
    outcome of everything above that edge."""
    grounded = [
        (i, e) for i, e in enumerate(p.edges) if e[0] in p.ground or e[1] in p.ground
    ]
    if len(grounded) != 1 or grounded[0][1][2] is not Color.GREEN:
        raise InvalidSpecError("star-based needs a single green grounded edge")
    i, (u, v, _) = grounded[0]
    rest = p.edges[:i] + p.edges[i + 1 :]
    if u in p.ground and v in p.ground:
        hat = Position((), frozenset({0}))
    else:
        top = v if u in p.ground else u
        hat = prune(rest, {top})
    solver = solver or Solver()
    return Outcome.N, solver.outcome(hat, PlayConvention.NORMAL)


# ============================================================================
# Realization of specs as concrete positions
# ============================================================================

def sign_expansion(value: Dyadic) -> tuple[Color, ...]:
    """Colors of the grounded red-blue string worth the given value: walk
    the simplicity tree toward the target, blue for up, red for down."""
    value = Dyadic._coerce(value)
    colors: list[Color] = []
    lo: Dyadic | None = None
    hi: Dyadic | None = None
    while True:
        cur = simplest_between(lo, hi)
        if cur == value:
            return tuple(colors)
        if value > cur:
            colors.append(Color.BLUE)
            lo = cur
        else:
            colors.append(Color.RED)
            hi = cur


def realize_flower(spec: FlowerSpec, style: str = "auto") -> Position:
    """Concrete position for a flower spec.  Integer blossoms become loop
    bouquets by default, anything else a red-blue string blossom."""
    v = spec.blossom
    if v == 0:
        return stalk(spec.height)
    if style == "auto":
        style = "loops" if v.is_integer() else "string"
    if style == "loops":
        if not v.is_integer():
            raise InvalidSpecError("loop petals need an integer blossom")
        color = Color.BLUE if v > 0 else Color.RED
        return flower_position(spec.height, abs(v.num), color)
    if style == "string":
        return generalized_flower(spec.height, string(sign_expansion(v)))
    raise InvalidSpecError(f"unknown realization style {style!r}")


def realize_component(comp: SumComponent, style: str = "auto") -> Position:
    if isinstance(comp, Position):
        return comp
    if isinstance(comp, FlowerSpec):
        return realize_flower(comp, style)
    if isinstance(comp, int):
        return stalk(comp)
    raise InvalidSpecError(f"unknown component {comp!r}")


def realize_sum(s: SumSpec, style: str = "auto") -> Position:
    return sum_positions(realize_component(c, style) for c in s.components)


def realize_flowerbed(f: FlowerbedSpec, style: str = "auto") -> Position:
    parts = [realize_flower(fl, style) for fl in f.flowers]
    parts += [stalk(h) for h in f.stalks]
    return sum_positions(parts)
