"""Brute-force ground truth for Hackenbush positions.

Everything here is exhaustive minimax over the move DAG with memoization:
outcome classes under either play convention, nim-values of impartial
positions, and exact dyadic values of red-blue positions.  Sums are solved
as one flattened graph; no decomposition shortcuts are taken, so this
module stays an independent check on the closed-form classifiers.

A Solver owns its cache and is single-owner; run concurrent verification
with one Solver per worker.  All inputs and outputs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .core import (
    Dyadic,
    InvalidPositionError,
    Outcome,
    Player,
    PlayConvention,
    Position,
    SumPosition,
    encode,
    options,
)


# ============================================================================
# Context families for sampled equivalence testing
# ============================================================================

@dataclass(frozen=True)
class DicotTrees:
    """Single grounded trees in which, at every stage, both players can
    move or neither can (realized as trees whose grounded edge is green)."""

    max_depth: int


@dataclass(frozen=True)
class StarBasedSums:
    """Disjunctive sums of positions with exactly one grounded green edge."""

    max_components: int
    max_height: int


@dataclass(frozen=True)
class Stalks:
    """All multisets of green stalks up to the given count and height."""

    max_count: int
    max_height: int


@dataclass(frozen=True)
class ArbitraryHackenbush:
    """Unrestricted grounded colored multigraphs up to an edge budget."""

    max_edges: int


ContextFamily = Union[DicotTrees, StarBasedSums, Stalks, ArbitraryHackenbush]


# ============================================================================
# The simplicity rule for dyadic values
# ============================================================================

def simplest_between(lo: Dyadic | None, hi: Dyadic | None) -> Dyadic:
    """The simplest dyadic strictly between lo and hi (None is -/+infinity):
    the integer of smallest magnitude if one fits, otherwise the unique
    a / 2**b with minimal b."""
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo is None and hi is None:
        return Dyadic(0)
    if lo is None:
        return Dyadic(0) if hi > 0 else Dyadic(hi.ceil() - 1)
    if hi is None:
        return Dyadic(0) if lo < 0 else Dyadic(lo.floor() + 1)
    if lo < 0 < hi:
        return Dyadic(0)
    if lo >= 0:
        n = lo.floor() + 1
        if n < hi:
            return Dyadic(n)
    else:
        n = hi.ceil() - 1
        if n > lo:
            return Dyadic(n)
    b = 1
    while True:
        # Smallest numerator with a / 2**b > lo; accept it if it clears hi.
        a = ((lo.num << b) >> lo.exp) + 1
        if Dyadic(a, b) < hi:
            return Dyadic(a, b)
        b += 1


# ============================================================================
# The solver
# ============================================================================

@dataclass
class SolveCache:
    """Memo store: (encoding, convention) -> per-player first-move results.

    Entries are write-once; caching never changes a returned outcome."""

    wins: dict = field(default_factory=dict)
    grundy: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.wins) + len(self.grundy) + len(self.values)


PositionLike = Union[Position, SumPosition]


def _as_position(p: PositionLike) -> Position:
    return p.flatten() if isinstance(p, SumPosition) else p


class Solver:
    """Exact game-tree search engine with a private memo cache."""

    def __init__(self, cache_enabled: bool = True):
        self.cache_enabled = cache_enabled
        self.cache = SolveCache()

    # -- outcome classes -----------------------------------------------------

    def wins_moving_first(
        self, p: PositionLike, player: Player, convention: PlayConvention
    ) -> bool:
        return self._wins(_as_position(p), player, convention)

    def _wins(self, p: Position, player: Player, convention: PlayConvention) -> bool:
        key = (encode(p), convention, player)
        if self.cache_enabled:
            hit = self.cache.wins.get(key)
            if hit is not None:
                return hit
        opts = options(p, player)
        if not opts:
            # No move available: under misere the opponent made the last
            # (losing) move; under normal play the stuck player loses.
            result = convention is PlayConvention.MISERE
        else:
            other = player.opponent
            result = any(not self._wins(q, other, convention) for q in opts)
        if self.cache_enabled:
            self.cache.wins[key] = result
        return result

    def outcome(self, p: PositionLike, convention: PlayConvention) -> Outcome:
        p = _as_position(p)
        left = self._wins(p, Player.LEFT, convention)
        right = self._wins(p, Player.RIGHT, convention)
        if left and right:
            return Outcome.N
        if left:
            return Outcome.L
        if right:
            return Outcome.R
        return Outcome.P

    # -- nim-values of impartial positions ------------------------------------

    def grundy_normal(self, p: PositionLike) -> int:
        return self._grundy(_as_position(p), PlayConvention.NORMAL)

    def grundy_misere(self, p: PositionLike) -> int:
        return self._grundy(_as_position(p), PlayConvention.MISERE)

    def _grundy(self, p: Position, convention: PlayConvention) -> int:
        if not p.is_impartial():
            raise InvalidPositionError("nim-values need an all-green position")
        key = (encode(p), convention)
        if self.cache_enabled:
            hit = self.cache.grundy.get(key)
            if hit is not None:
                return hit
        if p.is_empty():
            value = 1 if convention is PlayConvention.MISERE else 0
        else:
            seen = {self._grundy(q, convention) for q in options(p, Player.LEFT)}
            value = 0
            while value in seen:
                value += 1
        if self.cache_enabled:
            self.cache.grundy[key] = value
        return value

    # -- red-blue values -------------------------------------------------------

    def redblue_value(self, p: PositionLike) -> Dyadic:
        p = _as_position(p)
        if not p.is_redblue():
            raise InvalidPositionError("values need a green-free position")
        return self._value(p)

    def _value(self, p: Position) -> Dyadic:
        key = encode(p)
        if self.cache_enabled:
            hit = self.cache.values.get(key)
            if hit is not None:
                return hit
        left = [self._value(q) for q in options(p, Player.LEFT)]
        right = [self._value(q) for q in options(p, Player.RIGHT)]
        value = simplest_between(
            max(left) if left else None, min(right) if right else None
        )
        if self.cache_enabled:
            self.cache.values[key] = value
        return value

    # -- sampled restricted equivalence ----------------------------------------

    def equivalent_in_contexts(
        self,
        g: PositionLike,
        h: PositionLike,
        convention: PlayConvention,
        contexts,
    ) -> tuple[bool, Position | None]:
        """Compare outcomes of g+x and h+x over the supplied contexts.

        One-sided: agreement on the sample proves nothing universally,
        disagreement disproves equivalence.  Returns the first
        distinguishing context, if any."""
        from .core import disjunctive_sum

        g = _as_position(g)
        h = _as_position(h)
        for x in contexts:
            x = _as_position(x)
            if self.outcome(disjunctive_sum(g, x), convention) != self.outcome(
                disjunctive_sum(h, x), convention
            ):
                return False, x
        return True, None
