"""Grounded colored multigraph model for Hackenbush positions.

A position is a finite multigraph with edges colored red, blue or green and
a nonempty set of vertices marked as ground.  Left may cut blue and green
edges, Right may cut red and green edges; after a cut, everything no longer
connected to the ground falls away.  All values here are immutable and all
operations are pure, so they are safe to share across threads or processes.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum


class InvalidPositionError(ValueError):
    """Raised when a graph, move or constructor argument is malformed."""


class Color(Enum):
    RED = "R"
    BLUE = "B"
    GREEN = "G"

    def mirrored(self) -> "Color":
        if self is Color.RED:
            return Color.BLUE
        if self is Color.BLUE:
            return Color.RED
        return Color.GREEN


class Player(Enum):
    LEFT = "Left"
    RIGHT = "Right"

    @property
    def opponent(self) -> "Player":
        return Player.RIGHT if self is Player.LEFT else Player.LEFT


#: Edge colors each player is allowed to cut.
CUTTABLE = {
    Player.LEFT: frozenset({Color.BLUE, Color.GREEN}),
    Player.RIGHT: frozenset({Color.RED, Color.GREEN}),
}


def can_cut(player: Player, color: Color) -> bool:
    return color in CUTTABLE[player]


class PlayConvention(Enum):
    NORMAL = "normal"  # last player to move wins
    MISERE = "misere"  # last player to move loses


class Outcome(Enum):
    N = "N"  # next player wins
    P = "P"  # previous player wins
    L = "L"  # Left wins regardless of who starts
    R = "R"  # Right wins regardless of who starts


# The strict relations of the outcome diamond (better for Left first):
# L above P and N, P and N above R, P and N incomparable.
_OUTCOME_ABOVE = {
    (Outcome.L, Outcome.P),
    (Outcome.L, Outcome.N),
    (Outcome.L, Outcome.R),
    (Outcome.P, Outcome.R),
    (Outcome.N, Outcome.R),
}


def compare_outcomes(a: Outcome, b: Outcome) -> int | None:
    """Partial order on outcomes: 1 if a is better for Left, -1 if worse,
    0 if equal, None if incomparable (P vs N)."""
    if a is b:
        return 0
    if (a, b) in _OUTCOME_ABOVE:
        return 1
    if (b, a) in _OUTCOME_ABOVE:
        return -1
    return None


# ============================================================================
# Exact dyadic rationals (values of red-blue positions)
# ============================================================================

@functools.total_ordering
@dataclass(frozen=True)
class Dyadic:
    """Exact rational num / 2**exp, stored in lowest terms."""

    num: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exponent must be non-negative")
        num, exp = self.num, self.exp
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @staticmethod
    def _coerce(value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return Dyadic(value)
        raise TypeError(f"cannot interpret {value!r} as a dyadic")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse "3", "-2" or "a/b" with b a power of two."""
        text = text.strip()
        if "/" in text:
            a, _, b = text.partition("/")
            num, den = int(a), int(b)
            if den <= 0 or den & (den - 1):
                raise ValueError(f"denominator must be a power of two: {text!r}")
            return cls(num, den.bit_length() - 1)
        return cls(int(text))

    def _key(self, other: "Dyadic") -> tuple[int, int]:
        return self.num << other.exp, other.num << self.exp

    def __eq__(self, other):
        try:
            other = Dyadic._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._key(other)
        return a == b

    def __lt__(self, other):
        try:
            other = Dyadic._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._key(other)
        return a < b

    def __hash__(self):
        return hash((self.num, self.exp))

    def __add__(self, other):
        other = Dyadic._coerce(other)
        exp = max(self.exp, other.exp)
        num = (self.num << (exp - self.exp)) + (other.num << (exp - other.exp))
        return Dyadic(num, exp)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        return self + (-Dyadic._coerce(other))

    def __abs__(self):
        return Dyadic(abs(self.num), self.exp)

    @property
    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    def is_integer(self) -> bool:
        return self.exp == 0

    def floor(self) -> int:
        return self.num >> self.exp if self.exp else self.num

    def ceil(self) -> int:
        return -((-self.num) >> self.exp) if self.exp else self.num

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"

    def __repr__(self):
        return f"Dyadic({self})"


ZERO = Dyadic(0)


# ============================================================================
# Positions
# ============================================================================

Edge = tuple[int, int, Color]


@dataclass(frozen=True, eq=True)
class Position:
    """Immutable grounded colored multigraph.

    Vertices are integer ids implied by the ground set and edge endpoints;
    edge endpoints are stored low-id first.  Builders keep positions pruned
    (every vertex connected to the ground).  Ground vertices are never
    removed, even when isolated.
    """

    edges: tuple[Edge, ...]
    ground: frozenset[int]

    def __post_init__(self):
        if not self.ground:
            raise InvalidPositionError("ground set must be nonempty")
        norm = tuple(
            (u, v, c) if u <= v else (v, u, c) for (u, v, c) in self.edges
        )
        object.__setattr__(self, "edges", norm)
        object.__setattr__(self, "_hash", hash((norm, self.ground)))

    def __hash__(self):
        return self._hash  # type: ignore[attr-defined]

    @property
    def vertices(self) -> frozenset[int]:
        verts = set(self.ground)
        for u, v, _ in self.edges:
            verts.add(u)
            verts.add(v)
        return frozenset(verts)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_empty(self) -> bool:
        return not self.edges

    def colors(self) -> frozenset[Color]:
        return frozenset(c for _, _, c in self.edges)

    def is_impartial(self) -> bool:
        return all(c is Color.GREEN for _, _, c in self.edges)

    def is_redblue(self) -> bool:
        return all(c is not Color.GREEN for _, _, c in self.edges)


@dataclass(frozen=True)
class Move:
    """A cut: index into position.edges plus the player making it."""

    edge_index: int
    mover: Player


@dataclass(frozen=True)
class SumPosition:
    """A disjunctive sum kept as a component list; component order is
    irrelevant to every outcome operation."""

    components: tuple[Position, ...]

    def flatten(self) -> Position:
        return sum_positions(self.components)


def empty_position() -> Position:
    return Position((), frozenset({0}))


def prune(edges, ground) -> Position:
    """Restrict a raw graph to the part reachable from the ground."""
    ground = frozenset(ground)
    if not ground:
        raise InvalidPositionError("ground set must be nonempty")
    adjacent: dict[int, list[int]] = {}
    for u, v, _ in edges:
        adjacent.setdefault(u, []).append(v)
        adjacent.setdefault(v, []).append(u)
    reached = set(ground)
    frontier = list(ground)
    while frontier:
        u = frontier.pop()
        for w in adjacent.get(u, ()):
            if w not in reached:
                reached.add(w)
                frontier.append(w)
    kept = tuple((u, v, c) for (u, v, c) in edges if u in reached)
    return Position(kept, ground)


def legal_moves(p: Position, player: Player) -> tuple[Move, ...]:
    return tuple(
        Move(i, player)
        for i, (_, _, c) in enumerate(p.edges)
        if can_cut(player, c)
    )


def apply_move(p: Position, move: Move) -> Position:
    if not 0 <= move.edge_index < len(p.edges):
        raise InvalidPositionError(f"no edge {move.edge_index}")
    color = p.edges[move.edge_index][2]
    if not can_cut(move.mover, color):
        raise InvalidPositionError(f"{move.mover.value} cannot cut {color.value}")
    remaining = p.edges[: move.edge_index] + p.edges[move.edge_index + 1 :]
    return prune(remaining, p.ground)


def options(p: Position, player: Player) -> tuple[Position, ...]:
    """All positions reachable by one cut of the given player, deduplicated
    by encoding and sorted by it for determinism."""
    by_key: dict[bytes, Position] = {}
    for move in legal_moves(p, player):
        q = apply_move(p, move)
        by_key.setdefault(encode(q), q)
    return tuple(by_key[k] for k in sorted(by_key))


def _fresh_base(p: Position) -> int:
    return max(p.vertices, default=-1) + 1


def disjunctive_sum(p: Position, q: Position) -> Position:
    """Disjoint union with q's vertex ids relabeled past p's."""
    offset = _fresh_base(p)
    edges = p.edges + tuple((u + offset, v + offset, c) for (u, v, c) in q.edges)
    ground = p.ground | frozenset(g + offset for g in q.ground)
    return Position(edges, ground)


def sum_positions(components) -> Position:
    total = empty_position()
    for part in components:
        total = disjunctive_sum(total, part)
    return total


def graft(base: Position, top_vertex: int, crown: Position) -> Position:
    """Ordinal-sum attachment: identify the crown's single ground vertex
    with top_vertex of base.  Any cut in base below the graft point drops
    the crown."""
    if top_vertex not in base.vertices:
        raise InvalidPositionError(f"vertex {top_vertex} not in base")
    if len(crown.ground) != 1:
        raise InvalidPositionError("crown must have a single ground vertex")
    (root,) = crown.ground
    offset = _fresh_base(base)

    def remap(v: int) -> int:
        return top_vertex if v == root else v + offset

    edges = base.edges + tuple(
        (remap(u), remap(v), c) for (u, v, c) in crown.edges
    )
    return Position(edges, base.ground)


def mirror(p: Position) -> Position:
    """Swap red and blue everywhere (negation of the game)."""
    return Position(
        tuple((u, v, c.mirrored()) for (u, v, c) in p.edges), p.ground
    )


# ============================================================================
# Constructors for the standard families
# ============================================================================

def string(colors) -> Position:
    """A path grounded at one end, colored bottom-up."""
    colors = tuple(colors)
    edges = tuple((i, i + 1, c) for i, c in enumerate(colors))
    return Position(edges, frozenset({0}))


def stalk(n: int) -> Position:
    """Green string of height n; stalk(0) is the empty position."""
    if n < 0:
        raise InvalidPositionError("stalk height must be non-negative")
    return string((Color.GREEN,) * n)


def sprig(colors) -> Position:
    """A green edge supporting a red-blue string."""
    colors = tuple(colors)
    if not colors:
        raise InvalidPositionError("sprig needs a nonempty red-blue string")
    if any(c is Color.GREEN for c in colors):
        raise InvalidPositionError("sprig body must be red-blue")
    return string((Color.GREEN,) + colors)


def flower(height: int, loop_count: int, loop_color: Color) -> Position:
    """Green stalk topped with same-colored loops (the petals)."""
    if height < 1:
        raise InvalidPositionError("flower height must be at least 1")
    if loop_count < 0:
        raise InvalidPositionError("petal count must be non-negative")
    if loop_color is Color.GREEN:
        raise InvalidPositionError("petals must be red or blue")
    base = stalk(height)
    edges = base.edges + tuple((height, height, loop_color) for _ in range(loop_count))
    return Position(edges, base.ground)


def generalized_flower(height: int, blossom: Position) -> Position:
    """Green stalk supporting an arbitrary red-blue position."""
    if height < 1:
        raise InvalidPositionError("flower height must be at least 1")
    if not blossom.is_redblue():
        raise InvalidPositionError("blossom must be red-blue")
    return graft(stalk(height), height, blossom)


# ============================================================================
# Canonical serialization (memoization key)
# ============================================================================

@functools.lru_cache(maxsize=None)
def encode(p: Position) -> bytes:
    """Deterministic byte encoding of a position.

    Vertices are renumbered per connected component by breadth-first
    discovery from the ground (ties by sorted incident color multiset, then
    insertion id); component encodings are sorted so disjunctive sums
    encode independently of component order.  Equal labeled graphs encode
    equally; the converse is not guaranteed (isomorphic relabelings may
    differ), and edgeless ground vertices are omitted.  Used as a memo key
    only: a collision of game-identical positions is sound, a missed match
    merely costs speed.
    """
    adjacent: dict[int, list[tuple[int, Color]]] = {}
    incident: dict[int, list[str]] = {}
    for u, v, c in p.edges:
        adjacent.setdefault(u, []).append((v, c))
        adjacent.setdefault(v, []).append((u, c))
        incident.setdefault(u, []).append(c.value)
        incident.setdefault(v, []).append(c.value)

    def color_key(v: int) -> tuple[str, ...]:
        return tuple(sorted(incident.get(v, ())))

    unvisited = set(adjacent)
    parts = []
    # Each component of a pruned position contains at least one ground vertex.
    for start in sorted(v for v in p.ground if v in adjacent):
        if start not in unvisited:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w, _ in adjacent[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        unvisited -= comp
        roots = sorted(
            (v for v in comp if v in p.ground), key=lambda v: (color_key(v), v)
        )
        index = {v: i for i, v in enumerate(roots)}
        queue = list(roots)
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            fresh = sorted(
                {w for w, _ in adjacent[u] if w not in index},
                key=lambda v: (color_key(v), v),
            )
            for w in fresh:
                index[w] = len(index)
                queue.append(w)
        labeled = sorted(
            (min(index[u], index[v]), max(index[u], index[v]), c.value)
            for u, v, c in p.edges
            if u in comp
        )
        grounds = ",".join(str(index[v]) for v in roots)
        body = ",".join(f"{a}-{b}{c}" for a, b, c in labeled)
        parts.append(f"g{grounds}:{body}".encode())
    return b"|".join(sorted(parts))
