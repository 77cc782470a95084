import random

import pytest

from hackenbush.classify import (
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
    realize_flower,
    realize_flowerbed,
    realize_sum,
    shrub_value,
    sign_expansion,
    sprigs_outcome,
    sprigs_summary,
    star_based_outcomes,
    strength_compare,
    sum_outcome,
    trim,
    trimmed_sprig_outcome,
)
from hackenbush.core import (
    Color,
    Dyadic,
    Outcome,
    PlayConvention,
    Position,
    disjunctive_sum,
    generalized_flower,
    graft,
    stalk,
    string,
    sum_positions,
)
from hackenbush.generate import enum_flowerbed_specs, enum_shrubs
from hackenbush.oracle import Solver

G, B, R = Color.GREEN, Color.BLUE, Color.RED
NORMAL, MISERE = PlayConvention.NORMAL, PlayConvention.MISERE
N, P, L, RW = Outcome.N, Outcome.P, Outcome.L, Outcome.R

FLIP = {L: RW, RW: L, N: N, P: P}


@pytest.fixture(scope="module")
def solver():
    return Solver()


def fs(height, blossom) -> FlowerSpec:
    return FlowerSpec(height, Dyadic._coerce(blossom))


def bed(blues, reds, stalks=()) -> FlowerbedSpec:
    return FlowerbedSpec(
        tuple(fs(h, x) for h, x in blues),
        tuple(fs(h, x) for h, x in reds),
        tuple(stalks),
    )


# ---------------------------------------------------------------- nim

def test_nim_outcome_tables():
    assert nim_outcome([2, 2], NORMAL) is P
    assert nim_outcome([2, 2], MISERE) is P
    assert nim_outcome([1, 1], NORMAL) is P
    assert nim_outcome([1, 1], MISERE) is N
    assert nim_outcome([], NORMAL) is P
    assert nim_outcome([], MISERE) is N
    assert nim_outcome([1], MISERE) is P
    # Height-0 entries are empty games and must not defeat the all-ones rule.
    assert nim_outcome([0, 1], MISERE) is P


# ---------------------------------------------------------------- shrubs

def test_shrub_value_of_paths():
    for n in range(1, 6):
        assert shrub_value(stalk(n)) == n


def test_shrub_value_branching():
    fork = Position(((0, 1, G), (0, 2, G)), frozenset({0}))
    assert shrub_value(graft(stalk(1), 1, fork)) == 1
    # Branches of lengths 1 and 2 above the root edge: 1 + (1 xor 2) = 4.
    branches = Position(((0, 1, G), (0, 2, G), (2, 3, G)), frozenset({0}))
    assert shrub_value(graft(stalk(1), 1, branches)) == 4


def test_shrub_value_rejects_bad_input():
    with pytest.raises(InvalidSpecError):
        shrub_value(string((B,)))
    loop = Position(((0, 1, G), (1, 1, G)), frozenset({0}))
    with pytest.raises(InvalidSpecError):
        shrub_value(loop)
    triangle = Position(((0, 1, G), (1, 2, G), (0, 2, G)), frozenset({0}))
    with pytest.raises(InvalidSpecError):
        shrub_value(triangle)


def test_shrub_value_matches_grundy(solver):
    for shrub in enum_shrubs(6):
        assert shrub_value(shrub) == solver.grundy_normal(shrub)


# ---------------------------------------------------------------- twin

def test_evil_twin_rules():
    assert evil_twin(SumSpec((2,))).components == (2,)
    assert evil_twin(SumSpec((1,))).components == (1, 1)
    assert evil_twin(SumSpec(())).components == (1,)

    branches = Position(((0, 1, G), (0, 2, G), (2, 3, G)), frozenset({0}))
    shrub = graft(stalk(1), 1, branches)  # value 4
    twin = evil_twin(SumSpec((shrub, fs(1, 1))))
    assert twin.components == (4, fs(1, 1))

    all_ones = evil_twin(SumSpec((fs(1, 1), 1)))
    assert all_ones.components == (fs(1, 1), 1, 1)


def test_evil_twin_demotes_zero_blossoms():
    twin = evil_twin(SumSpec((fs(2, 0),)))
    assert twin.components == (2,)


# ---------------------------------------------------------------- sprigs

def test_sprigs_summary():
    s = sprigs_summary([Dyadic(1, 1), Dyadic(2)], [Dyadic(1)], [1, 2])
    assert s == SprigsSummary(1, Dyadic(-1, 1), 3)
    assert sprigs_summary([], [Dyadic(1)], []).edge == 0


def test_sprigs_outcome_table_rows():
    # Advantage 0, edge < 0, no stalks.
    assert sprigs_outcome([Dyadic(1, 1)], [Dyadic(1)], [], NORMAL) is RW
    # Advantage 1, edge <= 0, empty stalks.
    assert sprigs_outcome([Dyadic(1, 1)], [], [], NORMAL) is N
    # Two-ahead.
    assert sprigs_outcome([Dyadic(1), Dyadic(2)], [], [], NORMAL) is L
    assert sprigs_outcome([], [Dyadic(1), Dyadic(2)], [], MISERE) is RW
    # Advantage 0 decided by the stalks.
    assert sprigs_outcome([Dyadic(1)], [Dyadic(2)], [2], NORMAL) is N


def test_sprigs_outcome_misere_goes_through_twin():
    # One blue sprig alone: the twin adds a star, so the stalk nim-sum
    # flips to 1 and Left wins outright.
    assert sprigs_outcome([Dyadic(1)], [], [], MISERE) is L
    assert sprigs_outcome([Dyadic(1)], [], [2], MISERE) is L


def test_sprigs_outcome_rejects_cancels():
    with pytest.raises(InvalidSpecError):
        sprigs_outcome([Dyadic(1)], [Dyadic(1)], [], NORMAL)


# ---------------------------------------------------------------- 1v1 beds

def test_flowerbed1_outcome_rows():
    assert flowerbed1_outcome(2, Dyadic(1), 3, Dyadic(1), 0) is L
    assert flowerbed1_outcome(2, Dyadic(1), 3, Dyadic(1), 4) is N
    assert flowerbed1_outcome(2, Dyadic(1), 2, Dyadic(2), 0) is RW
    assert flowerbed1_outcome(2, Dyadic(2), 2, Dyadic(1), 0) is L
    assert flowerbed1_outcome(2, Dyadic(1), 2, Dyadic(1), 0) is P
    assert flowerbed1_outcome(2, Dyadic(1), 2, Dyadic(1), 1) is N


def test_flowerbed1_outcome_valuation_branch(solver):
    # Height 4 has 2-adic valuation 2: the threshold is 4, not 2.
    assert flowerbed1_outcome(4, Dyadic(1), 4, Dyadic(2), 3) is RW
    assert flowerbed1_outcome(4, Dyadic(1), 4, Dyadic(2), 4) is N


def test_flowerbed1_outcome_rejects_sprig_case():
    with pytest.raises(InvalidSpecError):
        flowerbed1_outcome(1, Dyadic(1), 1, Dyadic(1), 0)
    with pytest.raises(InvalidSpecError):
        flowerbed1_outcome(2, Dyadic(0), 2, Dyadic(1), 0)


# ---------------------------------------------------------------- trimming

def test_trim_removes_matching_pairs():
    trimmed, removed = trim(bed([(2, 1)], [(2, -1)]))
    assert trimmed.flowers == () and len(removed) == 1

    trimmed, removed = trim(bed([(2, 1)], [(2, -2)]))
    assert len(trimmed.flowers) == 2 and removed == ()

    trimmed, removed = trim(bed([(2, 1), (2, 1)], [(2, -1)]))
    assert [f.blossom for f in trimmed.blue] == [Dyadic(1)]
    assert trimmed.red == () and len(removed) == 1


def test_trim_is_order_independent():
    blues = [fs(2, 1), fs(3, 2), fs(2, 2)]
    reds = [fs(2, -2), fs(3, -2), fs(2, -1)]
    rng = random.Random(0)
    baseline = None
    for _ in range(6):
        rng.shuffle(blues)
        rng.shuffle(reds)
        trimmed, removed = trim(FlowerbedSpec(tuple(blues), tuple(reds)))
        key = (trimmed, len(removed))
        baseline = baseline or key
        assert key == baseline
    assert baseline[1] == 3


def test_trim_star_stalk_reduction_is_opt_in():
    spec = bed([], [], stalks=(1, 1, 1, 2))
    assert trim(spec)[0].stalks == (1, 1, 1, 2)
    assert trim(spec, cancel_star_stalks=True)[0].stalks == (1, 2)


# ---------------------------------------------------------------- flowerbeds

def test_flowerbed_outcome_examples():
    assert flowerbed_outcome(
        bed([(1, 1), (2, 1), (3, 1)], [(2, -1)]), NORMAL
    ) is L
    assert flowerbed_outcome(bed([(2, 1)], [(3, -1)]), NORMAL) is L
    assert flowerbed_outcome(bed([(2, 1)], [(2, -1)], stalks=(3,)), NORMAL) is N


def test_flowerbed_outcome_matches_oracle_small(solver):
    for spec in enum_flowerbed_specs(1, 1, 3, [1, 2], [(), (1,), (2,)]):
        realized = realize_flowerbed(spec, style="loops")
        for conv in (NORMAL, MISERE):
            assert flowerbed_outcome(spec, conv) is solver.outcome(realized, conv)


def test_flowerbed_mirror_symmetry():
    rng = random.Random(1)
    pool = list(enum_flowerbed_specs(2, 2, 3, [1, 2], [(), (1,), (1, 2)]))
    for spec in rng.sample(pool, 60):
        for conv in (NORMAL, MISERE):
            assert flowerbed_outcome(spec.mirrored(), conv) is FLIP[
                flowerbed_outcome(spec, conv)
            ]


def test_flowerbed_insertion_order_irrelevant():
    rng = random.Random(2)
    flowers = [fs(2, 1), fs(1, 2), fs(3, -1), fs(2, -2)]
    expected = None
    for _ in range(6):
        rng.shuffle(flowers)
        spec = make_flowerbed(flowers, (2,))
        got = tuple(flowerbed_outcome(spec, conv) for conv in (NORMAL, MISERE))
        expected = expected or got
        assert got == expected


def test_normal_equals_misere_without_cancels(solver):
    # Balanced beds with a flower of height >= 2 and no canceling pair
    # have the same outcome under both conventions.
    for spec in enum_flowerbed_specs(
        2, 2, 3, [1], [(), (2,)], include_canceling=False
    ):
        if all(f.height == 1 for f in spec.flowers):
            continue
        realized = realize_flowerbed(spec, style="loops")
        assert solver.outcome(realized, NORMAL) is solver.outcome(realized, MISERE)
        assert flowerbed_outcome(spec, NORMAL) is flowerbed_outcome(spec, MISERE)


def test_blossom_zero_flower_behaves_as_stalk(solver):
    # A nonempty blossom worth zero: a blue and a red edge side by side.
    zero_crown = Position(((0, 1, B), (0, 2, R)), frozenset({0}))
    for height in (1, 2, 3):
        flowerish = generalized_flower(height, zero_crown)
        for context in (stalk(1), string((G, B)), disjunctive_sum(stalk(2), stalk(1))):
            for conv in (NORMAL, MISERE):
                assert solver.outcome(
                    disjunctive_sum(flowerish, context), conv
                ) is solver.outcome(disjunctive_sum(stalk(height), context), conv)


def test_sum_outcome_handles_shrubs(solver):
    branches = Position(((0, 1, G), (0, 2, G), (2, 3, G)), frozenset({0}))
    shrub = graft(stalk(1), 1, branches)  # nim-value 4
    spec = SumSpec((shrub, fs(1, 1), 2))
    realized = sum_positions([shrub, realize_flower(fs(1, 1)), stalk(2)])
    for conv in (NORMAL, MISERE):
        assert sum_outcome(spec, conv) is solver.outcome(realized, conv)


# ---------------------------------------------------------------- trimmed sprigs table

def test_trimmed_sprig_outcome_table():
    assert trimmed_sprig_outcome(bed([], [])) is P
    assert trimmed_sprig_outcome(bed([], [], stalks=(1,))) is N
    assert trimmed_sprig_outcome(bed([(2, 1)], [(2, -1)])) is P
    # Stalk count enters as parity: two height-1 stalks cancel.
    assert trimmed_sprig_outcome(bed([(2, 1)], [(2, -1)], stalks=(1, 1))) is P
    assert trimmed_sprig_outcome(bed([(1, 2), (2, 1)], [(2, -1), (1, -1)])) is L


def test_trimmed_sprig_outcome_preconditions():
    with pytest.raises(InvalidSpecError):
        trimmed_sprig_outcome(bed([(2, 1)], [(2, -1)], stalks=(2,)))
    with pytest.raises(InvalidSpecError):
        trimmed_sprig_outcome(bed([(2, 1)], [(3, -1)]))


def test_trimmed_sprig_table_matches_oracle_on_sound_scope(solver):
    # Sound scope: a canceling pair of height >= 2 present, trimmed form a
    # sprigs game, stalks all height 1.  Parity of the stalk count decides.
    cases = []
    for tall in (2, 3):
        for sprig_pair in ((), ((1, 1), (1, -1))):
            for stalks in ((), (1,), (1, 1)):
                blues = [(tall, 1)] + [s for s in sprig_pair if s[1] > 0]
                reds = [(tall, -1)] + [s for s in sprig_pair if s[1] < 0]
                cases.append(bed(blues, reds, stalks))
    for spec in cases:
        realized = realize_flowerbed(spec, style="loops")
        assert trimmed_sprig_outcome(spec) is solver.outcome(realized, MISERE)
        assert trimmed_sprig_outcome(spec) is flowerbed_outcome(spec, MISERE)


def test_sprigs_and_1v1_mirror_symmetry():
    assert sprigs_outcome([Dyadic(1, 1)], [Dyadic(1)], [1], NORMAL) is FLIP[
        sprigs_outcome([Dyadic(1)], [Dyadic(1, 1)], [1], NORMAL)
    ]
    for conv in (NORMAL, MISERE):
        assert sprigs_outcome([Dyadic(2)], [], [], conv) is FLIP[
            sprigs_outcome([], [Dyadic(2)], [], conv)
        ]
    for b, c, x, y, a in ((2, 3, 1, 2, 0), (3, 3, 1, 2, 1), (4, 2, 2, 1, 5)):
        assert flowerbed1_outcome(b, Dyadic(x), c, Dyadic(y), a) is FLIP[
            flowerbed1_outcome(c, Dyadic(y), b, Dyadic(x), a)
        ]


def test_zero_sum_blossom_pair_cancels_in_dicot_contexts(solver):
    # A blue-red string worth 1/2 against a three-branch tree worth -1/2:
    # different shapes, opposite values, so the pair of height-1 flowers
    # vanishes in any dicot context.
    half_string = string((B, R))
    tree = Position(
        ((0, 1, R), (0, 2, B), (0, 3, R), (3, 4, B)), frozenset({0})
    )
    assert solver.redblue_value(half_string) == Dyadic(1, 1)
    assert solver.redblue_value(tree) == Dyadic(-1, 1)
    pair = disjunctive_sum(
        generalized_flower(1, half_string), generalized_flower(1, tree)
    )
    from hackenbush.generate import sample_contexts
    from hackenbush.oracle import StarBasedSums

    for context in sample_contexts(StarBasedSums(2, 3), 12, 31):
        assert solver.outcome(disjunctive_sum(pair, context), MISERE) is (
            solver.outcome(context, MISERE)
        )


# ---------------------------------------------------------------- star-based

def test_star_based_outcomes(solver):
    assert star_based_outcomes(stalk(1), solver) == (N, P)
    assert star_based_outcomes(stalk(2), solver) == (N, N)
    assert star_based_outcomes(string((G, B)), solver) == (N, L)
    assert star_based_outcomes(string((G, R)), solver) == (N, RW)


def test_star_based_matches_oracle(solver):
    shapes = [
        string((G, B, R)),
        string((G, G, B)),
        generalized_flower(1, string((B, R))),
        graft(stalk(1), 1, Position(((0, 1, G), (0, 2, B)), frozenset({0}))),
    ]
    for p in shapes:
        normal, misere = star_based_outcomes(p, solver)
        assert normal is solver.outcome(p, NORMAL)
        assert misere is solver.outcome(p, MISERE)


def test_star_based_rejects_other_positions(solver):
    with pytest.raises(InvalidSpecError):
        star_based_outcomes(string((B, G)), solver)
    with pytest.raises(InvalidSpecError):
        star_based_outcomes(disjunctive_sum(stalk(1), stalk(1)), solver)


# ---------------------------------------------------------------- strength

def test_strength_compare():
    assert strength_compare(fs(3, 1), fs(2, 5)) is Strength.WEAKER
    assert strength_compare(fs(2, 5), fs(3, 1)) is Strength.STRONGER
    assert strength_compare(fs(2, 1), fs(2, -1)) is Strength.EQUALLY_WEAK
    assert strength_compare(fs(2, Dyadic(1, 1)), fs(2, 1)) is Strength.WEAKER
    assert strength_compare(fs(2, 1), fs(2, 1)) is Strength.TIE


# ---------------------------------------------------------------- realization

def test_sign_expansion_round_trips(solver):
    values = [Dyadic(0), Dyadic(1), Dyadic(-1), Dyadic(1, 1), Dyadic(-3, 1), Dyadic(2), Dyadic(5, 3)]
    rng = random.Random(4)
    values += [Dyadic(rng.randint(-8, 8), rng.randint(0, 3)) for _ in range(10)]
    for v in values:
        colors = sign_expansion(v)
        if v == 0:
            assert colors == ()
        else:
            assert solver.redblue_value(string(colors)) == v


def test_realize_flower_styles_agree(solver):
    spec = fs(2, -2)
    loops = realize_flower(spec, style="loops")
    strings = realize_flower(spec, style="string")
    for context in (stalk(1), string((G, B))):
        for conv in (NORMAL, MISERE):
            assert solver.outcome(disjunctive_sum(loops, context), conv) is (
                solver.outcome(disjunctive_sum(strings, context), conv)
            )


def test_realize_sum_and_flowerbed():
    spec = bed([(2, 1)], [(1, -2)], stalks=(2,))
    p = realize_flowerbed(spec, style="loops")
    assert p.edge_count == 2 + 1 + 1 + 2 + 2
    s = SumSpec((stalk(2), fs(1, Dyadic(1, 1)), 1))
    q = realize_sum(s)
    assert q.edge_count == 2 + (1 + 2) + 1
