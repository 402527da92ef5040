"""Play loop, niceness normalization, adjudication, game-value oracle."""

import random

import pytest

from latticegames import catalog
from latticegames.catalog import seeded_pool
from latticegames.covers import Cover
from latticegames.errors import (
    CorruptTranscript,
    IllegalSelection,
    NotACover,
    SearchBound,
    StrategyPartial,
)
from latticegames.games import (
    G1,
    GFIN,
    CallbackStrategy,
    ConstantStrategy,
    IndexSelector,
    Inning,
    Outcome,
    PlayTranscript,
    PlayerIISelector,
    SeededStrategy,
    adjudicate,
    game_value,
    normalize_to_nice,
    play,
)


def cov(L, labels, target=None):
    return Cover(L, [L.by_label(x) for x in labels], target or L.top)


# -- play -----------------------------------------------------------------------


def test_immediate_win_on_top_cover(b2):
    strat = ConstantStrategy(Cover(b2, [b2.top], b2.top))
    t = play(b2, G1, strat, IndexSelector("first"), b2.top, 4)
    assert t.outcome == Outcome.won(0)
    assert len(t.innings) == 1  # early stop: later innings not materialized


def test_cycling_picks_win_at_inning_one(b2):
    strat = ConstantStrategy(cov(b2, ["{x}", "{y}"]))
    t = play(b2, G1, strat, IndexSelector("cycle"), b2.top, 4)
    assert t.outcome == Outcome.won(1)


def test_stalling_picks_undecided(chain3):
    strat = ConstantStrategy(cov(chain3, ["c1", "c2"]))
    t = play(chain3, G1, strat, IndexSelector("min"), chain3.top, 6)
    assert t.outcome == Outcome.undecided(6)
    assert all(chain3.label(i.running_join) == "c1" for i in t.innings)


def test_gfin_finite_sets(b2):
    strat = ConstantStrategy(cov(b2, ["{x}", "{y}"]))

    class Both(PlayerIISelector):
        def select(self, inning, cover, running):
            return frozenset(cover.items)

    t = play(b2, GFIN, strat, Both(), b2.top, 3)
    assert t.outcome == Outcome.won(0)


def test_illegal_selection_rejected(b2):
    strat = ConstantStrategy(cov(b2, ["{x}", "{y}"]))

    class Cheat(PlayerIISelector):
        def select(self, inning, cover, running):
            return cover.lattice.top  # not an offered item

    with pytest.raises(IllegalSelection):
        play(b2, G1, strat, Cheat(), b2.top, 2)


def test_transcript_validates_and_adjudicates(b2):
    strat = ConstantStrategy(cov(b2, ["{x}", "{y}"]))
    t = play(b2, G1, strat, IndexSelector("cycle"), b2.top, 4)
    assert t.validate()
    assert adjudicate(t, b2.top) == t.outcome


def test_adjudicate_detects_corruption(b2):
    strat = ConstantStrategy(cov(b2, ["{x}", "{y}"]))
    t = play(b2, G1, strat, IndexSelector("cycle"), b2.top, 4)
    bad = PlayTranscript(
        b2, t.kind, t.target,
        (t.innings[0], Inning(t.innings[1].cover, t.innings[1].selection,
                              b2.bottom)),
        t.outcome)
    with pytest.raises(CorruptTranscript):
        adjudicate(bad, b2.top)


def test_adjudicate_examples(b2):
    top_first = play(b2, G1, ConstantStrategy(Cover(b2, [b2.top], b2.top)),
                     IndexSelector("first"), b2.top, 3)
    assert adjudicate(top_first, b2.top) == Outcome.won(0)
    bottoms = PlayTranscript(
        b2, G1, b2.top,
        tuple(Inning(cov(b2, ["{}", "{x}", "{y}"]), b2.bottom, b2.bottom)
              for _ in range(2)),
        Outcome.undecided(2))
    assert adjudicate(bottoms, b2.top) == Outcome.undecided(2)


# -- normalization ----------------------------------------------------------------


def test_normalize_constant_strategy(b2):
    x = b2.by_label("{x}")
    strat = ConstantStrategy(Cover(b2, [x, b2.top], b2.top))
    tree = normalize_to_nice(b2, strat, b2.top, 3, 2)
    assert [b2.label(e) for e in tree.nodes[()].items] == ["{x}", "{x,y}"]
    # each child's first item is the picked item of the parent
    for m in range(2):
        child = tree.nodes[(m,)]
        assert child.items[0] == tree.nodes[()].items[m]
        assert all(b2.leq(tree.nodes[()].items[m], e) for e in child.items)


def test_normalize_is_fixpoint_on_nice_trees(b2):
    strat = ConstantStrategy(cov(b2, ["{x}", "{y}"]))
    tree = normalize_to_nice(b2, strat, b2.top, 3, 3)
    again = normalize_to_nice(b2, tree.as_strategy(), b2.top, 3, 3)
    for s in tree.nodes:
        assert tree.nodes[s].items == again.nodes[s].items


def test_normalize_invariants_on_seeded_strategies():
    rng = random.Random(3)
    for name in ["b2", "b3", "chain(4)", "topology(4,8)"]:
        L = catalog.named(name)
        pool = seeded_pool(L, L.top, seed=11, count=3)
        tree = normalize_to_nice(L, SeededStrategy(L, L.top, pool, 11),
                                 L.top, 4, 3)
        tree.validate()
        for s, node in tree.nodes.items():
            assert node.target == L.top and node.items[-1] == L.top
            for a, b in zip(node.items, node.items[1:]):
                assert L.leq(a, b)


def test_normalized_items_dominate_some_original(b2):
    raw = cov(b2, ["{x}", "{y}"])
    strat = ConstantStrategy(raw)
    tree = normalize_to_nice(b2, strat, b2.top, 3, 3)
    originals = set(raw.items)
    for s, node in tree.nodes.items():
        for e in node.items:
            assert any(b2.leq(o, e) for o in originals)


def test_partial_strategy_surfaces_history(b2):
    def fn(history):
        if len(history) >= 1:
            raise RuntimeError("no answer here")
        return cov(b2, ["{x}", "{y}"])

    with pytest.raises(StrategyPartial) as exc:
        normalize_to_nice(b2, CallbackStrategy(fn), b2.top, 3, 2)
    assert len(exc.value.history) == 1


def test_non_cover_answer_rejected(b2):
    x = b2.by_label("{x}")

    def fn(history):
        return Cover(b2, [x], x)  # covers x, not top

    with pytest.raises(NotACover):
        normalize_to_nice(b2, CallbackStrategy(fn), b2.top, 2, 2)


# -- game value ----------------------------------------------------------------------


def test_game_value_examples(b2):
    single = [Cover(b2, [b2.top], b2.top)]
    assert game_value(b2, G1, b2.top, 1, single)
    both = [cov(b2, ["{x}", "{y}"])]
    assert game_value(b2, G1, b2.top, 2, both)
    assert not game_value(b2, G1, b2.top, 1, both)
    assert game_value(b2, GFIN, b2.top, 1, both)  # finite sets win in one inning


def test_game_value_bounds(b2):
    both = [cov(b2, ["{x}", "{y}"])]
    with pytest.raises(SearchBound):
        game_value(b2, G1, b2.top, 9, both)
    with pytest.raises(SearchBound):
        game_value(b2, G1, b2.top, 2, both * 5)


def test_seeded_strategy_deterministic(b2):
    pool = seeded_pool(b2, b2.top, seed=4, count=3)
    s1 = SeededStrategy(b2, b2.top, pool, 4)
    s2 = SeededStrategy(b2, b2.top, pool, 4)
    hist = (b2.by_label("{x}"),)
    assert s1.answer(hist).items == s2.answer(hist).items
    assert s1.answer(()).items == s2.answer(()).items


def test_tree_file_strategy_under_normalization(b2):
    from latticegames.games import TreeFileStrategy
    x, y, top = b2.by_label("{x}"), b2.by_label("{y}"), b2.top
    nodes = {
        (): [x, y],
        (0,): [y, top],
        (1,): [x, top],
        (0, 0): [x, y], (0, 1): [x, y],
        (1, 0): [x, y], (1, 1): [x, y],
    }
    strat = TreeFileStrategy(b2, top, nodes)
    tree = normalize_to_nice(b2, strat, top, 3, 2)
    tree.validate()
    # the normalized root follows the file's root; children follow index paths
    assert tree.nodes[()].items[0] == x
    assert b2.leq(y, tree.nodes[(0,)].items[1])
    # missing paths surface as StrategyPartial when reached
    sparse = TreeFileStrategy(b2, top, {(): [x, y]})
    with pytest.raises(StrategyPartial):
        normalize_to_nice(b2, sparse, top, 2, 2)


def test_tree_file_strategy_raw_play_by_item_value(b2):
    from latticegames.games import TreeFileStrategy
    x, y, top = b2.by_label("{x}"), b2.by_label("{y}"), b2.top
    strat = TreeFileStrategy(b2, top, {(): [x, y], (0,): [y, top], (1,): [x, top]})
    t = play(b2, G1, strat, IndexSelector("first"), top, 2)
    assert t.outcome == Outcome.won(1)  # x then y
