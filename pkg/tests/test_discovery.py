import pytest
from hypothesis import given

from tracemine import EventLog, log_from_sequences
from tracemine.conformance import Replayer, fitness, token_replay
from tracemine.discovery import (
    TAU,
    DiscoveryError,
    MinerParams,
    Operator,
    Relation,
    alpha_miner,
    alpha_plus_miner,
    dependency_graph,
    flower,
    footprint,
    heuristic_miner,
    heuristic_net_to_petri,
    inductive_miner,
    leaf,
    loop,
    parallel,
    sequence,
    tree_to_petri,
    xor,
)
from tracemine.petri import degree_stats, export_pnml, is_workflow_net

from .oracles import language
from .strategies import sequences


def log(*seqs):
    return log_from_sequences([tuple(s) for s in seqs])


# footprint ------------------------------------------------------------------


def test_footprint_parallel_pair():
    fp = footprint(log("ab", "ba"))
    assert fp("a", "b") is Relation.PARALLEL
    assert fp("b", "a") is Relation.PARALLEL


def test_footprint_empty_log():
    fp = footprint(EventLog(traces=()))
    assert fp.alphabet == ()


def test_footprint_text(l1):
    text = footprint(l1).to_text()
    assert text.splitlines()[1].split() == ["a", "#", "->", "->", "#"]


# alpha ------------------------------------------------------------------------


def test_alpha_l1_places(l1):
    apn = alpha_miner(l1)
    assert apn.net.places == {"source", "p({a},{b,c})", "p({b,c},{d})", "sink"}
    assert sorted(apn.net.transitions.values()) == ["a", "b", "c", "d"]
    assert len(apn.net.arcs) == 8


def test_alpha_sequence():
    s = degree_stats(alpha_miner(log("ab")))
    assert (s.num_places, s.num_transitions, s.num_arcs) == (3, 2, 4)


def test_alpha_rediscovers_parallel_net():
    # exhaustive play-out of sequence(a, parallel(b, c), d)
    played = log("abcd", "acbd")
    apn = alpha_miner(played)
    assert is_workflow_net(apn)
    assert fitness(token_replay(played, apn)) == 1.0
    assert language(apn, 4) == {tuple("abcd"), tuple("acbd")}


def test_alpha_rejects_empty_log():
    with pytest.raises(DiscoveryError):
        alpha_miner(EventLog(traces=()))


def test_alpha_plus_length_one_loop():
    lg = log("abc", "abc", "abbc")
    apn = alpha_plus_miner(lg)
    assert fitness(token_replay(lg, apn)) == 1.0
    assert tuple("abbbc") in language(apn, 5)
    # plain alpha sees b || b and leaves b without any place
    plain = alpha_miner(lg)
    assert plain.net.preset["t:b"] == () and plain.net.postset["t:b"] == ()
    assert not is_workflow_net(plain)


def test_alpha_plus_without_loops_equals_alpha(l1):
    assert alpha_plus_miner(l1) == alpha_miner(l1)


@given(sequences())
def test_alpha_plus_reduces_to_alpha(seqs):
    if any(a == b for s in seqs for a, b in zip(s, s[1:])):
        return
    lg = log_from_sequences(seqs)
    assert alpha_plus_miner(lg) == alpha_miner(lg)


# heuristics ---------------------------------------------------------------------


def test_dependency_values(l1):
    dg = heuristic_miner(l1)
    assert dg.dependency_of("a", "b") == 0.75
    assert dg.dependency_of("a", "c") == pytest.approx(2 / 3)


def test_symmetric_pair_has_no_edge():
    dg = heuristic_miner(log("ab", "ba"), MinerParams(all_connected=False))
    assert dg.dependency_of("a", "b") == 0.0
    assert ("a", "b") not in dg.edges


def test_heuristic_net_replays_l1(l1):
    apn = heuristic_net_to_petri(heuristic_miner(l1))
    assert fitness(token_replay(l1, apn)) == 1.0


def test_heuristic_single_activity():
    apn = heuristic_net_to_petri(heuristic_miner(log("a")))
    assert apn.net.places == {"source", "sink"}
    assert list(apn.net.transitions.values()) == ["a"]


def test_heuristic_xor_split_is_a_choice():
    lg = log("abd", "acd", "abd", "acd")
    apn = heuristic_net_to_petri(heuristic_miner(lg))
    choice = [p for p in apn.net.places if len(apn.net.postset[p]) == 2]
    assert len(choice) == 1
    labels = {apn.net.transitions[t] for t in apn.net.postset[choice[0]]}
    assert labels == {"b", "c"}
    assert not Replayer(apn).replay(list("abcd")).fits


def test_heuristic_and_split():
    lg = log("abcd", "acbd", "abcd", "acbd")
    apn = heuristic_net_to_petri(heuristic_miner(lg))
    assert fitness(token_replay(lg, apn)) == 1.0
    assert language(apn, 4) == {tuple("abcd"), tuple("acbd")}


def test_heuristic_self_loop():
    lg = log("abbc", "abc", "abbbc")
    dg = heuristic_miner(lg)
    assert "b" in dg.loop1
    assert fitness(token_replay(lg, heuristic_net_to_petri(dg))) == 1.0


def test_heuristic_length_two_loop():
    lg = log("abcd", "abcbcd", "abcd", "abcbcbcd")
    dg = heuristic_miner(lg)
    assert ("c", "b") in dg.edges
    assert fitness(token_replay(lg, heuristic_net_to_petri(dg))) == 1.0


def test_miner_params_validation():
    with pytest.raises(ValueError):
        MinerParams(dependency_threshold=1.5)


@given(sequences())
def test_dependency_antisymmetry(seqs):
    dg = dependency_graph(seqs, MinerParams())
    acts = dg.activities
    for a in acts:
        for b in acts:
            if a != b:
                assert abs(dg.dependency_of(a, b) + dg.dependency_of(b, a)) <= 1e-12


@given(sequences())
def test_heuristic_nets_are_workflow_nets(seqs):
    apn = heuristic_net_to_petri(heuristic_miner(log_from_sequences(seqs)))
    assert is_workflow_net(apn)


# inductive ---------------------------------------------------------------------


def test_inductive_l1(l1):
    assert str(inductive_miner(l1)) == "sequence(a, xor(b, c), d)"


def test_inductive_base_case():
    assert inductive_miner(log("a")) == leaf("a")


def test_inductive_parallel():
    assert inductive_miner(log("ab", "ba")) == parallel(leaf("a"), leaf("b"))


def test_inductive_loop():
    tree = inductive_miner(log("ab", "abcab"))
    assert tree.operator is Operator.LOOP
    assert fitness(token_replay(log("ab", "abcab"), tree_to_petri(tree))) == 1.0


def test_inductive_optional_activity():
    tree = inductive_miner(log("ab", "b"))
    apn = tree_to_petri(tree)
    assert language(apn, 3) == {("a", "b"), ("b",)}


def test_inductive_empty_trace_becomes_skip():
    lg = log_from_sequences([("a",), ()])
    tree = inductive_miner(lg)
    assert TAU in tree.children
    assert fitness(token_replay(lg, tree_to_petri(tree))) == 1.0


def test_inductive_single_activity_repeated():
    tree = inductive_miner(log("a", "aa"))
    assert tree == loop(leaf("a"), TAU)


def test_process_tree_validation():
    with pytest.raises(ValueError):
        loop(leaf("a"))


def test_trees_flatten_nested_operators():
    assert sequence(leaf("a"), sequence(leaf("b"), leaf("c"))) == sequence(
        leaf("a"), leaf("b"), leaf("c")
    )


# tree to petri -------------------------------------------------------------------


def test_leaf_translation():
    apn = tree_to_petri(leaf("a"))
    assert apn.net.places == {"source", "sink"}
    assert apn.net.arcs == {("source", "t:a"), ("t:a", "sink")}


def test_l1_tree_language():
    apn = tree_to_petri(sequence(leaf("a"), xor(leaf("b"), leaf("c")), leaf("d")))
    assert language(apn, 4) == {tuple("abd"), tuple("acd")}


def test_flower_accepts_everything():
    apn = tree_to_petri(flower({"a", "b"}))
    words = language(apn, 3)
    expected = {()} | {tuple(w) for n in (1, 2, 3) for w in __import__("itertools").product("ab", repeat=n)}
    assert words == expected


def test_duplicate_labels_get_distinct_ids():
    apn = tree_to_petri(xor(leaf("a"), sequence(leaf("a"), leaf("b"))))
    assert sorted(apn.net.transitions.values()) == ["a", "a", "b"]


@given(sequences(allow_empty=True))
def test_miners_are_deterministic(seqs):
    lg = log_from_sequences(seqs)
    if not any(seqs):
        return
    if all(seqs):
        assert export_pnml(alpha_miner(lg)) == export_pnml(alpha_miner(lg))
        assert export_pnml(alpha_plus_miner(lg)) == export_pnml(alpha_plus_miner(lg))
        h = heuristic_net_to_petri(heuristic_miner(lg))
        assert export_pnml(h) == export_pnml(heuristic_net_to_petri(heuristic_miner(lg)))
    assert inductive_miner(lg) == inductive_miner(lg)
    apn = tree_to_petri(inductive_miner(lg))
    assert is_workflow_net(apn)
    assert export_pnml(apn) == export_pnml(tree_to_petri(inductive_miner(lg)))
