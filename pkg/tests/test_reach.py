import math

import pytest

from helpers import reachmap_bruteforce
from usolib.bitops import bit, coords
from usolib.construct import (
    auso_lower_bound,
    cyclic_full_reach,
    klee_minty,
    random_fmo,
    random_target_combed,
    uniform,
)
from usolib.core import is_acyclic
from usolib.reach import cover_distance, niceness_index, reach_table, reachmap
from usolib.rng import SplitMix64


def test_reachmap_examples():
    o = uniform(3)
    assert reachmap(o, 0b111) == 0  # global sink
    assert reachmap(o, 0) == 0b111  # source reaches everything
    c = cyclic_full_reach(3)
    assert reachmap(c, 0b100) == 0b111


def test_reach_table_uniform_2():
    t = reach_table(uniform(2))
    assert [t[v] for v in range(4)] == [0b11, 0b10, 0b01, 0]


def test_reach_table_klee_minty_2():
    t = reach_table(klee_minty(2))
    assert t[0b10] == 0b11
    assert t[0b11] == 0b11
    assert t[0b01] == 0b01
    assert t[0b00] == 0


@pytest.mark.parametrize(
    "make",
    [
        lambda: klee_minty(5),
        lambda: cyclic_full_reach(5),
        lambda: auso_lower_bound(6),
        lambda: random_fmo(6, SplitMix64(2)),
        lambda: random_target_combed(7, SplitMix64(9)),
    ],
)
def test_reach_table_matches_per_vertex_traversal(make):
    o = make()
    t = reach_table(o)
    rng = SplitMix64(17)
    for _ in range(100):
        v = rng.randrange(o.vertex_count())
        assert t[v] == reachmap(o, v)
        assert t[v] == reachmap_bruteforce(o, v)


def test_reachmap_contains_difference_to_sink(all_usos_3):
    # r(v) always contains v xor sink
    for o in all_usos_3:
        t = reach_table(o)
        sink = next(v for v in range(8) if o.out(v) == 0)
        for v in range(8):
            assert t[v] & (v ^ sink) == (v ^ sink)
    big = random_target_combed(10, SplitMix64(4))
    t = reach_table(big)
    sink = next(v for v in range(1 << 10) if big.out(v) == 0)
    rng = SplitMix64(5)
    for _ in range(200):
        v = rng.randrange(1 << 10)
        assert t[v] & (v ^ sink) == (v ^ sink)


def test_reachmap_edge_monotonicity(all_usos_3):
    for o in all_usos_3[::5]:
        t = reach_table(o)
        for v in range(8):
            s = o.out(v)
            assert t[v] & s == s
            for j in coords(s):
                u = v ^ bit(j)
                assert t[v] & t[u] == t[u]


def test_cover_distance_immediate_cover():
    o = klee_minty(4)
    t = reach_table(o)
    # vertex {1} steps straight to the sink, whose reachmap is empty
    assert cover_distance(o, t, 0b0001) == 1


def test_cover_distance_rejects_sink():
    o = klee_minty(3)
    t = reach_table(o)
    with pytest.raises(ValueError):
        cover_distance(o, t, 0)


def test_cover_distance_cyclic_bottom_vertex():
    for n in (3, 4, 5):
        o = cyclic_full_reach(n)
        t = reach_table(o)
        assert cover_distance(o, t, 0) == n


def test_cover_distance_auso_lower_bound_bottom_vertex():
    for n in (4, 5, 6):
        o = auso_lower_bound(n)
        t = reach_table(o)
        assert cover_distance(o, t, 0) == n - 2


def test_niceness_reports():
    rep = niceness_index(klee_minty(3))
    assert rep.niceness_index == 1
    assert rep.sink == 0
    assert math.isinf(rep.cover_distance[0])
    assert rep.witness[0] is None
    assert niceness_index(cyclic_full_reach(3)).niceness_index == 3


def test_niceness_witnesses_are_valid_covers():
    o = auso_lower_bound(5)
    rep = niceness_index(o)
    t = reach_table(o)
    for v in range(32):
        if v == rep.sink:
            continue
        w = rep.witness[v]
        rw, rv = t[w], t[v]
        assert rw != rv and rw & ~rv == 0


def test_niceness_at_most_n(all_usos_3):
    for o in all_usos_3[::7]:
        assert niceness_index(o).niceness_index <= 3


def test_all_low_dimension_usos_are_1_nice(all_usos_2):
    for o in all_usos_2:
        assert niceness_index(o).niceness_index == 1


def test_acyclic_constructions_respect_the_dimension_bound():
    # every acyclic orientation of dimension >= 4 produced here is (n-2)-nice
    rng = SplitMix64(14)
    for n in (4, 5, 6):
        candidates = [
            uniform(n),
            klee_minty(n),
            auso_lower_bound(n),
            random_fmo(n, rng),
            random_target_combed(n, rng),
        ]
        for o in candidates:
            if is_acyclic(o):
                assert niceness_index(o).niceness_index <= n - 2


def test_niceness_report_json():
    obj = niceness_index(klee_minty(2)).to_json_obj()
    assert obj["niceness_index"] == 1
    assert obj["cover_distance"][0] is None
    assert len(obj["witness"]) == 4
