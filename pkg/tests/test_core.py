import pytest

from helpers import (
    brute_force_usos,
    bfs_distance_in_face,
    cube_edges,
    orientation_from_edge_bits,
    random_consistent_table,
    uso_by_face_scan_pure,
)
from usolib.bitops import bit, full_mask, popcount, submasks
from usolib.core import (
    EvalCounter,
    Face,
    MultipleSinksError,
    Orientation,
    ZeroSinksError,
    canonical_form,
    face_sink,
    hypercube_automorphisms,
    is_acyclic,
    is_decomposable,
    outmap_of,
    uso_by_face_scan,
    validate_orientation,
    validate_uso,
)
from usolib.construct import (
    cyclic_full_reach,
    auso_lower_bound,
    flip_edge,
    klee_minty,
    random_fmo,
    uniform,
)
from usolib.rng import SplitMix64

# edge-consistent non-USO tables used below: a directed 4-cycle on the
# 2-cube (no sink anywhere) and a 2-cube with both diagonal vertices sinks
FOUR_CYCLE = Orientation(2, [1, 2, 2, 1])
DOUBLE_SINK = Orientation(2, [0, 3, 3, 0])


def test_face_normalization_and_equality():
    f1 = Face(0b110, 0b011)
    f2 = Face(0b010, 0b011)
    assert f1.anchor == 0b100
    assert f1 == Face(0b111, 0b011)
    assert f1 != f2
    assert f1.dimension == 2
    assert list(f1.vertices()) == [0b100, 0b101, 0b110, 0b111]
    assert f1.contains(0b111) and not f1.contains(0b010)


def test_orientation_rejects_bad_tables():
    with pytest.raises(ValueError):
        Orientation(0, [])
    with pytest.raises(ValueError):
        Orientation(2, [0, 1, 2])
    with pytest.raises(ValueError):
        Orientation(2, [0, 1, 2, 4])


def test_orientation_table_is_immutable():
    o = uniform(3)
    with pytest.raises(ValueError):
        o.outmap[0] = 0


def test_outmap_of_examples():
    o = uniform(3)
    assert outmap_of(o, 0) == 0b111
    assert outmap_of(o, 0b111) == 0
    assert outmap_of(klee_minty(2), 0b10) == 0b11
    with pytest.raises(ValueError):
        outmap_of(o, 8)


def test_validate_orientation():
    assert validate_orientation(uniform(4))
    assert not validate_orientation(Orientation(1, [0, 0]))
    assert not validate_orientation(Orientation(1, [1, 1]))


def test_random_flips_preserve_edge_consistency():
    rng = SplitMix64(3)
    o = uniform(4)
    for _ in range(50):
        v = rng.randrange(16)
        j = rng.randrange(4) + 1
        u = v ^ bit(j)
        if (o.out(v) ^ o.out(u)) & ~bit(j):
            continue
        o = flip_edge(o, v, j)
        assert validate_orientation(o)
        assert validate_uso(o)


def test_face_sink_examples():
    assert face_sink(uniform(3), Face.whole_cube(3)) == 0b111
    assert face_sink(klee_minty(3), Face.whole_cube(3)) == 0
    with pytest.raises(MultipleSinksError):
        face_sink(DOUBLE_SINK, Face.whole_cube(2))
    with pytest.raises(ZeroSinksError):
        face_sink(FOUR_CYCLE, Face.whole_cube(2))


def test_validate_uso_simple_cases():
    for n in range(1, 7):
        assert validate_uso(uniform(n))
    assert validate_uso(cyclic_full_reach(3))
    assert uso_by_face_scan(cyclic_full_reach(3))
    assert not validate_uso(DOUBLE_SINK)
    assert not validate_uso(FOUR_CYCLE)


def test_validate_uso_agrees_with_face_scan_exhaustively_small():
    # every edge orientation of the 1- and 2-cube, and of the 3-cube
    for n in (1, 2, 3):
        edges = cube_edges(n)
        import itertools

        for bits in itertools.product((0, 1), repeat=len(edges)):
            o = orientation_from_edge_bits(n, edges, bits)
            expect = uso_by_face_scan_pure(o)
            assert validate_uso(o) == expect
            assert uso_by_face_scan(o) == expect


@pytest.mark.parametrize("n,samples", [(4, 6000), (5, 4000)])
def test_validate_uso_agrees_with_face_scan_random_tables(n, samples):
    rng = SplitMix64(41 + n)
    agree_true = 0
    for k in range(samples):
        if k % 5 == 0:
            o = random_fmo(n, rng)  # valid by construction
        else:
            o = random_consistent_table(n, rng)
        expect = uso_by_face_scan(o)
        assert validate_uso(o) == expect
        agree_true += expect
    assert agree_true >= samples // 5  # the FMO injections are all USOs


def test_outmap_face_bijection_exhaustive_n3(all_usos_3):
    full = full_mask(3)
    for o in all_usos_3:
        for span in range(1, full + 1):
            expected = set(submasks(span))
            for anchor in submasks(full ^ span):
                values = {o.out(anchor | sub) & span for sub in submasks(span)}
                assert values == expected


def test_outmap_face_bijection_random_faces_n8():
    rng = SplitMix64(8)
    o = klee_minty(8)
    full = full_mask(8)
    for _ in range(50):
        span = rng.randrange(full) + 1
        anchor = rng.randrange(full + 1) & ~span
        if popcount(span) > 5:
            continue
        seen = set()
        for sub in submasks(span):
            seen.add(o.out(anchor | sub) & span)
        assert len(seen) == 1 << popcount(span)


def test_path_to_face_sink_has_hamming_length(all_usos_3):
    # directed distance to the sink of a face equals Hamming distance
    rng = SplitMix64(77)
    for o in all_usos_3[::37]:
        for span in (0b011, 0b111, 0b101):
            anchor = rng.randrange(8) & ~span
            f = Face(anchor, span)
            u = face_sink(o, f)
            for v in f.vertices():
                assert bfs_distance_in_face(o, f, v, u) == popcount(v ^ u)


def test_path_to_sink_random_faces_larger():
    o = auso_lower_bound(6)
    rng = SplitMix64(6)
    full = full_mask(6)
    for _ in range(20):
        span = rng.randrange(full) + 1
        anchor = rng.randrange(full + 1) & ~span
        f = Face(anchor, span)
        u = face_sink(o, f)
        v = anchor | (rng.randrange(full + 1) & span)
        assert bfs_distance_in_face(o, f, v, u) == popcount(v ^ u)


def test_is_acyclic():
    for n in (1, 2, 5, 10):
        assert is_acyclic(klee_minty(n))
    assert not is_acyclic(cyclic_full_reach(3))
    assert not is_acyclic(FOUR_CYCLE)
    assert is_acyclic(auso_lower_bound(5))


def test_is_decomposable():
    for n in (1, 2, 4, 7):
        assert is_decomposable(uniform(n))
        assert is_decomposable(klee_minty(n))
    assert not is_decomposable(cyclic_full_reach(3))


def test_canonical_form_idempotent_and_reflection():
    o = uniform(3)
    c = canonical_form(o)
    assert canonical_form(c) == c
    assert canonical_form(uniform(3, forward=False)) == c
    with pytest.raises(ValueError):
        canonical_form(uniform(7))


def _apply_automorphism(o, vertex_map, coord_map):
    inverse = [0] * len(vertex_map)
    for v, w in enumerate(vertex_map):
        inverse[w] = v
    return Orientation(o.n, [coord_map[o.out(inverse[w])] for w in range(len(vertex_map))])


def test_canonical_form_invariant_under_automorphisms(all_usos_3):
    rng = SplitMix64(13)
    autos = list(hypercube_automorphisms(3))
    for _ in range(12):
        o = all_usos_3[rng.randrange(len(all_usos_3))]
        vertex_map, coord_map = autos[rng.randrange(len(autos))]
        transformed = _apply_automorphism(o, vertex_map, coord_map)
        assert validate_uso(transformed)
        assert canonical_form(transformed) == canonical_form(o)


def test_eval_counter_caches_distinct_vertices():
    o = uniform(4)
    oracle = EvalCounter(o)
    assert oracle(3) == o.out(3)
    assert oracle(3) == o.out(3)
    oracle(5)
    assert oracle.evaluations == 2
    assert oracle.known(3) and not oracle.known(0)


def test_brute_force_uso_counts_small():
    assert sum(1 for _ in brute_force_usos(1)) == 2
    assert sum(1 for _ in brute_force_usos(2)) == 12
