import math

import pytest

from src.harness import fixtures
from src.oracle.distances import dist, pair_distance
from src.oracle.embedding_space import embedding_key, enumerate_embeddings, enumerate_flips
from src.utils.errors import TooLarge


def _space(name):
    n, edges = fixtures.build(name)
    return enumerate_embeddings(n, edges)


@pytest.mark.parametrize(
    "name, count",
    [("TRI", 1), ("C4", 1), ("K4", 2), ("K2_4", 6), ("BOWTIE", 4), ("CHAIN3", 16), ("K3_3", 0)],
)
def test_embedding_counts(name, count):
    assert len(_space(name)) == count


def test_enumeration_bound():
    n, edges = fixtures.build("K5")
    with pytest.raises(TooLarge):
        enumerate_embeddings(n, edges)
    with pytest.raises(TooLarge):
        enumerate_embeddings(*fixtures.build("K2_4"), max_edges=7)


def test_fixture_embeddings_belong_to_the_space(embedding):
    for name in ("K2_4", "BOWTIE", "CHAIN3", "CHAIN3_NESTED"):
        assert embedding_key(embedding(name)) in _space(name.replace("_NESTED", ""))


def test_triangle_admits_no_flip(embedding):
    assert enumerate_flips(embedding("TRI")) == []


def test_bowtie_flips_at_the_center(embedding):
    flips = enumerate_flips(embedding("BOWTIE"))
    articulation = [f for f in flips if f.kind == "articulation"]
    assert articulation
    assert all(f.pair == (2,) for f in articulation)
    assert {f.subkind for f in articulation} <= {"slide", "reflect"}


def test_k2_4_has_p_flips_at_the_hubs(embedding):
    flips = enumerate_flips(embedding("K2_4"))
    p_flips = [f for f in flips if f.kind == "P"]
    assert p_flips
    assert all(set(f.pair) == {0, 1} for f in p_flips)
    assert any(f.is_critical(2, 4) for f in p_flips)


def test_every_flip_has_an_inverse():
    space = _space("K2_4")
    for key in space.nodes:
        for edge in space.flips(key):
            back = space.flips(edge.target)
            assert any(e.target == key and e.kind == edge.kind for e in back)


def test_distances_to_admitting_embeddings(embedding):
    space = _space("K2_4")
    h = embedding_key(embedding("K2_4"))
    goal = space.admitting(2, 4)
    assert goal and h not in goal
    assert dist("clean", space, h, frozenset([h])) == 0
    assert math.isinf(dist("clean", space, h, frozenset()))
    d_clean, d_sep, d_p = (dist(tau, space, h, goal) for tau in ("clean", "sep", "P"))
    assert d_clean >= d_sep >= d_p
    assert d_clean >= 1


def test_admitting_everything_when_cofacial():
    space = _space("C4")
    assert space.admitting(0, 2) == frozenset(space.nodes)
    assert space.admitting_all([(0, 2), (1, 3)]) == frozenset(space.nodes)
    (only,) = space.nodes
    assert pair_distance("clean", space, only, only) == 0
