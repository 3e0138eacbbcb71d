import pytest

from artifact import oracle
from artifact.fuzz import random_terrain
from artifact.kinetic import KineticState
from artifact.mesh import INF, REGULAR
from artifact.topology import (CrossLinks, InconsistentCrossLink, VertexIsCritical,
                               find_edge)
from terrains import TWO_PEAKS, ringed


def augmented_edge(mesh):
    """Regular vertex -> contour-tree edge, read off the uncontracted tree."""
    prep = oracle._Prep(mesh)
    n = len(prep.order)
    nbr = oracle._merge(range(n), *oracle._augmented_trees(prep))
    regular = lambda x: len(nbr[x]) == 2 and (min(nbr[x]) < x < max(nbr[x]))
    out = {}
    for v in range(n):
        if not regular(v):
            continue
        ends = []
        for w in nbr[v]:
            prev = v
            while regular(w):
                prev, w = w, next(y for y in nbr[w] if y != prev)
            ends.append(w)
        lo, hi = sorted(ends)
        out[prep.order[v]] = (prep.order[lo], prep.order[hi])
    return out


@pytest.mark.parametrize("seed", range(6))
def test_find_edge_matches_augmented_tree(seed):
    m = random_terrain(seed, 60)
    st = KineticState(m)
    want = augmented_edge(m)
    assert set(want) == {v for v in m.finite() if m.classify(v) == REGULAR}
    for v, e in want.items():
        assert find_edge(m, st.T, st.F, v) == e


def test_find_edge_rejects_critical():
    m = ringed(TWO_PEAKS)
    st = KineticState(m)
    for v in (INF, 12, 13):
        with pytest.raises(VertexIsCritical):
            find_edge(m, st.T, st.F, v)


def test_colors_two_peaks():
    st = KineticState(ringed(TWO_PEAKS))
    T = st.T
    assert T.color(13, 12) == "red" and T.color(INF, 13) == "red"
    assert T.toward_infinity(13, 14) == 13
    assert T.node_class(13) == "pos" and T.saddle_color(13) == "red"
    # in the lowered frame the positive saddle reads as negative
    assert T.sign(13, -1) == "neg"


def test_cross_links_attach_detach():
    st = KineticState(ringed(TWO_PEAKS))
    X = CrossLinks(st.T)
    X.attach(12, 12)
    with pytest.raises(InconsistentCrossLink):
        X.attach(12, 14)
    with pytest.raises(InconsistentCrossLink):
        X.attach(13, 13)  # a saddle is not a leaf
    assert X.detach(12) == 12
    with pytest.raises(InconsistentCrossLink):
        X.detach(12)


def test_state_cross_links_consistent():
    st = KineticState(random_terrain(9, 80))
    assert st.X.problems(st.mesh, st.F) == []
    assert oracle.forest_problems(st.mesh, st.F.dpar, st.F.apar) == []


def test_steepest_parents():
    m = random_terrain(2, 40)
    st = KineticState(m)
    for v in m.adj:
        low = m.lower_neighbors(v)
        if low:
            assert st.F.parent(v, 1) == min(low, key=m.key)
        high = m.upper_neighbors(v)
        if high:
            assert st.F.parent(v, -1) == max(high, key=m.key)
