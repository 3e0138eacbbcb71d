import math

from artifact.fuzz import random_terrain
from artifact.mesh import INF, MAX, MIN, SADDLE
from artifact.oracle import (merge_trees, static_contour_tree, static_persistence,
                             ranks, static_snapshot, trace_contour)
from terrains import CRATER, SINGLE_PEAK, TWO_PEAKS, ringed


def brute_pairs(m, s):
    """Elder rule by recomputing the components around each vertex with BFS."""
    on, out = set(), []
    for v in sorted(m.adj, key=lambda x: m.fkey(x, s)):
        seen, oldest = set(), []
        for y in m.adj[v]:
            if y in on and y not in seen:
                comp, stack = [y], [y]
                seen.add(y)
                while stack:
                    for z in m.adj[stack.pop()]:
                        if z in on and z not in seen:
                            seen.add(z)
                            comp.append(z)
                            stack.append(z)
                oldest.append(min(comp, key=lambda x: m.fkey(x, s)))
        oldest.sort(key=lambda x: m.fkey(x, s))
        out += [(r, v) if s > 0 else (v, r) for r in oldest[1:]]
        on.add(v)
    return out


def test_two_peaks():
    snap = static_snapshot(ringed(TWO_PEAKS))
    assert snap.nodes == {INF: "min", 12: "max", 13: "pos", 14: "max"}
    assert snap.pairs == [(13, 14, 1.0)]
    assert set(snap.edges.values()) == {"red"}


def test_single_peak():
    snap = static_snapshot(ringed(SINGLE_PEAK))
    assert snap.nodes == {INF: "min", 13: "max"}
    assert snap.edges == {(INF, 13): "red"}
    assert snap.pairs == []


def test_crater_pit_is_blue():
    snap = static_snapshot(ringed(CRATER))
    pit = [a for a, c in snap.nodes.items() if c == "min" and a != INF]
    assert pit == [13]
    (saddle,) = [a for a, c in snap.nodes.items() if c == "neg"]
    assert snap.edges[13, saddle] == "blue"
    assert snap.pairs == [(13, saddle, 3.0)]


def test_euler_law():
    for seed in range(10):
        m = random_terrain(seed, 50)
        ct = static_contour_tree(m)
        kinds = [m.classify(v) for v in m.adj]
        assert kinds.count(MIN) + kinds.count(MAX) - kinds.count(SADDLE) == 2
        assert len(ct.nodes) == len(kinds) - kinds.count("regular")
        assert len(ct.edges) == len(ct.nodes) - 1


def test_pairs_match_brute_force():
    for seed in range(15):
        m = random_terrain(seed, 35)
        got = sorted((c, d) for c, d, _ in static_persistence(m))
        assert got == sorted(brute_pairs(m, 1) + brute_pairs(m, -1))


def test_merge_tree_leaves_are_extrema():
    m = random_terrain(11, 60)
    jpar, spar, _ = merge_trees(m)
    jkids = set(jpar.values())
    skids = set(spar.values())
    assert {v for v in jpar if v not in jkids} == {v for v in m.adj if m.classify(v) == MIN}
    assert {v for v in spar if v not in skids} == {v for v in m.adj if m.classify(v) == MAX}


def test_traced_contour_encloses_peak():
    m = ringed(SINGLE_PEAK)
    rank = ranks(m)[1]
    poly, crossed = trace_contour(m, rank[13] - 0.5, (13, 8))
    assert {b for a, b in crossed} == {13}
    assert len(poly) >= 3
    cx, cy = m.pos[13]
    assert all(math.hypot(x - cx, y - cy) < 1.0 for x, y in poly)
