"""Seeded workloads shared by the unit tests and the acceptance run."""
from artifact.fuzz import random_script, random_terrain
from artifact.kinetic import KineticState
from artifact.mesh import INF


def pointer_mismatches(tree):
    return [x for x in tree.node if tree.lowest(x) != tree.scan_low(x)]


def crossing_pointer_run(target, n=60, ops=100):
    """Run random scripts until ``target`` minima/maxima crossings were seen.

    After each one, every stored extreme-leaf pointer of both merge trees is
    compared against a full rescan of its subtree.  Returns (crossings, bad).
    """
    seen = bad = 0
    seed = 0
    while seen < target:
        m = random_terrain(seed, n)
        st = KineticState(m)

        def on_event(rec):
            nonlocal seen, bad
            if rec.kind in ("MinimaCrossing", "MaximaCrossing"):
                seen += 1
                bad += len(pointer_mismatches(st.J)) + len(pointer_mismatches(st.S))

        for _, v, r in random_script(m, seed + 5, ops):
            st.change_height(v, r, on_event=on_event)
        seed += 1
    return seen, bad


def ops_per_event(n, seeds, ops, spread=0.15):
    """Mean dynamic-forest operations and rotations per event."""
    ev = total = rot = 0
    for seed in range(seeds):
        m = random_terrain(seed, n)
        st = KineticState(m)
        for _, v, r in random_script(m, seed + 7, ops, spread):
            for rec in st.change_height(v, r):
                ev += 1
                total += rec.ops
                rot += rec.rotations
    return total / ev, rot / ev, ev


def tree_of(st):
    snap = st.snapshot()
    return snap.nodes, snap.edges, snap.pairs


def _interior_point(m, rng):
    a, c, b = rng.choice(list(m.finite_triangles()))  # counter-clockwise a, b, c
    w = [rng.random() + 0.05 for _ in range(3)]
    t = sum(w)
    w = [x / t for x in w]
    p = tuple(sum(wi * m.pos[x][i] for wi, x in zip(w, (a, b, c))) for i in range(2))
    return p, sum(wi * m.h[x] for wi, x in zip(w, (a, b, c)))


def edit_cases(kind, count, n=30):
    """Run ``count`` seeded cases of one edit law; returns failing case seeds.

    kind is 'insert' (interpolated insert emits no events and leaves the tree
    alone), 'delete' (delete after insert restores tree and mesh) or 'flip'
    (flipping an edge and then the new edge restores tree and mesh).
    """
    import random

    from artifact import edit
    from artifact.kinetic import MultipleSaddleEncountered
    from artifact.oracle import assert_equivalent

    bad, done, seed = [], 0, 0
    while done < count:
        seed += 1
        rng = random.Random(seed)
        m = random_terrain(seed, n)
        st = KineticState(m)
        tree0 = tree_of(st)
        adj0 = {v: sorted(a) for v, a in m.adj.items()}
        try:
            if kind == "insert":
                p, h = _interior_point(m, rng)
                v, recs = edit.insert_vertex(st, p, h)
                ok = recs == [] and tree_of(st) == tree0 and m.h[v] == h
            elif kind == "delete":
                p, _ = _interior_point(m, rng)
                v, _ = edit.insert_vertex(st, p, rng.random())
                edit.delete_vertex(st, v)
                ok = tree_of(st) == tree0 and {u: sorted(a) for u, a in m.adj.items()} == adj0
            else:
                edges = [e for e in m.edges() if INF not in e]
                rng.shuffle(edges)
                for u1, u2 in edges:
                    try:
                        v3, v4 = edit._quad(m, u1, u2)
                        break
                    except edit.EditError:
                        pass
                edit.flip_edge(st, u1, u2)
                flipped = m.adjacent(v3, v4) and not m.adjacent(u1, u2)
                edit.flip_edge(st, v3, v4)
                ok = flipped and tree_of(st) == tree0 and {u: sorted(a) for u, a in m.adj.items()} == adj0
        except MultipleSaddleEncountered:
            continue  # this seed cannot exercise the law; try another
        ok = ok and assert_equivalent(st).ok
        done += 1
        if not ok:
            bad.append(seed)
    return bad


def pair_run(sizes=(10, 25, 50), seeds=40, ops=100):
    """Kinetic pairs against the static sweep after every event.

    Uses the terrains and scripts ``gen`` would write.  Returns (mismatches, events).
    """
    from artifact.oracle import static_persistence

    wrong = events = 0
    for n in sizes:
        for seed in range(seeds):
            m = random_terrain(seed, n)
            st = KineticState(m)

            def on_event(rec):
                nonlocal wrong, events
                events += 1
                wrong += st.pairs() != static_persistence(m)

            for _, v, r in random_script(m, seed + 1000003, ops):
                st.change_height(v, r, on_event=on_event)
    return wrong, events
