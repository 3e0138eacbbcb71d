"""Seeded random terrains and operation scripts."""
import random

import numpy as np
from scipy.spatial import Delaunay

from .mesh import INF, MultipleSaddle, SADDLE, build_mesh, orient


def random_terrain(seed, n):
    """n random points in the unit square, Delaunay triangles, random heights.

    Heights of vertices that come out as multiple saddles are redrawn until
    every saddle is simple.
    """
    rng = random.Random(seed)
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    tri = Delaunay(np.array(pts))
    tris = []
    for a, b, c in tri.simplices.tolist():
        if orient(pts[a], pts[b], pts[c]) < 0:
            b, c = c, b
        tris.append((a + 1, b + 1, c + 1))
    verts = [(i + 1, x, y, round(rng.random(), 6)) for i, (x, y) in enumerate(pts)]
    mesh = build_mesh(verts, tris)
    for _ in range(100 * n):
        bad = []
        for v in mesh.finite():
            try:
                mesh.classify(v)
            except MultipleSaddle:
                bad.append(v)
        if not bad:
            return mesh
        for v in bad:
            mesh.h[v] = round(rng.random(), 6)
    raise RuntimeError("could not remove multiple saddles")


def simulate_crossings(mesh, v, r):
    """Mesh-only dry run of moving v to height r.

    Returns the number of neighbor crossings, or None if some crossing would
    create a multiple saddle or swap two adjacent saddles.
    """
    k0 = mesh.key(v)
    k1 = (r, v, 0)
    if k1 == k0:
        return 0
    s = 1 if k1 > k0 else -1
    h0, t0 = mesh.h[v], mesh.tie[v]
    nbrs = [u for u in mesh.adj[v] if (k0 < mesh.key(u) < k1) or (k1 < mesh.key(u) < k0)]
    nbrs.sort(key=lambda u: mesh.fkey(u, s))
    ok = True
    try:
        for u in nbrs:
            mesh.set_height(v, mesh.h[u], mesh.tie[u], -s)
            if mesh.classify(v) == SADDLE and u != INF and mesh.classify(u) == SADDLE:
                ok = False
                break
            mesh.set_height(v, mesh.h[u], mesh.tie[u], s)
            mesh.classify(v)
            mesh.classify(u)
        if ok:
            mesh.set_height(v, r)
            mesh.classify(v)
    except MultipleSaddle:
        ok = False
    mesh.set_height(v, h0, t0)
    return len(nbrs) if ok else None


def random_script(mesh, seed, count, spread=0.15):
    """``count`` ChangeHeight commands that never hit a multiple saddle."""
    rng = random.Random(seed)
    m = mesh.copy()
    out = []
    verts = m.finite()
    while len(out) < count:
        v = rng.choice(verts)
        r = round(m.h[v] + rng.gauss(0.0, spread), 6)
        if simulate_crossings(m, v, r) is None:
            continue
        m.set_height(v, r)
        out.append(("chg", v, r))
    return out
