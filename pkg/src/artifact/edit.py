"""Insert, Delete and EdgeFlip built from local surgery plus change_height."""
from .kinetic import MultipleSaddleEncountered, key_between
from .mesh import INF, orient


class EditError(Exception):
    pass


class DuplicatePoint(EditError):
    pass


class PointAtInfinity(EditError):
    pass


class LinkTooLarge(EditError):
    pass


class CannotDeleteInfinity(EditError):
    pass


class TooFewVertices(EditError):
    pass


class NonConvexQuad(EditError):
    pass


class BoundaryFlipUnsupported(EditError):
    pass


def _eps(mesh):
    xs = [p[0] for v, p in mesh.pos.items() if v != INF]
    ys = [p[1] for v, p in mesh.pos.items() if v != INF]
    d = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    return 1e-12 * d * d


def locate(mesh, p):
    """('face', (a, b, c)) or ('edge', (a, b)) for a point inside the hull."""
    eps = _eps(mesh)
    for v, q in mesh.pos.items():
        if v != INF and q[0] == p[0] and q[1] == p[1]:
            raise DuplicatePoint(v)
    for t in mesh.finite_triangles():
        a, c, b = t  # clockwise triple, so (a, b, c) is counter-clockwise
        A, B, C = mesh.pos[a], mesh.pos[b], mesh.pos[c]
        d = (orient(B, C, p), orient(C, A, p), orient(A, B, p))
        if min(d) < -eps:
            continue
        zero = [i for i in range(3) if abs(d[i]) <= eps]
        if len(zero) >= 2:
            raise DuplicatePoint([a, b, c][3 - sum(zero)])
        if len(zero) == 1:
            i = zero[0]
            return "edge", ((b, c), (c, a), (a, b))[i]
        return "face", (a, b, c)
    raise PointAtInfinity(p)


def _bary(mesh, tri, p):
    a, b, c = (mesh.pos[x] for x in tri)
    area = orient(a, b, c)
    return orient(p, b, c) / area, orient(a, p, c) / area, orient(a, b, p) / area


def _along(mesh, a, b, p):
    A, B = mesh.pos[a], mesh.pos[b]
    dx, dy = B[0] - A[0], B[1] - A[1]
    t = ((p[0] - A[0]) * dx + (p[1] - A[1]) * dy) / (dx * dx + dy * dy)
    return min(max(t, 0.0), 1.0)


def _place(mesh, h, v, corners):
    """Key for v at height h, forced strictly between the corner keys."""
    keys = sorted(mesh.key(c) for c in corners)
    lo, hi = keys[0], keys[-1]
    if lo < (h, v, 0) < hi:
        return h, v
    return key_between(mesh, lo, hi, v)


def _patch_forests(state, v, split=None):
    F = state.F
    F.add_vertex(v)
    F._attach(v, 1)
    F._attach(v, -1)
    if split:
        a, b = split
        for x, y in ((a, b), (b, a)):
            for s in (1, -1):
                if F.parent(x, s) == y:
                    F._cut(x, s)
                    F._attach(x, s)


def _remove(state, v, surgery):
    F = state.F
    kids = [(w, s) for s in (1, -1) for w in F.children(v, s)]
    for w, s in kids:
        F._cut(w, s)
    F.remove_vertex(v)
    state._list_remove(v)
    surgery()
    for w, s in kids:
        F._attach(w, s)


def insert_vertex(state, p, r, on_event=None):
    """Add a vertex at planar point p and raise or lower it to height r."""
    m = state.mesh
    p = (float(p[0]), float(p[1]))
    where, simplex = locate(m, p)
    v = m.next_id
    if where == "face":
        w = _bary(m, simplex, p)
        h = sum(wi * m.h[x] for wi, x in zip(w, simplex))
        h, tie = _place(m, h, v, simplex)
        a, b, c = simplex  # counter-clockwise, so (a, c, b) is clockwise
        m.split_triangle(a, c, b, p, h)
        m.tie[v] = tie
        _patch_forests(state, v)
    else:
        a, b = simplex
        t = _along(m, a, b, p)
        h = (1 - t) * m.h[a] + t * m.h[b]
        h, tie = _place(m, h, v, (a, b))
        m.split_edge(a, b, p, h)
        m.tie[v] = tie
        _patch_forests(state, v, (a, b))
    records = state.change_height(v, float(r), on_event=on_event)
    return v, records


def delete_vertex(state, v, on_event=None):
    m = state.mesh
    if v == INF:
        raise CannotDeleteInfinity()
    if v not in m.adj:
        raise KeyError(v)
    nb = list(m.adj[v])
    if len(nb) != 3:
        raise LinkTooLarge("vertex %d has degree %d" % (v, len(nb)))
    if len(m.adj) <= 4:
        raise TooFewVertices()
    if INF in nb:
        a, b = [x for x in nb if x != INF]
        lo, hi = sorted((m.key(a), m.key(b)))
        h, tie = key_between(m, lo, hi, v)
    else:
        w = _bary(m, nb, m.pos[v])
        h = sum(wi * m.h[x] for wi, x in zip(w, nb))
        h, tie = _place(m, h, v, nb)
    records = state.change_height(v, h, tie, on_event=on_event)
    _remove(state, v, lambda: m.remove_degree3(v))
    return records


def _quad(m, u1, u2):
    if u2 not in m.adj.get(u1, ()):
        raise KeyError("no edge %r-%r" % (u1, u2))
    v3 = m.cw_next(u1, u2)
    v4 = m.ccw_next(u1, u2)
    if INF in (u1, u2, v3, v4):
        raise BoundaryFlipUnsupported((u1, u2))
    P = m.pos
    o1 = orient(P[v3], P[v4], P[u1])
    o2 = orient(P[v3], P[v4], P[u2])
    o3 = orient(P[u1], P[u2], P[v3])
    o4 = orient(P[u1], P[u2], P[v4])
    e = _eps(m)
    if not (min(o1, o2) < -e and max(o1, o2) > e and min(o3, o4) < -e and max(o3, o4) > e):
        raise NonConvexQuad((u1, u2))
    return v3, v4


def flip_edge(state, u1, u2, on_event=None):
    """Replace edge u1-u2 by the other diagonal of its quadrilateral."""
    m = state.mesh
    v3, v4 = _quad(m, u1, u2)
    P = m.pos
    A, B, C, D = P[u1], P[u2], P[v3], P[v4]
    den = (B[0] - A[0]) * (D[1] - C[1]) - (B[1] - A[1]) * (D[0] - C[0])
    t = ((C[0] - A[0]) * (D[1] - C[1]) - (C[1] - A[1]) * (D[0] - C[0])) / den
    x = (A[0] + t * (B[0] - A[0]), A[1] + t * (B[1] - A[1]))
    p = m.next_id
    h = (1 - t) * m.h[u1] + t * m.h[u2]
    h, tie = _place(m, h, p, (u1, u2))
    m.split_edge(u1, u2, x, h)
    m.tie[p] = tie
    _patch_forests(state, p, (u1, u2))
    t2 = _along(m, v3, v4, x)
    h2 = (1 - t2) * m.h[v3] + t2 * m.h[v4]
    h2, tie2 = _place(m, h2, p, (v3, v4))
    try:
        records = state.change_height(p, h2, tie2, on_event=on_event)
    except MultipleSaddleEncountered:
        # the helper vertex must not outlive the operation: walk it back
        # over the crossings already made and restore the old diagonal
        state.change_height(p, h, tie)
        _remove(state, p, lambda: m.remove_on_segment(p, u1, u2))
        raise
    _remove(state, p, lambda: m.remove_on_segment(p, v3, v4))
    return records


def reduce_degree(state, v, on_event=None):
    """Flip edges at v until it has degree 3, so it can be deleted."""
    m = state.mesh
    records = []
    while len(m.adj[v]) > 3:
        for u in list(m.adj[v]):
            try:
                _quad(m, v, u)
            except (NonConvexQuad, BoundaryFlipUnsupported):
                continue
            records += flip_edge(state, v, u, on_event)
            break
        else:
            raise LinkTooLarge("no convex flip reduces the degree of %d" % v)
    return records
