"""Planar triangulation with heights and a vertex at infinity.

Vertex 0 is v_infinity.  Heights are compared through ``key(v)`` which is the
tuple (height, tie, nudge); tie defaults to the vertex id and nudge is 0
except for the vertex currently being moved, which sits an infinitesimal step
below or above the vertex it is crossing.
"""
import math

INF = 0
MIN, MAX, REGULAR, SADDLE = "min", "max", "regular", "saddle"


class MeshError(Exception):
    pass


class MultipleSaddle(MeshError):
    pass


class NotATriangulation(MeshError):
    pass


def orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def neg_key(k):
    return tuple(-x for x in k)


class Mesh:
    def __init__(self):
        self.pos = {INF: None}
        self.h = {INF: -math.inf}
        self.tie = {INF: 0}
        self.nudge = {}
        self.adj = {INF: []}  # clockwise neighbor cycle per vertex
        self.next_id = 1

    # -- heights

    def key(self, v):
        return (self.h[v], self.tie[v], self.nudge.get(v, 0))

    def fkey(self, v, s):
        k = (self.h[v], self.tie[v], self.nudge.get(v, 0))
        return k if s > 0 else (-k[0], -k[1], -k[2])

    def compare_heights(self, u, v):
        if u == v:
            raise ValueError("compare_heights needs two vertices")
        return -1 if self.key(u) < self.key(v) else 1

    def set_height(self, v, h, tie=None, nudge=0):
        self.h[v] = h
        self.tie[v] = v if tie is None else tie
        if nudge:
            self.nudge[v] = nudge
        else:
            self.nudge.pop(v, None)

    # -- combinatorics

    def vertices(self):
        return self.adj.keys()

    def finite(self):
        return [v for v in self.adj if v != INF]

    def __len__(self):
        return len(self.adj)

    def link(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def adjacent(self, u, v):
        return v in self.adj[u]

    def cw_next(self, v, u):
        a = self.adj[v]
        return a[(a.index(u) + 1) % len(a)]

    def ccw_next(self, v, u):
        a = self.adj[v]
        return a[a.index(u) - 1]

    def edges(self):
        for v, a in self.adj.items():
            for u in a:
                if v < u:
                    yield v, u

    def triangles(self):
        """Each face once as a clockwise triple (v, a, b) with v the smallest id."""
        for v, a in self.adj.items():
            n = len(a)
            for i in range(n):
                x, y = a[i], a[(i + 1) % n]
                if v < x and v < y:
                    yield v, x, y

    def finite_triangles(self):
        for t in self.triangles():
            if INF not in t:
                yield t

    def hull(self):
        return list(self.adj[INF])

    # -- link structure

    def link_components(self, v, s=1):
        """Maximal runs of the link below / above v, in clockwise order.

        Returns (lower, upper) as lists of runs, each run a list of vertices.
        With s = -1 the roles are mirrored (frame with z reversed).
        """
        a = self.adj[v]
        kv = self.fkey(v, s)
        flags = [self.fkey(u, s) < kv for u in a]
        n = len(a)
        start = None
        for i in range(n):
            if flags[i] != flags[i - 1]:
                start = i
                break
        if start is None:
            run = list(a)
            return ([run], []) if flags[0] else ([], [run])
        lower, upper = [], []
        cur = [a[start]]
        for j in range(1, n):
            i = (start + j) % n
            if flags[i] == flags[(i - 1) % n]:
                cur.append(a[i])
            else:
                (lower if flags[(i - 1) % n] else upper).append(cur)
                cur = [a[i]]
        (lower if flags[(start - 1) % n] else upper).append(cur)
        return lower, upper

    def link_pointers(self, v, s=1):
        """(start, end) of every lower and upper run, clockwise."""
        lower, upper = self.link_components(v, s)
        return [(r[0], r[-1]) for r in lower], [(r[0], r[-1]) for r in upper]

    def classify(self, v, s=1):
        if v == INF:
            return MIN if s > 0 else MAX
        lower, upper = self.link_components(v, s)
        if not lower:
            return MIN
        if not upper:
            return MAX
        if len(lower) == 1:
            return REGULAR
        if len(lower) > 2:
            raise MultipleSaddle(v)
        return SADDLE

    def lower_neighbors(self, v, s=1):
        kv = self.fkey(v, s)
        return [u for u in self.adj[v] if self.fkey(u, s) < kv]

    def upper_neighbors(self, v, s=1):
        kv = self.fkey(v, s)
        return [u for u in self.adj[v] if self.fkey(u, s) > kv]

    def copy(self):
        m = Mesh()
        m.pos = dict(self.pos)
        m.h = dict(self.h)
        m.tie = dict(self.tie)
        m.nudge = dict(self.nudge)
        m.adj = {v: list(a) for v, a in self.adj.items()}
        m.next_id = self.next_id
        return m

    # -- surgery (no validation beyond what callers guarantee)

    def _replace(self, v, old, new_seq):
        a = self.adj[v]
        i = a.index(old)
        a[i:i + 1] = new_seq

    def _insert_after(self, v, after, new):
        a = self.adj[v]
        a.insert(a.index(after) + 1, new)

    def _new_vertex(self, p, h):
        v = self.next_id
        self.next_id += 1
        self.pos[v] = p
        self.h[v] = h
        self.tie[v] = v
        return v

    def split_triangle(self, a, b, c, p, h):
        """New vertex inside clockwise face (a, b, c)."""
        v = self._new_vertex(p, h)
        self.adj[v] = [a, b, c]
        # around a clockwise: ... b ... c? face (a, b, c) clockwise means c follows b at a
        self._insert_after(a, b, v)
        self._insert_after(b, c, v)
        self._insert_after(c, a, v)
        return v

    def split_edge(self, a, b, p, h):
        """New vertex on edge (a, b); both incident faces are split."""
        c = self.cw_next(a, b)  # face (a, b, c) clockwise
        d = self.ccw_next(a, b)  # face (a, d, b) clockwise
        v = self._new_vertex(p, h)
        self.adj[v] = [a, d, b, c]
        self._replace(a, b, [v])
        self._replace(b, a, [v])
        self._insert_after(c, a, v)
        self._insert_after(d, b, v)
        return v

    def remove_degree3(self, v):
        for u in self.adj[v]:
            self.adj[u].remove(v)
        del self.adj[v]
        self._forget(v)

    def remove_on_segment(self, v, x, y):
        """Remove a degree-4 vertex v lying on segment x..y; x and y become adjacent."""
        a = self.adj[v]
        i = a.index(x)
        if a[(i + 2) % 4] != y:
            raise NotATriangulation("x and y are not opposite around %d" % v)
        self._replace(x, v, [y])
        self._replace(y, v, [x])
        for u in a:
            if u != x and u != y:
                self.adj[u].remove(v)
        del self.adj[v]
        self._forget(v)

    def _forget(self, v):
        del self.pos[v]
        del self.h[v]
        del self.tie[v]
        self.nudge.pop(v, None)


def build_mesh(vertices, triangles):
    """vertices: iterable of (id, x, y, z); triangles: counter-clockwise id triples."""
    m = Mesh()
    verts = list(vertices)
    if len(verts) < 3:
        raise NotATriangulation("need at least 3 finite vertices")
    for vid, x, y, z in verts:
        if vid == INF or vid in m.adj:
            raise NotATriangulation("bad or duplicate vertex id %r" % (vid,))
        m.pos[vid] = (float(x), float(y))
        m.h[vid] = float(z)
        m.tie[vid] = vid
        m.adj[vid] = []
    m.next_id = max(m.adj) + 1
    succ = {v: {} for v in m.adj}  # succ[a][b] = c : going ccw around a, b then c
    used = set()
    for t in triangles:
        a, b, c = t
        if len({a, b, c}) != 3 or any(x not in m.pos or x == INF for x in t):
            raise NotATriangulation("bad triangle %r" % (t,))
        if orient(m.pos[a], m.pos[b], m.pos[c]) <= 0:
            raise NotATriangulation("triangle %r is not counter-clockwise" % (t,))
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if (x, y) in used:
                raise NotATriangulation("edge %r used twice with one orientation" % ((x, y),))
            used.add((x, y))
            succ[x][y] = z
    for v in list(m.adj):
        if v == INF:
            continue
        s = succ[v]
        if not s:
            raise NotATriangulation("vertex %d in no triangle" % v)
        targets = set(s.values())
        starts = [u for u in s if u not in targets]
        if len(starts) > 1:
            raise NotATriangulation("vertex %d is pinched" % v)
        first = starts[0] if starts else next(iter(s))
        ccw = [first]
        u = first
        while u in s:
            u = s[u]
            if u == first:
                break
            ccw.append(u)
        if len(ccw) != len(set(s) | targets):
            raise NotATriangulation("vertex %d link is not one cycle" % v)
        if starts:
            ccw.append(INF)
            m.adj[INF].append(v)
        else:
            total = 0.0
            p = m.pos[v]
            for i in range(len(ccw)):
                q, r = m.pos[ccw[i]], m.pos[ccw[(i + 1) % len(ccw)]]
                a1 = math.atan2(q[1] - p[1], q[0] - p[0])
                a2 = math.atan2(r[1] - p[1], r[0] - p[0])
                d = (a2 - a1) % (2 * math.pi)
                total += d
            if abs(total - 2 * math.pi) > 1e-6:
                raise NotATriangulation("triangles overlap around vertex %d" % v)
        m.adj[v] = ccw[::-1]
    _order_hull(m, used)
    return m


def _order_hull(m, used):
    # boundary edges (a, b) are those whose reverse is missing; interior is on the left
    nxt = {}
    for a, b in used:
        if (b, a) not in used:
            if a in nxt:
                raise NotATriangulation("boundary is pinched at %d" % a)
            nxt[a] = b
    if not nxt:
        raise NotATriangulation("no boundary")
    start = min(nxt)
    cyc = [start]
    while True:
        u = nxt[cyc[-1]]
        if u == start:
            break
        cyc.append(u)
        if len(cyc) > len(nxt):
            raise NotATriangulation("boundary is not one cycle")
    if len(cyc) != len(nxt):
        raise NotATriangulation("hole in triangulation")
    n = len(cyc)
    for i in range(n):
        if orient(m.pos[cyc[i - 1]], m.pos[cyc[i]], m.pos[cyc[(i + 1) % n]]) < 0:
            raise NotATriangulation("boundary is not convex at %d" % cyc[i])
    # boundary runs ccw around the interior, so clockwise around v_infinity
    m.adj[INF] = cyc
