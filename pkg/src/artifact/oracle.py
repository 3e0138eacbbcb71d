"""Static ground truth: contour tree by join/split sweep and merge, edge colors
by tracing contours in the plane, merge trees and persistence by union-find.

Nothing here touches the dynamic-forest code; the only thing shared with the
kinetic side is the mesh itself.
"""
import math
from dataclasses import dataclass, field

from .mesh import INF, MultipleSaddle

TOP = -1
MIN, MAX, POS, NEG = "min", "max", "pos", "neg"


def ranks(mesh):
    order = sorted(mesh.adj, key=mesh.key)
    return order, {v: i for i, v in enumerate(order)}


class _Prep:
    """Vertices renamed to their rank, so the sweeps work on plain ints."""

    def __init__(self, mesh):
        self.order, self.rank = ranks(mesh)
        rank = self.rank
        self.radj = [[rank[u] for u in mesh.adj[v]] for v in self.order]
        for i, nb in enumerate(self.radj):
            # a simple saddle alternates lower/upper at most four times
            flips = sum((nb[k - 1] < i) != (nb[k] < i) for k in range(len(nb)))
            if flips > 4:
                raise MultipleSaddle(self.order[i])


def _find(p, x):
    while p[x] != x:
        p[x] = p[p[x]]
        x = p[x]
    return x


# -- contour tree


def _sweep(radj, idx, below):
    """Augmented merge tree over ranks visited in ``idx`` order.

    ``down[v]`` lists the component heads v absorbs, ``up[h]`` the vertex
    that absorbs head h.
    """
    p = list(range(len(radj)))
    head = list(range(len(radj)))
    up, down = {}, {}
    for v in idx:
        roots = {_find(p, u) for u in radj[v] if below(u, v)}
        down[v] = [head[r] for r in roots]
        for r in roots:
            up[head[r]] = v
            p[r] = v
        head[v] = v
    return up, down


def _augmented_trees(prep):
    n = len(prep.radj)
    j_up, j_down = _sweep(prep.radj, range(n), lambda u, v: u < v)
    s_down, s_up = _sweep(prep.radj, range(n - 1, -1, -1), lambda u, v: u > v)
    return j_up, j_down, s_up, s_down


def _merge(order, j_up, j_down, s_up, s_down):
    nbr = {v: set() for v in order}
    alive = len(order)
    gone = set()

    def leaf_kind(x):
        if not s_up[x] and len(j_down[x]) == 1:
            return "upper"
        if not j_down[x] and len(s_up[x]) == 1:
            return "lower"
        return None

    queue = [x for x in order if leaf_kind(x)]
    while alive > 1:
        x = queue.pop()
        if x in gone:
            continue
        kind = leaf_kind(x)
        if kind is None:
            continue
        if kind == "upper":
            y = s_down[x]
            s_up[y].remove(x)
            c = j_down[x][0]
            p = j_up.get(x)
            j_up[c] = p
            if p is not None:
                d = j_down[p]
                d[d.index(x)] = c
        else:
            y = j_up[x]
            j_down[y].remove(x)
            c = s_up[x][0]
            p = s_down.get(x)
            s_down[c] = p
            if p is not None:
                d = s_up[p]
                d[d.index(x)] = c
        nbr[x].add(y)
        nbr[y].add(x)
        gone.add(x)
        alive -= 1
        if leaf_kind(y):
            queue.append(y)
    return nbr


@dataclass
class StaticTree:
    nodes: dict  # vertex -> min/max/pos/neg
    edges: set  # (lower, upper)
    rank: dict

    def neighbors(self):
        nb = {v: [] for v in self.nodes}
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb


def static_contour_tree(mesh, prep=None):
    prep = prep or _Prep(mesh)
    order = prep.order
    n = len(order)
    nbr = _merge(range(n), *_augmented_trees(prep))
    # contract regular vertices
    for v in range(n):
        nb = nbr[v]
        if len(nb) == 2:
            a, b = nb
            if (a < v) != (b < v):
                nbr[a].discard(v)
                nbr[b].discard(v)
                nbr[a].add(b)
                nbr[b].add(a)
                nbr[v] = set()
    nodes, edges = {}, set()
    for v in range(n):
        nb = nbr[v]
        if not nb:
            continue
        up = sum(1 for u in nb if u > v)
        down = len(nb) - up
        if down == 0:
            cls = MIN
        elif up == 0:
            cls = MAX
        elif up == 2 and down == 1:
            cls = POS
        elif up == 1 and down == 2:
            cls = NEG
        else:
            raise MultipleSaddle(order[v])
        nodes[order[v]] = cls
        for u in nb:
            if u > v:
                edges.add((order[v], order[u]))
    return StaticTree(nodes, edges, prep.rank)


# -- contour tracing


def _hull_dirs(mesh):
    hull = mesh.adj[INF]
    n = len(hull)
    dirs = {}
    for i, x in enumerate(hull):
        px, py = mesh.pos[hull[i - 1]]
        nx, ny = mesh.pos[hull[(i + 1) % n]]
        xx, xy = mesh.pos[x]
        a = (xx - px, xy - py)
        b = (xx - nx, xy - ny)
        la, lb = math.hypot(*a), math.hypot(*b)
        d = (a[0] / la + b[0] / lb, a[1] / la + b[1] / lb)
        ld = math.hypot(*d)
        if ld < 1e-12:
            # collinear: outward normal of a counter-clockwise boundary
            d = (a[1] / la, -a[0] / la)
            ld = 1.0
        dirs[x] = (d[0] / ld, d[1] / ld)
    return dirs


class _Geometry:
    def __init__(self, mesh, f):
        self.mesh = mesh
        self.f = f
        self.dirs = _hull_dirs(mesh)
        xs = [p[0] for v, p in mesh.pos.items() if v != INF]
        ys = [p[1] for v, p in mesh.pos.items() if v != INF]
        self.scale = 10.0 * (max(xs) - min(xs) + max(ys) - min(ys) + 1.0)
        # rotation successors per directed edge, so walking is O(1) a step
        self.cw, self.ccw = {}, {}
        for v, nb in mesh.adj.items():
            k = len(nb)
            for i, u in enumerate(nb):
                self.cw[v, u] = nb[(i + 1) % k]
                self.ccw[v, u] = nb[i - 1]

    def crossing(self, p, q, level):
        """Point where the level crosses edge p-q (p below, q above)."""
        pos = self.mesh.pos
        if p == INF:
            x, y = pos[q]
            d = self.dirs[q]
            t = (self.f[q] - level) * self.scale
            return (x + d[0] * t, y + d[1] * t)
        fp, fq = self.f[p], self.f[q]
        t = (level - fp) / (fq - fp)
        a, b = pos[p], pos[q]
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def trace_contour(mesh, level, seed, f=None, geom=None):
    """Walk the contour at ``level`` through the crossed edge ``seed``.

    ``f`` maps vertices to the values being contoured (default: vertex ranks,
    so any level k + 0.5 avoids every vertex).  Returns the polygon and the
    cyclic list of crossed edges, each as (lower, upper).
    """
    if f is None:
        f = ranks(mesh)[1]
    geom = geom or _Geometry(mesh, f)
    a, b = seed
    if f[a] > f[b]:
        a, b = b, a
    if not (f[a] < level < f[b]):
        raise ValueError("seed edge does not cross the level")
    edges, pts = [], []
    p, q = a, b
    cw, ccw = geom.cw, geom.ccw
    pos, limit = mesh.pos, 4 * len(mesh.adj) + 8
    prev = ccw[p, q]
    while True:
        edges.append((p, q))
        if p == INF:
            pts.append(geom.crossing(p, q, level))
        else:
            fp = f[p]
            t = (level - fp) / (f[q] - fp)
            (ax, ay), (bx, by) = pos[p], pos[q]
            pts.append((ax + t * (bx - ax), ay + t * (by - ay)))
        t1 = cw[p, q]
        w = t1 if t1 != prev else ccw[p, q]
        if f[w] < level:
            prev, p = p, w
        else:
            prev, q = q, w
        if p == a and q == b:
            break
        if len(edges) > limit:
            raise RuntimeError("contour did not close")
    return pts, edges


def point_in_polygon(pt, poly):
    x, y = pt
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i - 1]
        x2, y2 = poly[i]
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


def _steepest_ascent(mesh, w, rank):
    while True:
        best = max(mesh.adj[w], key=rank.__getitem__)
        if rank[best] < rank[w]:
            return w
        w = best


def _euler_tour(ct):
    nb = ct.neighbors()
    tin, tout = {}, {}
    parent = {INF: None}
    t = 0
    stack = [(INF, iter(nb[INF]))]
    tin[INF] = 0
    while stack:
        v, it = stack[-1]
        for u in it:
            if u != parent[v]:
                parent[u] = v
                t += 1
                tin[u] = t
                stack.append((u, iter(nb[u])))
                break
        else:
            t += 1
            tout[v] = t
            stack.pop()
    return tin, tout, parent


def static_edge_colors(mesh, ct):
    rank = ct.rank
    geom = _Geometry(mesh, rank)
    tin, tout, parent = _euler_tour(ct)

    def inside(x, r):
        return tin[r] <= tin[x] and tout[x] <= tout[r]

    colors = {}
    for lo, hi in ct.edges:
        clo, chi = ct.nodes[lo], ct.nodes[hi]
        if clo in (MIN, NEG):
            level = rank[lo] + 0.5
            w = next(u for u in mesh.adj[lo] if rank[u] > rank[lo])
            seed = (lo, w)
        elif chi in (MAX, POS):
            level = rank[hi] - 0.5
            w = next(u for u in mesh.adj[hi] if rank[u] < rank[hi])
            seed = (w, hi)
        else:
            level = rank[lo] + 0.5
            seed = None
            for run in mesh.link_components(lo)[1]:
                m = _steepest_ascent(mesh, run[0], rank)
                toward_hi = inside(m, hi) if parent[hi] == lo else not inside(m, lo)
                if toward_hi:
                    seed = (lo, run[0])
                    break
            if seed is None:
                raise RuntimeError("no upper component of %d leads to %d" % (lo, hi))
        poly, _ = trace_contour(mesh, level, seed, rank, geom)
        c = geom.crossing(seed[0], seed[1], level)
        u = mesh.pos[seed[1]]
        sample = ((c[0] + u[0]) / 2, (c[1] + u[1]) / 2)
        colors[(lo, hi)] = "red" if point_in_polygon(sample, poly) else "blue"
    return colors


# -- merge trees and persistence


def merge_trees(mesh, prep=None):
    """Join tree (root TOP) and split tree (root v_infinity) as parent maps,
    plus the elder-rule pairs found along the way."""
    prep = prep or _Prep(mesh)
    order, radj = prep.order, prep.radj
    n = len(order)
    pairs = []

    def sweep(idx, below, par, pair):
        p = list(range(n))
        head, birth = {}, {}
        for v in idx:
            roots = list({_find(p, u) for u in radj[v] if below(u, v)})
            if not roots:
                head[v] = birth[v] = v
                continue
            if len(roots) == 2:
                for r in roots:
                    par[order[head[r]]] = order[v]
                b0, b1 = sorted(birth[r] for r in roots)
                pairs.append(pair(b0, b1, v))
                keep = b0 if below(b0, b1) else b1  # the elder survives
                h = v
            elif len(roots) == 1:
                keep, h = birth[roots[0]], head[roots[0]]
            else:
                raise MultipleSaddle(order[v])
            for r in roots:
                p[r] = v
            head[v], birth[v] = h, keep
        return head

    jpar, spar = {}, {}
    head = sweep(range(n), lambda u, v: u < v, jpar,
                 lambda b0, b1, v: (order[b1], order[v]))
    # the global maximum absorbs everything, so its head is the join root
    jpar[order[head[n - 1]]] = TOP
    # v_infinity (rank 0) is the split root and never enters the sweep
    head = sweep(range(n - 1, 0, -1), lambda u, v: u > v, spar,
                 lambda b0, b1, v: (order[v], order[b0]))
    spar[order[head[1]]] = INF
    return jpar, spar, pairs


def pair_list(mesh, raw):
    out = [(c, d, mesh.h[d] - mesh.h[c]) for c, d in raw]
    out.sort(key=lambda p: (-p[2], p[0], p[1]))
    return out


def static_persistence(mesh):
    return pair_list(mesh, merge_trees(mesh)[2])


def merge_tree_lows(parent, leaf_key):
    """For every internal node the extreme leaf (by ``leaf_key``) below it."""
    kids = {}
    for c, p in parent.items():
        kids.setdefault(p, []).append(c)
    low = {}

    def best(x):
        stack = [(x, False)]
        while stack:
            y, done = stack.pop()
            if y not in kids:
                low[y] = y
            elif done:
                low[y] = min((low[c] for c in kids[y]), key=leaf_key)
            else:
                stack.append((y, True))
                stack.extend((c, False) for c in kids[y])
        return low[x]

    roots = set(kids) - set(parent)
    for r in roots:
        best(r)
    return low


# -- snapshots and comparison


@dataclass
class Snapshot:
    nodes: dict
    edges: dict  # (lower, upper) -> color
    jparent: dict
    sparent: dict
    pairs: list
    extra: dict = field(default_factory=dict)


def static_snapshot(mesh):
    prep = _Prep(mesh)
    ct = static_contour_tree(mesh, prep)
    colors = static_edge_colors(mesh, ct)
    jpar, spar, raw = merge_trees(mesh, prep)
    return Snapshot(dict(ct.nodes), colors, jpar, spar, pair_list(mesh, raw))


def forest_problems(mesh, desc_parent, asc_parent):
    out = []
    for name, par, below in (("descent", desc_parent, True), ("ascent", asc_parent, False)):
        for v in mesh.adj:
            p = par.get(v)
            kv = mesh.key(v)
            link = mesh.adj[v]
            ext = all((mesh.key(u) > kv) == below for u in link)
            if p is None:
                if not ext:
                    out.append("%s root %d is not an extremum" % (name, v))
            elif p not in link or (mesh.key(p) < kv) != below:
                out.append("%s parent of %d is %d, not in its %s link" % (
                    name, v, p, "lower" if below else "upper"))
        if set(par) - set(mesh.adj):
            out.append("%s forest has stale vertices" % name)
    return out


@dataclass
class Report:
    diffs: list

    @property
    def ok(self):
        return not self.diffs

    def __str__(self):
        return "equal" if self.ok else "\n".join(self.diffs)


def _dict_diff(name, got, want, limit):
    out = []
    for k in sorted(set(got) | set(want), key=repr):
        if got.get(k) != want.get(k):
            out.append("%s %r: kinetic %r, oracle %r" % (name, k, got.get(k), want.get(k)))
            if len(out) >= limit:
                break
    return out


def compare(got, want, limit=5):
    diffs = []
    diffs += _dict_diff("node", got.nodes, want.nodes, limit)
    diffs += _dict_diff("edge", got.edges, want.edges, limit)
    diffs += _dict_diff("join parent", got.jparent, want.jparent, limit)
    diffs += _dict_diff("split parent", got.sparent, want.sparent, limit)
    if got.pairs != want.pairs:
        gs, ws = set(got.pairs), set(want.pairs)
        for p in sorted(gs - ws)[:limit]:
            diffs.append("pair %r only in kinetic" % (p,))
        for p in sorted(ws - gs)[:limit]:
            diffs.append("pair %r only in oracle" % (p,))
        if gs == ws:
            diffs.append("pair order differs")
    return diffs


def check_snapshot(mesh, got, limit=5):
    """Compare a kinetic snapshot against a fresh static computation on mesh."""
    try:
        want = static_snapshot(mesh)
    except MultipleSaddle as e:
        return Report(["mesh has a multiple saddle at %s" % e])
    diffs = compare(got, want, limit)
    diffs += forest_problems(mesh, got.extra.get("desc", {}), got.extra.get("asc", {}))[:limit]
    diffs += got.extra.get("problems", [])[:limit]
    return Report(diffs)


def assert_equivalent(state, mesh=None, limit=5):
    return check_snapshot(mesh or state.mesh, state.snapshot(), limit)
