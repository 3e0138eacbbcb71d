"""ChangeHeight: move one vertex and repair everything at each crossing.

Time is replaced by crossing order.  While v passes u it is parked at u's
height with a nudge of -s (just before) and then +s (just after), where s is
+1 when raising and -1 when lowering.  Every handler is written for a rising
vertex in "frame" s, in which lowering is raising with z reversed: minima and
maxima swap, descent and ascent swap, join and split swap, and so do colors.
"""
import heapq
from dataclasses import dataclass
from fractions import Fraction

from sortedcontainers import SortedList

from . import oracle
from .mesh import INF, MAX, MIN, REGULAR, SADDLE, MultipleSaddle
from .persist import MergeTree
from .topology import BLUE, RED, ContourTree, CrossLinks, Forests, find_edge


class InconsistentState(Exception):
    pass


class MultipleSaddleEncountered(Exception):
    def __init__(self, v, u, records=()):
        super().__init__("moving %d past %d would create a multiple saddle" % (v, u))
        self.v, self.u = v, u
        self.records = list(records)


class CannotMoveInfinity(Exception):
    pass


@dataclass(frozen=True)
class EventRecord:
    seq: int
    kind: str
    v: int
    u: int
    height: float
    detail: str = ""
    ops: int = 0
    rotations: int = 0

    def line(self):
        d = " " + self.detail if self.detail else ""
        return "%d %s %d %d h=%r%s" % (self.seq, self.kind, self.v, self.u, self.height, d)


LOCAL_KINDS = {"Auxiliary", "Crossing", "Shift", "Birth", "Death"}


def _mid_nonint(a, b):
    a, b = Fraction(a), Fraction(b)
    m = (a + b) / 2
    while m.denominator == 1:
        m = (a + m) / 2
    return m


def key_between(mesh, lo, hi, v):
    """A fresh (height, tie) strictly between keys lo < hi, unique in the mesh."""
    l0, h0 = lo[0], hi[0]
    if l0 == float("-inf"):
        return h0 - 1.0, v
    m = (l0 + h0) / 2
    if l0 < m < h0:
        return m, v
    # no float strictly between: stay at l0 and use a fractional tie
    bound = hi[1] if l0 == h0 else lo[1] + 1
    t = _mid_nonint(lo[1], bound)
    taken = {mesh.tie[w] for w in mesh.adj if w != v and mesh.h[w] == l0}
    while t in taken:
        t = _mid_nonint(lo[1], t)
    return l0, t


class KineticState:
    def __init__(self, mesh):
        self.mesh = mesh
        self.T = ContourTree(mesh)
        self.F = Forests(mesh)
        self.X = CrossLinks(self.T)
        self.seq = 0
        self.log = []
        self._build()

    # -- construction from the static sweep

    def _build(self):
        m = self.mesh
        ct = oracle.static_contour_tree(m)
        for v in ct.nodes:
            self.T.add_node(v)
        for a, b in sorted(ct.edges, key=lambda e: ct.rank[e[0]]):
            self.T.link(a, b)
        self.F.build()
        jpar, spar, _ = oracle.merge_trees(m)
        self.J = MergeTree.from_parents(m, 1, jpar)
        self.S = MergeTree.from_parents(m, -1, spar)
        self.minima = SortedList()
        self.maxima = SortedList()
        self.listed = {}
        for v in m.adj:
            self._list_add(v)
            if v in self.listed:
                self.X.attach(v, v)

    def merge(self, s):
        return self.J if s > 0 else self.S

    def forests(self):
        return (self.T.forest, self.F.desc, self.F.asc, self.J.forest, self.S.forest)

    def op_count(self):
        return sum(f.ops for f in self.forests()) + self.J.chain_steps + self.S.chain_steps

    def rotation_count(self):
        return sum(f.rotations for f in self.forests())

    # -- sorted extremum lists (v is taken out while it moves)

    def _list_add(self, v):
        c = self.mesh.classify(v)
        if c == MIN:
            self.minima.add((self.mesh.key(v), v))
            self.listed[v] = self.minima
        elif c == MAX:
            self.maxima.add((self.mesh.key(v), v))
            self.listed[v] = self.maxima

    def _list_remove(self, v):
        lst = self.listed.pop(v, None)
        if lst is not None:
            lst.remove((self.mesh.key(v), v))

    def _next_extremum(self, v, s):
        c = self.mesh.classify(v, s)
        if c == MIN:
            lst = self.minima if s > 0 else self.maxima
        elif c == MAX:
            lst = self.maxima if s > 0 else self.minima
        else:
            return None
        k = self.mesh.key(v)
        if s > 0:
            i = lst.bisect_right((k, float("inf")))
            return lst[i][1] if i < len(lst) else None
        i = lst.bisect_left((k, float("-inf")))
        return lst[i - 1][1] if i > 0 else None

    # -- the operation

    def change_height(self, v, r, tie=None, on_event=None):
        m = self.mesh
        if v == INF:
            raise CannotMoveInfinity()
        if v not in m.adj:
            raise KeyError(v)
        tie = v if tie is None else tie
        k0 = m.key(v)
        target = (r, tie, 0)
        records = []
        if target == k0:
            return records
        s = 1 if target > k0 else -1
        ft = target if s > 0 else (-r, -tie, 0)
        self._list_remove(v)
        heap = []
        done = set()

        def push(u):
            if u is None or u in done or u == v or u not in m.adj:
                return
            fu = m.fkey(u, s)
            if m.fkey(v, s) < fu < ft:
                heapq.heappush(heap, (fu, u))

        for u in m.adj[v]:
            push(u)
        self._push_dynamic(v, s, push)
        while heap:
            _, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            ops0, rot0 = self.op_count(), self.rotation_count()
            try:
                res = self._cross(v, u, s)
            except MultipleSaddleEncountered as e:
                self._settle(v, u, s)
                self._list_add(v)
                e.records = records
                raise
            if res is None:
                continue
            kind, detail = res
            self.seq += 1
            rec = EventRecord(self.seq, kind, v, u, m.h[u], detail,
                              self.op_count() - ops0, self.rotation_count() - rot0)
            records.append(rec)
            self.log.append(rec)
            if on_event is not None:
                on_event(rec)
            self._push_dynamic(v, s, push)
        m.set_height(v, r, tie)
        self._list_add(v)
        return records

    def _push_dynamic(self, v, s, push):
        T = self.T
        if v in T:
            for u in T.up(v, s):
                push(u)
        Js, Ss = self.merge(s), self.merge(-s)
        if v in Js:
            p = Js.par[v]
            if p != Js.rootlabel:
                push(p)
        if v in Ss:
            for c in Ss.kids[v]:
                push(c)
        push(self._next_extremum(v, s))

    def _settle(self, v, u, s):
        m = self.mesh
        fu = m.fkey(u, s)
        pred = None
        for w in m.adj:
            if w != v and m.fkey(w, s) < fu and (pred is None or m.fkey(w, s) > m.fkey(pred, s)):
                pred = w
        lo, hi = m.key(pred), m.key(u)
        if s < 0:
            lo, hi = m.key(u), m.key(pred)
        h, t = key_between(m, lo, hi, v)
        m.set_height(v, h, t)

    # -- one crossing

    def _cross(self, v, u, s):
        m = self.mesh
        m.set_height(v, m.h[u], m.tie[u], -s)
        if u in m.adj[v]:
            return self._local(v, u, s)
        T = self.T
        if v in T and u in T and u in T.adj[v]:
            if m.classify(v) != SADDLE or m.classify(u) != SADDLE:
                raise InconsistentState("tree neighbors %d, %d cross without sharing an edge" % (v, u))
            return self._interchange(v, u, s)
        Js, Ss = self.merge(s), self.merge(-s)
        after = lambda: m.set_height(v, m.h[u], m.tie[u], s)
        if v in Js and u in Js and Js.par[v] == u and Js.kids[v]:
            leaves = self._merge_leaves(Js, u)
            after()
            Js.rotate(v, u, leaves)
            return ("JoinRotation" if s > 0 else "SplitRotation"), ""
        if v in Ss and u in Ss and Ss.par[u] == v and Ss.kids[u]:
            leaves = self._merge_leaves(Ss, v)
            after()
            Ss.rotate(u, v, leaves)
            return ("SplitRotation" if s > 0 else "JoinRotation"), ""
        cv, cu = m.classify(v, s), m.classify(u, s)
        if cv == cu == MIN:
            after()
            Js.cross(v, u)
            return ("MinimaCrossing" if s > 0 else "MaximaCrossing"), ""
        if cv == cu == MAX:
            after()
            Ss.cross(u, v)
            return ("MaximaCrossing" if s > 0 else "MinimaCrossing"), ""
        after()
        return None

    def _merge_leaves(self, tree, p):
        """One leaf per component that saddle p merges, in the tree's own frame."""
        runs = self.mesh.link_components(p, tree.s)[0]
        return [self.F.root(run[0], tree.s) for run in runs]

    # -- local events (v and u share a mesh edge)

    def _local(self, v, u, s):
        m = self.mesh
        cv0, cu0 = m.classify(v, s), m.classify(u, s)
        if cv0 == SADDLE and cu0 == SADDLE:
            raise MultipleSaddleEncountered(v, u)
        m.set_height(v, m.h[u], m.tie[u], s)
        try:
            cv1, cu1 = m.classify(v, s), m.classify(u, s)
        except MultipleSaddle:
            raise MultipleSaddleEncountered(v, u)
        finally:
            m.set_height(v, m.h[u], m.tie[u], -s)
        T, F, X = self.T, self.F, self.X
        Js, Ss = self.merge(s), self.merge(-s)
        change = (cv0, cu0, cv1, cu1)
        was_edge = F.is_edge(v, u)
        plan = None
        if cv0 == cv1 and cu0 == cu1:
            kind = "Auxiliary" if was_edge else "Crossing"
        elif change == (MIN, REGULAR, REGULAR, MIN):
            kind, plan = "Shift", ("relabel", v, u, Js)
        elif change == (REGULAR, MAX, MAX, REGULAR):
            kind, plan = "Shift", ("relabel", u, v, Ss)
        elif change == (SADDLE, REGULAR, REGULAR, SADDLE):
            tree = Js if T.sign(v, s) == "neg" else Ss
            kind, plan = "Shift", ("relabel", v, u, tree)
        elif change == (REGULAR, SADDLE, SADDLE, REGULAR):
            tree = Js if T.sign(u, s) == "neg" else Ss
            kind, plan = "Shift", ("relabel", u, v, tree)
        elif change == (REGULAR, REGULAR, SADDLE, MIN):
            kind, plan = "Birth", ("birth", find_edge(m, T, F, v), v, u, Js, F.root(v, s))
        elif change == (REGULAR, REGULAR, MAX, SADDLE):
            kind, plan = "Birth", ("birth", find_edge(m, T, F, v), u, v, Ss, F.root(v, -s))
        elif change == (MIN, SADDLE, REGULAR, REGULAR):
            kind, plan = "Death", ("death", v, u, Js)
        elif change == (SADDLE, MAX, REGULAR, REGULAR):
            kind, plan = "Death", ("death", u, v, Ss)
        else:
            raise InconsistentState("crossing %d past %d: classes %r" % (v, u, change))
        m.set_height(v, m.h[u], m.tie[u], s)
        F.repair_crossing(v, u, s)
        detail = ""
        if plan is None:
            pass
        elif plan[0] == "relabel":
            _, old, new, tree = plan
            if old in X.leaf_of:
                X.detach(old)
            T.relabel(old, new)
            tree.relabel(old, new)
            if len(T.adj[new]) == 1:
                X.attach(new, new)
            detail = "%d->%d" % (old, new)
        elif plan[0] == "birth":
            # saddle goes on edge (a, b), leaf hangs off the saddle
            _, (a, b), saddle, leaf, tree, from_leaf = plan
            T.cut(a, b)
            T.add_node(saddle)
            T.add_node(leaf)
            T.link(a, saddle)
            T.link(saddle, b)
            T.link(leaf, saddle)
            tree.insert_saddle(from_leaf, saddle, leaf)
            X.attach(leaf, leaf)
            detail = "on %d-%d" % (a, b)
        else:
            _, leaf, saddle, tree = plan
            if T.adj[leaf] != {saddle}:
                raise InconsistentState("death of %d, %d: not a leaf edge" % (leaf, saddle))
            a, b = sorted(T.adj[saddle] - {leaf})
            X.detach(leaf)
            T.cut(leaf, saddle)
            T.cut(saddle, a)
            T.cut(saddle, b)
            T.remove_node(leaf)
            T.remove_node(saddle)
            T.link(a, b)
            tree.remove_leaf(leaf, saddle)
            detail = "join %d-%d" % (a, b)
        self._list_remove(u)
        self._list_add(u)
        return kind, detail

    # -- interchange events (saddles adjacent in the contour tree only)

    def _interchange(self, v, u, s):
        m, T = self.mesh, self.T
        sv, su = T.sign(v, s), T.sign(u, s)
        before = T.color(v, u)
        after = lambda: m.set_height(v, m.h[u], m.tie[u], s)
        if sv == "neg" and su == "pos":
            if T.color(v, u, s) == BLUE:
                plan = self._mixed_plan(v, u, s)
                swap = False
            else:
                plan = self._mixed_plan(u, v, -s)
                swap = True
            after()
            if plan is None:
                T.relabel(v, INF - 2)
                T.relabel(u, v)
                T.relabel(INF - 2, u)
                self.merge(s).relabel(v, u)
                self.merge(-s).relabel(u, v)
                return "SignInterchange", ""
            d, up = plan
            if swap:
                self._move(u, v, d, up)
            else:
                self._move(v, u, d, up)
        elif sv == "pos" and su == "neg":
            (d,) = T.down(v, s)
            (up,) = T.up(u, s)
            after()
            self._move(v, u, d, up)
        elif sv == "neg":
            d, up = self._negative_plan(v, u, s)
            leaves = self._merge_leaves(self.merge(s), u)
            after()
            self._move(v, u, d, up)
            self.merge(s).rotate(v, u, leaves)
            return ("NegativeInterchange" if s > 0 else "PositiveInterchange"), "%d" % d
        else:
            d, up = self._negative_plan(u, v, -s)
            leaves = self._merge_leaves(self.merge(-s), v)
            after()
            self._move(u, v, d, up)
            self.merge(-s).rotate(u, v, leaves)
            return ("PositiveInterchange" if s > 0 else "NegativeInterchange"), "%d" % d
        kind = "BlueInterchange" if T.color(v, u) == before else "RedInterchange"
        return kind, "%d %d" % (d, up)

    def _move(self, a, b, d, up):
        """d leaves a for b, up leaves b for a."""
        T = self.T
        T.cut(a, d)
        T.link(b, d)
        T.cut(b, up)
        T.link(a, up)

    def _mixed_plan(self, a, b, s):
        """a negative below b positive, edge blue (all in frame s).

        None for a sign interchange, else (down neighbor of a that moves to
        b, up neighbor of b that moves to a).
        """
        m, T, F = self.mesh, self.T, self.F
        stubs = set()
        for run in m.link_components(a, s)[1]:
            stubs.add(T.first_step(b, F.root(run[0], -s)))
        if len(stubs) == 2:
            return None
        (up,) = stubs
        d = None
        for run in m.link_components(b, s)[0]:
            x = T.first_step(a, F.root(run[0], s))
            if x != b:
                d = x
        if d is None:
            raise InconsistentState("mixed %d, %d: no down branch" % (a, b))
        return d, up

    def _negative_plan(self, a, b, s):
        """Both negative in frame s, a below b."""
        m, T, F = self.mesh, self.T, self.F
        d = None
        for run in m.link_components(b, s)[0]:
            x = T.first_step(a, F.root(run[0], s))
            if x != b:
                d = x
        if d is None:
            raise InconsistentState("negative %d, %d: no down branch" % (a, b))
        (up,) = T.up(b, s)
        return d, up

    # -- reading the state

    def snapshot(self):
        T = self.T
        nodes = {a: T.node_class(a) for a in T.node}
        # one sweep from v_infinity instead of a path query per edge
        key = self.mesh.key
        edges = {}
        seen, stack = {INF}, [INF]
        while stack:
            a = stack.pop()
            for b in T.adj[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
                    lo, hi = (a, b) if key(a) < key(b) else (b, a)
                    edges[lo, hi] = RED if a == lo else BLUE
        pairs = oracle.pair_list(self.mesh, self.J.pairs() + self.S.pairs())
        problems = self.X.problems(self.mesh, self.F) + self.J.problems() + self.S.problems()
        extra = {"desc": dict(self.F.dpar), "asc": dict(self.F.apar), "problems": problems}
        return oracle.Snapshot(nodes, edges, self.J.parent_map(), self.S.parent_map(), pairs, extra)

    def fingerprint(self):
        """Changes whenever the combinatorial state could have changed."""
        m = self.mesh
        return self.seq, m.next_id, len(m.adj), tuple(sorted(m.adj, key=m.key))

    def pairs(self):
        return oracle.pair_list(self.mesh, self.J.pairs() + self.S.pairs())
