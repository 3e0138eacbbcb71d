"""Contour tree, ascent/descent forests and the cross-links between them."""
from .dynforest import DynamicForest
from .mesh import INF, MAX, MIN, REGULAR

RED, BLUE = "red", "blue"


class VertexIsCritical(Exception):
    pass


class InconsistentCrossLink(Exception):
    pass


class ContourTree:
    """Critical vertices as labelled nodes; colors are read off the tree.

    A contour on edge (a, b) is red exactly when v_infinity lies on the side
    of its lower endpoint: then the outside of the contour is sublevel and so
    its inside is superlevel.
    """

    def __init__(self, mesh):
        self.mesh = mesh
        self.forest = DynamicForest(key=lambda x: mesh.key(x.item))
        self.node = {}
        self.adj = {}

    def __contains__(self, label):
        return label in self.node

    def __len__(self):
        return len(self.node)

    def add_node(self, label):
        if label in self.node:
            raise KeyError("node %d exists" % label)
        self.node[label] = self.forest.make_node(label)
        self.adj[label] = set()

    def remove_node(self, label):
        if self.adj[label]:
            raise KeyError("node %d still has edges" % label)
        del self.node[label]
        del self.adj[label]

    def link(self, a, b):
        self.forest.link(self.node[a], self.node[b])
        self.adj[a].add(b)
        self.adj[b].add(a)

    def cut(self, a, b):
        self.forest.cut(self.node[a], self.node[b])
        self.adj[a].remove(b)
        self.adj[b].remove(a)

    def relabel(self, old, new):
        x = self.node.pop(old)
        x.item = new
        self.node[new] = x
        nb = self.adj.pop(old)
        self.adj[new] = nb
        for u in nb:
            self.adj[u].remove(old)
            self.adj[u].add(new)

    def edges(self):
        k = self.mesh.key
        for a, nb in self.adj.items():
            for b in nb:
                if k(a) < k(b):
                    yield a, b

    def up(self, a, s=1):
        ka = self.mesh.fkey(a, s)
        return [b for b in self.adj[a] if self.mesh.fkey(b, s) > ka]

    def down(self, a, s=1):
        ka = self.mesh.fkey(a, s)
        return [b for b in self.adj[a] if self.mesh.fkey(b, s) < ka]

    def first_step(self, a, b):
        return self.forest.path_first_step(self.node[a], self.node[b]).item

    def toward_infinity(self, a, b):
        """The endpoint of edge (a, b) on v_infinity's side."""
        if a == INF or b == INF:
            return INF
        return b if self.first_step(a, INF) == b else a

    def color(self, a, b, s=1):
        lower = a if self.mesh.fkey(a, s) < self.mesh.fkey(b, s) else b
        return RED if self.toward_infinity(a, b) == lower else BLUE

    def sign(self, a, s=1):
        """'pos' or 'neg' for a saddle node, read in frame s."""
        return "pos" if len(self.up(a, s)) == 2 else "neg"

    def node_class(self, a):
        nb = len(self.adj[a])
        up = len(self.up(a))
        if up == nb:
            return "min"
        if up == 0:
            return "max"
        return "pos" if up == 2 else "neg"

    def saddle_color(self, a):
        if self.node_class(a) == "pos":
            (d,) = self.down(a)
            return self.color(a, d)
        (u,) = self.up(a)
        return self.color(a, u)


class Forests:
    """Descent and ascent forests over all mesh vertices.

    Parents are steepest: the lowest lower neighbor for descent, the highest
    upper neighbor for ascent.  Frame s = -1 swaps the two.
    """

    def __init__(self, mesh):
        self.mesh = mesh
        self.desc = DynamicForest()
        self.asc = DynamicForest()
        self.dnode = {}
        self.anode = {}
        self.dpar = {}
        self.apar = {}

    def build(self):
        m = self.mesh
        for v in m.adj:
            self.add_vertex(v)
        for v in m.adj:
            self._attach(v, 1)
            self._attach(v, -1)

    def add_vertex(self, v):
        self.dnode[v] = self.desc.make_node(v)
        self.anode[v] = self.asc.make_node(v)
        self.dpar[v] = None
        self.apar[v] = None

    def remove_vertex(self, v):
        for s in (1, -1):
            if self.parent(v, s) is not None:
                self._cut(v, s)
        del self.dnode[v], self.anode[v], self.dpar[v], self.apar[v]

    # frame s: "down" forest is descent when s > 0
    def _pick(self, s):
        return (self.dnode, self.dpar, self.desc) if s > 0 else (self.anode, self.apar, self.asc)

    def parent(self, v, s=1):
        return self._pick(s)[1][v]

    def children(self, v, s=1):
        par = self._pick(s)[1]
        return [w for w in self.mesh.adj[v] if par.get(w) == v]

    def root(self, v, s=1):
        nodes, _, f = self._pick(s)
        return f.root(nodes[v]).item

    def _cut(self, v, s):
        nodes, par, f = self._pick(s)
        f.cut_parent(nodes[v])
        par[v] = None

    def _link(self, v, p, s):
        nodes, par, f = self._pick(s)
        f.link(nodes[v], nodes[p])
        par[v] = p

    def best_lower(self, v, s=1):
        lower = self.mesh.lower_neighbors(v, s)
        if not lower:
            return None
        return min(lower, key=lambda u: self.mesh.fkey(u, s))

    def _attach(self, v, s):
        p = self.best_lower(v, s)
        if p is not None:
            self._link(v, p, s)

    def repair_crossing(self, v, u, s):
        """v has just moved from below u to above u in frame s."""
        # the frame-up forest: v may no longer point up to u; u may now point to v
        if self.parent(v, -s) == u:
            self._cut(v, -s)
            self._attach(v, -s)
        if self.parent(u, -s) is None:
            self._attach(u, -s)
        # the frame-down forest: u may no longer point down to v; v may now point to u
        if self.parent(u, s) == v:
            self._cut(u, s)
            self._attach(u, s)
        if self.parent(v, s) is None:
            self._attach(v, s)

    def reattach_children(self, v):
        """Before removing v: hand its children to other neighbors."""
        for s in (1, -1):
            for w in self.children(v, s):
                self._cut(w, s)
                lower = [u for u in self.mesh.lower_neighbors(w, s) if u != v]
                p = min(lower, key=lambda u: self.mesh.fkey(u, s))
                self._link(w, p, s)

    def is_edge(self, v, u):
        return self.dpar[v] == u or self.dpar[u] == v or self.apar[v] == u or self.apar[u] == v


class CrossLinks:
    """Forest roots (extrema) to their contour-tree leaves and back."""

    def __init__(self, tree):
        self.tree = tree
        self.leaf_of = {}
        self.root_of = {}

    def attach(self, root, label):
        t = self.tree
        if label not in t or len(t.adj[label]) != 1:
            raise InconsistentCrossLink("%r is not a leaf" % (label,))
        if root in self.leaf_of or label in self.root_of:
            raise InconsistentCrossLink("%r or %r already linked" % (root, label))
        self.leaf_of[root] = label
        self.root_of[label] = root

    def detach(self, root):
        if root not in self.leaf_of:
            raise InconsistentCrossLink("%r is not linked" % (root,))
        label = self.leaf_of.pop(root)
        del self.root_of[label]
        return label

    def problems(self, mesh, forests):
        out = []
        for v in mesh.adj:
            c = mesh.classify(v)
            is_root = forests.parent(v, 1) is None if c == MIN else (
                forests.parent(v, -1) is None if c == MAX else False)
            if c in (MIN, MAX):
                if not is_root:
                    out.append("extremum %d is not a forest root" % v)
                if self.leaf_of.get(v) != v:
                    out.append("root %d linked to %r" % (v, self.leaf_of.get(v)))
                elif len(self.tree.adj.get(v, ())) != 1:
                    out.append("root %d linked to a non-leaf" % v)
            elif v in self.leaf_of:
                out.append("non-extremum %d still cross-linked" % v)
        return out


def find_edge(mesh, tree, forests, v):
    """Contour-tree edge (lower, upper) whose interval holds the regular vertex v."""
    if v == INF or mesh.classify(v) != REGULAR:
        raise VertexIsCritical(v)
    x = forests.root(v, 1)
    y = forests.root(v, -1)
    a, b = tree.forest.path_search_monotone(tree.node[y], tree.node[x], mesh.key(v))
    return b.item, a.item
