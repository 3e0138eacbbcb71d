"""Join and split trees with extreme-leaf pointers, and persistence pairs.

Both trees are handled by one class read in a frame: the join tree is the
merge tree of frame +1 (root TOP above everything), the split tree the merge
tree of frame -1 (root v_infinity, which is +inf in that frame).  ``low`` of
a node is its frame-lowest leaf, i.e. the lowest minimum below a join node
or the highest maximum below a split node.
"""
from .dynforest import DynamicForest
from .mesh import INF

TOP = -1


class MergeTree:
    def __init__(self, mesh, s):
        self.mesh = mesh
        self.s = s
        self.rootlabel = TOP if s > 0 else INF
        self.forest = DynamicForest(key=lambda x: self.key(x.item))
        self.node = {}
        self.par = {}
        self.kids = {}
        self.low = {}  # node label -> leaf Node (survives relabelling)
        self.chain_steps = 0
        self._add(self.rootlabel)

    def key(self, label):
        if label == TOP:
            return (float("inf"), 0, 0)
        return self.mesh.key(label)

    def fkey(self, label):
        if label == self.rootlabel:
            return (float("inf"), 0, 0)
        return self.mesh.fkey(label, self.s)

    def __contains__(self, label):
        return label in self.node

    def _add(self, label):
        self.node[label] = self.forest.make_node(label)
        self.par[label] = None
        self.kids[label] = []
        self.low[label] = self.node[label]

    def _link(self, c, p):
        self.forest.link(self.node[c], self.node[p])
        self.par[c] = p
        self.kids[p].append(c)

    def _cut(self, c):
        p = self.par[c]
        self.forest.cut_parent(self.node[c])
        self.par[c] = None
        self.kids[p].remove(c)
        return p

    def _lower(self, a, b):
        return a if self.fkey(a) < self.fkey(b) else b

    def _lower_node(self, a, b):
        return a if self.fkey(a.item) < self.fkey(b.item) else b

    def lowest(self, x):
        return self.low[x].item

    def _fix_low(self, x):
        k = self.kids[x]
        if k:
            lo = self.low[k[0]]
            for c in k[1:]:
                lo = self._lower_node(lo, self.low[c])
            self.low[x] = lo
        else:
            self.low[x] = self.node[x]

    # -- construction

    @classmethod
    def from_parents(cls, mesh, s, parent):
        t = cls(mesh, s)
        for c in parent:
            if c not in t.node:
                t._add(c)
        for c, p in parent.items():
            if p not in t.node:
                t._add(p)
        # children before parents, so every link hangs a whole root
        order = sorted(parent, key=t.fkey)
        for c in order:
            t._link(c, parent[c])
        for x in sorted(t.node, key=t.fkey):
            t._fix_low(x)
        return t

    # -- edits

    def relabel(self, old, new):
        x = self.node.pop(old)
        x.item = new
        self.node[new] = x
        p = self.par.pop(old)
        self.par[new] = p
        if p is not None:
            k = self.kids[p]
            k[k.index(old)] = new
        ks = self.kids.pop(old)
        self.kids[new] = ks
        for c in ks:
            self.par[c] = new
        self.low[new] = self.low.pop(old)

    def insert_saddle(self, from_leaf, saddle, leaf):
        """New saddle on the edge above ``from_leaf`` at the saddle's key, with a new leaf."""
        lo, hi = self.forest.search_to_root(self.node[from_leaf], self.key(saddle))
        lo, hi = lo.item, hi.item
        self._cut(lo)
        self._add(saddle)
        self._add(leaf)
        self._link(lo, saddle)
        self._link(leaf, saddle)
        self._link(saddle, hi)
        self._fix_low(saddle)

    def remove_leaf(self, leaf, saddle):
        if self.par[leaf] != saddle:
            raise AssertionError("%d is not a leaf below %d" % (leaf, saddle))
        self._cut(leaf)
        (other,) = self.kids[saddle]
        self._cut(other)
        p = self._cut(saddle)
        self._link(other, p)
        del self.node[saddle], self.node[leaf]
        del self.par[saddle], self.par[leaf], self.kids[saddle], self.kids[leaf]
        del self.low[saddle], self.low[leaf]

    def rotate(self, x, p, leaves):
        """Child x moves above its parent p.

        ``leaves`` holds one leaf from each component that p merges once it is
        the lower of the two; these decide which child of x moves under p.
        """
        (c,) = [y for y in self.kids[p] if y != x]
        a = None
        for m in leaves:
            t = self.forest.child_toward(self.node[p], self.node[m]).item
            if t == x:
                a = self.forest.child_toward(self.node[x], self.node[m]).item
        if a is None:
            raise AssertionError("rotation at %d: no leaf below %d" % (p, x))
        (b,) = [y for y in self.kids[x] if y != a]
        g = self._cut(p)
        self._cut(x)
        self._cut(a)
        self._link(a, p)
        self._link(p, x)
        self._link(x, g)
        self._fix_low(p)
        self._fix_low(x)

    def cross(self, x, y):
        """Leaves x and y swap order and y is now the lower one."""
        self.chain_steps += 1
        w = self.forest.lca(self.node[x], self.node[y]).item
        xn, yn = self.node[x], self.node[y]
        while w is not None and self.low[w] is xn:
            self.low[w] = yn
            self.chain_steps += 1
            w = self.par[w]

    # -- reading

    def parent_map(self):
        return {c: p for c, p in self.par.items() if p is not None}

    def pairs(self):
        """(creator, destroyer) per saddle, elder rule."""
        out = []
        for x, ks in self.kids.items():
            if len(ks) == 2:
                a, b = self.lowest(ks[0]), self.lowest(ks[1])
                young = b if self._lower(a, b) == a else a
                out.append((young, x) if self.s > 0 else (x, young))
        return out

    def problems(self):
        """Stored pointers against lows recomputed bottom-up."""
        want = {}
        for x in sorted(self.node, key=self.fkey):
            k = self.kids[x]
            want[x] = x if not k else min((want[c] for c in k), key=self.fkey)
        out = []
        for x in self.node:
            if self.lowest(x) != want[x]:
                out.append("%s pointer of %d is %r, scan gives %r" % (
                    "join" if self.s > 0 else "split", x, self.lowest(x), want[x]))
        return out

    def scan_low(self, x):
        """Extreme leaf below x by walking the whole subtree."""
        best = None
        stack = [x]
        while stack:
            y = stack.pop()
            if not self.kids[y]:
                best = y if best is None else self._lower(best, y)
            stack.extend(self.kids[y])
        return best
