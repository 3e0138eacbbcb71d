"""Link-cut trees over splay trees.

One DynamicForest holds many trees. Nodes carry an arbitrary ``item`` and a
``value`` used by the monotone path searches; a forest may instead be given a
``key`` callable so values are read live (the contour tree does this so that
node keys follow the mesh heights without being copied).
"""


class SameTree(Exception):
    pass


class NoSuchEdge(Exception):
    pass


class NotConnected(Exception):
    pass


class KeyOutOfRange(Exception):
    pass


class NotMonotone(Exception):
    pass


class Node:
    __slots__ = ("l", "r", "p", "rev", "item", "value")

    def __init__(self, item=None, value=None):
        self.l = None
        self.r = None
        self.p = None
        self.rev = False
        self.item = item
        self.value = value

    def __repr__(self):
        return "Node(%r)" % (self.item,)


def _isroot(x):
    p = x.p
    return p is None or (p.l is not x and p.r is not x)


def _push(x):
    if x.rev:
        x.l, x.r = x.r, x.l
        if x.l is not None:
            x.l.rev = not x.l.rev
        if x.r is not None:
            x.r.rev = not x.r.rev
        x.rev = False


class DynamicForest:
    def __init__(self, key=None, debug=False):
        self.key = key
        self.debug = debug
        self.ops = 0
        self.rotations = 0

    # -- node handles

    def make_node(self, item=None, value=None):
        return Node(item, value)

    def val(self, x):
        if self.key is None:
            return x.value
        return self.key(x)

    # -- splay machinery

    def _rotate(self, x):
        p = x.p
        g = p.p
        if p.l is x:
            b = x.r
            p.l = b
            x.r = p
        else:
            b = x.l
            p.r = b
            x.l = p
        if b is not None:
            b.p = p
        if g is not None:
            if g.l is p:
                g.l = x
            elif g.r is p:
                g.r = x
        x.p = g
        p.p = x
        self.rotations += 1

    def _splay(self, x):
        path = [x]
        y = x
        while not _isroot(y):
            y = y.p
            path.append(y)
        for y in reversed(path):
            _push(y)
        while not _isroot(x):
            p = x.p
            if not _isroot(p):
                g = p.p
                if (g.l is p) == (p.l is x):
                    self._rotate(p)
                else:
                    self._rotate(x)
            self._rotate(x)

    def _access(self, x):
        last = None
        y = x
        while y is not None:
            self._splay(y)
            y.r = last
            last = y
            y = y.p
        self._splay(x)
        return last

    def _leftmost(self, y):
        _push(y)
        while y.l is not None:
            y = y.l
            _push(y)
        return y

    def _rightmost(self, y):
        _push(y)
        while y.r is not None:
            y = y.r
            _push(y)
        return y

    def _find_root(self, x):
        self._access(x)
        r = self._leftmost(x)
        self._splay(r)
        return r

    def _evert(self, x):
        self._access(x)
        x.rev = not x.rev
        _push(x)

    def _parent(self, x):
        self._access(x)
        if x.l is None:
            return None
        y = self._rightmost(x.l)
        self._splay(y)
        return y

    def _cut_parent(self, x):
        self._access(x)
        l = x.l
        if l is None:
            return False
        l.p = None
        x.l = None
        return True

    # -- public operations

    def root(self, x):
        self.ops += 1
        return self._find_root(x)

    def connected(self, a, b):
        self.ops += 1
        if a is b:
            return True
        return self._find_root(a) is self._find_root(b)

    def evert(self, x):
        self.ops += 1
        self._evert(x)

    def parent(self, x):
        self.ops += 1
        return self._parent(x)

    def link(self, a, b):
        """Make ``a`` a child of ``b``; ``a`` is everted first so any node may be linked."""
        self.ops += 1
        if a is b or self._find_root(a) is self._find_root(b):
            raise SameTree((a.item, b.item))
        self._evert(a)
        a.p = b

    def cut(self, a, b):
        """Remove edge (a, b) without changing the root of either piece."""
        self.ops += 1
        if self._parent(a) is b:
            self._cut_parent(a)
        elif self._parent(b) is a:
            self._cut_parent(b)
        else:
            raise NoSuchEdge((a.item, b.item))

    def cut_parent(self, x):
        self.ops += 1
        if not self._cut_parent(x):
            raise NoSuchEdge((x.item, None))

    def lca(self, a, b):
        self.ops += 1
        if self._find_root(a) is not self._find_root(b):
            raise NotConnected((a.item, b.item))
        self._access(a)
        return self._access(b)

    def path_first_step(self, a, b):
        """Neighbor of ``a`` on the a..b path.  Everts at ``a``."""
        self.ops += 1
        if a is b:
            raise ValueError("path_first_step needs two distinct nodes")
        if self._find_root(a) is not self._find_root(b):
            raise NotConnected((a.item, b.item))
        self._evert(a)
        self._access(b)
        self._splay(a)
        y = self._leftmost(a.r)
        self._splay(y)
        return y

    def child_toward(self, anc, x):
        """Child of ``anc`` on the root path of ``x``; ``anc`` must be a proper ancestor."""
        self.ops += 1
        self._access(x)
        self._splay(anc)
        if anc.r is None:
            raise NotConnected((anc.item, x.item))
        y = self._leftmost(anc.r)
        self._splay(y)
        return y

    def path(self, a, b):
        """Node list of the a..b path (linear time, used by debug checks and tests)."""
        self._evert(a)
        self._access(b)
        out = []

        def walk(y):
            while y is not None:
                _push(y)
                walk(y.l)
                out.append(y)
                y = y.r

        walk(b)
        if out[0] is not a:
            raise NotConnected((a.item, b.item))
        return out

    def _search(self, top, pred):
        cand = None
        y = top
        while y is not None:
            _push(y)
            if pred(self.val(y)):
                cand = y
                y = y.l
            else:
                y = y.r
        return cand

    def _edge_at(self, first, cand):
        self._splay(cand)
        if cand is first:
            y = self._leftmost(cand.r)
            self._splay(y)
            return cand, y
        y = self._rightmost(cand.l)
        self._splay(y)
        return y, cand

    def _monotone_pred(self, va, vb, key):
        if va == vb:
            raise KeyOutOfRange(key)
        if va > vb:
            if not (vb <= key <= va):
                raise KeyOutOfRange(key)
            return lambda x: x <= key
        if not (va <= key <= vb):
            raise KeyOutOfRange(key)
        return lambda x: x >= key

    def _check_monotone(self, nodes):
        vals = [self.val(n) for n in nodes]
        inc = all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
        dec = all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))
        if not (inc or dec):
            raise NotMonotone([n.item for n in nodes])

    def path_search_monotone(self, a, b, key):
        """Edge (x, y) of the a..b path, in path order, whose value interval holds ``key``.

        Values must be monotone along the path.  Everts at ``a``.
        """
        self.ops += 1
        if a is b:
            raise KeyOutOfRange(key)
        if self._find_root(a) is not self._find_root(b):
            raise NotConnected((a.item, b.item))
        if self.debug:
            self._check_monotone(self.path(a, b))
        pred = self._monotone_pred(self.val(a), self.val(b), key)
        self._evert(a)
        self._access(b)
        cand = self._search(b, pred)
        return self._edge_at(a, cand)

    def search_to_root(self, x, key):
        """Like path_search_monotone from ``x`` to its root, without everting.

        Returns (lower, upper) where ``lower`` is the node nearer ``x``.
        """
        self.ops += 1
        r = self._find_root(x)
        if r is x:
            raise KeyOutOfRange(key)
        if self.debug:
            nodes = [x]
            while nodes[-1] is not r:
                nodes.append(self._parent(nodes[-1]))
            self._check_monotone(nodes)
        # on the accessed path the root is leftmost and x rightmost
        pred = self._monotone_pred(self.val(r), self.val(x), key)
        self._access(x)
        cand = self._search(x, pred)
        up, low = self._edge_at(r, cand)
        return low, up
