"""Before/after checks of single events against the case analysis.

``View`` freezes the contour tree; ``classify`` names the subcase of one
event record and ``violations`` lists every way the transition departs from
what the case analysis prescribes for that subcase.
"""
from artifact.mesh import INF


class View:
    def __init__(self, state):
        T, m = state.T, state.mesh
        self.key = {a: m.key(a) for a in T.node}
        self.adj = {a: set(nb) for a, nb in T.adj.items()}
        snap = state.snapshot()
        self.cls = dict(snap.nodes)
        self.color = {frozenset(e): c for e, c in snap.edges.items()}
        self.jpar = dict(snap.jparent)
        self.spar = dict(snap.sparent)

    def fk(self, a, s):
        k = self.key[a]
        return k if s > 0 else tuple(-x for x in k)

    def up(self, a, s=1):
        return {b for b in self.adj[a] if self.fk(b, s) > self.fk(a, s)}

    def down(self, a, s=1):
        return {b for b in self.adj[a] if self.fk(b, s) < self.fk(a, s)}

    def col(self, a, b):
        return self.color[frozenset((a, b))]

    def fcls(self, a, s):
        """Class read in frame s (a lowered world swaps min/max and pos/neg)."""
        c = self.cls.get(a)
        if s > 0 or c is None:
            return c
        return {"min": "max", "max": "min", "pos": "neg", "neg": "pos"}[c]

    def saddle_color(self, a):
        c = self.cls[a]
        (x,) = self.down(a) if c == "pos" else self.up(a)
        return self.col(a, x)

    def shape(self):
        return {a: frozenset(nb) for a, nb in self.adj.items()}


def _swap(view, x, y):
    sw = {x: y, y: x}
    return {sw.get(a, a): frozenset(sw.get(b, b) for b in nb) for a, nb in view.adj.items()}


def _flip(c, s):
    # colors are absolute; the canonical statements read them in frame s
    return c if s > 0 else {"red": "blue", "blue": "red"}[c]


def classify(before, after, rec, s):
    v, u = rec.v, rec.u
    k = rec.kind
    if k in ("Crossing", "Auxiliary"):
        return k
    if k in ("Shift", "Birth", "Death"):
        pat = (before.fcls(v, s), before.fcls(u, s), after.fcls(v, s), after.fcls(u, s))
        return "%s %s" % (k, "/".join(str(x) for x in pat))
    if k in ("SignInterchange", "BlueInterchange", "RedInterchange"):
        sv, su = before.fcls(v, s), before.fcls(u, s)
        canon = sv == "neg" and su == "pos" and _flip(before.col(v, u), s) == "blue"
        return "%s %s" % (k, "canonical" if canon else "%s<%s %s" % (
            sv, su, _flip(before.col(v, u), s)))
    if k in ("NegativeInterchange", "PositiveInterchange"):
        if before.fcls(v, s) != "neg":
            return "%s reduced" % k
        b = u
        if _flip(before.saddle_color(b), s) == "blue":
            return "%s (a)" % k
        a = v
        moved = before.down(a, s) & after.down(b, s)
        if len(moved) != 1:
            return "%s ?" % k
        (adb,) = moved
        if _flip(before.col(a, b), s) == "red" and _flip(before.saddle_color(a), s) == "red":
            return "%s (b)" % k if _flip(before.col(adb, a), s) == "red" else "%s (c)" % k
        return "%s other" % k
    return k


def violations(before, after, rec, s):
    """Departures from the prescribed outcome for this record's subcase."""
    v, u = rec.v, rec.u
    k = rec.kind
    out = []
    sub = classify(before, after, rec, s)

    def want(cond, msg):
        if not cond:
            out.append("%s: %s" % (sub, msg))

    if k in ("Crossing", "Auxiliary", "MinimaCrossing", "MaximaCrossing",
             "JoinRotation", "SplitRotation"):
        want(after.shape() == before.shape(), "contour tree changed")
        want(after.cls == before.cls, "classes changed")
        want(after.color == before.color, "colors changed")
        if k in ("MinimaCrossing", "MaximaCrossing"):
            want(after.jpar == before.jpar and after.spar == before.spar, "merge trees changed")
        if k == "JoinRotation":
            want(after.jpar != before.jpar, "join tree did not rotate")
        if k == "SplitRotation":
            want(after.spar != before.spar, "split tree did not rotate")
    elif k == "Shift":
        old, new = (v, u) if v in before.adj else (u, v)
        want(old not in after.adj and new in after.adj, "label did not move")
        want(_swap(before, old, new) == after.shape(), "shape changed")
        want(after.cls[new] == before.cls[old], "class changed")
    elif k == "Birth":
        (cv, cu) = after.fcls(v, s), after.fcls(u, s)
        saddle, leaf = (v, u) if cv in ("pos", "neg") else (u, v)
        want(saddle not in before.adj and leaf not in before.adj, "nodes already present")
        want(after.adj.get(leaf) == {saddle}, "new leaf not hung off the new saddle")
        (a, b) = sorted(after.adj[saddle] - {leaf}, key=lambda x: after.key[x])
        want(b in before.adj.get(a, ()), "saddle not placed on an existing edge")
        want(before.key[a] < after.key[saddle] < before.key[b], "saddle outside its edge")
        if s > 0:
            # (i) v saddle, u new minimum; (ii) v new maximum, u the saddle
            want((cv, cu) in (("neg", "min"), ("max", "pos")), "unexpected birth pair %s" % ((cv, cu),))
    elif k == "Death":
        gone = {v, u}
        want(not (gone & set(after.adj)), "nodes survived")
        leaf = v if before.adj.get(v) and len(before.adj[v]) == 1 else u
        saddle = u if leaf == v else v
        (a, b) = sorted(before.adj[saddle] - {leaf})
        want(b in after.adj.get(a, ()), "the two remaining edges did not merge")
    elif k == "SignInterchange":
        want(after.shape() == _swap(before, v, u), "topology changed beyond the label swap")
        want(after.cls[v] == before.cls[u] and after.cls[u] == before.cls[v], "signs did not exchange")
    elif k in ("BlueInterchange", "RedInterchange"):
        want(after.cls[v] == before.cls[v] and after.cls[u] == before.cls[u], "signs changed")
        if sub.endswith("canonical"):
            a, b = v, u  # a negative below b positive, edge blue, a rising
            ok = False
            for adb in before.down(a, s):
                (ada,) = before.down(a, s) - {adb}
                for bub in before.up(b, s):
                    (bua,) = before.up(b, s) - {bub}
                    if (after.down(b, s) == {adb} and after.up(b, s) == {a, bub}
                            and after.down(a, s) == {ada, b} and after.up(a, s) == {bua}):
                        ok = True
            want(ok, "neighbors not rewired as prescribed")
            if k == "BlueInterchange":
                want(_flip(after.col(a, b), s) == "blue", "edge did not stay blue")
            else:
                want(_flip(after.col(a, b), s) == "red", "edge did not turn red")
                want(_flip(after.saddle_color(a), s) == "red", "lower saddle did not turn red")
                want(_flip(after.saddle_color(b), s) == "blue", "positive saddle not blue")
    elif k in ("NegativeInterchange", "PositiveInterchange"):
        if not sub.endswith("reduced"):
            a, b = v, u
            moved = before.down(a, s) & after.down(b, s)
            want(len(moved) == 1, "no single down subtree moved")
            if len(moved) == 1:
                (adb,) = moved
                (ada,) = before.down(a, s) - {adb}
                (bua,) = before.down(b, s) - {a}
                want(after.down(b, s) == {adb, bua}, "down neighbors of the upper saddle wrong")
                want(after.down(a, s) == {ada, b}, "down neighbors of the lower saddle wrong")
                want(after.up(b, s) == {a}, "the saddles did not swap order")
            if sub.endswith("(a)"):
                want(after.saddle_color(a) == before.saddle_color(a) == after.saddle_color(b),
                     "blue saddles did not stay blue")
            elif sub.endswith("(b)"):
                want(_flip(after.saddle_color(a), s) == "red" and _flip(after.saddle_color(b), s) == "red",
                     "red saddles did not stay red")
            elif sub.endswith("(c)"):
                want(_flip(after.saddle_color(a), s) == "red", "alpha did not stay red")
                want(_flip(after.saddle_color(b), s) == "blue", "beta did not turn blue")
        want(after.cls[v] == before.cls[v] and after.cls[u] == before.cls[u], "signs changed")
    return out


def run_checked(state, v, r, oracle_check=None, tie=None):
    """change_height with every event checked; returns [(record, subcase, problems)]."""
    s = 1 if (r, v if tie is None else tie, 0) > state.mesh.key(v) else -1
    prev = [View(state)]
    out = []

    def on_event(rec):
        cur = View(state)
        probs = violations(prev[0], cur, rec, s)
        if oracle_check is not None:
            rep = oracle_check(state)
            if not rep.ok:
                probs.append("oracle: %s" % rep)
        out.append((rec, classify(prev[0], cur, rec, s), probs))
        prev[0] = cur

    state.change_height(v, r, tie, on_event=on_event)
    return out


__all__ = ["View", "classify", "violations", "run_checked", "INF"]
