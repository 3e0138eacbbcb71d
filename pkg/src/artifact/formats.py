"""Text formats: terrains, scripts, snapshots, pairs and event logs.

Terrain::

    terrain <n_vertices> <n_triangles>
    v <id> <x> <y> <z>
    t <a> <b> <c>            (counter-clockwise)

Script, one command per line::

    chg <v> <r> | ins <x> <y> <r> | del <v> | flip <u1> <u2> | verify | dump

Blank lines and ``#`` comments are ignored everywhere.
"""
from .mesh import MeshError, build_mesh


class ParseError(Exception):
    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        super().__init__(msg if lineno is None else "line %d: %s" % (lineno, msg))


def _lines(text):
    for i, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def _num(tok, kind, lineno):
    try:
        return kind(tok)
    except ValueError:
        raise ParseError("bad number %r" % tok, lineno) from None


def parse_terrain(text):
    verts, tris, header = [], [], None
    for i, tok in _lines(text):
        if tok[0] == "terrain" and len(tok) == 3 and header is None:
            header = (_num(tok[1], int, i), _num(tok[2], int, i))
        elif tok[0] == "v" and len(tok) == 5:
            verts.append((_num(tok[1], int, i),) + tuple(_num(x, float, i) for x in tok[2:]))
        elif tok[0] == "t" and len(tok) == 4:
            tris.append(tuple(_num(x, int, i) for x in tok[1:]))
        else:
            raise ParseError("unexpected %r" % " ".join(tok), i)
    if header is None:
        raise ParseError("missing terrain header")
    if header != (len(verts), len(tris)):
        raise ParseError("header says %d vertices, %d triangles; found %d, %d"
                         % (header + (len(verts), len(tris))))
    if any(v[0] <= 0 for v in verts):
        raise ParseError("vertex ids must be positive (0 is v_infinity)")
    try:
        return build_mesh(verts, tris)
    except MeshError as e:
        raise ParseError("invalid terrain: %s" % e) from None


def format_terrain(mesh):
    tris = sorted(tuple(_ccw(t)) for t in mesh.finite_triangles())
    out = ["terrain %d %d" % (len(mesh.finite()), len(tris))]
    for v in sorted(mesh.finite()):
        x, y = mesh.pos[v]
        out.append("v %d %r %r %r" % (v, x, y, mesh.h[v]))
    out += ["t %d %d %d" % t for t in tris]
    return "\n".join(out) + "\n"


def _ccw(t):
    # finite_triangles gives clockwise triples; rotate to start at the smallest id
    a, b, c = t[0], t[2], t[1]
    i = (a, b, c).index(min(a, b, c))
    return (a, b, c)[i:] + (a, b, c)[:i]


_ARITY = {"chg": (int, float), "ins": (float, float, float), "del": (int,),
          "flip": (int, int), "verify": (), "dump": ()}


def parse_script(text):
    out = []
    for i, tok in _lines(text):
        kinds = _ARITY.get(tok[0])
        if kinds is None or len(tok) - 1 != len(kinds):
            raise ParseError("bad command %r" % " ".join(tok), i)
        out.append((tok[0],) + tuple(_num(x, k, i) for x, k in zip(tok[1:], kinds)))
    return out


def format_script(cmds):
    return "".join(" ".join(str(x) for x in c) + "\n" for c in cmds)


def node_label(cls, color=None):
    return cls if color is None else "%s:%s" % (cls, color)


def format_snapshot(snap, colors=None):
    """``ct`` header, then nodes and edges sorted by id.

    Saddle classes carry their color (``pos:red``); ``colors`` maps saddle
    to color and defaults to the color of its single down/up edge.
    """
    colors = colors if colors is not None else saddle_colors(snap)
    out = ["ct %d" % len(snap.nodes)]
    for a in sorted(snap.nodes):
        out.append("n %d %s" % (a, node_label(snap.nodes[a], colors.get(a))))
    for (a, b), c in sorted(((min(e), max(e)), c) for e, c in snap.edges.items()):
        out.append("e %d %d %s" % (a, b, c))
    return "\n".join(out) + "\n"


def saddle_colors(snap):
    """Color of the lone lower edge of a positive saddle, lone upper edge of a negative one."""
    low, high = {}, {}
    for (a, b), c in snap.edges.items():
        # edges are stored (lower, upper)
        high.setdefault(a, []).append(c)
        low.setdefault(b, []).append(c)
    out = {}
    for a, cls in snap.nodes.items():
        if cls == "pos" and len(low.get(a, ())) == 1:
            out[a] = low[a][0]
        elif cls == "neg" and len(high.get(a, ())) == 1:
            out[a] = high[a][0]
    return out


def format_pairs(pairs):
    return "".join("p %d %d %r\n" % (c, d, v) for c, d, v in pairs)


def format_events(records):
    return "".join(r.line() + "\n" for r in records)
