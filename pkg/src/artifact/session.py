"""Script execution over one kinetic state, shared by the CLI and the service."""
from . import edit, formats, oracle
from .kinetic import KineticState


class Divergence(Exception):
    def __init__(self, report, where):
        self.report = report
        self.where = where
        super().__init__("%s: %s" % (where, report))


class Session:
    """Runs script commands; ``check`` is called with a label whenever a
    verification point is reached (after each command, or each event)."""

    def __init__(self, mesh):
        self.mesh = mesh
        self.state = KineticState(mesh)

    def apply(self, cmd, on_event=None):
        """Execute one command; returns (records, text output or None)."""
        st, op = self.state, cmd[0]
        if op == "chg":
            return st.change_height(cmd[1], cmd[2], on_event=on_event), None
        if op == "ins":
            v, recs = edit.insert_vertex(st, (cmd[1], cmd[2]), cmd[3], on_event=on_event)
            return recs, None
        if op == "del":
            return edit.delete_vertex(st, cmd[1], on_event=on_event), None
        if op == "flip":
            return edit.flip_edge(st, cmd[1], cmd[2], on_event=on_event), None
        if op == "verify":
            rep = self.verify()
            if not rep.ok:
                raise Divergence(rep, "verify")
            return [], "verify ok"
        if op == "dump":
            return [], self.snapshot_text().rstrip("\n")
        raise ValueError("unknown command %r" % (op,))

    def verify(self):
        return oracle.assert_equivalent(self.state)

    def snapshot_text(self):
        return formats.format_snapshot(self.state.snapshot())

    def pairs(self):
        return self.state.pairs()
