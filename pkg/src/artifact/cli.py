"""artifact replay | verify | pairs | stats | gen"""
import argparse
import sys
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor

from . import edit, formats, oracle
from .fuzz import random_script, random_terrain
from .kinetic import CannotMoveInfinity, MultipleSaddleEncountered
from .session import Divergence, Session

EXIT_PARSE, EXIT_DIVERGED, EXIT_MULTISADDLE = 1, 2, 3


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _load(args):
    mesh = formats.parse_terrain(_read(args.terrain))
    script = formats.parse_script(_read(args.script)) if getattr(args, "script", None) else []
    return Session(mesh), script


class _Checker:
    """Runs oracle checks inline, or in a process pool with bounded lookahead."""

    def __init__(self, jobs):
        self.pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
        self.pending = deque()
        self.window = 4 * jobs
        self.count = 0
        self.last = None

    def submit(self, session, where):
        fp = session.state.fingerprint()
        if fp == self.last:
            return  # nothing moved since the previous check
        self.last = fp
        self.count += 1
        got = session.state.snapshot()
        if self.pool is None:
            rep = oracle.check_snapshot(session.mesh, got)
            if not rep.ok:
                raise Divergence(rep, where)
            return
        self.pending.append((where, self.pool.submit(oracle.check_snapshot, session.mesh.copy(), got)))
        while len(self.pending) > self.window:
            self._drain_one()

    def _drain_one(self):
        where, fut = self.pending.popleft()
        rep = fut.result()
        if not rep.ok:
            raise Divergence(rep, where)

    def finish(self):
        try:
            while self.pending:
                self._drain_one()
        finally:
            if self.pool is not None:
                self.pool.shutdown(cancel_futures=True)


def _run(session, script, out, on_event=None, after_command=None):
    for i, cmd in enumerate(script, 1):
        recs, text = session.apply(cmd, on_event)
        if text is not None:
            print(text, file=out)
        if after_command is not None:
            after_command(i, cmd)


def cmd_replay(args, out):
    session, script = _load(args)
    _run(session, script, out, on_event=lambda r: print(r.line(), file=out))
    return 0


def cmd_verify(args, out):
    session, script = _load(args)
    checker = _Checker(args.jobs)
    checker.submit(session, "initial state")
    on_event = None
    if args.per_event:
        def on_event(rec):
            checker.submit(session, "event %d (%s %d %d)" % (rec.seq, rec.kind, rec.v, rec.u))

    def after(i, cmd):
        checker.submit(session, "command %d (%s)" % (i, " ".join(map(str, cmd))))

    try:
        _run(session, script, out, on_event, after)
    finally:
        checker.finish()
    print("ok: %d commands, %d events, %d checks" % (len(script), session.state.seq, checker.count), file=out)
    return 0


def cmd_pairs(args, out):
    session, script = _load(args)
    _run(session, script, out)
    out.write(formats.format_pairs(session.pairs()))
    return 0


def cmd_stats(args, out):
    session, script = _load(args)
    count, ops, rots = Counter(), Counter(), Counter()

    def on_event(rec):
        count[rec.kind] += 1
        ops[rec.kind] += rec.ops
        rots[rec.kind] += rec.rotations

    _run(session, script, out, on_event)
    n = sum(count.values())
    total = sum(ops.values())
    print("n %d" % len(session.mesh.finite()), file=out)
    for k in sorted(count):
        print("kind %s count %d ops %d rotations %d" % (k, count[k], ops[k], rots[k]), file=out)
    print("events %d ops %d rotations %d" % (n, total, sum(rots.values())), file=out)
    print("mean_ops_per_event %.4f" % (total / n if n else 0.0), file=out)
    return 0


def cmd_gen(args, out):
    mesh = random_terrain(args.seed, args.n)
    text = formats.format_terrain(mesh)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        out.write(text)
    if args.ops:
        if not args.script_out:
            raise SystemExit("gen: --ops needs --script-out")
        cmds = random_script(mesh, args.seed + 1000003, args.ops, args.spread)
        with open(args.script_out, "w") as f:
            f.write(formats.format_script(cmds))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="artifact", description="Kinetic contour trees on terrains.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_inputs(name, help, script_required=True):
        q = sub.add_parser(name, help=help)
        q.add_argument("terrain")
        q.add_argument("script", nargs=None if script_required else "?")
        return q

    with_inputs("replay", "run a script and stream the event log").set_defaults(func=cmd_replay)
    q = with_inputs("verify", "check against the static oracle after every command")
    q.add_argument("--per-event", action="store_true", help="also check after every event")
    q.add_argument("--jobs", type=int, default=1, help="oracle checks in K worker processes")
    q.set_defaults(func=cmd_verify)
    with_inputs("pairs", "persistence pairs after an optional script", False).set_defaults(func=cmd_pairs)
    with_inputs("stats", "per-kind event counts and forest operations").set_defaults(func=cmd_stats)
    q = sub.add_parser("gen", help="random terrain (and optionally a random script)")
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("-o", "--output")
    q.add_argument("--ops", type=int, default=0, help="also write this many random chg commands")
    q.add_argument("--script-out")
    q.add_argument("--spread", type=float, default=0.15, help="std. dev. of height changes")
    q.set_defaults(func=cmd_gen)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (formats.ParseError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    except Divergence as e:
        print("divergence at %s\n%s" % (e.where, e.report), file=out)
        return EXIT_DIVERGED
    except MultipleSaddleEncountered as e:
        print("error: multiple saddle when %d crosses %d" % (e.v, e.u), file=sys.stderr)
        return EXIT_MULTISADDLE
    except (edit.EditError, CannotMoveInfinity, KeyError, ValueError) as e:
        print("error: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
