"""Directed event fixtures on seeded random terrains.

Each entry: subcase label -> (n, seed, prefix, v, r).  The terrain is
``random_terrain(seed, n)``; when ``prefix`` is set, that many commands of the
generator's default script are replayed first.  Moving v to r then produces
at least one event classified as the label.
"""
from artifact.fuzz import random_script, random_terrain
from artifact.kinetic import KineticState
from eventcheck import run_checked

FIXTURES = {
    # neighbor crossings: (i) shift, (ii) birth, (iii) death, plus no-ops
    "Crossing": (6, 1, 0, 5, 0.665433),
    "Auxiliary": (6, 0, 0, 6, 0.37316),
    "Shift min/None/None/min": (6, 5, 0, 4, 0.48754),
    "Shift None/max/max/None": (6, 9, 0, 2, 0.913498),
    "Shift neg/None/None/neg": (6, 3, 0, 5, 0.178802),
    "Shift pos/None/None/pos": (6, 38, 0, 6, 0.441808),
    "Shift None/neg/neg/None": (7, 25, 0, 3, 0.512098),
    "Shift None/pos/pos/None": (6, 12, 0, 1, 0.289823),
    "Birth None/None/neg/min": (6, 3, 0, 4, 0.530813),
    "Birth None/None/max/pos": (6, 3, 0, 2, 0.133244),
    "Death min/neg/None/None": (6, 16, 0, 6, 0.351856),
    "Death pos/max/None/None": (6, 12, 0, 3, 0.784328),
    # mixed interchanges, the canonical case and its reductions
    "SignInterchange canonical": (8, 15, 0, 3, 0.316497),
    "SignInterchange neg<pos red": (8, 2, 0, 4, 0.399896),
    "BlueInterchange canonical": (13, 5, 0, 6, 0.379625),
    "BlueInterchange neg<pos red": (13, 14, 0, 1, 0.597179),
    "BlueInterchange pos<neg blue": (8, 51, 0, 1, 0.336653),
    "BlueInterchange pos<neg red": (14, 55, 0, 4, 0.515857),
    "RedInterchange canonical": (30, 64, 0, 15, 0.176429),
    "RedInterchange neg<pos red": (15, 36, 0, 8, 0.513504),
    "RedInterchange pos<neg blue": (30, 40, 0, 1, 0.996333),
    "RedInterchange pos<neg red": (30, 110, 0, 25, 0.091972),
    # same-sign interchanges, rows (a) to (c)
    "NegativeInterchange (a)": (40, 56, 0, 17, 0.221973),
    "NegativeInterchange (b)": (15, 19, 0, 12, 0.39438),
    "NegativeInterchange (c)": (11, 30, 0, 11, 0.660185),
    "NegativeInterchange reduced": (9, 2, 0, 1, 0.264931),
    "PositiveInterchange (a)": (13, 16, 0, 2, 0.582023),
    "PositiveInterchange reduced": (8, 26, 0, 6, 0.880593),
    # merge-tree only events
    "MinimaCrossing": (9, 2, 0, 4, 0.26335),
    "MaximaCrossing": (6, 1, 0, 1, 0.982508),
    "JoinRotation": (50, 2, 73, 41, 0.735104),
    "SplitRotation": (50, 24, 94, 2, 0.141411),
}


def prepared(label):
    n, seed, prefix, v, r = FIXTURES[label]
    m = random_terrain(seed, n)
    st = KineticState(m)
    if prefix:
        for _, u, h in random_script(m, seed + 1000003, 100)[:prefix]:
            st.change_height(u, h)
    return st, v, r


def replay(label, oracle_check=None):
    """[(record, subcase, problems)] for the fixture's move."""
    st, v, r = prepared(label)
    return run_checked(st, v, r, oracle_check)
