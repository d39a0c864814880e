import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from wplarcs.core import Bridging, InnerPeripheral, OuterPeripheral, Surface


def window_arcs(s: Surface, turns: int = 2):
    """All arcs whose bridging windings / peripheral base points lie within
    the given number of turns around the annulus."""
    arcs = []
    for i in range(s.p):
        for j in range(-turns * s.q, turns * s.q + 1):
            arcs.append(Bridging(s, i, j))
    for a in range(s.p):
        for span in range(2, s.p + 1):
            arcs.append(InnerPeripheral(s, a, a + span))
    for a in range(s.q):
        for span in range(2, s.q + 1):
            arcs.append(OuterPeripheral(s, a, a + span))
    return arcs


def window_curves(s: Surface, turns: int = 2, max_span_turns: int = 2):
    """Arcs plus non-arc peripheral curves with spans up to a few turns."""
    curves = list(window_arcs(s, turns))
    for a in range(s.p):
        for span in range(s.p + 1, max_span_turns * s.p + 1):
            curves.append(InnerPeripheral(s, a, a + span))
    for a in range(s.q):
        for span in range(s.q + 1, max_span_turns * s.q + 1):
            curves.append(OuterPeripheral(s, a, a + span))
    return curves


SMALL_SURFACES = [Surface(1, 1), Surface(1, 2), Surface(2, 2), Surface(2, 3)]
ACCEPT_SURFACES = SMALL_SURFACES + [Surface(3, 3)]
