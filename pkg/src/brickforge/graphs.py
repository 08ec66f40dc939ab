"""Named example graphs with their distinguished edges."""

from __future__ import annotations

from .errors import UnknownName
from .graphcore import Multigraph, build

# vertex order and edge lists; edge ids follow list order
_K4 = (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], {})

_PRISM = (6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)], {})

_PETERSEN = (10, [(i, (i + 1) % 5) for i in range(5)]
             + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
             + [(i, i + 5) for i in range(5)], {})

# two triangles L0L1L2 and R0R1R2 joined by L0R0 and by the paths L1-M-R1, L2-T-R2,
# plus the middle edge MT; vertices L0 L1 L2 R0 R1 R2 M T = 0..7
_ST8 = (8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
            (0, 3), (1, 6), (6, 4), (2, 7), (7, 5), (6, 7)],
        {"alpha": 0, "f": 1, "alpha'": 2, "beta'": 3, "beta": 5, "e": 11})

# path p0 p1 p2 p3 | p5 p6 p7 p8 closed by the arc p0p8, hubs Top and Bot;
# vertices p0 p1 p2 p3 p5 p6 p7 p8 Top Bot = 0..9
_FIG2 = (10, [(0, 7), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
              (0, 8), (2, 8), (5, 8), (7, 8), (1, 9), (3, 9), (4, 9), (6, 9)],
         {"beta": 0, "alpha": 4, "e": 8})

# q2 q4 q5 q6 q7 q8 q9 q11 top bot = 0..9
_FIG3 = (10, [(0, 7), (0, 1), (6, 7), (8, 0), (9, 7), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
              (1, 8), (3, 8), (5, 8), (2, 9), (4, 9), (6, 9)],
         {"alpha": 1, "beta": 2, "alpha'": 3, "beta'": 4, "e": 10, "f": 15})

_TABLE = {
    "k4": _K4,
    "c6bar": _PRISM,
    "petersen": _PETERSEN,
    "st8": _ST8,
    "fig2_brick": _FIG2,
    "fig3_pseudo_biwheel": _FIG3,
}

BUILTIN_NAMES = tuple(_TABLE)


def builtin(name: str) -> Multigraph:
    """Graph by name; named edges are in ``annotations["names"]``."""
    try:
        n, pairs, names = _TABLE[name.lower()]
    except KeyError:
        raise UnknownName(f"unknown graph {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    return build(n, pairs).with_annotations(names=dict(names), name=name.lower())


def named_edge(G: Multigraph, label: str) -> int:
    return G.annotations["names"][label]


def named_doubletons(G: Multigraph) -> dict[str, tuple[int, int]]:
    """``{"R": (alpha, beta), "R'": (alpha', beta')}`` for whichever pairs are named."""
    names = G.annotations.get("names", {})
    out = {}
    if "alpha" in names and "beta" in names:
        out["R"] = (names["alpha"], names["beta"])
    if "alpha'" in names and "beta'" in names:
        out["R'"] = (names["alpha'"], names["beta'"])
    return out
