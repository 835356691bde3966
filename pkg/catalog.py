"""
Catalog of known objects: explicit systems, rulers, packings, net seeds and tables.

Everything here is data. The constructors, verifiers and tests read their
reference values from this module so there is a single copy of each object.
"""
from typing import Dict, List, Optional, Tuple

INF = "inf"  # the slope of vertical lines

# --- Z_41: three mutually orthogonal (20,4) Heffter systems ------------------

Z41_ORDER = 41
Z41_HALFSET = (1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 15, 19, 21, 23, 24, 25, 27, 29, 33)
Z41_SYSTEMS = {
    'P1': ((1, 3, 4, 33), (2, 5, 13, 21), (6, 23, 24, 29), (7, 9, 10, 15), (11, 19, 25, 27)),
    'P2': ((1, 2, 9, 29), (3, 6, 13, 19), (4, 5, 7, 25), (10, 21, 24, 27), (11, 15, 23, 33)),
    'P3': ((1, 6, 7, 27), (2, 4, 11, 24), (3, 5, 10, 23), (9, 19, 21, 33), (13, 15, 25, 29)),
}
_ = None
Z41_ARRAYS = {
    ('P1', 'P2'): [[1, 3, 4, _, 33], [2, 13, 5, 21, _], [29, 6, _, 24, 23], [9, _, 7, 10, 15], [_, 19, 25, 27, 11]],
    ('P1', 'P3'): [[1, 4, 3, 33, _], [_, 2, 5, 21, 13], [6, 24, 23, _, 29], [7, _, 10, 9, 15], [27, 11, _, 19, 25]],
    ('P2', 'P3'): [[1, 2, _, 9, 29], [6, _, 3, 19, 13], [7, 4, 5, _, 25], [27, 24, 10, 21, _], [_, 11, 23, 33, 15]],
}
del _

# --- Z_71: the (35,5;5) configuration developed from one ruler ----------------

F71_Q = 71
F71_RULER = (1, 25, 49, 43, 24)
F71_RHO = 49  # generator of the squares that reproduces the printed tables
F71_BASE_BLOCK = (1, 24, 25, 43, 49)  # the ruler in the order the tables develop it
F71_CLASSES = {
    'P1': ((1, 24, 25, 43, 49), (45, 15, 60, 18, 4), (37, 36, 2, 29, 38), (32, 58, 19, 27, 6),
           (20, 54, 3, 8, 57), (48, 16, 64, 5, 9), (30, 10, 40, 12, 50)),
    'P2': ((49, 40, 18, 48, 58), (4, 25, 29, 30, 54), (38, 60, 27, 1, 16), (6, 2, 8, 45, 10),
           (57, 19, 5, 37, 24), (9, 3, 12, 32, 15), (50, 64, 43, 20, 36)),
    'P3': ((58, 43, 30, 9, 2), (54, 18, 1, 50, 19), (16, 29, 45, 49, 3), (10, 27, 37, 4, 64),
           (24, 8, 32, 38, 40), (15, 5, 20, 6, 25), (36, 12, 48, 57, 60)),
    'P4': ((2, 48, 50, 15, 27), (19, 30, 49, 36, 8), (3, 1, 4, 58, 5), (64, 45, 38, 54, 12),
           (40, 37, 6, 16, 43), (25, 32, 57, 10, 18), (60, 20, 9, 24, 29)),
    'P5': ((27, 9, 36, 25, 45), (8, 50, 58, 60, 37), (5, 49, 54, 2, 32), (12, 4, 16, 19, 20),
           (43, 38, 10, 3, 48), (18, 6, 24, 64, 30), (29, 57, 15, 40, 1)),
}
F71_COSETS = ((1, 45, 37, 32, 20, 48, 30), (49, 4, 38, 6, 57, 9, 50), (58, 54, 16, 10, 24, 15, 36),
              (2, 19, 3, 64, 40, 25, 60), (27, 8, 5, 12, 43, 18, 29))
# Partial-sum cycles of the first three classes. The fourth and fifth are derived, not tabulated.
F71_CYCLES = {
    'P1': ((1, 25, 50, 22, 0), (45, 60, 49, 67, 0), (37, 2, 4, 33, 0), (32, 19, 38, 65, 0),
           (20, 3, 6, 14, 0), (48, 64, 57, 62, 0), (30, 40, 9, 21, 0)),
    'P2': ((49, 18, 36, 13, 0), (4, 29, 58, 17, 0), (38, 27, 54, 55, 0), (6, 8, 16, 61, 0),
           (57, 5, 10, 47, 0), (9, 12, 24, 56, 0), (50, 43, 15, 35, 0)),
    'P3': ((58, 30, 60, 69, 0), (54, 1, 2, 52, 0), (16, 45, 19, 68, 0), (10, 37, 3, 7, 0),
           (24, 32, 64, 31, 0), (15, 20, 40, 46, 0), (36, 48, 25, 11, 0)),
}

# --- Heffter rulers of the q_min table --------------------------------------

RULER_TABLE = [
    # k, q, ruler, density of the configuration, density after coset extension (as printed)
    {'k': 3, 'q': 67, 'ruler': (1, 10, 56), 'density': "0.1875", 'extended': "0.5"},
    {'k': 5, 'q': 71, 'ruler': (1, 25, 49, 43, 24), 'density': "0.5882", 'extended': "0.7647"},
    {'k': 7, 'q': 211, 'ruler': (1, 4, 82, 64, 154, 59, 58), 'density': "0.4038", 'extended': "0.5384"},
    {'k': 9, 'q': 271, 'ruler': (1, 36, 110, 44, 179, 56, 224, 156, 7), 'density': "0.5373", 'extended': "0.6417"},
    {'k': 11, 'q': 419, 'ruler': (1, 4, 148, 64, 388, 45, 226, 363, 48, 73, 316),
     'density': "0.5288", 'extended': "0.6153"},
    {'k': 13, 'q': 599, 'ruler': (1, 49, 515, 245, 181, 526, 117, 34, 332, 432, 130, 424, 9),
     'density': "0.5217", 'extended': "0.5973"},
]
# The printed 0.5217 for k=13 equals 156/299; the configuration density is 156/298.
RULER_TABLE_MISPRINTS = {(13, 'density')}

# --- inequivalent (F_q^squares, 3) Heffter rulers, q < 500 -------------------

INEQUIVALENT_K3 = {
    19: 0, 31: 0, 43: 0, 67: 1, 79: 0, 103: 0, 127: 1, 139: 1, 151: 2, 163: 2,
    199: 3, 211: 3, 223: 2, 271: 3, 283: 2, 307: 3, 331: 1, 367: 2, 379: 2,
}

# --- F_151 ------------------------------------------------------------------

F151_Q = 151
F151_K = 5
F151_INEQUIVALENT = 26
F151_PACKING = ((1, 36, 58, 110, 97), (1, 78, 22, 139, 62))

# --- nets from roots of unity -------------------------------------------------

NET163_ALPHA = (0, 1, 20, 93, 130, 14, 42, 7, 98)  # Y = 2^alpha, alpha_i = i (mod 9)
NET163_MATRIX = (
    (1, 2, 160, 142, 119, 84, 36, 128, 143),
    (40, 80, 43, 138, 33, 100, 136, 67, 15),
    (133, 103, 90, 141, 16, 88, 61, 72, 111),
    (104, 45, 14, 98, 151, 97, 158, 109, 39),
    (85, 7, 71, 8, 9, 131, 126, 122, 93),
    (140, 117, 69, 157, 34, 24, 150, 153, 134),
    (58, 116, 152, 86, 56, 145, 132, 89, 144),
    (38, 76, 49, 17, 121, 95, 64, 137, 55),
    (53, 106, 4, 28, 113, 51, 115, 101, 81),
)

# q: (generator of Z_q^*, x, number of leading powers of the generator in Y, remaining entries of Y)
_NET_SEEDS = {
    163: (2, 40, 0, (1, 2, 160, 142, 119, 84, 36, 128, 143)),
    883: (2, 729, 14, (490, 97, 60, 72, 483, 680, 278)),
    1459: (3, 1080, 20, (546, 597, 652, 1307, 1386, 467, 1338)),
}


def net_seed_data(q: int) -> Tuple[int, int, Tuple[int, ...]]:
    """
    Known (generator, x, Y) for the nets of order 9n^2 at q = 163, 883, 1459

    Args:
        q: Field order

    Returns:
        (generator, x, Y) with Y as residues mod q
    """
    if q not in _NET_SEEDS:
        raise KeyError(f"no catalogued net seed for q={q}")
    generator, x, leading, tail = _NET_SEEDS[q]
    Y = tuple(pow(generator, i, q) for i in range(leading)) + tail
    return generator, x, Y


def net_seed_orders() -> List[int]:
    return sorted(_NET_SEEDS)


# --- the (121,11;9) net over GF(3^5) -----------------------------------------

AG211_P = 3
AG211_N = 5
AG211_MODULUS = (1, 0, 0, 0, 2, 1)  # z^5 + 2z^4 + 1, constant term first
AG211_GENERATOR = 3                # the class of z
AG211_X_EXPONENT = 22
AG211_Y_EXPONENTS = (0, 1, 18, 3, 81, 27, 54, 162, 6, 9, 2)
AG211_Y_RESIDUES = (0, 1, 7, 3, 4, 5, 10, 8, 6, 9, 2)
AG211_SLOPES = (0, 1, 2, 3, 5, 7, 9, 10, INF)
AG211_CORNERS = {(0, 0): "10000", (0, 1): "01000", (0, 10): "00100", (1, 0): "12200"}


# --- Steiner triple systems ---------------------------------------------------

STS_ORDERS = (7, 9, 13, 15, 19, 21)
STS9_COUNT = 840


def lookup_ruler_row(k: int) -> Optional[Dict]:
    for row in RULER_TABLE:
        if row['k'] == k:
            return row
    return None
