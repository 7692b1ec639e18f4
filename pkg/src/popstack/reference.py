"""Published values used by ``popstack verify``.

Polynomials are ascending coefficient lists with ``den(0) = -1``.
"""

GENERATING_FUNCTIONS = {
    1: ([-1, 1], [-1, 2]),
    2: ([-1, 1, 1, 1], [-1, 2, 1, 2]),
    3: (
        [-1, 1, 2, 6, 6, 8, 11, 5, 2, 4, 2],
        [-1, 2, 2, 6, 8, 16, 22, 10, 4, 8, 4],
    ),
    4: (
        [-1, 1, 3, 13, 33, 99, 185, 263, 544, 806, 502, 188, 238, 252, 696,
         1156, 540, -180, 104, 1080, 1948, 2028, 1784, 1184, 448, 64],
        [-1, 2, 3, 12, 27, 102, 210, 382, 869, 1238, 686, -138, -760, -1104,
         -576, -352, -1580, -2664, -2304, 176, 3064, 3928, 3568, 2368, 896, 128],
    ),
}

DEGREES = {1: 1, 2: 3, 3: 10, 4: 25, 5: 71, 6: 213}

GROWTH_RATES = {
    1: 2.0000, 2: 2.6590, 3: 3.4465, 4: 4.2706, 5: 5.1166, 6: 5.9669,
}
GROWTH_TOLERANCE = 5e-4

DFA_VERTICES = {1: 4, 2: 5, 3: 12, 4: 32, 5: 99, 6: 339}
DFA_EDGES = {1: 8, 2: 11, 3: 34, 4: 120, 5: 477, 6: 2010}
