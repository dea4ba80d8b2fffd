"""Published degeneration table for 2 <= m <= 12 and the systems where it fails.

Each row is ``(d, n, m, v, pair)`` with ``pair = (a, b)`` or ``None`` for a
failed search.  Three entries are stored corrected: the pair printed as
"19,7)" is ``(19, 7)``; the row printed with d = 13 for ``L(d;16,3)`` has
v = -6, which only fits d = 12; the failed row ``L(28;10,9)`` is printed
with v = -19 where the formula (and the list of exceptions) gives -16.
"""

from __future__ import annotations

MIDDLE_RANGE_ROWS: tuple[tuple[int, int, int, int, tuple[int, int] | None], ...] = (
    (7, 12, 2, -1, (4, 8)),
    (8, 15, 2, -1, (5, 9)),
    (9, 18, 2, 0, (6, 9)),
    (9, 19, 2, -3, (6, 12)),
    (10, 11, 3, -1, (6, 7)),
    (11, 13, 3, -1, (7, 7)),
    (12, 15, 3, 0, (8, 8)),
    (12, 16, 3, -6, (9, 8)),
    (13, 10, 4, 4, (7, 7)),
    (13, 11, 4, -6, (7, 7)),
    (14, 12, 4, -1, (8, 8)),
    (15, 13, 4, 5, (9, 9)),
    (15, 14, 4, -5, (10, 7)),
    (16, 15, 4, 2, (11, 8)),
    (16, 16, 4, -8, (11, 9)),
    (17, 17, 4, 0, (11, 10)),
    (17, 18, 4, -10, (11, 11)),
    (16, 10, 5, 2, (9, 7)),
    (16, 11, 5, -13, (9, 7)),
    (17, 11, 5, 5, (11, 7)),
    (17, 12, 5, -10, (10, 8)),
    (18, 12, 5, 9, (11, 8)),
    (18, 13, 5, -6, (12, 7)),
    (19, 14, 5, -1, (14, 7)),
    (20, 15, 5, 5, (14, 7)),
    (20, 16, 5, -10, (14, 9)),
    (19, 10, 6, -1, None),
    (20, 11, 6, -1, (12, 7)),
    (21, 12, 6, 0, (16, 5)),
    (21, 13, 6, -21, (12, 9)),
    (22, 13, 6, 2, (15, 7)),
    (22, 14, 6, -19, (15, 7)),
    (23, 14, 6, 5, (16, 7)),
    (23, 15, 6, -16, (16, 8)),
    (24, 15, 6, 9, (16, 8)),
    (24, 16, 6, -12, (16, 9)),
    (22, 9, 7, 23, (16, 5)),
    (22, 10, 7, -5, None),
    (23, 10, 7, 19, (17, 5)),
    (23, 11, 7, -9, (17, 5)),
    (24, 11, 7, 16, (18, 5)),
    (24, 12, 7, -12, (19, 5)),
    (25, 12, 7, 14, (19, 5)),
    (25, 13, 7, -14, (19, 6)),
    (26, 13, 7, 13, (18, 7)),
    (26, 14, 7, -15, (18, 7)),
    (27, 14, 7, 13, (19, 7)),
    (27, 15, 7, -15, (19, 7)),
    (28, 15, 7, 14, (19, 8)),
    (28, 16, 7, -14, (19, 9)),
    (25, 9, 8, 26, (18, 5)),
    (25, 10, 8, -10, None),
    (26, 10, 8, 17, (15, 7)),
    (26, 11, 8, -19, (19, 5)),
    (27, 11, 8, 9, (20, 5)),
    (27, 12, 8, -27, (16, 8)),
    (28, 12, 8, 2, (16, 8)),
    (28, 13, 8, -34, (15, 9)),
    (29, 12, 8, 32, (20, 6)),
    (29, 13, 8, -4, (20, 7)),
    (30, 13, 8, 27, (21, 6)),
    (30, 14, 8, -9, (21, 7)),
    (31, 14, 8, 23, (22, 7)),
    (31, 15, 8, -13, (20, 9)),
    (32, 15, 8, 20, (21, 9)),
    (32, 16, 8, -16, (21, 9)),
    (28, 9, 9, 29, (20, 5)),
    (28, 10, 9, -16, None),
    (29, 10, 9, 14, None),
    (29, 11, 9, -31, (21, 5)),
    (30, 11, 9, 0, (18, 7)),
    (30, 12, 9, -45, (17, 8)),
    (31, 11, 9, 32, (20, 7)),
    (31, 12, 9, -13, (18, 8)),
    (32, 12, 9, 20, (24, 5)),
    (32, 13, 9, -25, (18, 9)),
    (33, 13, 9, 9, (22, 7)),
    (33, 14, 9, -36, (22, 8)),
    (34, 14, 9, -1, (24, 7)),
    (35, 14, 9, 35, (26, 6)),
    (35, 15, 9, -10, (25, 7)),
    (36, 15, 9, 27, (24, 8)),
    (36, 16, 9, -18, (24, 9)),
    (31, 9, 10, 32, (21, 5)),
    (31, 10, 10, -23, None),
    (32, 10, 10, 10, None),
    (32, 11, 10, -45, (19, 7)),
    (33, 10, 10, 44, (19, 7)),
    (33, 11, 10, -11, (20, 7)),
    (34, 11, 10, 24, (21, 7)),
    (34, 12, 10, -31, (19, 8)),
    (35, 12, 10, 5, (20, 8)),
    (35, 13, 10, -50, (19, 9)),
    (36, 12, 10, 42, (27, 5)),
    (36, 13, 10, -13, (24, 7)),
    (37, 13, 10, 25, (25, 7)),
    (37, 14, 10, -30, (26, 7)),
    (38, 14, 10, 9, (27, 7)),
    (38, 15, 10, -46, (24, 9)),
    (39, 14, 10, 49, (28, 7)),
    (39, 15, 10, -6, (28, 7)),
    (40, 15, 10, 35, (27, 8)),
    (40, 16, 10, -20, (27, 9)),
    (34, 9, 11, 35, (23, 5)),
    (34, 10, 11, -31, None),
    (35, 10, 11, 5, None),
    (35, 11, 11, -61, (22, 7)),
    (36, 10, 11, 42, (21, 7)),
    (36, 11, 11, -24, (22, 7)),
    (37, 11, 11, 14, (23, 7)),
    (37, 12, 11, -52, (27, 6)),
    (38, 11, 11, 53, (27, 5)),
    (38, 12, 11, -13, (22, 8)),
    (39, 12, 11, 27, (23, 8)),
    (39, 13, 11, -39, (26, 7)),
    (40, 13, 11, 2, (27, 7)),
    (40, 14, 11, -64, (26, 8)),
    (41, 13, 11, 44, (28, 7)),
    (41, 14, 11, -22, (29, 7)),
    (42, 14, 11, 21, (27, 8)),
    (42, 15, 11, -45, (27, 9)),
    (43, 15, 11, -1, (31, 7)),
    (44, 15, 11, 44, (29, 9)),
    (44, 16, 11, -22, (29, 9)),
    (45, 16, 11, 24, (30, 9)),
    (45, 17, 11, -42, (31, 9)),
    (46, 17, 11, 5, (32, 9)),
    (46, 18, 11, -61, (29, 11)),
    (47, 17, 11, 53, (31, 10)),
    (47, 18, 11, -13, (32, 10)),
    (48, 18, 11, 36, (35, 9)),
    (48, 19, 11, -30, (32, 11)),
    (49, 19, 11, 20, (34, 10)),
    (49, 20, 11, -46, (35, 10)),
    (50, 20, 11, 5, (35, 10)),
    (50, 21, 11, -61, (35, 11)),
    (37, 9, 12, 38, (25, 5)),
    (37, 10, 12, -40, None),
    (38, 10, 12, -1, None),
    (39, 10, 12, 39, None),
    (39, 11, 12, -39, (28, 5)),
    (40, 11, 12, 2, (24, 7)),
    (40, 12, 12, -76, (29, 6)),
    (41, 11, 12, 44, (25, 7)),
    (41, 12, 12, -34, (24, 8)),
    (42, 12, 12, 9, (24, 8)),
    (42, 13, 12, -69, (23, 9)),
    (43, 12, 12, 53, (25, 8)),
    (43, 13, 12, -25, (29, 7)),
    (44, 13, 12, 20, (30, 7)),
    (44, 14, 12, -58, (28, 8)),
    (45, 13, 12, 66, (31, 7)),
    (45, 14, 12, -12, (32, 7)),
    (46, 14, 12, 35, (33, 7)),
    (46, 15, 12, -43, (29, 9)),
    (47, 15, 12, 5, (34, 7)),
    (47, 16, 12, -73, (31, 9)),
    (48, 15, 12, 54, (32, 8)),
    (48, 16, 12, -24, (32, 9)),
    (49, 16, 12, 26, (33, 9)),
    (49, 17, 12, -52, (32, 10)),
    (50, 17, 12, -1, (34, 9)),
    (51, 17, 12, 51, (36, 9)),
    (51, 18, 12, -27, (34, 10)),
    (52, 18, 12, 26, (35, 10)),
    (52, 19, 12, -52, (35, 10)),
    (53, 19, 12, 2, (39, 9)),
    (53, 20, 12, -76, (38, 10)),
    (54, 19, 12, 57, (40, 8)),
    (54, 20, 12, -21, (38, 10)),
    (55, 20, 12, 35, (39, 10)),
    (55, 21, 12, -43, (39, 11)),
)

# (d, n, m, v) of the systems the degeneration search could not settle.
EXCEPTIONAL_SYSTEMS: tuple[tuple[int, int, int, int], ...] = (
    (19, 10, 6, -1),
    (22, 10, 7, -5),
    (25, 10, 8, -10),
    (28, 10, 9, -16),
    (29, 10, 9, 14),
    (31, 10, 10, -23),
    (32, 10, 10, 10),
    (34, 10, 11, -31),
    (35, 10, 11, 5),
    (37, 10, 12, -40),
    (38, 10, 12, -1),
    (39, 10, 12, 39),
)

# m -> (3m + 1, D(m) - 1), the middle range of degrees.
MIDDLE_RANGES: dict[int, tuple[int, int]] = {
    2: (7, 9),
    3: (10, 13),
    4: (13, 17),
    5: (16, 20),
    6: (19, 24),
    7: (22, 28),
    8: (25, 32),
    9: (28, 36),
    10: (31, 40),
    11: (34, 50),
    12: (37, 55),
}


def rows_for(m: int) -> list[tuple[int, int, int, int, tuple[int, int] | None]]:
    return [r for r in MIDDLE_RANGE_ROWS if r[2] == m]
