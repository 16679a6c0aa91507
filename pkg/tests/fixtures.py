"""Published ground-truth tables used as test fixtures.

FIG_A5 / FIG_S5 are the tables of marks of A5 and S5; FIG_S5 is given
in its original layout (classes in PAPER_S5_ORDER).  GL23_PANELS are
the intermediate tables along the composition series
1 < 2 < 4 < Q8 < SL2(3) < GL2(3).
"""

FIG_A5 = [
    [60],
    [30, 2],
    [20, 0, 2],
    [15, 3, 0, 3],
    [12, 0, 0, 0, 2],
    [10, 2, 1, 0, 0, 1],
    [6, 2, 0, 0, 1, 0, 1],
    [5, 1, 2, 1, 0, 0, 0, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
]
A5_CLASS_ORDERS = [1, 2, 3, 4, 5, 6, 10, 12, 60]

# classes: 1, C2, C3, 2^2, C5, S3, D10, A4, A5 (inner block),
# then C2, C4, 2^2, S3, C6, D8, D12, 5:4, S4, S5 (outer block)
FIG_S5 = [
    [120],
    [60, 4],
    [40, 0, 4],
    [30, 6, 0, 6],
    [24, 0, 0, 0, 4],
    [20, 4, 2, 0, 0, 2],
    [12, 4, 0, 0, 2, 0, 2],
    [10, 2, 4, 2, 0, 0, 0, 2],
    [2, 2, 2, 2, 2, 2, 2, 2, 2],
    [60, 0, 0, 0, 0, 0, 0, 0, 0, 6],
    [30, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2],
    [30, 2, 0, 0, 0, 0, 0, 0, 0, 6, 0, 2],
    [20, 0, 2, 0, 0, 0, 0, 0, 0, 6, 0, 0, 2],
    [20, 0, 2, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 2],
    [15, 3, 0, 3, 0, 0, 0, 0, 0, 3, 1, 1, 0, 0, 1],
    [10, 2, 1, 0, 0, 1, 0, 0, 0, 4, 0, 2, 1, 1, 0, 1],
    [6, 2, 0, 0, 1, 0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 1],
    [5, 1, 2, 1, 0, 0, 0, 1, 0, 3, 1, 1, 2, 0, 1, 0, 0, 1],
    [1] * 19,
]
S5_PAPER_ORDERS = [1, 2, 3, 4, 5, 6, 10, 12, 60,
                   2, 4, 4, 6, 6, 8, 12, 20, 24, 120]

GL23_PANELS = [
    [[1]],
    [[2], [1, 1]],
    [[4], [2, 2], [1, 1, 1]],
    [[8], [4, 4], [2, 2, 2], [2, 2, 0, 2], [2, 2, 0, 0, 2],
     [1, 1, 1, 1, 1, 1]],
    [[24], [12, 12], [6, 6, 2], [3, 3, 3, 3], [8, 0, 0, 0, 2],
     [4, 4, 0, 0, 1, 1], [1, 1, 1, 1, 1, 1, 1]],
    [[48],
     [24, 24],
     [16, 0, 4],
     [12, 12, 0, 4],
     [8, 8, 2, 0, 2],
     [6, 6, 0, 6, 0, 6],
     [2, 2, 2, 2, 2, 2, 2],
     [24, 0, 0, 0, 0, 0, 0, 2],
     [12, 12, 0, 0, 0, 0, 0, 2, 2],
     [8, 0, 2, 0, 0, 0, 0, 2, 0, 2],
     [8, 0, 2, 0, 0, 0, 0, 2, 0, 0, 2],
     [6, 6, 0, 2, 0, 0, 0, 2, 2, 0, 0, 2],
     [6, 6, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2],
     [4, 4, 1, 0, 1, 0, 0, 2, 2, 1, 1, 0, 0, 1],
     [3, 3, 0, 3, 0, 3, 0, 1, 1, 0, 0, 1, 1, 0, 1],
     [1] * 16],
]

# (A, S, classes of A, classes of S, probes, max probe) benchmark rows
BENCH_ROWS = {
    "S5": ("A5", 9, 19, 0, 0),
    "S6": ("A6", 22, 56, 2, 4),
    "S7": ("A7", 40, 96, 3, 20),
}
