"""Fixture relation table for the 13-prime, C=10 worked example.

Coefficient vectors as published, with the initial log(2)-only relation
prepended; duplicated rows are retained here and dropped by the loader.
"""

FIXTURE_COEFFS = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, -1, 0, -1, 0, 0, 0, 0, 1, 0],
    [-1, 0, 0, 0, 0, -1, 1, -1, 0, 1, 0, 0, 0],
    [-1, 0, 0, 0, -1, 0, 1, -1, 1, -1, 1, 0, 0],
    [1, 0, 1, -1, 0, 1, -1, 1, -1, 0, 0, -1, 1],
    [0, 1, 0, -1, -1, 0, 2, -1, 0, -1, -1, 1, 1],
    [1, -1, 0, 1, 1, 2, -1, 0, -2, 1, -1, -1, 1],
    [1, -1, 0, 1, 1, 2, -1, 0, -2, 1, -1, -1, 1],
    [1, 0, 4, -1, -2, 0, 0, 2, 0, -2, -2, 1, 1],
    [0, -2, 0, 0, -2, 0, 0, 2, -4, 4, -1, 1, 0],
    [1, 1, 4, 1, -1, 1, -2, -3, 0, -4, 3, 1, 1],
    [0, -2, -1, 0, 2, 4, 4, 0, 3, 1, -6, -1, -3],
    [3, 2, -1, -6, 2, 3, -2, -2, 3, 1, 5, -4, -2],
    [-4, -2, 4, -4, 3, 1, 7, 0, -3, -4, 4, -7, 3],
    [1, -1, -7, -2, 5, 5, -6, 2, 0, -10, 5, 2, 3],
    [3, -2, -7, -9, 6, 6, 3, 9, 1, 8, -15, -4, 0],
    [-1, 13, -5, -7, -3, -3, -13, 3, 0, -1, 6, -3, 12],
    [-2, 3, -2, 2, -15, 16, 4, -7, 11, -15, 0, 9, -4],
    [2, 0, -9, -11, -5, -11, 21, 9, -9, -4, -1, -4, 13],
    [6, -9, 0, 9, 9, -2, -4, -22, 4, -7, 0, 5, 11],
    [1, -27, 22, -14, -2, 0, 0, -27, -3, -5, 18, 10, 9],
    [1, 41, -2, 5, -42, 6, -2, 13, 5, 3, -5, 7, -9],
    [4, -5, 8, -8, 6, -25, -38, -16, 24, 13, -10, 10, 24],
    [4, -5, 8, -8, 6, -25, -38, -16, 24, 13, -10, 10, 24],
    [-43, -2, 4, 9, 19, -26, 92, -30, -6, -24, 11, -4, -18],
    [8, 38, -4, 34, -31, 60, -75, 31, 44, -32, -1, -43, 17],
    [48, -31, 21, -27, 34, -23, -29, 41, -50, -65, 33, 20, 40],
    [-41, 8, 67, -84, 7, -22, -58, -35, 17, 58, -18, 13, 40],
    [20, 15, 50, -1, 48, 72, -67, -96, 75, 48, -38, -126, 68],
    [26, 20, -35, 16, -1, 75, -13, 2, -128, -100, 130, 46, -13],
    [-26, -20, 35, -16, 1, -75, 13, -2, 128, 100, -130, -46, 13],
    [137, -26, 127, 45, -14, -73, -66, -166, 71, 76, 122, -154, 53],
]

# published |eps| magnitudes for the distinct rows, in order (the
# prepended row's value is log 2)
FIXTURE_EPS = [
    0.6931471805599453,
    0.16705, 0.010753, 0.0020263, 8.2498e-5, 9.8746e-6, 1.5206e-6,
    3.2315e-8, 4.3825e-9, 2.1170e-10, 7.0743e-11, 3.3304e-12,
    2.5427e-13, 9.9309e-14, 9.5171e-15, 6.8069e-16, 7.1895e-17,
    8.1931e-18, 5.6466e-19, 4.6712e-19, 1.0084e-20, 1.3284e-21,
    8.5139e-23, 4.8807e-24, 2.7073e-25, 5.2061e-26, 7.9680e-27,
    2.7161e-28, 3.3314e-29, 1.4227e-31,
]

# exponent vector of the published reduction of sqrt(2)-1 at B = 33220
FIXTURE_REDUCTION = [-274, -414, -187, -314, -211, 651, -392, 463,
                     -36, -369, -231, 634, 0]
