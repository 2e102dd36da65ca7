"""The calibration 4-form on R^8 used for the Spin(7) membership test.

Coordinates are x_1..x_8 with complex structure z_k = x_{2k-1} + i x_{2k}.
The form is (1/2) w ^ w + Re(dz1 ^ dz2 ^ dz3 ^ dz4), where w is the
standard Kahler form; with this normalization every complex-linear
special-unitary isometry preserves it, as do the conjugation-type maps
the membership test is meant to admit.

Each entry below is (indices, coefficient) with 1-based strictly
increasing indices; all 56 omitted components are zero.
"""

CAYLEY_FORM_TERMS: tuple[tuple[tuple[int, int, int, int], int], ...] = (
    ((1, 2, 3, 4), 1),
    ((1, 2, 5, 6), 1),
    ((1, 2, 7, 8), 1),
    ((3, 4, 5, 6), 1),
    ((3, 4, 7, 8), 1),
    ((5, 6, 7, 8), 1),
    ((1, 3, 5, 7), 1),
    ((1, 3, 6, 8), -1),
    ((1, 4, 5, 8), -1),
    ((1, 4, 6, 7), -1),
    ((2, 3, 5, 8), -1),
    ((2, 3, 6, 7), -1),
    ((2, 4, 5, 7), -1),
    ((2, 4, 6, 8), 1),
)
