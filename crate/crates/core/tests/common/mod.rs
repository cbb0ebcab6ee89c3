//! Frozen reference data shared by several test targets.

/// `(i, j, k, coeff)` of the normalised model, coefficients as `GF(4)`
/// encodings. Produced once by the resultant elimination in
/// `resultant_oracle.rs`.
pub const Q2M3_MODEL: &[(usize, usize, usize, u64)] = &[
    (0, 0, 9, 1),
    (1, 1, 7, 1),
    (1, 4, 4, 1),
    (1, 5, 3, 1),
    (1, 6, 2, 1),
    (1, 8, 0, 1),
    (2, 3, 4, 1),
    (2, 4, 3, 1),
    (2, 5, 2, 1),
    (2, 7, 0, 1),
    (3, 2, 4, 1),
    (3, 3, 3, 1),
    (3, 4, 2, 1),
    (3, 6, 0, 1),
    (4, 1, 4, 1),
    (4, 2, 3, 1),
    (4, 3, 2, 1),
    (4, 5, 0, 1),
    (5, 1, 3, 1),
    (5, 2, 2, 1),
    (5, 4, 0, 1),
    (6, 1, 2, 1),
    (6, 3, 0, 1),
    (7, 2, 0, 1),
    (8, 1, 0, 1),
];
