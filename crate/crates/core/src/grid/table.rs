//! Normalized stencil coordinates of the two algebraic experiments.
//!
//! Kept as text so the literals can be diffed against their source table.
//! Columns: Test 1 point values, Test 1 cell averages, Test 2 point values,
//! Test 2 cell averages. `-` marks an absent entry.

pub(crate) const ALGEBRAIC_STENCILS: &str = "\
c0   -3.5411  -3.5451  -1.5411  -3.5451
c1   -2.8706  -2.9810  -0.9907  -2.9810
c2   -2.1411  -2.3102   0.0000  -2.3102
c3   -1.7503  -2.1178   0.6792  -2.1178
c4   -0.9907  -1.4574   1.7413  -0.1231
c5   -0.2145  -0.8571   2.5614   0.0000
c6    0.6792   0.1245   3.1410   0.8073
c7    1.3204   0.8073   3.4124   1.1265
c8    1.7413   1.1265   3.7654   2.0578
c9    2.8614   2.0578   4.0119   2.7109
c10   3.5410   2.7109   4.3412   3.1543
c11   4.0034   3.1543   -        3.5418
";

/// Reconstruction abscissae, in the same column order.
pub(crate) const C_STAR: [&str; 4] = ["0", "0", "2.3251", "0.5041"];

/// Returns column `col` as decimal literals, skipping absent entries.
pub(crate) fn column(col: usize) -> Vec<&'static str> {
    ALGEBRAIC_STENCILS
        .lines()
        .filter_map(|line| line.split_whitespace().nth(col + 1))
        .filter(|v| *v != "-")
        .collect()
}
