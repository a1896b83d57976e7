//! Benchmark-only crate; see `benches/forms.rs`.

use avk_core::arrangements::Arrangement;
use avk_core::rat;

/// Tangent lines to the parabola give a generic arrangement of any size.
pub fn tangent_lines(m: usize) -> Arrangement {
    let rows = (1..=m as i64)
        .map(|t| vec![rat(2 * t), rat(-1), rat(-t * t)])
        .collect();
    Arrangement::new(2, rows).expect("tangent lines are generic")
}
