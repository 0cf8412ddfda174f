//! Input fixtures shared by the benchmarks.

use biosim_core::kelvin::{material_params, Material, ParallelGroup};
use biosim_core::Grid1D;

/// Smooth bump plus a constant floor on `grid`.
pub fn bump_field(grid: &Grid1D) -> Vec<f64> {
    let centre = 0.5 * grid.dx * (grid.n - 1) as f64;
    (0..grid.n).map(|i| 1.0 + (-(grid.x(i) - centre).powi(2) * 40.0).exp()).collect()
}

/// `n` actin bodies in parallel.
pub fn actin_group(n: usize) -> ParallelGroup {
    ParallelGroup::new(vec![material_params(Material::Actin); n]).expect("actin constants are valid")
}
