use super::Grid1D;
use crate::error::{Error, Result};

/// Condition at one end of a 1-D grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bc {
    Dirichlet(f64),
    ZeroFlux,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundary {
    pub left: Bc,
    pub right: Bc,
}

impl Boundary {
    pub const ZERO_FLUX: Boundary = Boundary { left: Bc::ZeroFlux, right: Bc::ZeroFlux };

    pub fn dirichlet(left: f64, right: f64) -> Self {
        Boundary { left: Bc::Dirichlet(left), right: Bc::Dirichlet(right) }
    }
}

/// Trapezoidal mass `Σ w_i u_i dx` with half weights at the ends; this is
/// the quantity the zero-flux FTCS step conserves exactly.
pub fn discrete_mass(u: &[f64], dx: f64) -> f64 {
    let n = u.len();
    if n == 0 {
        return 0.0;
    }
    let inner: f64 = u.iter().sum();
    (inner - 0.5 * (u[0] + u[n - 1])) * dx
}

/// One explicit forward-time, centred-space diffusion step.
///
/// Zero-flux ends use a mirrored ghost node. Fails if the stability number
/// `D dt / dx²` exceeds 0.5.
pub fn ftcs_diffusion_step(field: &[f64], diffusivity: f64, grid: &Grid1D, bc: Boundary) -> Result<Vec<f64>> {
    if field.len() != grid.n {
        return Err(Error::invalid(format!("field has {} nodes, grid has {}", field.len(), grid.n)));
    }
    let mu = diffusivity * grid.dt / (grid.dx * grid.dx);
    if mu > 0.5 {
        return Err(Error::DiffusionUnstable { number: mu });
    }
    let n = grid.n;
    let u = field;
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = u[i] + mu * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
    }
    out[0] = match bc.left {
        Bc::Dirichlet(v) => v,
        Bc::ZeroFlux => u[0] + 2.0 * mu * (u[1] - u[0]),
    };
    out[n - 1] = match bc.right {
        Bc::Dirichlet(v) => v,
        Bc::ZeroFlux => u[n - 1] + 2.0 * mu * (u[n - 2] - u[n - 1]),
    };
    Ok(out)
}

/// One step of the two-stream advection–reaction system
///
/// ```text
/// r_t = -v r_x - f_rl r + f_lr l
/// l_t = +v l_x + f_rl r - f_lr l
/// ```
///
/// Right-movers use a backward difference, left-movers a forward one. At a
/// wall the outgoing flux is handed to the opposite stream at the same
/// node, so `Σ (r + l)` is conserved exactly. Fails if `v dt / dx > 1`.
pub fn upwind_advection_reaction_step(
    r: &[f64],
    l: &[f64],
    v: f64,
    frl: &[f64],
    flr: &[f64],
    grid: &Grid1D,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = grid.n;
    if r.len() != n || l.len() != n || frl.len() != n || flr.len() != n {
        return Err(Error::invalid("advection fields must match the grid size"));
    }
    let cfl = v.abs() * grid.dt / grid.dx;
    if cfl > 1.0 {
        return Err(Error::CflViolation { cfl });
    }
    let dt = grid.dt;
    let mut rn = vec![0.0; n];
    let mut ln = vec![0.0; n];
    for i in 0..n {
        let r_up = if i == 0 { 0.0 } else { r[i - 1] };
        let l_up = if i == n - 1 { 0.0 } else { l[i + 1] };
        let turn = dt * (-frl[i] * r[i] + flr[i] * l[i]);
        rn[i] = r[i] - cfl * (r[i] - r_up) + turn;
        ln[i] = l[i] + cfl * (l_up - l[i]) - turn;
    }
    // wall reflection: what would leave the domain reverses direction
    rn[0] += cfl * l[0];
    ln[n - 1] += cfl * r[n - 1];
    Ok((rn, ln))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn grid(n: usize, dx: f64, dt: f64) -> Grid1D {
        Grid1D::new(n, dx, dt).unwrap()
    }

    #[test]
    fn uniform_field_unchanged() {
        let g = grid(20, 0.1, 0.004);
        let u = vec![2.5; 20];
        assert_eq!(ftcs_diffusion_step(&u, 1.0, &g, Boundary::ZERO_FLUX).unwrap(), u);
    }

    #[test]
    fn spike_mass_conserved() {
        let g = grid(41, 0.05, 0.001);
        let mut u = vec![0.0; 41];
        u[20] = 1.0 / 0.05;
        let m0 = discrete_mass(&u, g.dx);
        for _ in 0..2000 {
            let m = discrete_mass(&u, g.dx);
            u = ftcs_diffusion_step(&u, 1.0, &g, Boundary::ZERO_FLUX).unwrap();
            assert!((discrete_mass(&u, g.dx) - m).abs() <= 1e-12 * m0);
        }
    }

    #[test]
    fn sine_mode_decay_rate() {
        // u = sin(pi x) on [0,1] with u=0 at both ends decays like exp(-pi² D t)
        let n = 21;
        let g = grid(n, 1.0 / (n - 1) as f64, 0.001);
        let d = 1.0;
        let mut u: Vec<f64> = (0..n).map(|i| (PI * g.x(i)).sin()).collect();
        let steps = 100;
        for _ in 0..steps {
            u = ftcs_diffusion_step(&u, d, &g, Boundary::dirichlet(0.0, 0.0)).unwrap();
        }
        let t = steps as f64 * g.dt;
        let observed = -(u[n / 2]).ln() / t;
        let exact = PI * PI * d;
        assert!((observed - exact).abs() / exact < 0.02, "{observed} vs {exact}");
    }

    #[test]
    fn stability_guard() {
        let g = grid(5, 0.1, 0.01);
        match ftcs_diffusion_step(&[0.0; 5], 1.0, &g, Boundary::ZERO_FLUX) {
            Err(Error::DiffusionUnstable { number }) => assert_abs_diff_eq!(number, 1.0, epsilon = 1e-12),
            other => panic!("{other:?}"),
        }
        match upwind_advection_reaction_step(&[0.0; 5], &[0.0; 5], 20.0, &[0.0; 5], &[0.0; 5], &g) {
            Err(Error::CflViolation { cfl }) => assert_abs_diff_eq!(cfl, 2.0, epsilon = 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_cfl_is_exact_shift() {
        let g = grid(10, 0.1, 0.1);
        let r: Vec<f64> = (0..10).map(|i| (i * i) as f64).collect();
        let l = vec![0.0; 10];
        let z = vec![0.0; 10];
        let (rn, ln) = upwind_advection_reaction_step(&r, &l, 1.0, &z, &z, &g).unwrap();
        for i in 1..10 {
            assert_eq!(rn[i], r[i - 1]);
        }
        assert_eq!(rn[0], 0.0);
        // the right-mover at the wall turned around
        assert_eq!(ln[9], r[9]);
    }

    #[test]
    fn symmetric_turning_cancels() {
        let g = grid(12, 0.1, 0.01);
        let half = vec![0.5; 12];
        let sigma = vec![10.0; 12];
        let (rn, ln) = upwind_advection_reaction_step(&half, &half, 0.2, &sigma, &sigma, &g).unwrap();
        for i in 0..12 {
            assert_abs_diff_eq!(rn[i], 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(ln[i], 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn long_run_conservation() {
        let n = 40;
        let g = grid(n, 1.0 / 39.0, 0.01);
        let mut r: Vec<f64> = (0..n).map(|i| 0.5 + 0.3 * (i as f64 * 0.7).sin()).collect();
        let mut l: Vec<f64> = (0..n).map(|i| 0.5 + 0.2 * (i as f64 * 1.3).cos()).collect();
        let frl: Vec<f64> = (0..n).map(|i| if i < 20 { 10.0 } else { 1.0 }).collect();
        let flr: Vec<f64> = (0..n).map(|i| if i < 10 { 1.0 } else { 10.0 }).collect();
        let total = |r: &[f64], l: &[f64]| r.iter().chain(l).sum::<f64>() * g.dx;
        let m0 = total(&r, &l);
        for _ in 0..10_000 {
            let (a, b) = upwind_advection_reaction_step(&r, &l, 0.2, &frl, &flr, &g).unwrap();
            r = a;
            l = b;
        }
        assert!((total(&r, &l) - m0).abs() <= 1e-10 * m0);
    }

    proptest! {
        #[test]
        fn upwind_is_monotone_below_unit_cfl(
            r in prop::collection::vec(0.0f64..5.0, 8..30),
            cfl in 0.05f64..1.0,
        ) {
            let n = r.len();
            let g = grid(n, 0.1, 0.1 * cfl);
            let z = vec![0.0; n];
            let (rn, _) = upwind_advection_reaction_step(&r, &z, 1.0, &z, &z, &g).unwrap();
            let hi = r.iter().cloned().fold(f64::MIN, f64::max);
            for i in 1..n {
                prop_assert!(rn[i] <= hi + 1e-12);
                prop_assert!(rn[i] >= r[i].min(r[i - 1]) - 1e-12);
            }
        }

        #[test]
        fn ftcs_zero_flux_conserves_mass(
            u in prop::collection::vec(0.0f64..10.0, 3..40),
            mu in 0.01f64..0.5,
        ) {
            let g = grid(u.len(), 0.1, mu * 0.01);
            let m0 = discrete_mass(&u, g.dx);
            let un = ftcs_diffusion_step(&u, 1.0, &g, Boundary::ZERO_FLUX).unwrap();
            prop_assert!((discrete_mass(&un, g.dx) - m0).abs() <= 1e-12 * m0.max(1.0));
        }
    }
}
