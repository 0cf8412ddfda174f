//! `n` Kelvin bodies sharing one deformation `u` and splitting the load.
//! The state is `(u, a1 F, …, a_{n−1} F)`; the last branch force is
//! `F − Σ a_i F`. Tracking forces instead of the fractions `a_i` keeps the
//! system well-posed when `F` passes through zero.

use super::body::{Forcing, KelvinBody};
use crate::error::{Error, Result};
use crate::numerics::{eig2, rk4_integrate_sampled, solve_linear_dense, Trajectory};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelGroup {
    pub bodies: Vec<KelvinBody>,
}

impl ParallelGroup {
    pub fn new(bodies: Vec<KelvinBody>) -> Result<Self> {
        let g = ParallelGroup { bodies };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bodies.is_empty() {
            return Err(Error::invalid("a parallel group needs at least one body"));
        }
        self.bodies.iter().try_for_each(KelvinBody::validate)
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn total_mu0(&self) -> f64 {
        self.bodies.iter().map(|b| b.mu0).sum()
    }

    pub fn total_stiffness(&self) -> f64 {
        self.bodies.iter().map(|b| b.mu0 + b.mu1).sum()
    }
}

/// `A ẏ = D y + c(t)` with `c = (0, …, 0, F + (η_n/μ_1n) Ḟ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelSystem {
    pub a: Vec<Vec<f64>>,
    pub d: Vec<Vec<f64>>,
    /// `η_n/μ_1n`
    pub g_last: f64,
    stiffness: Vec<f64>,
}

impl ParallelSystem {
    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn c(&self, f: f64, df: f64) -> Vec<f64> {
        let mut c = vec![0.0; self.dim()];
        c[self.dim() - 1] = f + self.g_last * df;
        c
    }

    /// Springs respond instantly: `u(0) = F(0)/Σ(μ0+μ1)`, branch `i`
    /// carries `u(0)(μ0i+μ1i)`.
    pub fn initial(&self, f0: f64) -> Vec<f64> {
        let u0 = f0 / self.stiffness.iter().sum::<f64>();
        let mut y = vec![u0];
        y.extend(self.stiffness[..self.dim() - 1].iter().map(|s| u0 * s));
        y
    }
}

pub fn parallel_assemble(g: &ParallelGroup) -> Result<ParallelSystem> {
    g.validate()?;
    let n = g.len();
    if n < 2 {
        return Err(Error::invalid("parallel assembly needs at least two bodies"));
    }
    let mut a = vec![vec![0.0; n]; n];
    let mut d = vec![vec![0.0; n]; n];
    for (i, b) in g.bodies.iter().enumerate().take(n - 1) {
        a[i][0] = b.h();
        a[i][i + 1] = -b.g();
        d[i][0] = -b.mu0;
        d[i][i + 1] = 1.0;
    }
    let last = &g.bodies[n - 1];
    a[n - 1][0] = last.h();
    d[n - 1][0] = -last.mu0;
    for j in 1..n {
        a[n - 1][j] = last.g();
        d[n - 1][j] = -1.0;
    }
    Ok(ParallelSystem { a, d, g_last: last.g(), stiffness: g.bodies.iter().map(|b| b.mu0 + b.mu1).collect() })
}

/// `(y, x) = (D⁻¹c, A⁻¹c)` from the sparse structure:
/// `y_{i+1} = μ0i y1`, `y1 = −c_n/Σμ0`; `x_{i+1} = −h_i x1/d_i`,
/// `x1 = c_n/(h_n + d_n Σ h_i/d_i)` with `h_i = η_i(1 + μ0i/μ1i)`,
/// `d_i = −η_i/μ1i`.
pub fn rhs_closed_forms(g: &ParallelGroup, f: f64, df: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    g.validate()?;
    let n = g.len();
    if n < 2 {
        return Err(Error::invalid("closed forms need at least two bodies"));
    }
    let last = &g.bodies[n - 1];
    let cn = f + last.g() * df;
    let y1 = -cn / g.total_mu0();
    let mut y = vec![y1];
    y.extend(g.bodies[..n - 1].iter().map(|b| b.mu0 * y1));

    let ratio: f64 = g.bodies[..n - 1].iter().map(|b| b.h() / -b.g()).sum();
    let denom = last.h() - last.g() * ratio;
    if denom.abs() < 1e-300 {
        return Err(Error::Singular { index: 0 });
    }
    let x1 = cn / denom;
    let mut x = vec![x1];
    x.extend(g.bodies[..n - 1].iter().map(|b| b.h() * x1 / b.g()));
    Ok((y, x))
}

/// Deformation and every branch force (including the eliminated last one).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRun {
    pub times: Vec<f64>,
    pub u: Vec<f64>,
    /// `forces[i][k]` is the force in body `i` at sample `k`
    pub forces: Vec<Vec<f64>>,
}

impl GroupRun {
    fn from_states(traj: Trajectory, f: &Forcing, n: usize) -> Self {
        let mut forces = vec![Vec::with_capacity(traj.len()); n];
        for (t, s) in traj.times.iter().zip(&traj.states) {
            let mut rest = f.value(*t);
            for i in 0..n - 1 {
                forces[i].push(s[i + 1]);
                rest -= s[i + 1];
            }
            forces[n - 1].push(rest);
        }
        GroupRun { u: traj.component(0), times: traj.times, forces }
    }
}

/// Explicit form `ẏ = M y + b (F + g_n Ḟ)` of a group; a single body is
/// the one-dimensional case.
#[derive(Debug, Clone)]
pub(crate) struct GroupOde {
    m: Vec<Vec<f64>>,
    b: Vec<f64>,
    g_last: f64,
    y0_per_load: Vec<f64>,
}

impl GroupOde {
    pub(crate) fn new(g: &ParallelGroup) -> Result<Self> {
        g.validate()?;
        if g.len() == 1 {
            let body = &g.bodies[0];
            return Ok(GroupOde {
                m: vec![vec![-body.mu0 / body.h()]],
                b: vec![1.0 / body.h()],
                g_last: body.g(),
                y0_per_load: vec![1.0 / (body.mu0 + body.mu1)],
            });
        }
        let sys = parallel_assemble(g)?;
        let n = sys.dim();
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|j| solve_linear_dense(&sys.a, &sys.d.iter().map(|r| r[j]).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let mut e = vec![0.0; n];
        e[n - 1] = 1.0;
        Ok(GroupOde {
            m: (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect(),
            b: solve_linear_dense(&sys.a, &e)?,
            g_last: sys.g_last,
            y0_per_load: sys.initial(1.0),
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.b.len()
    }

    pub(crate) fn initial(&self, f0: f64) -> Vec<f64> {
        self.y0_per_load.iter().map(|v| v * f0).collect()
    }

    pub(crate) fn rhs(&self, f: &Forcing, t: f64, y: &[f64], dy: &mut [f64]) {
        let drive = f.value(t) + self.g_last * f.derivative(t);
        for (i, d) in dy.iter_mut().enumerate() {
            *d = self.m[i].iter().zip(y).map(|(a, v)| a * v).sum::<f64>() + self.b[i] * drive;
        }
    }

    /// Force in branch `k` given the state; the last is `F − Σ`.
    pub(crate) fn branch_force(&self, k: usize, load: f64, y: &[f64]) -> f64 {
        if k + 1 < self.dim() {
            y[k + 1]
        } else {
            load - y[1..].iter().sum::<f64>()
        }
    }
}

/// RK4 on `ẏ = A⁻¹D y + A⁻¹c(t)`.
pub fn parallel_simulate(g: &ParallelGroup, f: &Forcing, t_end: f64, h: f64, sample_every: usize) -> Result<GroupRun> {
    f.validate()?;
    let ode = GroupOde::new(g)?;
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| ode.rhs(f, t, y, dy);
    let traj = rk4_integrate_sampled(rhs, &ode.initial(f.value(0.0)), 0.0, t_end, h, sample_every)?;
    Ok(GroupRun::from_states(traj, f, g.len()))
}

/// Eigen-solution for two bodies under a constant load:
/// `y(t) = V e^{Λt} V⁻¹ (y0 + D⁻¹c) − D⁻¹c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactParallel {
    pub eigenvalues: [Complex64; 2],
    vectors: [[Complex64; 2]; 2],
    coeffs: [Complex64; 2],
    /// `D⁻¹c`; the steady state is its negative
    pub offset: [f64; 2],
}

impl ExactParallel {
    pub fn new(g: &ParallelGroup, f0: f64) -> Result<Self> {
        if g.len() != 2 {
            return Err(Error::invalid("the analytic solution is implemented for two bodies"));
        }
        let sys = parallel_assemble(g)?;
        let col = |j: usize| solve_linear_dense(&sys.a, &[sys.d[0][j], sys.d[1][j]]);
        let (c0, c1) = (col(0)?, col(1)?);
        let e = eig2([[c0[0], c1[0]], [c0[1], c1[1]]]);
        // columns of V are eigenvectors
        let v = [[e.vectors[0][0], e.vectors[1][0]], [e.vectors[0][1], e.vectors[1][1]]];
        let det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
        let scale = v.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if det.norm() < 1e-10 * scale * scale {
            return Err(Error::Defective(format!("eigenvalues {:?}", e.values)));
        }
        let (y, _) = rhs_closed_forms(g, f0, 0.0)?;
        let y0 = sys.initial(f0);
        let w = [Complex64::from(y0[0] + y[0]), Complex64::from(y0[1] + y[1])];
        let coeffs = [(v[1][1] * w[0] - v[0][1] * w[1]) / det, (-v[1][0] * w[0] + v[0][0] * w[1]) / det];
        Ok(ExactParallel { eigenvalues: e.values, vectors: v, coeffs, offset: [y[0], y[1]] })
    }

    /// `(u, a1 F)` at time `t`.
    pub fn eval(&self, t: f64) -> [f64; 2] {
        let ex = [self.coeffs[0] * (self.eigenvalues[0] * t).exp(), self.coeffs[1] * (self.eigenvalues[1] * t).exp()];
        let v = &self.vectors;
        [
            (v[0][0] * ex[0] + v[0][1] * ex[1]).re - self.offset[0],
            (v[1][0] * ex[0] + v[1][1] * ex[1]).re - self.offset[1],
        ]
    }
}

/// Samples of the exact two-body solution, or of RK4 at step `h` when the
/// eigenbasis is defective (`fallback = true`).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRun {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 2]>,
    pub fallback: bool,
}

pub fn exact_parallel_solution(g: &ParallelGroup, f0: f64, times: &[f64], h: f64) -> Result<ExactRun> {
    match ExactParallel::new(g, f0) {
        Ok(ex) => {
            Ok(ExactRun { times: times.to_vec(), states: times.iter().map(|&t| ex.eval(t)).collect(), fallback: false })
        }
        Err(Error::Defective(_)) => {
            let f = Forcing::Steady { f0 };
            let mut states = Vec::with_capacity(times.len());
            for &t in times {
                let run = if t > 0.0 { Some(parallel_simulate(g, &f, t, h, usize::MAX)?) } else { None };
                states.push(match run {
                    Some(r) => [*r.u.last().unwrap(), *r.forces[0].last().unwrap()],
                    None => {
                        let y0 = parallel_assemble(g)?.initial(f0);
                        [y0[0], y0[1]]
                    }
                });
            }
            Ok(ExactRun { times: times.to_vec(), states, fallback: true })
        }
        Err(e) => Err(e),
    }
}

/// `A⁻¹D` and `A⁻¹c` by dense solves, for cross-checking.
pub fn dense_system(g: &ParallelGroup, f: f64, df: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let sys = parallel_assemble(g)?;
    let c = sys.c(f, df);
    Ok((solve_linear_dense(&sys.d, &c)?, solve_linear_dense(&sys.a, &c)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::body::{material_params, Material};
    use proptest::prelude::*;

    fn actin_pair() -> ParallelGroup {
        let b = material_params(Material::Actin);
        ParallelGroup::new(vec![b, b]).unwrap()
    }

    #[test]
    fn two_body_matrices() {
        let b2 = KelvinBody { eta1: 200.0, mu0: 5.0, mu1: 20.0 };
        let g = ParallelGroup::new(vec![material_params(Material::Actin), b2]).unwrap();
        let s = parallel_assemble(&g).unwrap();
        assert_eq!(s.a, vec![vec![7500.0, -50.0], vec![200.0 * 1.25, 10.0]]);
        assert_eq!(s.d, vec![vec![-50.0, 1.0], vec![-5.0, -1.0]]);
        assert_eq!(s.c(2.0, 0.5), vec![0.0, 2.0 + 10.0 * 0.5]);
    }

    #[test]
    fn identical_initial_split() {
        let s = parallel_assemble(&actin_pair()).unwrap();
        let y0 = s.initial(1.0);
        assert!((y0[0] - 1.0 / 300.0).abs() < 1e-15);
        assert!((y0[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identical_bodies_split_evenly() {
        // the oscillatory split is exact only up to the quadrature error of Ḟ
        for f in [Forcing::Steady { f0: 1.0 }, Forcing::oscillatory_hz(1.0, 1.0)] {
            let r = parallel_simulate(&actin_pair(), &f, 20.0, 0.001, 7).unwrap();
            for (k, t) in r.times.iter().enumerate() {
                let total = f.value(*t);
                assert!((r.forces[0][k] - 0.5 * total).abs() < 1e-9, "{} {} {}", t, r.forces[0][k], total);
                assert!((r.forces[0][k] + r.forces[1][k] - total).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn steady_balance() {
        let r = parallel_simulate(&actin_pair(), &Forcing::Steady { f0: 1.0 }, 4000.0, 0.1, 1000).unwrap();
        assert!((r.u.last().unwrap() - 0.01).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_match_dense() {
        let g = ParallelGroup::new(vec![
            material_params(Material::Actin),
            KelvinBody { eta1: 30.0, mu0: 7.0, mu1: 3.0 },
            material_params(Material::Nucleus),
        ])
        .unwrap();
        let (y, x) = rhs_closed_forms(&g, 1.3, -0.4).unwrap();
        let (yd, xd) = dense_system(&g, 1.3, -0.4).unwrap();
        for (p, q) in y.iter().zip(&yd).chain(x.iter().zip(&xd)) {
            assert!((p - q).abs() < 1e-10 * q.abs().max(1e-12), "{p} vs {q}");
        }
        let (y, x) = rhs_closed_forms(&g, 0.0, 0.0).unwrap();
        assert!(y.iter().chain(&x).all(|v| *v == 0.0));
    }

    #[test]
    fn exact_matches_rk4() {
        let b2 = KelvinBody { eta1: 500.0, mu0: 5.0, mu1: 100.0 };
        for g in [actin_pair(), ParallelGroup::new(vec![material_params(Material::Actin), b2]).unwrap()] {
            let ex = ExactParallel::new(&g, 1.0).unwrap();
            let y0 = parallel_assemble(&g).unwrap().initial(1.0);
            let e0 = ex.eval(0.0);
            assert!((e0[0] - y0[0]).abs() < 1e-14 && (e0[1] - y0[1]).abs() < 1e-12);
            let r = parallel_simulate(&g, &Forcing::Steady { f0: 1.0 }, 2000.0, 0.1, 50).unwrap();
            for (k, t) in r.times.iter().enumerate() {
                let e = ex.eval(*t);
                assert!((e[0] - r.u[k]).abs() < 1e-8, "{} {} {}", t, e[0], r.u[k]);
                assert!((e[1] - r.forces[0][k]).abs() < 1e-8);
            }
            let inf = ex.eval(1e7);
            assert!((inf[0] - 1.0 / g.total_mu0()).abs() < 1e-12);
        }
    }

    #[test]
    fn single_body_group() {
        let g = ParallelGroup::new(vec![material_params(Material::Actin)]).unwrap();
        let r = parallel_simulate(&g, &Forcing::Steady { f0: 2.0 }, 10.0, 0.1, 1).unwrap();
        assert!(r.forces[0].iter().all(|f| *f == 2.0));
        assert!(parallel_assemble(&g).is_err());
    }

    proptest! {
        #[test]
        fn linear_in_load(alpha in 0.1f64..10.0, mu02 in 1.0f64..500.0) {
            let g = ParallelGroup::new(vec![
                material_params(Material::Actin),
                KelvinBody { eta1: 5000.0, mu0: mu02, mu1: 100.0 },
            ]).unwrap();
            let f = Forcing::oscillatory_hz(1.0, 0.05);
            let fa = Forcing::oscillatory_hz(alpha, 0.05);
            let r1 = parallel_simulate(&g, &f, 30.0, 0.1, 10).unwrap();
            let ra = parallel_simulate(&g, &fa, 30.0, 0.1, 10).unwrap();
            for k in 0..r1.u.len() {
                prop_assert!((ra.u[k] - alpha * r1.u[k]).abs() < 1e-12 * alpha.max(1.0));
                prop_assert!((ra.forces[1][k] - alpha * r1.forces[1][k]).abs() < 1e-10 * alpha.max(1.0));
            }
        }

        #[test]
        fn permutation_symmetry(mu02 in 1.0f64..500.0, eta2 in 10.0f64..1e4) {
            let b1 = material_params(Material::Actin);
            let b2 = KelvinBody { eta1: eta2, mu0: mu02, mu1: 100.0 };
            let f = Forcing::Steady { f0: 1.0 };
            let p = parallel_simulate(&ParallelGroup::new(vec![b1, b2]).unwrap(), &f, 50.0, 0.1, 10).unwrap();
            let q = parallel_simulate(&ParallelGroup::new(vec![b2, b1]).unwrap(), &f, 50.0, 0.1, 10).unwrap();
            for k in 0..p.u.len() {
                prop_assert!((p.u[k] - q.u[k]).abs() < 1e-12);
                prop_assert!((p.forces[0][k] - q.forces[1][k]).abs() < 1e-9);
            }
        }
    }
}
