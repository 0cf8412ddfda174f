use super::Bracket;
use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 200;

/// Bisection on a sign-changing bracket.
///
/// Stops once `|f(x)| <= tol` or the bracket is narrower than `tol`.
pub fn solve_scalar_root<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("root tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if !f_lo.is_finite() || !f_hi.is_finite() || f_lo * f_hi > 0.0 {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if !f_mid.is_finite() {
            return Err(Error::NonFinite { t: mid });
        }
        if f_mid.abs() <= tol || hi - lo <= tol {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A few Newton steps with a central-difference slope, kept only while they
/// stay inside `bracket` and reduce `|f|`.
pub fn newton_polish<F: FnMut(f64) -> f64>(mut f: F, x0: f64, bracket: Bracket, iters: usize) -> f64 {
    let mut x = x0;
    let mut fx = f(x);
    for _ in 0..iters {
        let h = 1e-7 * x.abs().max(1e-3);
        let slope = (f(x + h) - f(x - h)) / (2.0 * h);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let xn = x - fx / slope;
        if !(xn > bracket.lo && xn < bracket.hi) {
            break;
        }
        let fxn = f(xn);
        if !(fxn.abs() < fx.abs()) {
            break;
        }
        x = xn;
        fx = fxn;
    }
    x
}

/// Sub-intervals of a uniform scan over `[lo, hi]` on which `f` changes sign.
pub fn find_sign_changes<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, samples: usize) -> Vec<Bracket> {
    let samples = samples.max(2);
    let step = (hi - lo) / (samples - 1) as f64;
    let mut out = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..samples {
        let x = if i == samples - 1 { hi } else { lo + step * i as f64 };
        let fx = f(x);
        if f_prev.is_finite() && fx.is_finite() && (f_prev * fx < 0.0 || (fx == 0.0 && f_prev != 0.0)) {
            out.push(Bracket { lo: x_prev, hi: x });
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}
