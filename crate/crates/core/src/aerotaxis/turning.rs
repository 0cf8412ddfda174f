use crate::error::{Error, Result};

/// Oxygen thresholds and the two turning rates of the piecewise turning law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningThresholds {
    pub l_tilde_min: f64,
    pub l_min: f64,
    pub l_max: f64,
    pub l_tilde_max: f64,
    pub c_low: f64,
    pub c_high: f64,
}

impl Default for TurningThresholds {
    fn default() -> Self {
        TurningThresholds { l_tilde_min: 0.02, l_min: 0.03, l_max: 0.05, l_tilde_max: 0.7, c_low: 0.1, c_high: 10.0 }
    }
}

impl TurningThresholds {
    pub fn validate(&self) -> Result<()> {
        let ordered = 0.0 <= self.l_tilde_min
            && self.l_tilde_min < self.l_min
            && self.l_min < self.l_max
            && self.l_max < self.l_tilde_max;
        if !ordered {
            return Err(Error::invalid(format!(
                "thresholds must satisfy 0 <= L~min < Lmin < Lmax < L~max, got {} {} {} {}",
                self.l_tilde_min, self.l_min, self.l_max, self.l_tilde_max
            )));
        }
        if !(0.0 <= self.c_low && self.c_low < self.c_high) {
            return Err(Error::invalid(format!(
                "turning rates must satisfy 0 <= c < C, got c={} C={}",
                self.c_low, self.c_high
            )));
        }
        Ok(())
    }
}

/// `(f_rl, f_lr)` at oxygen level `l`. Bins are half-open `[lo, hi)`.
///
/// `f_rl` is low from `L~min` up to `Lmax`; `f_lr` is low from `Lmin` up to
/// `L~max`. The two only disagree inside `[L~min, Lmin)` and `[Lmax, L~max)`,
/// which is what makes cells accumulate in between.
pub fn turning_rates(l: f64, th: &TurningThresholds) -> (f64, f64) {
    let (c, big) = (th.c_low, th.c_high);
    let f_rl = if l < th.l_tilde_min || l >= th.l_max { big } else { c };
    let f_lr = if l < th.l_min || l >= th.l_tilde_max { big } else { c };
    (f_rl, f_lr)
}
