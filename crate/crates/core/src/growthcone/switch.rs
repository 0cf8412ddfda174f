//! Calcium-dependent activation rate: the sign of `∂k_a/∂l` follows the
//! sign of `Ca − Ca_b`, so the same ligand gradient is read as attractive
//! or repulsive depending on resting calcium.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchRateParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub ca_b: f64,
}

impl Default for SwitchRateParams {
    fn default() -> Self {
        SwitchRateParams { a: 0.01, b: 1.0, c: 1.0, ca_b: 0.2 }
    }
}

impl SwitchRateParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.c > 0.0) {
            return Err(Error::invalid("switch shape constants b and c must be positive"));
        }
        Ok(())
    }
}

/// `k_a = exp(a l (Ca − Ca_b) / ((l + b)(Ca + c)))`
pub fn calcium_switch_rate(l: f64, ca: f64, sp: &SwitchRateParams) -> f64 {
    (sp.a * l * (ca - sp.ca_b) / ((l + sp.b) * (ca + sp.c))).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn resting_calcium_is_neutral() {
        let sp = SwitchRateParams::default();
        for l in [0.0, 0.5, 3.0] {
            assert_eq!(calcium_switch_rate(l, sp.ca_b, &sp), 1.0);
        }
    }

    proptest! {
        #[test]
        fn monotone_in_ligand(l in 0.0f64..10.0, dl in 0.01f64..5.0, ca in 0.0f64..2.0) {
            let sp = SwitchRateParams { a: 1.0, ..Default::default() };
            prop_assume!((ca - sp.ca_b).abs() > 1e-3);
            let lo = calcium_switch_rate(l, ca, &sp);
            let hi = calcium_switch_rate(l + dl, ca, &sp);
            if ca > sp.ca_b { prop_assert!(hi > lo); } else { prop_assert!(hi < lo); }
        }
    }
}
