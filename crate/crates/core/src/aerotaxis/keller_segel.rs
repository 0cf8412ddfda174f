use crate::error::{Error, Result};

/// Motility and chemotactic sensitivity of the diffusion limit:
/// `μ = v²/(2σ0)`, `χ = v Δσ/σ0`, with `σ0 = (σ⁺+σ⁻)/2`, `Δσ = (σ⁺−σ⁻)/2`.
pub fn keller_segel_coefficients(v: f64, sigma_plus: f64, sigma_minus: f64) -> Result<(f64, f64)> {
    let sigma0 = 0.5 * (sigma_plus + sigma_minus);
    if !(sigma0 > 0.0) {
        return Err(Error::invalid(format!("mean turning rate must be positive, got {sigma0}")));
    }
    let delta = 0.5 * (sigma_plus - sigma_minus);
    Ok((v * v / (2.0 * sigma0), v * delta / sigma0))
}

/// Order-of-magnitude cell diffusivity `v²/f`.
pub fn random_walk_diffusivity(v: f64, turning_rate: f64) -> Result<f64> {
    if !(turning_rate > 0.0) {
        return Err(Error::invalid(format!("turning rate must be positive, got {turning_rate}")));
    }
    Ok(v * v / turning_rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_turning_has_no_drift() {
        let (mu, chi) = keller_segel_coefficients(0.2, 10.0, 10.0).unwrap();
        assert_eq!(chi, 0.0);
        assert!((mu - 0.002).abs() < 1e-15);
    }

    #[test]
    fn sign_of_chi() {
        let (_, chi) = keller_segel_coefficients(1.0, 3.0, 1.0).unwrap();
        assert!((chi - 0.5).abs() < 1e-15);
    }

    #[test]
    fn swimmer_diffusivity() {
        // 20 μm/s, 0.5 /s
        let d = random_walk_diffusivity(20.0, 0.5).unwrap();
        assert!((d - 800.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_rates() {
        assert!(keller_segel_coefficients(1.0, 0.0, 0.0).is_err());
        assert!(random_walk_diffusivity(1.0, 0.0).is_err());
    }
}
