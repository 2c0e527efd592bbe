//! Maxwell equations for the monopole potential A_φ = g cos θ on the static
//! AdS background ds² = Φ dt² − dr²/Φ − r²(dθ² + sin²θ dφ²).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angular::{j_min, validate_kj, HalfInt};
use crate::dual::{differentiate, Jet};
use crate::error::{Error, Result};
use crate::fd::central_derivative;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Potential {
    /// A_φ = g cos θ.
    Monopole,
    /// A_φ = g cos²θ, which is not a vacuum solution.
    CosSquared,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonopoleField {
    pub g_charge: f64,
    pub potential: Potential,
}

impl MonopoleField {
    pub fn new(g_charge: f64) -> Self {
        MonopoleField { g_charge, potential: Potential::Monopole }
    }

    pub fn corrupted(g_charge: f64) -> Self {
        MonopoleField { g_charge, potential: Potential::CosSquared }
    }

    pub fn a_phi<const N: usize>(&self, theta: Jet<N>) -> Jet<N> {
        let c = theta.cos();
        match self.potential {
            Potential::Monopole => c.scale(self.g_charge),
            Potential::CosSquared => (c * c).scale(self.g_charge),
        }
    }

    /// F_{φθ} = −∂θ A_φ; equals g sin θ for the monopole.
    pub fn f_phi_theta(&self, theta: f64) -> f64 {
        let a = self.a_phi(Jet::<2>::variable(theta));
        -a.derivative(1)
    }
}

fn check_grids(r_grid: &[f64], theta_grid: &[f64]) -> Result<()> {
    if r_grid.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(Error::validation("r grid must be positive"));
    }
    if theta_grid.iter().any(|t| !(*t > 0.0 && *t < PI)) {
        return Err(Error::validation("θ grid must avoid the poles"));
    }
    Ok(())
}

/// max over the grid and over β of |(1/√−g) ∂_α(√−g F^{αβ})|, √−g = r² sin θ.
///
/// Only F_{θφ} is nonzero, so β = φ carries ∂θ(√−g F^{θφ}) and β = θ carries
/// ∂φ(√−g F^{φθ}), which vanishes because nothing depends on φ. The
/// θ-derivative is taken exactly with jets.
pub fn maxwell_residual(field: &MonopoleField, r_grid: &[f64], theta_grid: &[f64]) -> Result<f64> {
    check_grids(r_grid, theta_grid)?;
    let mut worst = 0.0f64;
    for &t in theta_grid {
        let th = Jet::<3>::variable(t);
        let a = field.a_phi(th);
        let f_tp: Jet<2> = differentiate(&a);
        let sin = Jet::<2>::variable(t).sin();
        for &r in r_grid {
            // g^{θθ} g^{φφ} = 1/(r⁴ sin²θ); √−g F^{θφ} = F_{θφ}/(r² sin θ)
            let s = f_tp / sin.scale(r * r);
            let div = s.derivative(1);
            let res = div / (r * r * t.sin());
            worst = if res.is_nan() { f64::INFINITY } else { worst.max(res.abs()) };
        }
    }
    Ok(worst)
}

/// dF for F = F_{θφ}(θ) dθ∧dφ reduces to ∂_r F_{θφ} and ∂_t F_{θφ}; both
/// are taken by finite differences.
pub fn bianchi_residual(field: &MonopoleField, r_grid: &[f64], theta_grid: &[f64]) -> Result<f64> {
    check_grids(r_grid, theta_grid)?;
    let f = |_r: f64, theta: f64| -field.f_phi_theta(theta);
    let mut worst = 0.0f64;
    for &t in theta_grid {
        for &r in r_grid {
            let dr = central_derivative(|x| f(x, t), r, 1e-3 * r);
            worst = worst.max(dr.abs());
        }
    }
    Ok(worst)
}

/// ∫∫ F_{φθ} dθ dφ over a sphere, composite Simpson in θ.
pub fn flux(field: &MonopoleField, panels: usize) -> f64 {
    let n = panels.max(2) & !1;
    let h = PI / n as f64;
    let mut s = field.f_phi_theta(0.0) + field.f_phi_theta(PI);
    for i in 1..n {
        s += field.f_phi_theta(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    2.0 * PI * s * h / 3.0
}

/// k = e g/(ħc), which must be a nonzero half-integer.
pub fn monopole_k(e_g_over_hbar_c: f64) -> Result<HalfInt> {
    let k = HalfInt::try_from_f64(e_g_over_hbar_c)?;
    validate_kj(k, j_min(k))?;
    Ok(k)
}

/// g = k ħc/e for a half-integer k, in units where ħc/e = 1.
pub fn charge_for_k(k: HalfInt) -> Result<f64> {
    validate_kj(k, j_min(k))?;
    Ok(k.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::theta_grid;

    fn grids() -> (Vec<f64>, Vec<f64>) {
        let r: Vec<f64> = (0..100).map(|i| 1.0 + 9.0 * i as f64 / 99.0).collect();
        (r, theta_grid(100, 0.1))
    }

    #[test]
    fn monopole_solves_maxwell() {
        let (r, t) = grids();
        for g in [0.5, 1.0, -3.0] {
            assert!(maxwell_residual(&MonopoleField::new(g), &r, &t).unwrap() < 1e-12);
        }
        assert_eq!(maxwell_residual(&MonopoleField::new(0.0), &r, &t).unwrap(), 0.0);
    }

    #[test]
    fn corrupted_potential_is_detected() {
        let (r, t) = grids();
        assert!(maxwell_residual(&MonopoleField::corrupted(1.0), &r, &t).unwrap() > 0.1);
    }

    #[test]
    fn bianchi_and_flux() {
        let (r, t) = grids();
        let f = MonopoleField::new(0.5);
        assert!(bianchi_residual(&f, &r, &t).unwrap() < 1e-10);
        assert!((f.f_phi_theta(0.3) - 0.5 * 0.3f64.sin()).abs() < 1e-16);
        assert!((flux(&f, 1000) - 4.0 * PI * 0.5).abs() < 1e-11);
    }

    #[test]
    fn charge_ladder() {
        assert_eq!(monopole_k(0.5).unwrap(), HalfInt::HALF);
        assert_eq!(monopole_k(-1.0).unwrap(), HalfInt::from_int(-1));
        assert!(monopole_k(0.3).is_err());
        assert!(monopole_k(0.0).is_err());
        assert_eq!(charge_for_k(HalfInt::from_doubled(3)).unwrap(), 1.5);
    }

    #[test]
    fn rounding_grows_toward_pole_and_origin() {
        // cancellation error scales like |g| cot θ / (r⁴ sin θ)
        let f = MonopoleField::new(1.0);
        let near = maxwell_residual(&f, &[0.2], &[1e-3]).unwrap();
        assert!(near < 1e-6 && near * 0.2f64.powi(4) * 1e-6 < 1e-12);
    }

    #[test]
    fn poles_rejected() {
        assert!(maxwell_residual(&MonopoleField::new(1.0), &[1.0], &[0.0]).is_err());
    }
}
