//! Flat-space j_min solutions and the large-curvature-radius limit of the
//! curved hypergeometric solutions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergeom::{hyp2f1, EvalPolicy, Hyp2F1Params};
use crate::radial_exact::{RadialProfile, SystemCoeffs, SystemTag, Variable};
use crate::spectrum::ser_f64;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// ε² > M², solutions cos pr and sin pr.
    Oscillatory,
    /// ε² < M², solutions cosh qr and sinh qr.
    Evanescent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatChannel {
    pub epsilon: f64,
    pub mass: f64,
    pub regime: Regime,
    /// p = √(ε² − M²) or q = √(M² − ε²).
    pub p_or_q: f64,
}

impl FlatChannel {
    pub fn new(epsilon: f64, mass: f64) -> Result<Self> {
        if !(epsilon.is_finite() && mass.is_finite()) {
            return Err(Error::validation("ε and M must be finite"));
        }
        let d = epsilon * epsilon - mass * mass;
        if d.abs() <= 1e-14 * (epsilon * epsilon).max(mass * mass).max(1e-300) {
            return Err(Error::validation("ε² = M² is the threshold; p = 0 has no pair basis"));
        }
        let regime = if d > 0.0 { Regime::Oscillatory } else { Regime::Evanescent };
        Ok(FlatChannel { epsilon, mass, regime, p_or_q: d.abs().sqrt() })
    }

    fn coeffs(&self) -> SystemCoeffs {
        SystemCoeffs { mass: self.mass, nu: 0.0, energy: self.epsilon }
    }
}

/// Closed forms (g, h) of the two pairs at complex p:
/// pair 1 = (((ε−M)/p) sin pr, cos pr), pair 2 = (−((ε−M)/p) cos pr, sin pr).
/// At p = iq these become the hyperbolic pairs (pair 2 up to a factor i).
pub fn pair_closed_form(epsilon: f64, mass: f64, p: C64, r: f64) -> [[C64; 2]; 2] {
    let k = (epsilon - mass) / p;
    let (s, c) = ((p * r).sin(), (p * r).cos());
    [[k * s, c], [-k * c, s]]
}

fn sample<F: Fn(f64) -> [f64; 2]>(ch: &FlatChannel, r_grid: &[f64], f: F) -> Result<RadialProfile> {
    let vals: Vec<[f64; 2]> = r_grid.iter().map(|&r| f(r)).collect();
    RadialProfile::new(
        Variable::R,
        r_grid.to_vec(),
        vals.iter().map(|v| C64::new(v[0], 0.0)).collect(),
        vals.iter().map(|v| C64::new(v[1], 0.0)).collect(),
        SystemTag::FlatJmin,
        ch.coeffs(),
    )
}

/// The two independent (g, h) pairs of the flat k > 0 system.
pub fn flat_solutions(ch: &FlatChannel, r_grid: &[f64]) -> Result<(RadialProfile, RadialProfile)> {
    let k = (ch.epsilon - ch.mass) / ch.p_or_q;
    let p = ch.p_or_q;
    match ch.regime {
        Regime::Oscillatory => Ok((
            sample(ch, r_grid, |r| [k * (p * r).sin(), (p * r).cos()])?,
            sample(ch, r_grid, |r| [-k * (p * r).cos(), (p * r).sin()])?,
        )),
        Regime::Evanescent => Ok((
            sample(ch, r_grid, |r| [k * (p * r).sinh(), (p * r).cosh()])?,
            sample(ch, r_grid, |r| [k * (p * r).cosh(), (p * r).sinh()])?,
        )),
    }
}

/// e^{−qr} (−(ε−M)/q, 1), the difference of the two evanescent pairs.
pub fn decaying_solution(ch: &FlatChannel, r_grid: &[f64]) -> Result<RadialProfile> {
    if ch.regime != Regime::Evanescent {
        return Err(Error::validation("a decaying solution exists only for ε² < M²"));
    }
    let (k, q) = ((ch.epsilon - ch.mass) / ch.p_or_q, ch.p_or_q);
    sample(ch, r_grid, |r| [-k * (-q * r).exp(), (-q * r).exp()])
}

/// k < 0 counterpart: g → −g.
pub fn flat_mirror(p: &RadialProfile) -> Result<RadialProfile> {
    let tag = match p.system_tag {
        SystemTag::FlatJmin => SystemTag::FlatJminMirror,
        SystemTag::FlatJminMirror => SystemTag::FlatJmin,
        _ => return Err(Error::validation("expected a flat profile")),
    };
    let mut out = p.clone();
    out.comp1.iter_mut().for_each(|c| *c = -*c);
    out.system_tag = tag;
    Ok(out)
}

/// ħ and c used to read the inputs of `limit_scan`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub hbar: f64,
    pub c: f64,
}

impl Default for Units {
    fn default() -> Self {
        Units { hbar: 1.0, c: 1.0 }
    }
}

/// Curved solutions g₁, g₂, h₁, h₂ in usual units at curvature radius ρ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvedForms {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Eρ/(cħ).
    pub e_rho: f64,
    pub rho: f64,
}

impl CurvedForms {
    pub fn new(m: f64, e: f64, rho: f64, u: Units) -> Self {
        let e_rho = e * rho / (u.c * u.hbar);
        let mu = m * u.c * rho / u.hbar - 0.5;
        CurvedForms {
            a: 0.5 * (-e_rho + mu),
            b: 0.5 * (-e_rho - mu),
            alpha: 0.5 * (-e_rho + 1.0 + mu),
            beta: 0.5 * (-e_rho + 1.0 - mu),
            e_rho,
            rho,
        }
    }

    fn pieces(&self, r: f64, a: f64, b: f64, shift: f64, pol: &EvalPolicy) -> Result<(f64, f64)> {
        let x = r * r / (self.rho * self.rho);
        let pre = (1.0 + x).powf(-self.e_rho / 2.0 + shift);
        let f1 = hyp2f1(&Hyp2F1Params::real(a, b, 0.5), -x, pol)?.re;
        let f2 = hyp2f1(&Hyp2F1Params::real(a + 0.5, b + 0.5, 1.5), -x, pol)?.re;
        Ok((pre * f1, r * pre * f2))
    }

    /// (g₁, g₂) at R.
    pub fn g(&self, r: f64, pol: &EvalPolicy) -> Result<(f64, f64)> {
        self.pieces(r, self.a, self.b, 0.0, pol)
    }

    /// (h₁, h₂) at R.
    pub fn h(&self, r: f64, pol: &EvalPolicy) -> Result<(f64, f64)> {
        self.pieces(r, self.alpha, self.beta, 0.5, pol)
    }

    /// First series term (ab/c)(−R²/ρ²) of F(a, b; 1/2; −R²/ρ²).
    pub fn first_term(&self, r: f64) -> f64 {
        self.a * self.b / 0.5 * (-(r * r) / (self.rho * self.rho))
    }
}

/// Sup-norm distances from the flat limits at one ρ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    #[serde(serialize_with = "ser_f64")]
    pub rho: f64,
    #[serde(serialize_with = "ser_f64")]
    pub g1_vs_cos: f64,
    #[serde(serialize_with = "ser_f64")]
    pub h1_vs_cos: f64,
    #[serde(serialize_with = "ser_f64")]
    pub p_g2_vs_sin: f64,
    #[serde(serialize_with = "ser_f64")]
    pub p_h2_vs_sin: f64,
}

impl LimitRow {
    pub fn max(&self) -> f64 {
        self.g1_vs_cos.max(self.h1_vs_cos).max(self.p_g2_vs_sin).max(self.p_h2_vs_sin)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitTable {
    #[serde(serialize_with = "ser_f64")]
    pub p: f64,
    pub rows: Vec<LimitRow>,
    /// Least-squares slope of ln(max error) against ln ρ.
    #[serde(serialize_with = "ser_f64")]
    pub slope: f64,
    /// Errors strictly decrease with ρ in every column.
    pub monotone: bool,
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// For each ρ, sup over the R grid of |g₁ − cos pR|, |h₁ − cos pR|,
/// |p g₂ − sin pR| and |p h₂ − sin pR|, with p = √(E²/c²ħ² − m²c²/ħ²).
pub fn limit_scan(m: f64, e: f64, rho_list: &[f64], r_grid: &[f64], units: Units) -> Result<LimitTable> {
    let p2 = (e / (units.c * units.hbar)).powi(2) - (m * units.c / units.hbar).powi(2);
    if !(p2 > 0.0) {
        return Err(Error::validation("limit scan needs E² > m²c⁴"));
    }
    if rho_list.is_empty() || rho_list.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::validation("curvature radii must be positive"));
    }
    let p = p2.sqrt();
    let pol = EvalPolicy::default();
    let rows: Vec<Result<LimitRow>> = rho_list
        .par_iter()
        .map(|&rho| {
            let cf = CurvedForms::new(m, e, rho, units);
            let mut row = LimitRow { rho, g1_vs_cos: 0.0, h1_vs_cos: 0.0, p_g2_vs_sin: 0.0, p_h2_vs_sin: 0.0 };
            for &r in r_grid {
                let (g1, g2) = cf.g(r, &pol)?;
                let (h1, h2) = cf.h(r, &pol)?;
                let (s, c) = (p * r).sin_cos();
                row.g1_vs_cos = row.g1_vs_cos.max((g1 - c).abs());
                row.h1_vs_cos = row.h1_vs_cos.max((h1 - c).abs());
                row.p_g2_vs_sin = row.p_g2_vs_sin.max((p * g2 - s).abs());
                row.p_h2_vs_sin = row.p_h2_vs_sin.max((p * h2 - s).abs());
            }
            Ok(row)
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let monotone = rows.windows(2).all(|w| {
        w[1].rho > w[0].rho
            && w[1].g1_vs_cos < w[0].g1_vs_cos
            && w[1].h1_vs_cos < w[0].h1_vs_cos
            && w[1].p_g2_vs_sin < w[0].p_g2_vs_sin
            && w[1].p_h2_vs_sin < w[0].p_h2_vs_sin
    });
    let slope = if rows.len() >= 2 {
        let x: Vec<f64> = rows.iter().map(|r| r.rho).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.max()).collect();
        loglog_slope(&x, &y)
    } else {
        f64::NAN
    };
    Ok(LimitTable { p, rows, slope, monotone })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizedNote {
    pub n: u32,
    /// (Eρ/cħ − mcρ/ħ + 1/2)/2 before rounding.
    #[serde(serialize_with = "ser_f64")]
    pub n_real: f64,
    /// E lies below the lowest level of the j_min formula.
    pub below_ground: bool,
}

/// The j_min level index matching a fixed E at curvature radius ρ.
pub fn quantized_limit_note(m: f64, e: f64, rho: f64, units: Units) -> QuantizedNote {
    let eps = e * rho / (units.c * units.hbar);
    let mm = m * units.c * rho / units.hbar;
    let n_real = (eps - mm + 0.5) / 2.0;
    if n_real < 0.0 {
        return QuantizedNote { n: 0, n_real, below_ground: true };
    }
    QuantizedNote { n: n_real.round() as u32, n_real, below_ground: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_numeric::{residual_norm, uniform_grid};

    #[test]
    fn threshold_rejected() {
        assert!(FlatChannel::new(1.0, 1.0).is_err());
        assert!(FlatChannel::new(-2.0, 2.0).is_err());
    }

    #[test]
    fn flat_pairs_solve_the_flat_system() {
        let grid = uniform_grid(0.0, 6.0, 601);
        for (e, m) in [(1.2, 1.0), (0.4, 1.0), (-3.0, 0.5)] {
            let ch = FlatChannel::new(e, m).unwrap();
            let (a, b) = flat_solutions(&ch, &grid).unwrap();
            for p in [&a, &b] {
                assert!(residual_norm(p).unwrap() < 1e-10);
                assert!(residual_norm(&flat_mirror(p).unwrap()).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn evanescent_decay_is_monotone() {
        let ch = FlatChannel::new(0.6, 1.0).unwrap();
        let d = decaying_solution(&ch, &uniform_grid(0.0, 10.0, 200)).unwrap();
        assert!(d.comp2.windows(2).all(|w| w[1].re < w[0].re));
        assert!(residual_norm(&d).unwrap() < 1e-10);
    }

    #[test]
    fn continuation_to_imaginary_momentum() {
        let (e, m) = (0.3f64, 1.1f64);
        let q = (m * m - e * e).sqrt();
        let k = (e - m) / q;
        for r in [0.0, 0.7, 2.3] {
            let v = pair_closed_form(e, m, C64::new(0.0, q), r);
            assert!((v[0][0] - k * (q * r).sinh()).norm() < 1e-14);
            assert!((v[0][1] - (q * r).cosh()).norm() < 1e-14);
            assert!((v[1][0] - C64::i() * k * (q * r).cosh()).norm() < 1e-14);
            assert!((v[1][1] - C64::i() * (q * r).sinh()).norm() < 1e-14);
        }
    }

    #[test]
    fn limit_errors_shrink_and_origin_is_exact() {
        let grid = uniform_grid(0.0, 5.0, 101);
        let t = limit_scan(1.0, 1.2, &[1e2, 1e3], &grid, Units::default()).unwrap();
        assert!(t.monotone);
        let cf = CurvedForms::new(1.0, 1.2, 1e3, Units::default());
        assert_eq!(cf.g(0.0, &EvalPolicy::default()).unwrap().0, 1.0);
        // first series term tends to −(pR)²/2
        let p2 = 1.2f64 * 1.2 - 1.0;
        let far = CurvedForms::new(1.0, 1.2, 1e6, Units::default());
        assert!((far.first_term(2.0) + p2 * 4.0 / 2.0).abs() < 1e-5);
    }

    #[test]
    fn quantized_note_examples() {
        let u = Units::default();
        assert_eq!(quantized_limit_note(1.0, 2.5, 1.0, u).n, 1);
        let a = quantized_limit_note(1.0, 1.3, 100.0, u);
        let b = quantized_limit_note(1.0, 1.3, 200.0, u);
        assert!((b.n as f64 / a.n as f64 - 2.0).abs() < 0.05);
        let low = quantized_limit_note(1.0, 0.2, 1.0, u);
        assert!(low.below_ground && low.n == 0);
    }
}
