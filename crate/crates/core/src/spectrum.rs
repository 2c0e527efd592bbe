//! Level tables, their JSON form, and conversion to usual units.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::radial_exact::ChannelSpec;
use crate::tolerances::HBAR_C_EV_M;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Analytic,
    Shooting,
}

/// Formats a float with 17 significant digits.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: u32,
    #[serde(serialize_with = "ser_f64")]
    pub epsilon: f64,
    #[serde(serialize_with = "ser_opt_f64")]
    pub epsilon_oracle: Option<f64>,
    /// |ε_oracle − ε|.
    #[serde(serialize_with = "ser_opt_f64")]
    pub delta: Option<f64>,
    /// N with ε_N = ε_n on the G side (general j only).
    pub g_side_index: Option<u32>,
    pub nonpositive: bool,
    pub normalizable: bool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub channel: ChannelSpec,
    pub levels: Vec<Level>,
}

impl SpectrumTable {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.epsilon).collect()
    }

    /// Pairs each analytic level with the closest oracle energy and fills in
    /// `epsilon_oracle` and `delta`.
    pub fn attach_oracle(&mut self, oracle: &[f64]) {
        for l in &mut self.levels {
            let best = oracle
                .iter()
                .copied()
                .min_by(|a, b| (a - l.epsilon).abs().total_cmp(&(b - l.epsilon).abs()));
            l.epsilon_oracle = best;
            l.delta = best.map(|e| (e - l.epsilon).abs());
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectrum tables serialize")
    }
}

/// One level in usual units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UsualUnitsLevel {
    pub n: u32,
    #[serde(serialize_with = "ser_f64")]
    pub energy_ev: f64,
    /// E_n / (M c²).
    #[serde(serialize_with = "ser_f64")]
    pub ratio_to_rest_energy: f64,
}

/// Levels in eV for a curvature radius ρ_c in metres. The Compton length is
/// ħ/(Mc) = ρ_c/M.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UsualUnits {
    #[serde(serialize_with = "ser_f64")]
    pub rho_c_m: f64,
    #[serde(serialize_with = "ser_f64")]
    pub rest_energy_ev: f64,
    #[serde(serialize_with = "ser_f64")]
    pub compton_length_m: f64,
    /// 1 − λ_e/(2ρ_c), the ground-level formula of the j_min family.
    #[serde(serialize_with = "ser_f64")]
    pub ground_ratio_formula: f64,
    pub levels: Vec<UsualUnitsLevel>,
}

pub fn energy_ev(epsilon: f64, rho_c_m: f64) -> f64 {
    epsilon * HBAR_C_EV_M / rho_c_m
}

pub fn to_usual_units(table: &SpectrumTable, rho_c_m: f64) -> UsualUnits {
    let m = table.channel.physical_mass();
    let rest = energy_ev(m, rho_c_m);
    let lambda = rho_c_m / m;
    UsualUnits {
        rho_c_m,
        rest_energy_ev: rest,
        compton_length_m: lambda,
        ground_ratio_formula: 1.0 - lambda / (2.0 * rho_c_m),
        levels: table
            .levels
            .iter()
            .map(|l| UsualUnitsLevel {
                n: l.n,
                energy_ev: energy_ev(l.epsilon, rho_c_m),
                ratio_to_rest_energy: l.epsilon / m,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::{HalfInt, QuantumNumbers};
    use crate::radial_exact::spectrum_jmin;

    fn table() -> SpectrumTable {
        let qn = QuantumNumbers::new(HalfInt::HALF, HalfInt::ZERO, HalfInt::ZERO, 1, 0).unwrap();
        spectrum_jmin(&ChannelSpec::new(qn, 1.0, None).unwrap(), 2).unwrap()
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
        assert_eq!(sig17(0.1), "1.0000000000000001e-1");
        let s = table().to_json();
        assert!(s.contains("\"epsilon\": 2.5000000000000000e0"));
    }

    #[test]
    fn json_round_trip() {
        let mut t = table();
        t.attach_oracle(&[2.5000000001, 4.4999999999]);
        let s = t.to_json();
        let back: SpectrumTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(s, back.to_json());
    }

    #[test]
    fn usual_units_ground_formula() {
        // λ_e = ρ_c/M; at M = 1 the ground formula gives 1 − 1/2
        let u = to_usual_units(&table(), 2.0e-12);
        assert!((u.ground_ratio_formula - 0.5).abs() < 1e-15);
        assert!((u.levels[0].ratio_to_rest_energy - u.ground_ratio_formula).abs() < 1e-15);
        assert!((u.rest_energy_ev - HBAR_C_EV_M / 2.0e-12).abs() < 1e-6);
    }
}
