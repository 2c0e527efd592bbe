//! Quantum-number bookkeeping, Wigner d-functions and the angular operator.
//!
//! Wigner convention: the standard sum formula
//!
//! d^j_{m'm}(β) = Σ_s (−1)^(m'−m+s) √((j+m')!(j−m')!(j+m)!(j−m)!)
//!                / ((j+m−s)! s! (m'−m+s)! (j−m'−s)!)
//!                · cos(β/2)^(2j+m−m'−2s) · sin(β/2)^(m'−m+2s)
//!
//! The angular factor of a spinor component is D_σ = e^{imφ} d^j_{−m,σ}(θ).
//! Indices outside [−j, j] give zero.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd::central_derivative;
use crate::tolerances::THETA_FD_STEP;
use crate::C64;

/// Integer or half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HalfInt {
    doubled: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };

    pub const fn from_doubled(doubled: i32) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(self) -> i32 {
        self.doubled
    }

    pub fn to_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt { doubled: self.doubled.abs() }
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// Accepts only values whose double is an integer.
    pub fn try_from_f64(x: f64) -> Result<Self> {
        let d = 2.0 * x;
        if !d.is_finite() || d.round() != d || d.abs() > i32::MAX as f64 {
            return Err(Error::validation(format!("{x} is not an integer or half-integer")));
        }
        Ok(HalfInt { doubled: d as i32 })
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// "1/2", "-3/2", "0.5", "2".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num
                .trim()
                .parse()
                .map_err(|_| Error::validation(format!("cannot parse '{s}' as a half-integer")))?;
            return match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_doubled(num)),
                _ => Err(Error::validation(format!("'{s}' must have denominator 1 or 2"))),
            };
        }
        let x: f64 = s
            .parse()
            .map_err(|_| Error::validation(format!("cannot parse '{s}' as a half-integer")))?;
        HalfInt::try_from_f64(x)
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HalfInt {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled + o.doubled }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled - o.doubled }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { doubled: -self.doubled }
    }
}

/// Monopole charge k, total moment j, projection m, Dirac branch δ and radial index n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuantumNumbers", into = "RawQuantumNumbers")]
pub struct QuantumNumbers {
    k: HalfInt,
    j: HalfInt,
    m: HalfInt,
    delta: i8,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawQuantumNumbers {
    k: HalfInt,
    j: HalfInt,
    m: HalfInt,
    delta: i8,
    n: u32,
}

impl From<QuantumNumbers> for RawQuantumNumbers {
    fn from(q: QuantumNumbers) -> Self {
        RawQuantumNumbers { k: q.k, j: q.j, m: q.m, delta: q.delta, n: q.n }
    }
}

impl TryFrom<RawQuantumNumbers> for QuantumNumbers {
    type Error = Error;
    fn try_from(r: RawQuantumNumbers) -> Result<Self> {
        QuantumNumbers::new(r.k, r.j, r.m, r.delta, r.n)
    }
}

/// Checks the (k, j) part of the selection rules.
pub fn validate_kj(k: HalfInt, j: HalfInt) -> Result<()> {
    if k.doubled() == 0 {
        return Err(Error::validation("k must be nonzero (2k is a nonzero integer)"));
    }
    let jmin2 = k.abs().doubled() - 1;
    if j.doubled() < jmin2 {
        return Err(Error::validation("j must be ≥ |k| − 1/2"));
    }
    if (j.doubled() - jmin2) % 2 != 0 {
        return Err(Error::validation("j − |k| + 1/2 must be an integer"));
    }
    Ok(())
}

impl QuantumNumbers {
    pub fn new(k: HalfInt, j: HalfInt, m: HalfInt, delta: i8, n: u32) -> Result<Self> {
        validate_kj(k, j)?;
        if m.abs() > j {
            return Err(Error::validation("|m| must be ≤ j"));
        }
        if !(j - m).is_integer() {
            return Err(Error::validation("j − m must be an integer"));
        }
        if delta != 1 && delta != -1 {
            return Err(Error::validation("delta must be +1 or −1"));
        }
        Ok(QuantumNumbers { k, j, m, delta, n })
    }

    pub fn k(&self) -> HalfInt {
        self.k
    }
    pub fn j(&self) -> HalfInt {
        self.j
    }
    pub fn m(&self) -> HalfInt {
        self.m
    }
    pub fn delta(&self) -> i8 {
        self.delta
    }
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    pub(crate) fn with_delta(mut self, delta: i8) -> Self {
        self.delta = delta;
        self
    }

    pub fn is_jmin(&self) -> bool {
        self.j == j_min(self.k)
    }

    pub fn nu(&self) -> f64 {
        nu(self.j, self.k).expect("validated quantum numbers")
    }
}

pub fn j_min(k: HalfInt) -> HalfInt {
    k.abs() - HalfInt::HALF
}

/// ν = √((j+1/2)² − k²). Exactly zero at j = |k| − 1/2.
pub fn nu(j: HalfInt, k: HalfInt) -> Result<f64> {
    // 4·radicand in integers: (2j+1)² − (2k)²
    let a = (j.doubled() + 1) as i64;
    let b = k.doubled() as i64;
    let r4 = a * a - b * b;
    if r4 < 0 {
        return Err(Error::validation("(j + 1/2)² must be ≥ k²"));
    }
    Ok((r4 as f64).sqrt() / 2.0)
}

/// Coefficients of the θ recursions for D_{k±1/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionCoeffs {
    pub a_coef: f64,
    pub b_coef: f64,
    pub c_coef: f64,
}

impl RecursionCoeffs {
    /// At j = |k| − 1/2 one of b, c has a negative radicand; its partner
    /// D-function is out of range there, so the coefficient is set to zero.
    pub fn new(j: HalfInt, k: HalfInt) -> Result<Self> {
        validate_kj(k, j)?;
        let jj = j.doubled() as i64;
        let kk = k.doubled() as i64;
        // (j − k − 1/2)(j + k + 3/2) times 4
        let b4 = (jj - kk - 1) * (jj + kk + 3);
        let c4 = (jj + kk - 1) * (jj - kk + 3);
        let half_root = |r4: i64| if r4 > 0 { (r4 as f64).sqrt() / 4.0 } else { 0.0 };
        Ok(RecursionCoeffs {
            a_coef: nu(j, k)? / 2.0,
            b_coef: half_root(b4),
            c_coef: half_root(c4),
        })
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn in_range(j: HalfInt, x: HalfInt) -> bool {
    x.abs() <= j && (j - x).is_integer()
}

/// Small Wigner function d^j_{mp,σ}(θ).
pub fn wigner_d(j: HalfInt, mp: HalfInt, sigma: HalfInt, theta: f64) -> Result<f64> {
    if j.doubled() < 0 {
        return Err(Error::validation("j must be ≥ 0"));
    }
    if !in_range(j, mp) || !in_range(j, sigma) {
        return Err(Error::validation(format!(
            "Wigner indices ({mp}, {sigma}) invalid for j = {j}"
        )));
    }
    Ok(wigner_d_unchecked(j, mp, sigma, theta))
}

/// As `wigner_d`, but indices outside the representation give 0.
pub fn wigner_d_or_zero(j: HalfInt, mp: HalfInt, sigma: HalfInt, theta: f64) -> f64 {
    if in_range(j, mp) && in_range(j, sigma) {
        wigner_d_unchecked(j, mp, sigma, theta)
    } else {
        0.0
    }
}

fn wigner_d_unchecked(j: HalfInt, mp: HalfInt, sigma: HalfInt, theta: f64) -> f64 {
    let j2 = j.doubled() as i64;
    let jpm = (j2 + mp.doubled() as i64) / 2;
    let jmm = (j2 - mp.doubled() as i64) / 2;
    let jps = (j2 + sigma.doubled() as i64) / 2;
    let jms = (j2 - sigma.doubled() as i64) / 2;
    let dm = (mp.doubled() as i64 - sigma.doubled() as i64) / 2;
    let pref = (factorial(jpm) * factorial(jmm) * factorial(jps) * factorial(jms)).sqrt();
    let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let smin = 0.max(-dm);
    let smax = jps.min(jmm);
    let mut sum = 0.0;
    for s in smin..=smax {
        let sign = if (dm + s) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = factorial(jps - s) * factorial(s) * factorial(dm + s) * factorial(jmm - s);
        let pc = (j2 - dm - 2 * s) as i32;
        let ps = (dm + 2 * s) as i32;
        sum += sign * ch.powi(pc) * sh.powi(ps) / denom;
    }
    pref * sum
}

/// D_σ(θ) at φ = 0 for projection m, i.e. d^j_{−m,σ}(θ).
pub fn big_d(j: HalfInt, m: HalfInt, sigma: HalfInt, theta: f64) -> f64 {
    wigner_d_or_zero(j, -m, sigma, theta)
}

/// Uniform interior θ grid on [edge, π − edge].
pub fn theta_grid(points: usize, edge: f64) -> Vec<f64> {
    let (lo, hi) = (edge, std::f64::consts::PI - edge);
    if points == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Max residual of each of the four θ recursions, with the worst θ.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionReport {
    pub max_residual: [f64; 4],
    pub worst_theta: [f64; 4],
}

impl RecursionReport {
    pub fn max(&self) -> f64 {
        self.max_residual.iter().cloned().fold(0.0, f64::max)
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        const NAMES: [&str; 4] = [
            "∂θ D_{k+1/2}",
            "∂θ D_{k−1/2}",
            "cotθ relation for D_{k+1/2}",
            "cotθ relation for D_{k−1/2}",
        ];
        for i in 0..4 {
            if !(self.max_residual[i] <= tol) {
                return Err(Error::Verification(format!(
                    "{} residual {:.3e} at θ = {} exceeds {tol:e}",
                    NAMES[i], self.max_residual[i], self.worst_theta[i]
                )));
            }
        }
        Ok(())
    }
}

/// Checks the derivative and 1/sinθ recursions linking D_{k−3/2} … D_{k+3/2}
/// on every grid point. ∂θ is a centered finite difference of `wigner_d`.
pub fn verify_theta_recursions(
    j: HalfInt,
    k: HalfInt,
    m: HalfInt,
    theta_grid: &[f64],
) -> Result<RecursionReport> {
    QuantumNumbers::new(k, j, m, 1, 0)?;
    if theta_grid.iter().any(|t| !(*t > 0.0 && *t < std::f64::consts::PI)) {
        return Err(Error::validation("θ grid must lie inside (0, π)"));
    }
    let rc = RecursionCoeffs::new(j, k)?;
    let (a, b, c) = (rc.a_coef, rc.b_coef, rc.c_coef);
    let h = HalfInt::HALF;
    let three_h = HalfInt::from_doubled(3);
    let d = |sigma: HalfInt, t: f64| big_d(j, m, sigma, t);
    let mf = m.to_f64();
    let kf = k.to_f64();

    let mut rep = RecursionReport { max_residual: [0.0; 4], worst_theta: [f64::NAN; 4] };
    for &t in theta_grid {
        let (s, co) = (t.sin(), t.cos());
        let dp = d(k + h, t);
        let dm = d(k - h, t);
        let dpp = d(k + three_h, t);
        let dmm = d(k - three_h, t);
        let ddp = central_derivative(|x| d(k + h, x), t, THETA_FD_STEP);
        let ddm = central_derivative(|x| d(k - h, x), t, THETA_FD_STEP);
        let r = [
            ddp - (a * dm - b * dpp),
            ddm - (c * dmm - a * dp),
            (-mf - (kf + 0.5) * co) / s * dp - (-a * dm - b * dpp),
            (-mf - (kf - 0.5) * co) / s * dm - (-c * dmm - a * dp),
        ];
        for i in 0..4 {
            let v = if r[i].is_nan() { f64::INFINITY } else { r[i].abs() };
            if rep.worst_theta[i].is_nan() || v > rep.max_residual[i] {
                rep.max_residual[i] = v;
                rep.worst_theta[i] = t;
            }
        }
    }
    Ok(rep)
}

const SPIN_SIGNS: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

/// Σ^k acting on a spinor with φ-dependence e^{imφ}, given the components
/// and their θ-derivatives at one θ. The spin term is iσ¹² = ½ diag(1,−1,1,−1)
/// and i∂φ acts as −m.
pub fn sigma_action_pointwise(k: f64, m: f64, theta: f64, psi: &[C64; 4], dpsi: &[C64; 4]) -> [C64; 4] {
    let (s, c) = (theta.sin(), theta.cos());
    let coef: [f64; 4] = std::array::from_fn(|a| ((-m) + (SPIN_SIGNS[a] * 0.5 - k) * c) / s);
    let chi: [C64; 4] = std::array::from_fn(|a| psi[a] * coef[a]);
    let i = C64::i();
    [
        -i * dpsi[3] + i * chi[3],
        -i * dpsi[2] - i * chi[2],
        i * dpsi[1] - i * chi[1],
        i * dpsi[0] + i * chi[0],
    ]
}

/// Σ^k applied to a θ-dependent spinor, derivatives by finite differences.
pub fn sigma_action<F: Fn(f64) -> [C64; 4]>(k: f64, m: f64, theta: f64, psi: F) -> [C64; 4] {
    let p = psi(theta);
    let dp: [C64; 4] = std::array::from_fn(|a| {
        crate::fd::central_derivative_c(|t| psi(t)[a], theta, THETA_FD_STEP)
    });
    sigma_action_pointwise(k, m, theta, &p, &dp)
}

/// The generalized Dirac operator K = −iγ⁰γ³Σ^k, with γ⁰γ³ = diag(1,−1,−1,1).
pub fn k_operator<F: Fn(f64) -> [C64; 4]>(k: f64, m: f64, theta: f64, psi: F) -> [C64; 4] {
    let s = sigma_action(k, m, theta, psi);
    let g = [1.0, -1.0, -1.0, 1.0];
    std::array::from_fn(|a| -C64::i() * s[a] * g[a])
}

/// σ indices (k−1/2, k+1/2, k−1/2, k+1/2) of the four spinor components.
pub fn component_sigmas(k: HalfInt) -> [HalfInt; 4] {
    let h = HalfInt::HALF;
    [k - h, k + h, k - h, k + h]
}

/// Applies Σ^k to Σ f_a D_{σ_a} e^{imφ} and compares with
/// iν(−f4 D_{k−1/2}, f3 D_{k+1/2}, f2 D_{k−1/2}, −f1 D_{k+1/2}).
///
/// At j = |k| − 1/2 the in-range D satisfies ∂θD = D·(±m + j cosθ)/sinθ and
/// that closed form is used, so the annihilation comes out exactly zero.
pub fn sigma_action_check(qn: &QuantumNumbers, f: &[C64; 4], theta_grid: &[f64]) -> Result<f64> {
    if theta_grid.iter().any(|t| !(*t > 0.0 && *t < std::f64::consts::PI)) {
        return Err(Error::validation("θ grid must lie inside (0, π)"));
    }
    let (j, k, m) = (qn.j(), qn.k(), qn.m());
    let (kf, mf, jf) = (k.to_f64(), m.to_f64(), j.to_f64());
    let nu = qn.nu();
    let sig = component_sigmas(k);
    let jmin = qn.is_jmin();
    let mut worst = 0.0f64;
    for &t in theta_grid {
        let dv: [f64; 4] = std::array::from_fn(|a| big_d(j, m, sig[a], t));
        let psi: [C64; 4] = std::array::from_fn(|a| f[a] * dv[a]);
        let dpsi: [C64; 4] = if jmin {
            let (s, c) = (t.sin(), t.cos());
            std::array::from_fn(|a| {
                if sig[a] == j {
                    psi[a] * ((mf + jf * c) / s)
                } else if sig[a] == -j {
                    psi[a] * (((-mf) + jf * c) / s)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        } else {
            std::array::from_fn(|a| {
                let s = sig[a];
                f[a] * central_derivative(|x| big_d(j, m, s, x), t, THETA_FD_STEP)
            })
        };
        let lhs = sigma_action_pointwise(kf, mf, t, &psi, &dpsi);
        let inu = C64::new(0.0, nu);
        let rhs = [
            -inu * f[3] * dv[0],
            inu * f[2] * dv[1],
            inu * f[1] * dv[2],
            -inu * f[0] * dv[3],
        ];
        for a in 0..4 {
            let r = (lhs[a] - rhs[a]).norm();
            worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
        }
    }
    Ok(worst)
}
