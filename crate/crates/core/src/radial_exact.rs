//! Closed-form radial solutions, spectra, frame changes and spinor assembly.
//!
//! Variables: r = sinh ρ, z = −sinh²ρ, Φ = 1 + r² = cosh²ρ.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::angular::{big_d, component_sigmas, k_operator, QuantumNumbers};
use crate::error::{Error, Result};
use crate::hypergeom::{hyp2f1, is_terminating, EvalPolicy, Hyp2F1Params};
use crate::spectrum::{Level, Provenance, SpectrumTable};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    R,
    Rho,
    Z,
}

impl Variable {
    pub fn to_rho(self, x: f64) -> f64 {
        match self {
            Variable::R => x.asinh(),
            Variable::Rho => x,
            Variable::Z => (-x).max(0.0).sqrt().asinh(),
        }
    }

    pub fn from_rho(self, rho: f64) -> f64 {
        match self {
            Variable::R => rho.sinh(),
            Variable::Rho => rho,
            Variable::Z => -rho.sinh().powi(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variable::R => "r",
            Variable::Rho => "rho",
            Variable::Z => "z",
        }
    }
}

/// Which first-order system a pair of radial functions solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemTag {
    /// (f, g), general j.
    FgSystem,
    /// (F, G), general j after removing the spurious singularities.
    FgTransformed,
    /// (g, h), j = j_min, k > 0.
    GhJmin,
    /// (g, h), j = j_min, k < 0.
    GhJminMirror,
    /// (g, h) in flat space, variable r, k > 0.
    FlatJmin,
    /// (g, h) in flat space, variable r, k < 0.
    FlatJminMirror,
}

impl SystemTag {
    pub fn name(self) -> &'static str {
        match self {
            SystemTag::FgSystem => "fg_system",
            SystemTag::FgTransformed => "fg_transformed",
            SystemTag::GhJmin => "gh_jmin",
            SystemTag::GhJminMirror => "gh_jmin_mirror",
            SystemTag::FlatJmin => "flat_jmin",
            SystemTag::FlatJminMirror => "flat_jmin_mirror",
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(self, SystemTag::FlatJmin | SystemTag::FlatJminMirror)
    }

    /// True when the system has a 1/sinh ρ coefficient (for ν > 0).
    pub fn singular_at_origin(self, nu: f64) -> bool {
        matches!(self, SystemTag::FgSystem | SystemTag::FgTransformed) && nu != 0.0
    }
}

/// Mass, angular constant and energy entering a radial system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemCoeffs {
    pub mass: f64,
    pub nu: f64,
    pub energy: f64,
}

/// Right-hand side y' = A(ρ) y of each system (independent variable r for
/// the flat systems).
pub fn system_rhs(tag: SystemTag, c: &SystemCoeffs, x: f64, y: &[C64; 2]) -> [C64; 2] {
    let SystemCoeffs { mass: m, nu, energy: e } = *c;
    let [a, b] = *y;
    match tag {
        SystemTag::FgSystem => {
            let w = if nu == 0.0 { 0.0 } else { nu / x.sinh() };
            let ic = 1.0 / x.cosh();
            [-a * w - b * (e * ic + m), b * w + a * (e * ic - m)]
        }
        SystemTag::FgTransformed => {
            let w = if nu == 0.0 { 0.0 } else { nu / x.tanh() } - e * x.tanh();
            [-a * w - b * (e + m - nu - 0.5), b * w - a * (m + nu - e - 0.5)]
        }
        SystemTag::GhJmin => {
            let t = e * x.tanh();
            [-a * t - b * (-e + m - 0.5), b * t - a * (e + m - 0.5)]
        }
        SystemTag::GhJminMirror => {
            let t = e * x.tanh();
            [a * t - b * (e - m - 0.5), -b * t + a * (e + m + 0.5)]
        }
        SystemTag::FlatJmin => [b * (e - m), -a * (e + m)],
        SystemTag::FlatJminMirror => [-b * (e - m), a * (e + m)],
    }
}

/// y' − A y for a candidate state and derivative.
pub fn operator_residual(tag: SystemTag, c: &SystemCoeffs, x: f64, y: &[C64; 2], dy: &[C64; 2]) -> [C64; 2] {
    let r = system_rhs(tag, c, x, y);
    [dy[0] - r[0], dy[1] - r[1]]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Particle mass in units of the inverse curvature radius.
    #[serde(rename = "M")]
    pub mass: f64,
    /// Curvature radius in metres, only for usual-units output.
    pub rho_c: Option<f64>,
}

impl ModelParams {
    pub fn new(mass: f64, rho_c: Option<f64>) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::validation("M must be a positive finite number"));
        }
        if let Some(r) = rho_c {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::validation("rho_c must be a positive finite number"));
            }
        }
        Ok(ModelParams { mass, rho_c })
    }
}

/// Quantum numbers plus model parameters. `mass()` is the effective mass δ·M.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel", into = "RawChannel")]
pub struct ChannelSpec {
    qn: QuantumNumbers,
    params: ModelParams,
}

#[derive(Serialize, Deserialize)]
struct RawChannel {
    #[serde(flatten)]
    qn: QuantumNumbers,
    #[serde(rename = "M")]
    physical_mass: f64,
    rho_c: Option<f64>,
}

impl From<ChannelSpec> for RawChannel {
    fn from(c: ChannelSpec) -> Self {
        RawChannel { qn: c.qn, physical_mass: c.physical_mass(), rho_c: c.params.rho_c }
    }
}

impl TryFrom<RawChannel> for ChannelSpec {
    type Error = Error;
    fn try_from(r: RawChannel) -> Result<Self> {
        ChannelSpec::new(r.qn, r.physical_mass, r.rho_c)
    }
}

impl ChannelSpec {
    pub fn new(qn: QuantumNumbers, physical_mass: f64, rho_c: Option<f64>) -> Result<Self> {
        let p = ModelParams::new(physical_mass, rho_c)?;
        if qn.is_jmin() && qn.delta() == -1 {
            return Err(Error::validation(
                "delta = −1 has no two-component structure at j = |k| − 1/2",
            ));
        }
        Ok(ChannelSpec {
            qn,
            params: ModelParams { mass: qn.delta() as f64 * p.mass, rho_c },
        })
    }

    pub fn qn(&self) -> &QuantumNumbers {
        &self.qn
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Effective mass δ·M.
    pub fn mass(&self) -> f64 {
        self.params.mass
    }

    pub fn physical_mass(&self) -> f64 {
        self.params.mass.abs()
    }

    pub fn nu(&self) -> f64 {
        self.qn.nu()
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.qn = self.qn.with_n(n);
        self
    }

    pub fn coeffs(&self, energy: f64) -> SystemCoeffs {
        SystemCoeffs { mass: self.mass(), nu: self.nu(), energy }
    }

    /// The system solved by the radial pair of this channel in the frame
    /// used for closed forms and shooting.
    pub fn native_tag(&self) -> SystemTag {
        if !self.qn.is_jmin() {
            SystemTag::FgTransformed
        } else if self.qn.k().doubled() > 0 {
            SystemTag::GhJmin
        } else {
            SystemTag::GhJminMirror
        }
    }
}

/// δ → −δ together with M → −M. An involution.
pub fn change_mass_sign(ch: &ChannelSpec) -> ChannelSpec {
    ChannelSpec {
        qn: ch.qn.with_delta(-ch.qn.delta()),
        params: ModelParams { mass: -ch.params.mass, rho_c: ch.params.rho_c },
    }
}

/// Pair of complex radial functions on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub variable: Variable,
    pub grid: Vec<f64>,
    pub comp1: Vec<C64>,
    pub comp2: Vec<C64>,
    pub system_tag: SystemTag,
    pub coeffs: SystemCoeffs,
}

impl RadialProfile {
    pub fn new(
        variable: Variable,
        grid: Vec<f64>,
        comp1: Vec<C64>,
        comp2: Vec<C64>,
        system_tag: SystemTag,
        coeffs: SystemCoeffs,
    ) -> Result<Self> {
        if comp1.len() != grid.len() || comp2.len() != grid.len() {
            return Err(Error::validation("profile arrays must match the grid length"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::validation("grid must be strictly increasing"));
        }
        Ok(RadialProfile { variable, grid, comp1, comp2, system_tag, coeffs })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.energy
    }

    /// The independent variable of the system at each grid point: ρ for the
    /// curved systems, r for the flat ones.
    pub fn system_variable(&self) -> Vec<f64> {
        if self.system_tag.is_flat() {
            self.grid.clone()
        } else {
            self.grid.iter().map(|&x| self.variable.to_rho(x)).collect()
        }
    }

    pub fn rho_values(&self) -> Vec<f64> {
        self.grid.iter().map(|&x| self.variable.to_rho(x)).collect()
    }

    pub fn state(&self, i: usize) -> [C64; 2] {
        [self.comp1[i], self.comp2[i]]
    }

    /// Same samples expressed on another variable, reordered to stay increasing.
    pub fn with_variable(&self, v: Variable) -> RadialProfile {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        let grid: Vec<f64> = self.grid.iter().map(|&x| v.from_rho(self.variable.to_rho(x))).collect();
        idx.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));
        RadialProfile {
            variable: v,
            grid: idx.iter().map(|&i| grid[i]).collect(),
            comp1: idx.iter().map(|&i| self.comp1[i]).collect(),
            comp2: idx.iter().map(|&i| self.comp2[i]).collect(),
            system_tag: self.system_tag,
            coeffs: self.coeffs,
        }
    }

    pub fn peak(&self) -> f64 {
        self.comp1
            .iter()
            .chain(&self.comp2)
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Rescaled so that ∫(|comp1|² + |comp2|²) dρ = 1 over the grid
    /// (trapezoid rule). A reporting convention only.
    pub fn normalized(&self) -> RadialProfile {
        let x = self.system_variable();
        let d: Vec<f64> = (0..self.len())
            .map(|i| self.comp1[i].norm_sqr() + self.comp2[i].norm_sqr())
            .collect();
        let mut s = 0.0;
        for i in 1..self.len() {
            s += 0.5 * (d[i] + d[i - 1]) * (x[i] - x[i - 1]).abs();
        }
        let mut out = self.clone();
        if s > 0.0 {
            let k = 1.0 / s.sqrt();
            out.comp1.iter_mut().for_each(|c| *c *= k);
            out.comp2.iter_mut().for_each(|c| *c *= k);
        }
        out
    }
}

/// ε_n = M + 2n + ν + 3/2, with the G-side index N = n + 1 for which
/// M + 2N + ν − 1/2 gives the same value.
pub fn spectrum_general(ch: &ChannelSpec, n_max: u32) -> Result<SpectrumTable> {
    if ch.qn().is_jmin() {
        return Err(Error::validation("general-j spectrum needs j > |k| − 1/2"));
    }
    let (m, nu) = (ch.mass(), ch.nu());
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let nf = n as f64;
        let e = m + 2.0 * nf + nu + 1.5;
        let big_n = n + 1;
        let e_g = m + 2.0 * big_n as f64 + nu - 0.5;
        if (e - e_g).abs() > 4.0 * f64::EPSILON * e.abs().max(1.0) {
            return Err(Error::numerical(format!("F- and G-side levels disagree at n = {n}")));
        }
        levels.push(Level {
            n,
            epsilon: e,
            epsilon_oracle: None,
            delta: None,
            g_side_index: Some(big_n),
            nonpositive: e <= 0.0,
            normalizable: true,
            provenance: Provenance::Analytic,
        });
    }
    Ok(SpectrumTable { channel: *ch, levels })
}

/// ε_n = M + 2n − 1/2 at j = j_min. The n = 0 value makes the g-series
/// terminate but the h-series does not, and that solution grows like
/// e^{(M−1/2)ρ}; it is listed with `normalizable = false`.
pub fn spectrum_jmin(ch: &ChannelSpec, n_max: u32) -> Result<SpectrumTable> {
    if !ch.qn().is_jmin() {
        return Err(Error::validation("j_min spectrum needs j = |k| − 1/2"));
    }
    let m = ch.mass();
    if m <= 0.5 {
        return Err(Error::NoBoundStates(format!(
            "M = {m} but normalizable j_min states need M > 1/2"
        )));
    }
    let levels = (0..=n_max)
        .map(|n| {
            let e = m + 2.0 * n as f64 - 0.5;
            Level {
                n,
                epsilon: e,
                epsilon_oracle: None,
                delta: None,
                g_side_index: None,
                nonpositive: e <= 0.0,
                normalizable: n > 0,
                provenance: Provenance::Analytic,
            }
        })
        .collect();
    Ok(SpectrumTable { channel: *ch, levels })
}

/// Analytic levels for either kind of channel.
pub fn spectrum(ch: &ChannelSpec, n_max: u32) -> Result<SpectrumTable> {
    if ch.qn().is_jmin() {
        spectrum_jmin(ch, n_max)
    } else {
        spectrum_general(ch, n_max)
    }
}

pub fn level_energy(ch: &ChannelSpec, n: u32) -> f64 {
    let nf = n as f64;
    if ch.qn().is_jmin() {
        ch.mass() + 2.0 * nf - 0.5
    } else {
        ch.mass() + 2.0 * nf + ch.nu() + 1.5
    }
}

/// One component c · z^p (1−z)^q ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentForm {
    pub coef: C64,
    pub hyper: Hyp2F1Params,
    pub z_power: f64,
    pub one_minus_z_power: f64,
}

/// z^p for z ≤ 0 on the branch |z|^p e^{−iπp}.
pub fn zpow(z: f64, p: f64) -> C64 {
    if p == 0.0 {
        return C64::new(1.0, 0.0);
    }
    C64::from_polar((-z).powf(p), -PI * p)
}

impl ComponentForm {
    pub fn eval(&self, z: f64, policy: &EvalPolicy) -> Result<C64> {
        let f = hyp2f1(&self.hyper, z, policy)?;
        Ok(self.coef * zpow(z, self.z_power) * (1.0 - z).powf(self.one_minus_z_power) * f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactSolution {
    pub channel: ChannelSpec,
    pub energy: f64,
    pub system_tag: SystemTag,
    /// (F, G) for general j, (g, h) at j_min.
    pub components: [ComponentForm; 2],
}

impl ExactSolution {
    pub fn eval(&self, z: f64, policy: &EvalPolicy) -> Result<[C64; 2]> {
        Ok([self.components[0].eval(z, policy)?, self.components[1].eval(z, policy)?])
    }

    /// Samples the solution on a grid of the given variable.
    pub fn profile(&self, variable: Variable, grid: &[f64]) -> Result<RadialProfile> {
        let policy = EvalPolicy::default();
        let mut c1 = Vec::with_capacity(grid.len());
        let mut c2 = Vec::with_capacity(grid.len());
        for &x in grid {
            let z = Variable::Z.from_rho(variable.to_rho(x));
            let z = if variable == Variable::Z { x } else { z };
            if z > 0.0 {
                return Err(Error::validation("z grid must lie in (−∞, 0]"));
            }
            let [a, b] = self.eval(z, &policy)?;
            c1.push(a);
            c2.push(b);
        }
        RadialProfile::new(
            variable,
            grid.to_vec(),
            c1,
            c2,
            self.system_tag,
            self.channel.coeffs(self.energy),
        )
    }

    pub fn big_f_coef(&self) -> C64 {
        self.components[0].coef
    }

    pub fn big_g_coef(&self) -> C64 {
        self.components[1].coef
    }
}

/// (a, b, c) of the F-series in the general-j solution at energy ε.
pub fn fg_hyper_params(mass: f64, nu: f64, energy: f64) -> Hyp2F1Params {
    Hyp2F1Params::real(
        mass / 2.0 + 0.75 + nu / 2.0 - energy / 2.0,
        -mass / 2.0 + 1.25 + nu / 2.0 - energy / 2.0,
        1.5 + nu,
    )
}

/// F₀/G₀ from matching the ρ → 0 behaviour of F and G, valid at any ε:
/// −i(ε + M − ν − 1/2)/(2ν + 1). At a bound level this equals
/// 2i(a−1)(b−1)/((c−1)(−ε + M + ν − 1/2)).
pub fn fg_coefficient_ratio(mass: f64, nu: f64, energy: f64) -> C64 {
    C64::new(0.0, -(energy + mass - nu - 0.5) / (2.0 * nu + 1.0))
}

/// (a, b) of the g-series at j_min; c = 1/2.
pub fn jmin_hyper_params(mass: f64, energy: f64) -> Hyp2F1Params {
    Hyp2F1Params::real((-energy + mass - 0.5) / 2.0, (-energy - mass + 0.5) / 2.0, 0.5)
}

/// H₀/G₀ = i(−ε − M + 1/2).
pub fn jmin_coefficient_ratio(mass: f64, energy: f64) -> C64 {
    C64::new(0.0, -energy - mass + 0.5)
}

/// General-j solution (F, G) at an arbitrary energy, G₀ = 1.
pub fn fg_solution(ch: &ChannelSpec, energy: f64) -> Result<ExactSolution> {
    if ch.qn().is_jmin() {
        return Err(Error::validation("general-j solution needs j > |k| − 1/2"));
    }
    let (m, nu) = (ch.mass(), ch.nu());
    let hf = fg_hyper_params(m, nu, energy);
    Ok(ExactSolution {
        channel: *ch,
        energy,
        system_tag: SystemTag::FgTransformed,
        components: [
            ComponentForm {
                coef: fg_coefficient_ratio(m, nu, energy),
                hyper: hf,
                z_power: (1.0 + nu) / 2.0,
                one_minus_z_power: (1.0 - energy) / 2.0,
            },
            ComponentForm {
                coef: C64::new(1.0, 0.0),
                hyper: hf.lowered(),
                z_power: nu / 2.0,
                one_minus_z_power: -energy / 2.0,
            },
        ],
    })
}

/// j_min solution (g, h) of the k > 0 system at an arbitrary energy, G₀ = 1.
pub fn gh_jmin_solution(ch: &ChannelSpec, energy: f64) -> Result<ExactSolution> {
    if !ch.qn().is_jmin() {
        return Err(Error::validation("j_min solution needs j = |k| − 1/2"));
    }
    let m = ch.mass();
    let hg = jmin_hyper_params(m, energy);
    Ok(ExactSolution {
        channel: *ch,
        energy,
        system_tag: SystemTag::GhJmin,
        components: [
            ComponentForm {
                coef: C64::new(1.0, 0.0),
                hyper: hg,
                z_power: 0.0,
                one_minus_z_power: -energy / 2.0,
            },
            ComponentForm {
                coef: jmin_coefficient_ratio(m, energy),
                hyper: Hyp2F1Params::new(hg.a + 1.0, hg.b + 1.0, C64::new(1.5, 0.0)),
                z_power: 0.5,
                one_minus_z_power: (1.0 - energy) / 2.0,
            },
        ],
    })
}

fn require_degree(p: &Hyp2F1Params, n: u32) -> Result<()> {
    match is_terminating(p) {
        Some(d) if d == n as u64 => Ok(()),
        other => Err(Error::numerical(format!(
            "series does not terminate at degree {n} (found {other:?})"
        ))),
    }
}

/// Bound level n of a general-j channel, sampled on a z grid.
#[allow(non_snake_case)]
pub fn exact_FG(ch: &ChannelSpec, n: u32, z_grid: &[f64]) -> Result<RadialProfile> {
    exact_FG_on(ch, n, Variable::Z, z_grid)
}

#[allow(non_snake_case)]
pub fn exact_FG_on(ch: &ChannelSpec, n: u32, variable: Variable, grid: &[f64]) -> Result<RadialProfile> {
    let sol = fg_solution(ch, level_energy(ch, n))?;
    require_degree(&sol.components[0].hyper, n)?;
    sol.profile(variable, grid)
}

/// Level n at j_min, sampled on a z grid. k < 0 channels are produced from
/// the k > 0 solution through `jmin_mirror`.
pub fn exact_gh_jmin(ch: &ChannelSpec, n: u32, z_grid: &[f64]) -> Result<RadialProfile> {
    exact_gh_jmin_on(ch, n, Variable::Z, z_grid)
}

pub fn exact_gh_jmin_on(ch: &ChannelSpec, n: u32, variable: Variable, grid: &[f64]) -> Result<RadialProfile> {
    if ch.mass() <= 0.5 {
        return Err(Error::NoBoundStates(format!(
            "M = {} but normalizable j_min states need M > 1/2",
            ch.mass()
        )));
    }
    let sol = gh_jmin_solution(ch, level_energy(ch, n))?;
    require_degree(&sol.components[0].hyper, n)?;
    let p = sol.profile(variable, grid)?;
    if ch.qn().k().doubled() > 0 {
        Ok(p)
    } else {
        jmin_mirror(&p)
    }
}

/// Exact bound profile of either kind in its native frame.
pub fn exact_profile(ch: &ChannelSpec, n: u32, variable: Variable, grid: &[f64]) -> Result<RadialProfile> {
    if ch.qn().is_jmin() {
        exact_gh_jmin_on(ch, n, variable, grid)
    } else {
        exact_FG_on(ch, n, variable, grid)
    }
}

/// (a, b) ↦ (a cosh(ρ/2) − b sinh(ρ/2), b cosh(ρ/2) − a sinh(ρ/2)),
/// i.e. a+b scaled by e^{−ρ/2} and a−b by e^{ρ/2}. `sign = −1` inverts.
fn half_rho_rotation(a: C64, b: C64, rho: f64, sign: f64) -> (C64, C64) {
    let (c, s) = ((rho / 2.0).cosh(), sign * (rho / 2.0).sinh());
    (a * c - b * s, b * c - a * s)
}

fn map_profile<F>(p: &RadialProfile, tag: SystemTag, coeffs: SystemCoeffs, f: F) -> RadialProfile
where
    F: Fn(C64, C64, f64) -> (C64, C64),
{
    let rho = p.rho_values();
    let mut out = p.clone();
    for i in 0..p.len() {
        let (a, b) = f(p.comp1[i], p.comp2[i], rho[i]);
        out.comp1[i] = a;
        out.comp2[i] = b;
    }
    out.system_tag = tag;
    out.coeffs = coeffs;
    out
}

/// (F, G) → (f, g) with f + g = e^{−ρ/2}(F + G), f − g = e^{ρ/2}(F − G).
#[allow(non_snake_case)]
pub fn transform_FG_to_fg(p: &RadialProfile) -> Result<RadialProfile> {
    if p.system_tag != SystemTag::FgTransformed {
        return Err(Error::validation("expected an (F, G) profile"));
    }
    Ok(map_profile(p, SystemTag::FgSystem, p.coeffs, |a, b, r| half_rho_rotation(a, b, r, 1.0)))
}

#[allow(non_snake_case)]
pub fn transform_fg_to_FG(p: &RadialProfile) -> Result<RadialProfile> {
    if p.system_tag != SystemTag::FgSystem {
        return Err(Error::validation("expected an (f, g) profile"));
    }
    Ok(map_profile(p, SystemTag::FgTransformed, p.coeffs, |a, b, r| {
        half_rho_rotation(a, b, r, -1.0)
    }))
}

/// Maps a j_min solution of one sign of k to the other at the same energy:
/// g' = −(g cosh ρ − h sinh ρ), h' = h cosh ρ − g sinh ρ. An involution that
/// keeps h(0) = 0; it is G → −G in the untransformed pair.
pub fn jmin_mirror(p: &RadialProfile) -> Result<RadialProfile> {
    let tag = match p.system_tag {
        SystemTag::GhJmin => SystemTag::GhJminMirror,
        SystemTag::GhJminMirror => SystemTag::GhJmin,
        _ => return Err(Error::validation("expected a j_min (g, h) profile")),
    };
    Ok(map_profile(p, tag, p.coeffs, |g, h, r| {
        let (c, s) = (r.cosh(), r.sinh());
        (-(g * c - h * s), h * c - g * s)
    }))
}

/// (g, h, ε) → (h, g, −ε): a self-symmetry of each j_min system.
pub fn jmin_swap_symmetry(p: &RadialProfile) -> Result<RadialProfile> {
    if !matches!(p.system_tag, SystemTag::GhJmin | SystemTag::GhJminMirror) {
        return Err(Error::validation("expected a j_min (g, h) profile"));
    }
    let mut c = p.coeffs;
    c.energy = -c.energy;
    Ok(map_profile(p, p.system_tag, c, |g, h, _| (h, g)))
}

/// Untransformed radial pair at grid point i: (f, g) for general j, (G, H)
/// at j_min.
pub fn untransformed_pair(p: &RadialProfile, i: usize) -> Result<(C64, C64)> {
    let rho = p.variable.to_rho(p.grid[i]);
    let (a, b) = (p.comp1[i], p.comp2[i]);
    match p.system_tag {
        SystemTag::FgSystem => Ok((a, b)),
        SystemTag::FgTransformed | SystemTag::GhJmin | SystemTag::GhJminMirror => {
            Ok(half_rho_rotation(a, b, rho, 1.0))
        }
        _ => Err(Error::validation("flat profiles have no curved-space spinor")),
    }
}

/// Radial amplitudes f₁..f₄ at grid point i, including r⁻¹Φ^{−1/4}.
pub fn radial_amplitudes(ch: &ChannelSpec, p: &RadialProfile, i: usize) -> Result<[C64; 4]> {
    let rho = p.variable.to_rho(p.grid[i]);
    if !(rho > 0.0) {
        return Err(Error::validation("spinor assembly needs r > 0"));
    }
    let jmin = ch.qn().is_jmin();
    let tag_ok = match p.system_tag {
        SystemTag::FgSystem | SystemTag::FgTransformed => !jmin,
        SystemTag::GhJmin => jmin && ch.qn().k().doubled() > 0,
        SystemTag::GhJminMirror => jmin && ch.qn().k().doubled() < 0,
        _ => false,
    };
    if !tag_ok {
        return Err(Error::validation("profile system does not match the channel"));
    }
    let (a, b) = untransformed_pair(p, i)?;
    let i_ = C64::i();
    let pref = 1.0 / (rho.sinh() * rho.cosh().sqrt());
    let z = C64::new(0.0, 0.0);
    let f = if !jmin {
        let d = ch.qn().delta() as f64;
        let (f1, f2) = ((a + i_ * b) * FRAC_1_SQRT_2, (a - i_ * b) * FRAC_1_SQRT_2);
        [f1, f2, f2 * d, f1 * d]
    } else {
        // (a, b) = (G, H)
        let (p1, p2) = ((b + i_ * a) * FRAC_1_SQRT_2, (b - i_ * a) * FRAC_1_SQRT_2);
        if ch.qn().k().doubled() > 0 {
            [p1, z, p2, z]
        } else {
            [z, p1, z, p2]
        }
    };
    Ok(f.map(|c| c * pref))
}

/// Full spinor ψ(t, ρ_i, θ, φ).
pub fn assemble_spinor(
    ch: &ChannelSpec,
    p: &RadialProfile,
    i: usize,
    theta: f64,
    phi: f64,
    t: f64,
) -> Result<[C64; 4]> {
    let f = radial_amplitudes(ch, p, i)?;
    let (j, m) = (ch.qn().j(), ch.qn().m());
    let sig = component_sigmas(ch.qn().k());
    let phase = C64::from_polar(1.0, m.to_f64() * phi - p.energy() * t);
    Ok(std::array::from_fn(|a| f[a] * big_d(j, m, sig[a], theta) * phase))
}

/// max |Kψ − λψ| / max |ψ| with λ = −δν, at grid point i over a θ grid.
pub fn k_eigenvalue_residual(ch: &ChannelSpec, p: &RadialProfile, i: usize, thetas: &[f64]) -> Result<f64> {
    let f = radial_amplitudes(ch, p, i)?;
    let (j, m, k) = (ch.qn().j(), ch.qn().m(), ch.qn().k());
    let sig = component_sigmas(k);
    let lambda = -(ch.qn().delta() as f64) * ch.nu();
    let psi = |th: f64| -> [C64; 4] { std::array::from_fn(|a| f[a] * big_d(j, m, sig[a], th)) };
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for &th in thetas {
        let kpsi = k_operator(k.to_f64(), m.to_f64(), th, psi);
        let v = psi(th);
        for a in 0..4 {
            worst = worst.max((kpsi[a] - v[a] * lambda).norm());
            scale = scale.max(v[a].norm());
        }
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// Phase that makes the profile as real as possible, and the largest
/// remaining |Im| relative to the peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub phase: f64,
    pub max_imag_ratio: f64,
}

pub fn global_phase_reality(p: &RadialProfile) -> PhaseReport {
    let s: C64 = p.comp1.iter().chain(&p.comp2).map(|c| c * c).sum();
    let phase = -s.arg() / 2.0;
    let rot = C64::from_polar(1.0, phase);
    let peak = p.peak();
    let im = p
        .comp1
        .iter()
        .chain(&p.comp2)
        .map(|c| (c * rot).im.abs())
        .fold(0.0, f64::max);
    PhaseReport { phase, max_imag_ratio: if peak > 0.0 { im / peak } else { 0.0 } }
}
