//! Numerical oracle: direct integration of the radial systems and a shooting
//! search for bound levels. Nothing here consults the closed-form spectra.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd::fornberg_weights;
use crate::ode::{integrate as ode_integrate, OdeOptions, State, Trajectory};
use crate::radial_exact::{system_rhs, ChannelSpec, RadialProfile, SystemCoeffs, SystemTag, Variable};
use crate::spectrum::{Level, Provenance, SpectrumTable};
use crate::tolerances::*;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeSystem {
    pub tag: SystemTag,
    pub mass: f64,
    pub nu: f64,
    pub energy: f64,
}

impl OdeSystem {
    pub fn new(tag: SystemTag, mass: f64, nu: f64, energy: f64) -> Result<Self> {
        if !(mass.is_finite() && nu.is_finite() && energy.is_finite()) {
            return Err(Error::validation("system coefficients must be finite"));
        }
        if nu < 0.0 {
            return Err(Error::validation("ν must be ≥ 0"));
        }
        let jmin_like = matches!(
            tag,
            SystemTag::GhJmin | SystemTag::GhJminMirror | SystemTag::FlatJmin | SystemTag::FlatJminMirror
        );
        if jmin_like && nu != 0.0 {
            return Err(Error::validation("j_min systems have ν = 0"));
        }
        Ok(OdeSystem { tag, mass, nu, energy })
    }

    /// The channel's native system (transformed frame) at the given energy.
    pub fn for_channel(ch: &ChannelSpec, energy: f64) -> Self {
        OdeSystem { tag: ch.native_tag(), mass: ch.mass(), nu: ch.nu(), energy }
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = energy;
        self
    }

    pub fn coeffs(&self) -> SystemCoeffs {
        SystemCoeffs { mass: self.mass, nu: self.nu, energy: self.energy }
    }

    fn singular_at_origin(&self) -> bool {
        self.tag.singular_at_origin(self.nu)
    }
}

/// y'(ρ) of the system.
pub fn rhs(sys: &OdeSystem, rho: f64, state: &[C64; 2]) -> Result<[C64; 2]> {
    let ok = if sys.singular_at_origin() { rho > 0.0 } else { rho >= 0.0 || sys.tag.is_flat() };
    if !(ok && rho.is_finite()) {
        return Err(Error::validation(format!("ρ = {rho} is outside the domain of {}", sys.tag.name())));
    }
    Ok(system_rhs(sys.tag, &sys.coeffs(), rho, state))
}

const SERIES_ORDER: usize = 10;

// Taylor coefficients (even or odd powers only, lowest first).
const RHO_OVER_SINH: [f64; 5] = [1.0, -1.0 / 6.0, 7.0 / 360.0, -31.0 / 15120.0, 127.0 / 604800.0];
const SECH: [f64; 5] = [1.0, -1.0 / 2.0, 5.0 / 24.0, -61.0 / 720.0, 277.0 / 8064.0];
const TANH: [f64; 5] = [1.0, -1.0 / 3.0, 2.0 / 15.0, -17.0 / 315.0, 62.0 / 2835.0];
const RHO_COTH: [f64; 5] = [1.0, 1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0];

type Mat = [[f64; 2]; 2];

/// Laurent coefficients A_p, p = −1 … SERIES_ORDER − 2, of A(ρ) about ρ = 0.
fn laurent(sys: &OdeSystem) -> Result<Vec<Mat>> {
    let (m, nu, e) = (sys.mass, sys.nu, sys.energy);
    let mut a = vec![[[0.0; 2]; 2]; SERIES_ORDER];
    let at = |a: &mut Vec<Mat>, p: i32, r: usize, c: usize, v: f64| {
        let idx = (p + 1) as usize;
        if idx < a.len() {
            a[idx][r][c] += v;
        }
    };
    for k in 0..5 {
        let even = 2 * k as i32;
        match sys.tag {
            SystemTag::FgSystem => {
                at(&mut a, even - 1, 0, 0, -nu * RHO_OVER_SINH[k]);
                at(&mut a, even - 1, 1, 1, nu * RHO_OVER_SINH[k]);
                at(&mut a, even, 0, 1, -e * SECH[k]);
                at(&mut a, even, 1, 0, e * SECH[k]);
            }
            SystemTag::FgTransformed => {
                at(&mut a, even - 1, 0, 0, -nu * RHO_COTH[k]);
                at(&mut a, even - 1, 1, 1, nu * RHO_COTH[k]);
                at(&mut a, even + 1, 0, 0, e * TANH[k]);
                at(&mut a, even + 1, 1, 1, -e * TANH[k]);
            }
            SystemTag::GhJmin => {
                at(&mut a, even + 1, 0, 0, -e * TANH[k]);
                at(&mut a, even + 1, 1, 1, e * TANH[k]);
            }
            SystemTag::GhJminMirror => {
                at(&mut a, even + 1, 0, 0, e * TANH[k]);
                at(&mut a, even + 1, 1, 1, -e * TANH[k]);
            }
            _ => return Err(Error::validation("flat systems have no curved-space series start")),
        }
    }
    let constant: Mat = match sys.tag {
        SystemTag::FgSystem => [[0.0, -m], [-m, 0.0]],
        SystemTag::FgTransformed => [[0.0, -(e + m - nu - 0.5)], [-(m + nu - e - 0.5), 0.0]],
        SystemTag::GhJmin => [[0.0, -(-e + m - 0.5)], [-(e + m - 0.5), 0.0]],
        SystemTag::GhJminMirror => [[0.0, -(e - m - 0.5)], [e + m + 0.5, 0.0]],
        _ => unreachable!(),
    };
    for r in 0..2 {
        for c in 0..2 {
            a[1][r][c] += constant[r][c];
        }
    }
    Ok(a)
}

/// Regular solution near ρ = 0 from its Frobenius series: f ~ ρ^{ν+1},
/// g ~ ρ^ν for general j; g(0) = 1, h ~ ρ at j_min.
pub fn series_start(sys: &OdeSystem, rho_start: f64) -> Result<[C64; 2]> {
    if !(rho_start > 0.0 && rho_start < 0.5) {
        return Err(Error::validation("series start needs 0 < ρ < 1/2"));
    }
    let a = laurent(sys)?;
    let am1 = a[0];
    let (s, y0) = match sys.tag {
        SystemTag::FgSystem | SystemTag::FgTransformed => (sys.nu, [0.0, 1.0]),
        _ => (0.0, [1.0, 0.0]),
    };
    let mut ys: Vec<[f64; 2]> = vec![y0];
    for mi in 1..SERIES_ORDER {
        let mut rhs = [0.0; 2];
        for p in 0..mi {
            let ap = a[p + 1];
            let y = ys[mi - 1 - p];
            for r in 0..2 {
                rhs[r] += ap[r][0] * y[0] + ap[r][1] * y[1];
            }
        }
        // (s + m − A₋₁) is diagonal
        let d0 = s + mi as f64 - am1[0][0];
        let d1 = s + mi as f64 - am1[1][1];
        ys.push([rhs[0] / d0, rhs[1] / d1]);
    }
    let mut out = [0.0; 2];
    for y in ys.iter().rev() {
        out[0] = out[0] * rho_start + y[0];
        out[1] = out[1] * rho_start + y[1];
    }
    let lead = rho_start.powf(s);
    Ok([C64::new(out[0] * lead, 0.0), C64::new(out[1] * lead, 0.0)])
}

/// Dense trajectory of the system over [a, b] (either direction).
pub fn integrate_trajectory(sys: &OdeSystem, start: [C64; 2], a: f64, b: f64, opts: &OdeOptions) -> Result<Trajectory> {
    rhs(sys, a, &start)?;
    rhs(sys, b, &start)?;
    let c = sys.coeffs();
    let tag = sys.tag;
    ode_integrate(move |x, y: &State| system_rhs(tag, &c, x, y), a, start, b, opts)
}

/// Integrates from `start` at `grid[0]` and samples on an increasing ρ
/// (or r, for flat systems) grid.
pub fn integrate(sys: &OdeSystem, start: [C64; 2], grid: &[f64], opts: &OdeOptions) -> Result<RadialProfile> {
    if grid.len() < 2 {
        return Err(Error::validation("integration grid needs at least two points"));
    }
    let tr = integrate_trajectory(sys, start, grid[0], *grid.last().unwrap(), opts)?;
    let mut c1 = Vec::with_capacity(grid.len());
    let mut c2 = Vec::with_capacity(grid.len());
    for &x in grid {
        let y = if x == grid[0] { start } else { tr.eval(x) };
        c1.push(y[0]);
        c2.push(y[1]);
    }
    let v = if sys.tag.is_flat() { Variable::R } else { Variable::Rho };
    RadialProfile::new(v, grid.to_vec(), c1, c2, sys.tag, sys.coeffs())
}

/// Large-ρ exponential rates and eigenvectors of the limiting
/// constant-coefficient system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptotics {
    pub growing_rate: f64,
    pub growing_left: [f64; 2],
    pub growing_right: [f64; 2],
    pub decaying_right: [f64; 2],
    /// Rates of the same branches in the untransformed frame.
    pub physical_growing_rate: f64,
    pub physical_decaying_rate: f64,
}

impl Asymptotics {
    /// Square integrability with the weight 1/cosh ρ of the untransformed pair.
    pub fn decaying_normalizable(&self) -> bool {
        2.0 * self.physical_decaying_rate - 1.0 < 0.0
    }

    pub fn growing_normalizable(&self) -> bool {
        2.0 * self.physical_growing_rate - 1.0 < 0.0
    }

    pub fn separation(&self, rho: f64) -> f64 {
        (2.0 * self.growing_rate * rho).exp()
    }
}

/// Limit of the j_min-type matrix [[−ε, ε−μ], [−(ε+μ), ε]]: eigenvalues ±μ,
/// right eigenvectors (1, 1) for −μ and (ε−μ, ε+μ) for +μ.
fn gh_type_asymptotics(e: f64, mu: f64) -> Result<Asymptotics> {
    if mu == 0.0 {
        return Err(Error::numerical("degenerate large-ρ limit (M = 1/2)"));
    }
    let plus_vec = [e - mu, e + mu];
    let minus_vec = [1.0, 1.0];
    // transformed-frame branches shift by ±1/2 in the untransformed frame
    let phys = |rate: f64, v: [f64; 2]| if v[0] - v[1] != 0.0 { rate + 0.5 } else { rate - 0.5 };
    let (g_rate, g_right, d_rate, d_right, left) = if mu > 0.0 {
        (mu, plus_vec, -mu, minus_vec, [1.0, -1.0])
    } else {
        (-mu, minus_vec, mu, plus_vec, [e + mu, mu - e])
    };
    Ok(Asymptotics {
        growing_rate: g_rate,
        growing_left: left,
        growing_right: g_right,
        decaying_right: d_right,
        physical_growing_rate: phys(g_rate, g_right),
        physical_decaying_rate: phys(d_rate, d_right),
    })
}

pub fn asymptotics(sys: &OdeSystem) -> Result<Asymptotics> {
    let (m, e) = (sys.mass, sys.energy);
    match sys.tag {
        SystemTag::FgSystem => {
            if m == 0.0 {
                return Err(Error::numerical("degenerate large-ρ limit (M = 0)"));
            }
            let (left, dec) = if m > 0.0 { ([1.0, -1.0], [1.0, 1.0]) } else { ([1.0, 1.0], [1.0, -1.0]) };
            Ok(Asymptotics {
                growing_rate: m.abs(),
                growing_left: left,
                growing_right: [-dec[0], dec[1]],
                decaying_right: dec,
                physical_growing_rate: m.abs(),
                physical_decaying_rate: -m.abs(),
            })
        }
        SystemTag::GhJmin => gh_type_asymptotics(e, m - 0.5),
        SystemTag::GhJminMirror => gh_type_asymptotics(-e, -m - 0.5),
        SystemTag::FgTransformed => {
            // in (G, F) order the limit is the j_min one at ε − ν
            let a = gh_type_asymptotics(e - sys.nu, m - 0.5)?;
            let sw = |v: [f64; 2]| [v[1], v[0]];
            Ok(Asymptotics {
                growing_left: sw(a.growing_left),
                growing_right: sw(a.growing_right),
                decaying_right: sw(a.decaying_right),
                ..a
            })
        }
        _ => Err(Error::validation("flat systems have no large-ρ limit here")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    pub rho_start: f64,
    pub rho_end: f64,
    /// Extend `rho_end` when the growing/decaying separation there is too small.
    pub auto_extend: bool,
    pub bracket: (f64, f64),
    pub scan_step: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_bisections: usize,
    /// Multiplies the series start vector.
    pub start_scale: f64,
}

impl ShootingConfig {
    pub fn new(lo: f64, hi: f64) -> Self {
        ShootingConfig {
            rho_start: SHOOT_RHO_START,
            rho_end: SHOOT_RHO_END,
            auto_extend: true,
            bracket: (lo, hi),
            scan_step: SHOOT_SCAN_STEP,
            abs_tol: SHOOT_ABS_TOL,
            rel_tol: 0.0,
            max_bisections: SHOOT_MAX_BISECTIONS,
            start_scale: 1.0,
        }
    }

    fn validate(&self, sys: &OdeSystem) -> Result<()> {
        if !(self.bracket.0 < self.bracket.1) {
            return Err(Error::validation("shooting bracket must be nonempty"));
        }
        if !(self.rho_start > 0.0) && sys.singular_at_origin() {
            return Err(Error::validation("rho_start must be > 0 for general-j systems"));
        }
        if !(self.rho_end > self.rho_start) {
            return Err(Error::validation("rho_end must exceed rho_start"));
        }
        if !(self.scan_step > 0.0 && self.abs_tol > 0.0 && self.start_scale != 0.0) {
            return Err(Error::validation("scan_step, abs_tol must be > 0 and start_scale ≠ 0"));
        }
        Ok(())
    }
}

fn shoot_options() -> OdeOptions {
    OdeOptions { rtol: 1e-12, atol: 1e-300, ..OdeOptions::default() }
}

/// Projection of the end state on the growing left eigenvector, divided by
/// the end-state size. It vanishes exactly when only the decaying branch
/// survives.
pub fn matching_functional(sys: &OdeSystem, cfg: &ShootingConfig, rho_end: f64) -> Result<f64> {
    let asy = asymptotics(sys)?;
    let s = series_start(sys, cfg.rho_start)?;
    let start = [s[0] * cfg.start_scale, s[1] * cfg.start_scale];
    let tr = integrate_trajectory(sys, start, cfg.rho_start, rho_end, &shoot_options())?;
    let y = tr.y_end;
    let l = asy.growing_left;
    let proj = y[0] * l[0] + y[1] * l[1];
    let size = y[0].norm().hypot(y[1].norm()) * l[0].hypot(l[1]);
    if !(size > 0.0 && size.is_finite()) {
        return Err(Error::numerical("end state vanished or overflowed"));
    }
    Ok(proj.re / size)
}

/// A level accepted by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootLevel {
    pub epsilon: f64,
    pub bracket_width: f64,
    pub bisections: usize,
}

/// A zero of the matching functional that is not a bound level, or an
/// energy where the functional could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedCandidate {
    pub epsilon: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootOutcome {
    pub system: OdeSystem,
    pub rho_end_used: f64,
    pub levels: Vec<ShootLevel>,
    pub rejected: Vec<RejectedCandidate>,
}

impl ShootOutcome {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.epsilon).collect()
    }

    pub fn note(&self) -> Option<&'static str> {
        self.levels.is_empty().then_some("no level found")
    }

    /// The accepted levels as a table, numbered in ascending order.
    pub fn table(&self, channel: &ChannelSpec) -> SpectrumTable {
        SpectrumTable {
            channel: *channel,
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| Level {
                    n: i as u32,
                    epsilon: l.epsilon,
                    epsilon_oracle: Some(l.epsilon),
                    delta: None,
                    g_side_index: None,
                    nonpositive: l.epsilon <= 0.0,
                    normalizable: true,
                    provenance: Provenance::Shooting,
                })
                .collect(),
        }
    }
}

fn refine(
    f: &(dyn Fn(f64) -> Result<f64> + Sync),
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
    cfg: &ShootingConfig,
) -> Result<ShootLevel> {
    let mut fhi = f(hi)?;
    let mut count = 0;
    while (hi - lo) > cfg.abs_tol.max(cfg.rel_tol * lo.abs().max(hi.abs())) && count < cfg.max_bisections {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        count += 1;
        if fm == 0.0 {
            return Ok(ShootLevel { epsilon: mid, bracket_width: 0.0, bisections: count });
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    let mut root = 0.5 * (lo + hi);
    if fhi != flo {
        let sec = lo - flo * (hi - lo) / (fhi - flo);
        if sec > lo && sec < hi {
            root = sec;
        }
    }
    Ok(ShootLevel { epsilon: root, bracket_width: hi - lo, bisections: count })
}

/// Scans the bracket for sign changes of the matching functional, refines
/// each by bisection plus one secant step, and keeps the roots whose
/// decaying branch is normalizable while the growing one is not.
pub fn shoot(template: &OdeSystem, cfg: &ShootingConfig) -> Result<ShootOutcome> {
    cfg.validate(template)?;
    if template.tag.is_flat() {
        return Err(Error::validation("shooting needs a curved-space system"));
    }
    let (lo, hi) = cfg.bracket;
    let mid_asy = asymptotics(&template.with_energy(0.5 * (lo + hi)))?;
    let mut rho_end = cfg.rho_end;
    if cfg.auto_extend && mid_asy.separation(rho_end) < SHOOT_MIN_SEPARATION {
        rho_end = rho_end.max(SHOOT_RHO_END_EXTENDED);
    }

    let f = |e: f64| matching_functional(&template.with_energy(e), cfg, rho_end);
    let steps = ((hi - lo) / cfg.scan_step).ceil().max(1.0) as usize;
    let energies: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { hi } else { lo + i as f64 * cfg.scan_step })
        .collect();
    let values: Vec<Result<f64>> = energies.par_iter().map(|&e| f(e)).collect();

    let mut rejected = Vec::new();
    let mut brackets = Vec::new();
    for i in 0..energies.len() - 1 {
        match (&values[i], &values[i + 1]) {
            (Ok(a), Ok(b)) => {
                if *a == 0.0 {
                    brackets.push((energies[i], energies[i], *a));
                } else if (*a < 0.0) != (*b < 0.0) && *b != 0.0 {
                    brackets.push((energies[i], energies[i + 1], *a));
                }
            }
            (Err(e), _) => rejected.push(RejectedCandidate {
                epsilon: energies[i],
                reason: format!("functional not evaluated: {e}"),
            }),
            _ => {}
        }
    }
    if let Err(e) = &values[energies.len() - 1] {
        rejected.push(RejectedCandidate { epsilon: hi, reason: format!("functional not evaluated: {e}") });
    }

    let roots: Vec<Result<ShootLevel>> = brackets
        .par_iter()
        .map(|&(a, b, fa)| {
            if a == b {
                Ok(ShootLevel { epsilon: a, bracket_width: 0.0, bisections: 0 })
            } else {
                refine(&f, a, b, fa, cfg)
            }
        })
        .collect();

    let mut levels = Vec::new();
    for r in roots {
        let lvl = match r {
            Ok(l) => l,
            Err(e) => {
                rejected.push(RejectedCandidate { epsilon: f64::NAN, reason: format!("refinement failed: {e}") });
                continue;
            }
        };
        let asy = asymptotics(&template.with_energy(lvl.epsilon))?;
        if !asy.decaying_normalizable() {
            rejected.push(RejectedCandidate {
                epsilon: lvl.epsilon,
                reason: format!(
                    "selected branch is not normalizable (physical rate {:+.3})",
                    asy.physical_decaying_rate
                ),
            });
        } else if asy.growing_normalizable() {
            rejected.push(RejectedCandidate {
                epsilon: lvl.epsilon,
                reason: format!(
                    "both branches are normalizable (physical rates {:+.3}, {:+.3}); no boundary condition at infinity",
                    asy.physical_decaying_rate, asy.physical_growing_rate
                ),
            });
        } else {
            levels.push(lvl);
        }
    }
    levels.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
    Ok(ShootOutcome { system: *template, rho_end_used: rho_end, levels, rejected })
}

/// max over interior points of |y' − A y| divided by the profile's peak,
/// with y' from 7-point Fornberg stencils in the system variable.
pub fn residual_norm(p: &RadialProfile) -> Result<f64> {
    const W: usize = 7;
    if p.len() < W {
        return Err(Error::validation("grid too short for the 7-point stencil"));
    }
    let x = p.system_variable();
    let (xs, order): (Vec<f64>, Vec<usize>) = {
        let mut idx: Vec<usize> = (0..p.len()).collect();
        idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
        (idx.iter().map(|&i| x[i]).collect(), idx)
    };
    let peak = p.peak();
    if peak == 0.0 {
        return Ok(0.0);
    }
    let c = p.coeffs;
    let half = W / 2;
    let mut worst = 0.0f64;
    for i in half..xs.len() - half {
        let nodes = &xs[i - half..=i + half];
        let w = fornberg_weights(xs[i], nodes);
        let mut dy = [C64::new(0.0, 0.0); 2];
        for (k, wk) in w.iter().enumerate() {
            let s = p.state(order[i - half + k]);
            dy[0] += s[0] * *wk;
            dy[1] += s[1] * *wk;
        }
        let y = p.state(order[i]);
        if p.system_tag.singular_at_origin(c.nu) && xs[i] <= 0.0 {
            return Err(Error::validation("profile reaches ρ = 0 where the system is singular"));
        }
        let r = system_rhs(p.system_tag, &c, xs[i], &y);
        let res = (dy[0] - r[0]).norm().max((dy[1] - r[1]).norm());
        worst = if res.is_nan() { f64::INFINITY } else { worst.max(res) };
    }
    Ok(worst / peak)
}

/// Liouville check for two solutions started from (1, 0) and (0, 1):
/// |ln|det Y(b)| − ln|det Y(a)| − ∫ₐᵇ tr A|. tr A is taken from `rhs`.
pub fn liouville_check(sys: &OdeSystem, a: f64, b: f64) -> Result<f64> {
    let opts = OdeOptions::default();
    let e1 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let e2 = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let y1 = integrate_trajectory(sys, e1, a, b, &opts)?.y_end;
    let y2 = integrate_trajectory(sys, e2, a, b, &opts)?.y_end;
    let det = y1[0] * y2[1] - y1[1] * y2[0];
    let trace = |x: f64| -> Result<f64> {
        let c1 = rhs(sys, x, &e1)?;
        let c2 = rhs(sys, x, &e2)?;
        Ok((c1[0] + c2[1]).re)
    };
    // composite Simpson
    let n = 200;
    let h = (b - a) / n as f64;
    let mut s = trace(a)? + trace(b)?;
    for i in 1..n {
        s += trace(a + i as f64 * h)? * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    let integral = s * h / 3.0;
    Ok((det.norm().ln() - integral).abs())
}

/// Uniform grid on [a, b].
pub fn uniform_grid(a: f64, b: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| if i + 1 == points { b } else { a + (b - a) * i as f64 / (points - 1) as f64 })
        .collect()
}
