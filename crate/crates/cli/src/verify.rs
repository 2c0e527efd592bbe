//! The invariant suite behind `adsmd verify`. Every check compares a
//! measured value against a fixed tolerance.

use std::f64::consts::PI;

use adsmd::angular::{
    sigma_action_check, theta_grid, verify_theta_recursions, wigner_d, HalfInt, QuantumNumbers,
};
use adsmd::field_check::{bianchi_residual, flux, maxwell_residual, MonopoleField};
use adsmd::flat_limit::{decaying_solution, flat_mirror, flat_solutions, limit_scan, pair_closed_form, FlatChannel, Units};
use adsmd::hypergeom::{hyp2f1, hyp2f1_derivative_shift, is_terminating, EvalPolicy, Hyp2F1Params, Strategy};
use adsmd::radial_exact::{
    exact_profile, fg_coefficient_ratio, fg_hyper_params, global_phase_reality, jmin_coefficient_ratio,
    jmin_hyper_params, jmin_mirror, jmin_swap_symmetry, k_eigenvalue_residual, level_energy, spectrum_jmin,
    transform_FG_to_fg, transform_fg_to_FG, ChannelSpec, Variable,
};
use adsmd::radial_numeric::{liouville_check, residual_norm, shoot, uniform_grid, OdeSystem, ShootingConfig};
use adsmd::{Error, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::Suite;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
    pub error: Option<String>,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => format!("{tag} {}/{}: {e}", self.suite, self.name),
            None => format!("{tag} {}/{}: {:.3e} (tol {:.0e})", self.suite, self.name, self.value, self.tol),
        }
    }
}

type CheckFn = fn() -> Result<f64>;

struct Check {
    suite: &'static str,
    name: &'static str,
    tol: f64,
    run: CheckFn,
}

fn hi(d: i32) -> HalfInt {
    HalfInt::from_doubled(d)
}

fn jmin_channel(mass: f64, k2: i32) -> Result<ChannelSpec> {
    let qn = QuantumNumbers::new(hi(k2), hi(k2.abs() - 1), hi((k2.abs() - 1) % 2), 1, 0)?;
    ChannelSpec::new(qn, mass, None)
}

fn general_channel(mass: f64, k2: i32, j2: i32, delta: i8) -> Result<ChannelSpec> {
    let qn = QuantumNumbers::new(hi(k2), hi(j2), hi(j2 % 2), delta, 0)?;
    ChannelSpec::new(qn, mass, None)
}

fn z_mesh() -> Vec<f64> {
    let rho = uniform_grid(0.01f64.sqrt().asinh(), 5f64.asinh(), 1200);
    rho.iter().rev().map(|r| -r.sinh().powi(2)).collect()
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

// angular

fn selection_rule_scan() -> Result<f64> {
    let mut bad = 0;
    for k2 in -10i32..=10 {
        for j2 in -10i32..=10 {
            for m2 in -10i32..=10 {
                let rule = k2 != 0
                    && j2 >= k2.abs() - 1
                    && (j2 - k2.abs() + 1) % 2 == 0
                    && m2.abs() <= j2
                    && (j2 - m2) % 2 == 0;
                if QuantumNumbers::new(hi(k2), hi(j2), hi(m2), 1, 0).is_ok() != rule {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad as f64)
}

fn theta_recursions() -> Result<f64> {
    let grid = theta_grid(60, 1e-3);
    let mut worst = 0.0f64;
    for k2 in [-3, -2, -1, 1, 2, 3] {
        for j2 in 0..=7 {
            for m2 in (-j2..=j2).step_by(2) {
                if QuantumNumbers::new(hi(k2), hi(j2), hi(m2), 1, 0).is_ok() {
                    worst = worst.max(verify_theta_recursions(hi(j2), hi(k2), hi(m2), &grid)?.max());
                }
            }
        }
    }
    Ok(worst)
}

fn sigma_general() -> Result<f64> {
    let grid = theta_grid(40, 1e-3);
    let f = [C64::new(0.3, -1.2), C64::new(0.5, 0.1), C64::new(-0.7, 0.4), C64::new(1.1, 0.0)];
    let mut worst = 0.0f64;
    for (k2, j2, m2) in [(1, 2, 0), (2, 3, 1), (-3, 4, -2), (-1, 6, 2)] {
        worst = worst.max(sigma_action_check(&QuantumNumbers::new(hi(k2), hi(j2), hi(m2), 1, 0)?, &f, &grid)?);
    }
    Ok(worst)
}

fn jmin_annihilation() -> Result<f64> {
    let grid = theta_grid(40, 1e-3);
    let a = [C64::new(0.3, -1.2), C64::new(0.0, 0.0), C64::new(-0.7, 0.4), C64::new(0.0, 0.0)];
    let b = [C64::new(0.0, 0.0), a[0], C64::new(0.0, 0.0), a[2]];
    let mut worst = 0.0f64;
    for (k2, j2, m2, v) in [(1, 0, 0, a), (-1, 0, 0, b), (3, 2, -2, a), (-3, 2, 2, b)] {
        worst = worst.max(sigma_action_check(&QuantumNumbers::new(hi(k2), hi(j2), hi(m2), 1, 0)?, &v, &grid)?);
    }
    Ok(worst)
}

fn wigner_unitarity() -> Result<f64> {
    let mut worst = 0.0f64;
    for j2 in 0..=7 {
        for mp in (-j2..=j2).step_by(2) {
            for &t in &[0.1, 1.3, 2.9] {
                let mut s = 0.0;
                for sig in (-j2..=j2).step_by(2) {
                    s += wigner_d(hi(j2), hi(mp), hi(sig), t)?.powi(2);
                }
                worst = worst.max((s - 1.0).abs());
            }
        }
    }
    Ok(worst)
}

// hypergeometric

fn pfaff_consistency() -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let direct = EvalPolicy::with_strategy(Strategy::DirectSeries);
    let mapped = EvalPolicy::with_strategy(Strategy::PfaffMapped);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let p = Hyp2F1Params::real(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(0.5..5.5));
        let z = rng.gen_range(-0.95..-0.001);
        let d = hyp2f1(&p, z, &direct)?;
        worst = worst.max((d - hyp2f1(&p, z, &mapped)?).norm() / d.norm());
    }
    Ok(worst)
}

fn terminating_exactness() -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pol = EvalPolicy::default();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(0..12u64);
        let (b, c) = (rng.gen_range(-5.0..5.0), rng.gen_range(0.5..5.5));
        let z = -rng.gen_range(0.0..30.0f64);
        let a = -(n as f64);
        let p = Hyp2F1Params::real(a, b, c);
        if is_terminating(&p) != Some(n) {
            return Ok(f64::INFINITY);
        }
        let (mut s, mut mag, mut t) = (0.0, 0.0, 1.0);
        for k in 0..=n {
            if k > 0 {
                let i = (k - 1) as f64;
                t *= (a + i) * (b + i) / ((c + i) * (i + 1.0)) * z;
            }
            s += t;
            mag += f64::abs(t);
        }
        worst = worst.max((hyp2f1(&p, z, &pol)?.re - s).abs() / mag);
    }
    Ok(worst)
}

fn derivative_shift() -> Result<f64> {
    let pol = EvalPolicy::default();
    let mut worst = 0.0f64;
    for (a, b, c, z) in [(2.0, 2.0, 2.0, -0.5), (1.3, -0.4, 2.2, -3.0), (0.7, 1.9, 1.6, -12.0)] {
        let p = Hyp2F1Params::real(a, b, c);
        let lower = p.lowered();
        let fd = adsmd::fd::central_derivative_c(|x| hyp2f1(&lower, x, &pol).unwrap(), z, 1e-3);
        let v = hyp2f1_derivative_shift(&p, z, &pol)?;
        worst = worst.max((v - fd).norm() / v.norm());
    }
    Ok(worst)
}

// exact radial solutions

fn jmin_residuals() -> Result<f64> {
    let z = z_mesh();
    let mut worst = 0.0f64;
    for m in [1.0, 2.0, 5.0] {
        for k2 in [1, -1] {
            let ch = jmin_channel(m, k2)?;
            for n in 0..=3 {
                let p = exact_profile(&ch, n, Variable::Z, &z)?;
                worst = worst.max(residual_norm(&p)?).max(residual_norm(&jmin_mirror(&p)?)?);
            }
        }
    }
    Ok(worst)
}

fn general_residuals() -> Result<f64> {
    let z = z_mesh();
    let mut worst = 0.0f64;
    for (m, k2, j2, d) in [(2.0, 1, 2, 1), (1.0, 2, 3, 1), (3.0, -3, 4, -1)] {
        let ch = general_channel(m, k2, j2, d)?;
        for n in 0..=2 {
            let p = exact_profile(&ch, n, Variable::Z, &z)?;
            worst = worst.max(residual_norm(&p)?).max(residual_norm(&transform_FG_to_fg(&p)?)?);
        }
    }
    Ok(worst)
}

fn frame_round_trip() -> Result<f64> {
    let grid = uniform_grid(0.05, 3.0, 200);
    let ch = general_channel(1.0, 2, 3, 1)?;
    let p = exact_profile(&ch, 1, Variable::Rho, &grid)?;
    let back = transform_fg_to_FG(&transform_FG_to_fg(&p)?)?;
    let g = exact_profile(&jmin_channel(2.0, 1)?, 2, Variable::Rho, &grid)?;
    let twice = jmin_mirror(&jmin_mirror(&g)?)?;
    let mut worst = 0.0f64;
    for i in 0..grid.len() {
        worst = worst.max((back.comp1[i] - p.comp1[i]).norm().max((back.comp2[i] - p.comp2[i]).norm()) / p.peak());
        worst = worst.max((twice.comp1[i] - g.comp1[i]).norm().max((twice.comp2[i] - g.comp2[i]).norm()) / g.peak());
    }
    Ok(worst)
}

fn swap_symmetry() -> Result<f64> {
    let p = exact_profile(&jmin_channel(2.0, 1)?, 1, Variable::Rho, &uniform_grid(0.05, 3.0, 400))?;
    residual_norm(&jmin_swap_symmetry(&p)?)
}

fn coefficient_relations() -> Result<f64> {
    let pol = EvalPolicy::default();
    let mut worst = 0.0f64;
    for (m, k2, j2) in [(2.0, 1, 2), (1.0, 2, 3)] {
        let ch = general_channel(m, k2, j2, 1)?;
        for n in 0..=2 {
            let e = level_energy(&ch, n);
            let (mm, nu) = (ch.mass(), ch.nu());
            let slope = hyp2f1_derivative_shift(&fg_hyper_params(mm, nu, e), 0.0, &pol)?;
            let via_shift = C64::i() * 2.0 * slope / (-e + mm + nu - 0.5);
            worst = worst.max((via_shift - fg_coefficient_ratio(mm, nu, e)).norm());
        }
    }
    for m in [1.0, 2.0, 5.0] {
        let ch = jmin_channel(m, 1)?;
        for n in 1..=3 {
            let e = level_energy(&ch, n);
            let p = jmin_hyper_params(m, e);
            let raised = Hyp2F1Params::new(p.a + 1.0, p.b + 1.0, p.c + 1.0);
            let via_shift = C64::i() * 2.0 * hyp2f1_derivative_shift(&raised, 0.0, &pol)? / (-e + m - 0.5);
            worst = worst.max((via_shift - jmin_coefficient_ratio(m, e)).norm());
        }
    }
    Ok(worst)
}

fn k_eigenvalue() -> Result<f64> {
    let thetas = theta_grid(13, 0.05);
    let grid = [0.2, 0.8, 1.5];
    let mut worst = 0.0f64;
    for k2 in [1, -1, 3, -3] {
        let ch = jmin_channel(2.0, k2)?;
        let p = exact_profile(&ch, 1, Variable::Rho, &grid)?;
        worst = worst.max(k_eigenvalue_residual(&ch, &p, 1, &thetas)?);
    }
    for (k2, j2, d) in [(1, 2, 1), (1, 2, -1), (2, 3, 1), (-3, 4, -1)] {
        let ch = general_channel(3.0, k2, j2, d)?;
        let p = exact_profile(&ch, 0, Variable::Rho, &grid)?;
        worst = worst.max(k_eigenvalue_residual(&ch, &p, 2, &thetas)?);
    }
    Ok(worst)
}

fn phase_reality() -> Result<f64> {
    let z = z_mesh();
    let p = exact_profile(&general_channel(1.0, 2, 3, 1)?, 2, Variable::Z, &z)?;
    let g = exact_profile(&jmin_channel(1.0, 1)?, 1, Variable::Z, &z)?;
    Ok(global_phase_reality(&p).max_imag_ratio.max(global_phase_reality(&g).max_imag_ratio))
}

// shooting oracle

fn nearest_gap(analytic: &[f64], oracle: &[f64]) -> f64 {
    analytic
        .iter()
        .map(|e| oracle.iter().map(|o| (o - e).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

fn oracle_jmin() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in [1.0, 2.0] {
        for k2 in [1, -1] {
            let ch = jmin_channel(m, k2)?;
            let table = spectrum_jmin(&ch, 3)?;
            let normalizable: Vec<f64> =
                table.levels.iter().filter(|l| l.normalizable).map(|l| l.epsilon).collect();
            let out = shoot(&OdeSystem::for_channel(&ch, m), &ShootingConfig::new(m - 1.02, m + 6.03))?;
            worst = worst.max(nearest_gap(&normalizable, &out.energies()));
        }
    }
    Ok(worst)
}

fn oracle_general() -> Result<f64> {
    let ch = general_channel(2.0, 1, 2, 1)?;
    let analytic: Vec<f64> = (0..=2).map(|n| level_energy(&ch, n)).collect();
    let cfg = ShootingConfig::new(analytic[0] - 1.01, analytic[2] + 1.03);
    let out = shoot(&OdeSystem::for_channel(&ch, 0.0), &cfg)?;
    Ok(nearest_gap(&analytic, &out.energies()))
}

fn oracle_light_mass() -> Result<f64> {
    let mut found = 0;
    for k2 in [1, -1] {
        let ch = jmin_channel(0.4, k2)?;
        found += shoot(&OdeSystem::for_channel(&ch, 0.0), &ShootingConfig::new(-6.0, 6.0))?.levels.len();
        if !matches!(spectrum_jmin(&ch, 2), Err(Error::NoBoundStates(_))) {
            found += 1;
        }
    }
    Ok(found as f64)
}

fn oracle_scale_invariance() -> Result<f64> {
    let ch = jmin_channel(1.0, 1)?;
    let sys = OdeSystem::for_channel(&ch, 1.0);
    let mut cfg = ShootingConfig::new(1.98, 3.03);
    let a = shoot(&sys, &cfg)?.energies();
    cfg.start_scale = 1e3;
    let b = shoot(&sys, &cfg)?.energies();
    if a.len() != b.len() || a.is_empty() {
        return Ok(f64::INFINITY);
    }
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

fn liouville() -> Result<f64> {
    let ch = general_channel(1.0, 2, 3, 1)?;
    liouville_check(&OdeSystem::for_channel(&ch, 2.3), 0.1, 2.0)
}

// flat space

fn flat_pairs() -> Result<f64> {
    let grid = uniform_grid(0.0, 6.0, 601);
    let mut worst = 0.0f64;
    for (e, m) in [(1.2, 1.0), (-2.0, 1.0), (0.4, 1.0), (0.0, 0.7)] {
        let ch = FlatChannel::new(e, m)?;
        let (a, b) = flat_solutions(&ch, &grid)?;
        for p in [a, b] {
            worst = worst.max(residual_norm(&p)?).max(residual_norm(&flat_mirror(&p)?)?);
        }
    }
    let d = decaying_solution(&FlatChannel::new(0.6, 1.0)?, &grid)?;
    Ok(worst.max(residual_norm(&d)?))
}

fn flat_continuation() -> Result<f64> {
    let (e, m) = (0.3f64, 1.1f64);
    let q = (m * m - e * e).sqrt();
    let ch = FlatChannel::new(e, m)?;
    let grid = uniform_grid(0.0, 3.0, 31);
    let (c1, c2) = flat_solutions(&ch, &grid)?;
    let mut worst = 0.0f64;
    for (i, &r) in grid.iter().enumerate() {
        let v = pair_closed_form(e, m, C64::new(0.0, q), r);
        worst = worst.max((v[0][0] - c1.comp1[i]).norm()).max((v[0][1] - c1.comp2[i]).norm());
        worst = worst.max((v[1][0] - C64::i() * c2.comp1[i]).norm()).max((v[1][1] - C64::i() * c2.comp2[i]).norm());
    }
    Ok(worst / c1.peak().max(c2.peak()))
}

fn flat_limit_monotone() -> Result<f64> {
    let t = limit_scan(1.0, 1.2, &[1e2, 1e3, 1e4], &uniform_grid(0.0, 5.0, 101), Units::default())?;
    Ok(flag(t.monotone))
}

// electromagnetic field

fn field_grids() -> (Vec<f64>, Vec<f64>) {
    (uniform_grid(1.0, 10.0, 100), theta_grid(100, 0.1))
}

fn maxwell() -> Result<f64> {
    let (r, t) = field_grids();
    let mut worst = 0.0f64;
    for g in [0.5, 1.0, -1.5] {
        worst = worst.max(maxwell_residual(&MonopoleField::new(g), &r, &t)?);
    }
    Ok(worst)
}

fn corrupted_detected() -> Result<f64> {
    let (r, t) = field_grids();
    Ok(flag(maxwell_residual(&MonopoleField::corrupted(1.0), &r, &t)? > 0.1))
}

fn bianchi() -> Result<f64> {
    let (r, t) = field_grids();
    bianchi_residual(&MonopoleField::new(0.5), &r, &t)
}

fn flux_total() -> Result<f64> {
    let mut worst = 0.0f64;
    for k2 in [1, -2, 3] {
        let g = adsmd::field_check::charge_for_k(hi(k2))?;
        worst = worst.max((flux(&MonopoleField::new(g), 1000) - 4.0 * PI * g).abs());
    }
    Ok(worst)
}

const CHECKS: &[Check] = &[
    Check { suite: "angular", name: "selection_rules_exhaustive", tol: 0.0, run: selection_rule_scan },
    Check { suite: "angular", name: "theta_recursions", tol: 1e-8, run: theta_recursions },
    Check { suite: "angular", name: "sigma_action_general_j", tol: 1e-8, run: sigma_general },
    Check { suite: "angular", name: "jmin_annihilation_exact", tol: 0.0, run: jmin_annihilation },
    Check { suite: "angular", name: "wigner_unitarity", tol: 1e-12, run: wigner_unitarity },
    Check { suite: "hypergeom", name: "pfaff_consistency", tol: 1e-10, run: pfaff_consistency },
    Check { suite: "hypergeom", name: "terminating_exactness", tol: 1e-14, run: terminating_exactness },
    Check { suite: "hypergeom", name: "derivative_shift", tol: 1e-9, run: derivative_shift },
    Check { suite: "radial", name: "jmin_residuals", tol: 1e-8, run: jmin_residuals },
    Check { suite: "radial", name: "general_residuals", tol: 1e-8, run: general_residuals },
    Check { suite: "radial", name: "frame_round_trip", tol: 1e-10, run: frame_round_trip },
    Check { suite: "radial", name: "jmin_swap_symmetry", tol: 1e-8, run: swap_symmetry },
    Check { suite: "radial", name: "coefficient_relations", tol: 1e-12, run: coefficient_relations },
    Check { suite: "radial", name: "k_eigenvalue", tol: 1e-8, run: k_eigenvalue },
    Check { suite: "radial", name: "global_phase_reality", tol: 1e-12, run: phase_reality },
    Check { suite: "oracle", name: "jmin_normalizable_levels", tol: 1e-6, run: oracle_jmin },
    Check { suite: "oracle", name: "general_levels", tol: 1e-6, run: oracle_general },
    Check { suite: "oracle", name: "no_levels_below_half", tol: 0.0, run: oracle_light_mass },
    Check { suite: "oracle", name: "start_scale_invariance", tol: 1e-9, run: oracle_scale_invariance },
    Check { suite: "oracle", name: "liouville", tol: 1e-8, run: liouville },
    Check { suite: "flat", name: "flat_pairs", tol: 1e-10, run: flat_pairs },
    Check { suite: "flat", name: "imaginary_momentum_continuation", tol: 1e-13, run: flat_continuation },
    Check { suite: "flat", name: "limit_monotone", tol: 0.0, run: flat_limit_monotone },
    Check { suite: "field", name: "maxwell", tol: 1e-12, run: maxwell },
    Check { suite: "field", name: "corrupted_detected", tol: 0.0, run: corrupted_detected },
    Check { suite: "field", name: "bianchi", tol: 1e-10, run: bianchi },
    Check { suite: "field", name: "flux_4pi_g", tol: 1e-10, run: flux_total },
];

fn selected(suite: Suite, name: &str) -> bool {
    match suite {
        Suite::All => true,
        Suite::Angular => name == "angular",
        Suite::Hypergeom => name == "hypergeom",
        Suite::Radial => name == "radial",
        Suite::Oracle => name == "oracle",
        Suite::Flat => name == "flat",
        Suite::Field => name == "field",
    }
}

/// Runs the chosen checks in parallel; results keep the fixed order.
pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    let chosen: Vec<&Check> = CHECKS.iter().filter(|c| selected(suite, c.suite)).collect();
    chosen
        .par_iter()
        .map(|c| match (c.run)() {
            Ok(v) => CheckResult {
                suite: c.suite,
                name: c.name,
                value: v,
                tol: c.tol,
                pass: v <= c.tol,
                error: None,
            },
            Err(e) => CheckResult {
                suite: c.suite,
                name: c.name,
                value: f64::NAN,
                tol: c.tol,
                pass: false,
                error: Some(e.to_string()),
            },
        })
        .collect()
}
