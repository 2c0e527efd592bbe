use adsmd::angular::{HalfInt, QuantumNumbers};
use adsmd::fd::central_derivative_c;
use adsmd::flat_limit::{flat_solutions, FlatChannel};
use adsmd::ode::OdeOptions;
use adsmd::radial_exact::{
    exact_profile, jmin_mirror, level_energy, spectrum, transform_FG_to_fg, transform_fg_to_FG, ChannelSpec, RadialProfile,
    Variable,
};
use adsmd::radial_numeric::{integrate, residual_norm, rhs, shoot, uniform_grid, OdeSystem, ShootingConfig};
use proptest::prelude::*;

fn channel(mass: f64, k2: i32, j2: i32) -> ChannelSpec {
    let qn = QuantumNumbers::new(HalfInt::from_doubled(k2), HalfInt::from_doubled(j2), HalfInt::from_doubled(j2 % 2), 1, 0).unwrap();
    ChannelSpec::new(qn, mass, None).unwrap()
}

fn max_diff(a: &RadialProfile, b: &RadialProfile) -> f64 {
    (0..a.len())
        .map(|i| {
            let scale = b.comp1[i].norm().max(b.comp2[i].norm()).max(1e-300);
            (a.comp1[i] - b.comp1[i]).norm().max((a.comp2[i] - b.comp2[i]).norm()) / scale
        })
        .fold(0.0, f64::max)
}

#[test]
fn general_j_levels_in_bracket() {
    let ch = channel(2.0, 1, 2);
    let out = shoot(&OdeSystem::for_channel(&ch, 0.0), &ShootingConfig::new(4.0, 10.0)).unwrap();
    let e = out.energies();
    let ground = 3.5 + 2f64.sqrt();
    assert!(e.len() >= 2, "{e:?}");
    assert!((e[0] - ground).abs() < 1e-6, "{e:?}");
    assert!((e[1] - (ground + 2.0)).abs() < 1e-6, "{e:?}");
    let exact = spectrum(&ch, 6).unwrap().energies();
    for x in &e {
        assert!(exact.iter().any(|y| (x - y).abs() < 1e-6), "{x} not in {exact:?}");
    }
}

#[test]
fn rhs_matches_derivative_of_exact_profile() {
    for (ch, n) in [(channel(2.0, 1, 2), 1u32), (channel(1.5, -3, 2), 0), (channel(2.0, 1, 0), 2), (channel(3.0, -1, 0), 1)] {
        let e = level_energy(&ch, n);
        let sys = OdeSystem::for_channel(&ch, e);
        let at = |rho: f64| exact_profile(&ch, n, Variable::Rho, &[rho]).unwrap().state(0);
        for rho in [0.4, 0.9, 1.7, 2.6] {
            let y = at(rho);
            let f = rhs(&sys, rho, &y).unwrap();
            let scale = y[0].norm().max(y[1].norm());
            for c in 0..2 {
                let d = central_derivative_c(|r| at(r)[c], rho, 1e-4);
                assert!((d - f[c]).norm() < 1e-7 * scale.max(1.0), "n={n} rho={rho} c={c}: {d} vs {}", f[c]);
            }
        }
    }
}

#[test]
fn integration_from_exact_data_tracks_exact_profile() {
    for (ch, n) in [(channel(2.0, 1, 2), 0u32), (channel(2.0, 1, 2), 2), (channel(1.2, 3, 4), 1)] {
        let grid = uniform_grid(0.3, 3.0, 271);
        let ex = exact_profile(&ch, n, Variable::Rho, &grid).unwrap();
        let sys = OdeSystem::for_channel(&ch, ex.energy());
        let num = integrate(&sys, ex.state(0), &grid, &OdeOptions::default()).unwrap();
        let d = max_diff(&num, &ex);
        assert!(d < 1e-6, "n={n}: {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_levels_solve_the_system(mass in 0.6f64..6.0, n in 0u32..4, k2 in prop::sample::select(vec![-3, -1, 1, 3]), extra in 0i32..3) {
        let ch = channel(mass, k2, k2.abs() - 1 + 2 * extra);
        let grid = uniform_grid(0.05, 3.0, 1500);
        let p = exact_profile(&ch, n, Variable::Rho, &grid).unwrap();
        let r = residual_norm(&p).unwrap();
        prop_assert!(r < 1e-8, "{}", r);
    }

    #[test]
    fn transform_round_trips(mass in 0.6f64..6.0, n in 0u32..4, k2 in prop::sample::select(vec![-3, -1, 1, 3]), extra in 1i32..3) {
        let ch = channel(mass, k2, k2.abs() - 1 + 2 * extra);
        let grid = uniform_grid(0.05, 3.0, 60);
        let p = exact_profile(&ch, n, Variable::Rho, &grid).unwrap();
        let back = transform_fg_to_FG(&transform_FG_to_fg(&p).unwrap()).unwrap();
        prop_assert!(max_diff(&back, &p) < 1e-12);
    }

    #[test]
    fn mirror_is_an_involution(mass in 0.6f64..6.0, n in 1u32..4, k2 in prop::sample::select(vec![-3, -1, 1, 3])) {
        let ch = channel(mass, k2, k2.abs() - 1);
        let grid = uniform_grid(0.0, 3.0, 1500);
        let p = exact_profile(&ch, n, Variable::Rho, &grid).unwrap();
        let twice = jmin_mirror(&jmin_mirror(&p).unwrap()).unwrap();
        prop_assert_eq!(twice.system_tag, p.system_tag);
        prop_assert!(max_diff(&twice, &p) < 1e-12);
        prop_assert!(residual_norm(&jmin_mirror(&p).unwrap()).unwrap() < 1e-8);
    }

    #[test]
    fn flat_pairs_solve_the_flat_system(mass in 0.1f64..5.0, de in 0.05f64..4.0, above in any::<bool>()) {
        let e = if above { mass + de } else { (mass - de).max(-mass + 0.01) };
        prop_assume!((e * e - mass * mass).abs() > 1e-3);
        let ch = FlatChannel::new(e, mass).unwrap();
        let (a, b) = flat_solutions(&ch, &uniform_grid(0.0, 5.0, 1500)).unwrap();
        let r = residual_norm(&a).unwrap().max(residual_norm(&b).unwrap());
        prop_assert!(r < 1e-8, "{}", r);
    }
}
