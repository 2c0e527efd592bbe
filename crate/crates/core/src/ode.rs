//! Dormand–Prince 5(4) integrator with dense output, for complex 2-vectors.

use crate::error::{Error, Result};
use crate::C64;

pub type State = [C64; 2];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: Option<f64>,
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: crate::tolerances::ODE_RTOL,
            atol: crate::tolerances::ODE_ATOL,
            h_init: None,
            h_min: 1e-14,
            max_steps: 200_000,
        }
    }
}

/// One accepted step with its interpolation coefficients. `h` is signed.
#[derive(Debug, Clone)]
struct Segment {
    t0: f64,
    h: f64,
    rc: [State; 5],
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    segments: Vec<Segment>,
    pub t_end: f64,
    pub y_end: State,
    pub steps: usize,
}

impl Trajectory {
    /// Dense-output value anywhere in the integrated span.
    pub fn eval(&self, t: f64) -> State {
        let i = self
            .segments
            .partition_point(|s| s.t0.max(s.t0 + s.h) < t)
            .min(self.segments.len().saturating_sub(1));
        let s = &self.segments[i];
        let th = (t - s.t0) / s.h;
        let th1 = 1.0 - th;
        std::array::from_fn(|k| {
            s.rc[0][k]
                + (s.rc[1][k] + (s.rc[2][k] + (s.rc[3][k] + s.rc[4][k] * th1) * th) * th1) * th
        })
    }

    pub fn t_start(&self) -> f64 {
        self.segments.first().map(|s| s.t0.min(s.t0 + s.h)).unwrap_or(self.t_end)
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn lin(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    std::array::from_fn(|i| {
        let mut acc = C64::new(0.0, 0.0);
        for (c, k) in terms {
            acc += k[i] * *c;
        }
        y[i] + acc * h
    })
}

fn norm(y: &State) -> f64 {
    y[0].norm().max(y[1].norm())
}

/// Integrates y' = f(t, y) from t0 to t1 (either direction).
pub fn integrate<F>(f: F, t0: f64, y0: State, t1: f64, opts: &OdeOptions) -> Result<Trajectory>
where
    F: Fn(f64, &State) -> State,
{
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut segments = Vec::new();
    if span == 0.0 {
        return Ok(Trajectory { segments, t_end: t0, y_end: y0, steps: 0 });
    }

    let mut h = match opts.h_init {
        Some(h) => h.abs().min(span),
        None => {
            let sc = opts.atol + opts.rtol * norm(&y);
            let d0 = norm(&y) / sc;
            let d1 = norm(&k1) / sc;
            let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
            h0.min(span).max(opts.h_min)
        }
    };

    let mut steps = 0usize;
    let mut last = false;
    loop {
        if steps >= opts.max_steps {
            return Err(Error::numerical(format!("integrator exceeded {} steps", opts.max_steps)));
        }
        if h >= (t1 - t).abs() {
            h = (t1 - t).abs();
            last = true;
        }
        let hs = dir * h;
        let k2 = f(t + C2 * hs, &lin(&y, &[(A21, &k1)], hs));
        let k3 = f(t + C3 * hs, &lin(&y, &[(A31, &k1), (A32, &k2)], hs));
        let k4 = f(t + C4 * hs, &lin(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], hs));
        let k5 = f(
            t + C5 * hs,
            &lin(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], hs),
        );
        let k6 = f(
            t + hs,
            &lin(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], hs),
        );
        let y1 = lin(&y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], hs);
        let k7 = f(t + hs, &y1);
        steps += 1;

        let mut err = 0.0;
        for i in 0..2 {
            let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * hs;
            let sc = opts.atol + opts.rtol * y[i].norm().max(y1[i].norm());
            err += (e.norm() / sc).powi(2);
        }
        let err = (err / 2.0).sqrt();
        if !err.is_finite() {
            return Err(Error::numerical("integrator produced a non-finite state"));
        }

        if err <= 1.0 {
            let ydiff: State = std::array::from_fn(|i| y1[i] - y[i]);
            let bspl: State = std::array::from_fn(|i| k1[i] * hs - ydiff[i]);
            let rc3 = bspl;
            let rc4: State = std::array::from_fn(|i| ydiff[i] - k7[i] * hs - bspl[i]);
            let rc5: State = std::array::from_fn(|i| {
                (k1[i] * D1 + k3[i] * D3 + k4[i] * D4 + k5[i] * D5 + k6[i] * D6 + k7[i] * D7) * hs
            });
            segments.push(Segment { t0: t, h: hs, rc: [y, ydiff, rc3, rc4, rc5] });
            t = if last { t1 } else { t + hs };
            y = y1;
            k1 = k7;
            if norm(&y) > 1e250 {
                return Err(Error::numerical("state overflow"));
            }
            if last {
                break;
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            last = false;
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            if h < opts.h_min {
                return Err(Error::numerical(format!("step size collapsed at t = {t}")));
            }
        }
    }
    if dir < 0.0 {
        segments.reverse();
    }
    Ok(Trajectory { segments, t_end: t, y_end: y, steps })
}
