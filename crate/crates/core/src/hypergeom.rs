//! Gauss hypergeometric function ₂F₁(a, b; c; z) for real z ≤ 0.
//!
//! Direct series on (−1, 0], the Pfaff map w = z/(z−1) below that, and plain
//! finite summation whenever a or b is a non-positive integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::{HYP_MAX_TERMS, HYP_REL_TOL, TERMINATION_TOL};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Params {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl Hyp2F1Params {
    pub fn new(a: C64, b: C64, c: C64) -> Self {
        Hyp2F1Params { a, b, c }
    }

    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Hyp2F1Params::new(a.into(), b.into(), c.into())
    }

    /// (a+1, b+1, c+1).
    pub fn raised(&self) -> Self {
        let one = C64::new(1.0, 0.0);
        Hyp2F1Params::new(self.a + one, self.b + one, self.c + one)
    }

    /// (a−1, b−1, c−1).
    pub fn lowered(&self) -> Self {
        let one = C64::new(1.0, 0.0);
        Hyp2F1Params::new(self.a - one, self.b - one, self.c - one)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Polynomial when terminating, direct series on [−1/2, 0], Pfaff otherwise.
    Auto,
    DirectSeries,
    PfaffMapped,
    Polynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPolicy {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub strategy: Strategy,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        EvalPolicy { max_terms: HYP_MAX_TERMS, rel_tol: HYP_REL_TOL, strategy: Strategy::Auto }
    }
}

impl EvalPolicy {
    pub fn with_strategy(strategy: Strategy) -> Self {
        EvalPolicy { strategy, ..Default::default() }
    }
}

fn nonpositive_integer(x: C64) -> Option<u64> {
    if x.im.abs() > TERMINATION_TOL || x.re > TERMINATION_TOL {
        return None;
    }
    let r = x.re.round();
    if (x.re - r).abs() <= TERMINATION_TOL {
        Some((-r) as u64)
    } else {
        None
    }
}

/// Degree of the polynomial when a or b is 0, −1, −2, …
pub fn is_terminating(p: &Hyp2F1Params) -> Option<u64> {
    match (nonpositive_integer(p.a), nonpositive_integer(p.b)) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        _ => None,
    }
}

fn check_c(p: &Hyp2F1Params) -> Result<()> {
    if let Some(cn) = nonpositive_integer(p.c) {
        match is_terminating(p) {
            Some(n) if n < cn => Ok(()),
            _ => Err(Error::numerical(format!("c = {} is a pole of the series", p.c))),
        }
    } else {
        Ok(())
    }
}

/// Sum of the first `terms` terms of the series, with the sum of magnitudes.
pub fn partial_sum(p: &Hyp2F1Params, z: f64, terms: u64) -> (C64, f64) {
    let mut t = C64::new(1.0, 0.0);
    let mut s = t;
    let mut mag = 1.0;
    for k in 1..terms {
        let kf = (k - 1) as f64;
        t = t * (p.a + kf) * (p.b + kf) / ((p.c + kf) * (kf + 1.0)) * z;
        s += t;
        mag += t.norm();
    }
    (s, mag)
}

/// Series summed in double-double arithmetic: terms of alternating or
/// cancelling series can exceed the result by many orders of magnitude.
fn series(p: &Hyp2F1Params, x: f64, policy: &EvalPolicy) -> Result<C64> {
    let (a, b, c) = (CDd::from(p.a), CDd::from(p.b), CDd::from(p.c));
    let xd = Dd::from(x);
    let mut t = CDd::from(C64::new(1.0, 0.0));
    let mut s = t;
    for k in 0..policy.max_terms {
        let kf = Dd::from(k as f64);
        let num = (a.add_re(kf)).mul(&b.add_re(kf));
        let den = (c.add_re(kf)).mul_re(kf.add(Dd::from(1.0)));
        let next = t.mul(&num).div(&den).mul_re(xd);
        s = s.add(&next);
        let (tn, nn) = (t.to_c64().norm(), next.to_c64().norm());
        if nn == 0.0 {
            return Ok(s.to_c64());
        }
        if tn > 0.0 && k > 2 {
            let r = (nn / tn).max(x.abs());
            if r < 1.0 && nn <= policy.rel_tol * s.to_c64().norm() * (1.0 - r) {
                return Ok(s.to_c64());
            }
        }
        t = next;
    }
    Err(Error::numerical(format!(
        "2F1({}, {}; {}; {x}) did not converge in {} terms",
        p.a, p.b, p.c, policy.max_terms
    )))
}

/// Unevaluated sum hi + lo.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::from(q1)).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Dd::from(q2)).neg());
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from(q3))
    }
}

#[derive(Debug, Clone, Copy)]
struct CDd {
    re: Dd,
    im: Dd,
}

impl From<C64> for CDd {
    fn from(z: C64) -> Self {
        CDd { re: z.re.into(), im: z.im.into() }
    }
}

impl CDd {
    fn to_c64(self) -> C64 {
        C64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }

    fn add(&self, o: &CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    fn add_re(&self, x: Dd) -> CDd {
        CDd { re: self.re.add(x), im: self.im }
    }

    fn mul(&self, o: &CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn mul_re(&self, x: Dd) -> CDd {
        CDd { re: self.re.mul(x), im: self.im.mul(x) }
    }

    fn div(&self, o: &CDd) -> CDd {
        if o.im.hi == 0.0 && o.im.lo == 0.0 {
            return CDd { re: self.re.div(o.re), im: self.im.div(o.re) };
        }
        let den = o.re.mul(o.re).add(o.im.mul(o.im));
        let conj = CDd { re: o.re, im: o.im.neg() };
        let n = self.mul(&conj);
        CDd { re: n.re.div(den), im: n.im.div(den) }
    }
}

/// Pfaff map with the a ↔ b roles chosen so the inner series terminates when
/// possible, and otherwise has the larger c − α − β near w = 1.
fn pfaff(p: &Hyp2F1Params, z: f64, policy: &EvalPolicy) -> Result<C64> {
    let w = z / (z - 1.0);
    let form_a = Hyp2F1Params::new(p.a, p.c - p.b, p.c);
    let form_b = Hyp2F1Params::new(p.c - p.a, p.b, p.c);
    let use_b = match (is_terminating(&form_a), is_terminating(&form_b)) {
        (Some(_), _) => false,
        (None, Some(_)) => true,
        (None, None) => (p.a - p.b).re > (p.b - p.a).re,
    };
    let (inner, lead) = if use_b { (form_b, p.b) } else { (form_a, p.a) };
    let pre = (-lead * (1.0 - z).ln()).exp();
    let v = match is_terminating(&inner) {
        Some(n) => partial_sum(&inner, w, n + 1).0,
        None => series(&inner, w, policy)?,
    };
    Ok(pre * v)
}

/// F(a, b; c; z) for z ≤ 0.
pub fn hyp2f1(p: &Hyp2F1Params, z: f64, policy: &EvalPolicy) -> Result<C64> {
    if !(z <= 0.0) {
        return Err(Error::validation(format!("2F1 argument must be ≤ 0, got {z}")));
    }
    check_c(p)?;
    if z == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    match policy.strategy {
        Strategy::Auto => match is_terminating(p) {
            Some(n) => Ok(partial_sum(p, z, n + 1).0),
            None if z >= -0.5 => series(p, z, policy),
            None => pfaff(p, z, policy),
        },
        Strategy::DirectSeries => {
            if z <= -1.0 {
                return Err(Error::validation("direct series requires z > −1"));
            }
            series(p, z, policy)
        }
        Strategy::PfaffMapped => pfaff(p, z, policy),
        Strategy::Polynomial => match is_terminating(p) {
            Some(n) => Ok(partial_sum(p, z, n + 1).0),
            None => Err(Error::validation("polynomial strategy needs a or b in {0, −1, −2, …}")),
        },
    }
}

/// d/dz F(a−1, b−1; c−1; z) = ((a−1)(b−1)/(c−1)) F(a, b; c; z).
pub fn hyp2f1_derivative_shift(p: &Hyp2F1Params, z: f64, policy: &EvalPolicy) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    if (p.c - one).norm() == 0.0 {
        return Err(Error::validation("derivative shift needs c ≠ 1"));
    }
    let factor = (p.a - one) * (p.b - one) / (p.c - one);
    if factor.norm() == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(factor * hyp2f1(p, z, policy)?)
}
