//! Truncated Taylor series ("jets") for forward-mode derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// c[k] = f^{(k)}(x₀)/k! for k < N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Jet { c }
    }

    /// The independent variable at x.
    pub fn variable(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.c[k] * fact
    }

    pub fn scale(self, s: f64) -> Self {
        Jet { c: self.c.map(|x| x * s) }
    }

    pub fn sin_cos(self) -> (Self, Self) {
        let mut s = [0.0; N];
        let mut co = [0.0; N];
        s[0] = self.c[0].sin();
        co[0] = self.c[0].cos();
        for k in 1..N {
            let (mut a, mut b) = (0.0, 0.0);
            for j in 1..=k {
                a += j as f64 * self.c[j] * co[k - j];
                b += j as f64 * self.c[j] * s[k - j];
            }
            s[k] = a / k as f64;
            co[k] = -b / k as f64;
        }
        (Jet { c: s }, Jet { c: co })
    }

    pub fn sin(self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(self) -> Self {
        self.sin_cos().1
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Jet::constant(1.0), |acc, _| acc * self)
    }
}

/// d/dx of a jet, losing the top coefficient.
pub fn differentiate<const N: usize, const M: usize>(f: &Jet<N>) -> Jet<M> {
    assert!(M < N, "derivative jet must be shorter");
    let mut c = [0.0; M];
    for (k, ck) in c.iter_mut().enumerate() {
        *ck = (k + 1) as f64 * f.c[k + 1];
    }
    Jet { c }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet { c: std::array::from_fn(|k| self.c[k] + o.c[k]) }
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet { c: std::array::from_fn(|k| self.c[k] - o.c[k]) }
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Jet { c: std::array::from_fn(|k| (0..=k).map(|j| self.c[j] * o.c[k - j]).sum()) }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let mut q = [0.0; N];
        for k in 0..N {
            let s: f64 = (1..=k).map(|j| o.c[j] * q[k - j]).sum();
            q[k] = (self.c[k] - s) / o.c[0];
        }
        Jet { c: q }
    }
}
