//! Finite-difference helpers.

/// Eighth-order centered first derivative. Stencil points are combined in
/// antisymmetric pairs so a constant function gives exactly zero.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    const W: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let mut acc = 0.0;
    for (i, w) in W.iter().enumerate() {
        let s = (i + 1) as f64 * h;
        acc += w * (f(x + s) - f(x - s));
    }
    acc / h
}

/// Same stencil for complex-valued functions.
pub fn central_derivative_c<F: Fn(f64) -> crate::C64>(f: F, x: f64, h: f64) -> crate::C64 {
    const W: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let mut acc = crate::C64::new(0.0, 0.0);
    for (i, w) in W.iter().enumerate() {
        let s = (i + 1) as f64 * h;
        acc += (f(x + s) - f(x - s)) * *w;
    }
    acc / h
}

/// Fornberg weights for the first derivative at `x0` from arbitrary nodes.
pub fn fornberg_weights(x0: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    // c[j][k]: weight of node j for derivative order k (k = 0, 1)
    let mut c = vec![[0.0f64; 2]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|w| w[1]).collect()
}
