use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

const TABLE_MAX: usize = 170;

fn ln_factorials() -> &'static [f64; TABLE_MAX + 1] {
    static T: OnceLock<[f64; TABLE_MAX + 1]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [0.0; TABLE_MAX + 1];
        for n in 2..=TABLE_MAX {
            t[n] = t[n - 1] + (n as f64).ln();
        }
        t
    })
}

fn ln_factorial(n: i64) -> f64 {
    match usize::try_from(n) {
        Ok(k) if k <= TABLE_MAX => ln_factorials()[k],
        _ => ln_factorials()[TABLE_MAX] + (TABLE_MAX as i64 + 1..=n).map(|k| (k as f64).ln()).sum::<f64>(),
    }
}

fn ln_binomial(n: i64, k: i64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence in `n`.
fn jacobi(n: i64, a: f64, b: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + a + b;
        let next = ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * p1 - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p0)
            / (2.0 * k * (k + a + b) * (c - 2.0));
        p0 = p1;
        p1 = next;
    }
    p1
}

/// `d^s_{νμ}(θ)` from doubled arguments. Out-of-range indices give zero.
///
/// Evaluated through a Jacobi polynomial, which stays accurate at large `s`
/// where the explicit alternating sum cancels badly.
pub fn wigner_d_twice(s: i64, nu: i64, mu: i64, theta: f64) -> f64 {
    if s < 0 || nu.abs() > s || mu.abs() > s || (s - nu) % 2 != 0 || (s - mu) % 2 != 0 {
        return 0.0;
    }
    // undoubled integers j ± m
    let (jpm, jmm, jpn, jmn) = ((s + mu) / 2, (s - mu) / 2, (s + nu) / 2, (s - nu) / 2);
    let k = jpm.min(jmm).min(jpn).min(jmn);
    let (a, lambda) = if k == jpm || k == jmn { ((nu - mu) / 2, (nu - mu) / 2) } else { ((mu - nu) / 2, 0) };
    let b = s - 2 * k - a;
    let norm = (0.5 * (ln_binomial(s - k, k + a) - ln_binomial(k + b, b))).exp();
    let sign = if lambda.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    sign * norm * sn.powi(a as i32) * c.powi(b as i32) * jacobi(k, a as f64, b as f64, theta.cos())
}

/// Reduced rotation matrix element `d^s_{νμ}(θ) = <s ν| exp(-iθ S_y) |s μ>`.
pub fn wigner_d(s: HalfInt, nu: HalfInt, mu: HalfInt, theta: f64) -> Result<f64> {
    let (s2, n2, m2) = (s.twice(), nu.twice(), mu.twice());
    if s2 < 0 {
        return Err(Error::Input(format!("negative spin {s}")));
    }
    if n2.abs() > s2 || m2.abs() > s2 {
        return Err(Error::Input(format!("projection out of range: s = {s}, ν = {nu}, μ = {mu}")));
    }
    if (s2 - n2) % 2 != 0 || (s2 - m2) % 2 != 0 {
        return Err(Error::Input(format!("s - ν and s - μ must be integers: s = {s}, ν = {nu}, μ = {mu}")));
    }
    Ok(wigner_d_twice(s2, n2, m2, theta))
}
