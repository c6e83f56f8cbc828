use rug::{Integer, Rational};

use super::sqrt_factorial_ratio;
use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::halfint::{sign_twice, triangle_ok, HalfInt};

fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::Input(format!("negative angular momentum {j}")));
    }
    if m.twice().abs() > j.twice() {
        return Err(Error::Input(format!("|m| = |{m}| exceeds j = {j}")));
    }
    if (j.twice() - m.twice()) % 2 != 0 {
        return Err(Error::Input(format!("j - m not integral for j = {j}, m = {m}")));
    }
    Ok(())
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)`, exact.
pub fn wigner_3j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> Result<AlgebraicNumber> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j3, m3)?;
    if (m1 + m2 + m3).twice() != 0 || !triangle_ok(j1, j2, j3) {
        return Ok(AlgebraicNumber::zero());
    }
    // Everything below is an integer once halved.
    let h = |x: HalfInt| -> i64 { x.twice() / 2 };
    let (a, b, c) = (j1, j2, j3);
    let s = |x: HalfInt, y: HalfInt| (x + y).twice() / 2;
    let d = |x: HalfInt, y: HalfInt| (x - y).twice() / 2;

    let pos = [
        h(a + b - c),
        h(a - b + c),
        h(b + c - a),
        s(a, m1),
        d(a, m1),
        s(b, m2),
        d(b, m2),
        s(c, m3),
        d(c, m3),
    ];
    let neg = [h(a + b + c) + 1];
    let (outer, radicand) = sqrt_factorial_ratio(
        &pos.map(|x| x as u64),
        &neg.map(|x| x as u64),
    );

    let kmin = 0.max(h(b - c - m1)).max(h(a - c + m2));
    let kmax = h(a + b - c).min(d(a, m1)).min(s(b, m2));
    let mut sum = Rational::new();
    for k in kmin..=kmax {
        let den: Integer = [
            k,
            h(c - b + m1) + k,
            h(c - a - m2) + k,
            h(a + b - c) - k,
            d(a, m1) - k,
            s(b, m2) - k,
        ]
        .iter()
        .map(|&x| Integer::from(Integer::factorial(x as u32)))
        .product();
        let term = Rational::from((Integer::from(1), den));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let sign = sign_twice((a - b - m3).twice());
    Ok(AlgebraicNumber::from_term(outer * sum * sign, radicand))
}
