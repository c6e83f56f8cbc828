use rug::Rational;

use super::sixj::wigner_6j_twice;
use crate::algebraic::AlgebraicNumber;
use crate::halfint::{triangle_ok_twice, HalfInt};

/// Wigner 9j symbol
///
/// ```text
/// { a b c }
/// { d e f }
/// { g h i }
/// ```
///
/// evaluated as `Σ_x (-1)^{2x} (2x+1) {a b c; f i x} {d e f; b x h} {g h i; x a d}`.
pub fn wigner_9j(labels: [HalfInt; 9]) -> AlgebraicNumber {
    wigner_9j_twice(labels.map(HalfInt::twice))
}

/// [`wigner_9j`] on doubled labels.
pub fn wigner_9j_twice(t: [i64; 9]) -> AlgebraicNumber {
    let [a, b, c, d, e, f, g, h, i] = t;
    let rows_cols = [(a, b, c), (d, e, f), (g, h, i), (a, d, g), (b, e, h), (c, f, i)];
    if !rows_cols.iter().all(|&(x, y, z)| triangle_ok_twice(x, y, z)) {
        return AlgebraicNumber::zero();
    }
    // x couples with (a, i), (d, h) and (b, f).
    let lo = (a - i).abs().max((d - h).abs()).max((b - f).abs());
    let hi = (a + i).min(d + h).min(b + f);
    let mut sum = AlgebraicNumber::zero();
    let mut x = lo;
    while x <= hi {
        let s1 = wigner_6j_twice([a, b, c, f, i, x]);
        if !s1.is_zero() {
            let s2 = wigner_6j_twice([d, e, f, b, x, h]);
            let s3 = wigner_6j_twice([g, h, i, x, a, d]);
            let mut term = &(&s1 * &s2) * &s3;
            // (-1)^{2x} (2x + 1)
            let k = if x % 2 == 0 { x + 1 } else { -(x + 1) };
            term = term.scale(&Rational::from(k));
            sum += term;
        }
        x += 2;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_zero_label() {
        // {a b c; d e f; g h 0} = δ_{cf} δ_{gh} (-1)^{b+c+d+g} / √([c][g]) {a b c; e d g}
        let (a, b, c, d, e, g) = (2, 3, 3, 4, 3, 2);
        let v = wigner_9j_twice([a, b, c, d, e, c, g, g, 0]);
        let sixj = wigner_6j_twice([a, b, c, e, d, g]);
        let sign = if ((b + c + d + g) / 2) % 2 == 0 { 1 } else { -1 };
        let norm = AlgebraicNumber::sqrt_of_rational(&Rational::from((1, (c + 1) * (g + 1)))).unwrap();
        let expect = (&sixj * &norm).scale(&Rational::from(sign));
        assert_eq!(v, expect);
    }
}
