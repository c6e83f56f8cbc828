use rug::{Integer, Rational};

use super::cache::global_cache;
use crate::algebraic::AlgebraicNumber;
use crate::factorial::PrimeExponents;
use crate::halfint::{triangle_ok_twice, HalfInt};

/// The Racah parameters of a 6j symbol: the four triad sums `α` and the
/// three sums `β` of opposite-edge pairs, all in plain (undoubled) units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Racah {
    alpha: [i64; 4],
    beta: [i64; 3],
}

fn triads_ok(t: &[i64; 6]) -> bool {
    let [a, b, c, d, e, f] = *t;
    triangle_ok_twice(a, b, c)
        && triangle_ok_twice(a, e, f)
        && triangle_ok_twice(d, b, f)
        && triangle_ok_twice(d, e, c)
}

impl Racah {
    fn from_twice(t: &[i64; 6]) -> Racah {
        let [a, b, c, d, e, f] = *t;
        Racah {
            alpha: [(a + b + c) / 2, (a + e + f) / 2, (d + b + f) / 2, (d + e + c) / 2],
            beta: [(a + b + d + e) / 2, (a + c + d + f) / 2, (b + c + e + f) / 2],
        }
    }

    /// Doubled labels rebuilt from sorted parameters. The value of the symbol
    /// depends only on the multisets of α and β, so this is a canonical
    /// representative of all 144 classical and Regge images.
    fn canonical_labels(mut self) -> [i64; 6] {
        self.alpha.sort_unstable();
        self.beta.sort_unstable();
        let [a1, a2, a3, a4] = self.alpha;
        let [b1, b2, b3] = self.beta;
        [
            a1 + a2 - b3,
            a1 + a3 - b2,
            a1 + a4 - b1,
            a3 + a4 - b3,
            a2 + a4 - b2,
            a2 + a3 - b1,
        ]
    }
}

/// Canonical cache key for `{a b c; d e f}` given doubled labels, or `None`
/// when a triad fails (the symbol is then zero).
pub fn canonical_key(t: [i64; 6]) -> Option<[i64; 6]> {
    triads_ok(&t).then(|| Racah::from_twice(&t).canonical_labels())
}

/// Wigner 6j symbol `{a b c; d e f}`, exact, memoized in the process cache.
pub fn wigner_6j(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt) -> AlgebraicNumber {
    wigner_6j_twice([a, b, c, d, e, f].map(HalfInt::twice))
}

/// [`wigner_6j`] on doubled labels.
pub fn wigner_6j_twice(t: [i64; 6]) -> AlgebraicNumber {
    let Some(key) = canonical_key(t) else {
        return AlgebraicNumber::zero();
    };
    global_cache().get_or_insert_with(key, || sixj_racah(&key))
}

/// Evaluate the Racah single sum without touching any cache. Doubled labels.
pub fn wigner_6j_uncached(t: [i64; 6]) -> AlgebraicNumber {
    if !triads_ok(&t) {
        return AlgebraicNumber::zero();
    }
    sixj_racah(&t)
}

fn sixj_racah(t: &[i64; 6]) -> AlgebraicNumber {
    let Racah { alpha, beta } = Racah::from_twice(t);
    let tmin = *alpha.iter().max().unwrap();
    let tmax = *beta.iter().min().unwrap();
    if tmin > tmax {
        return AlgebraicNumber::zero();
    }

    // Square of the triangle prefactor: Π over triads of
    // (three triangle differences)! / (triad sum + 1)!.
    let mut pref = PrimeExponents::new();
    for &al in &alpha {
        for &be in &beta {
            pref.add_factorial((be - al) as u64, 1);
        }
        pref.add_factorial((al + 1) as u64, -1);
    }
    let (mut rational_exps, radicand) = pref.split_sqrt();

    // Leading term of the sum at t = tmin.
    rational_exps.add_factorial((tmin + 1) as u64, 1);
    for &al in &alpha {
        rational_exps.add_factorial((tmin - al) as u64, -1);
    }
    for &be in &beta {
        rational_exps.add_factorial((be - tmin) as u64, -1);
    }

    // Horner on the term ratio
    //   T(t+1)/T(t) = -(t+2) Π(β-t) / Π(t+1-α)
    // gives Σ T(t) = T(tmin) · acc with acc built from the top down.
    let mut acc_num = Integer::from(1);
    let mut acc_den = Integer::from(1);
    for s in (tmin..tmax).rev() {
        let num: i64 = -(s + 2) * beta.iter().map(|&b| b - s).product::<i64>();
        let den: i64 = alpha.iter().map(|&a| s + 1 - a).product();
        acc_num *= num;
        let carry = Integer::from(&acc_den * den);
        acc_num += carry;
        acc_den *= den;
    }

    let (pn, pd) = rational_exps.to_num_den();
    let mut q = Rational::from((acc_num * pn, acc_den * pd));
    if tmin % 2 != 0 {
        q = -q;
    }
    AlgebraicNumber::from_term(q, radicand)
}
