//! Brute-force magnetic sums. These are slow and exist to check the
//! closed-form evaluators.

use std::collections::HashMap;

use rug::Rational;

use super::labels::{FifteenJLabels, Label};
use super::threej::wigner_3j;
use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::halfint::{sign_twice, HalfInt};

/// Largest label (doubled) the oracles accept.
pub const ORACLE_MAX_TWICE: i64 = 6;

fn guard(labels: &[HalfInt]) -> Result<()> {
    match labels.iter().find(|j| j.twice() > ORACLE_MAX_TWICE) {
        Some(j) => Err(Error::TooLarge(format!(
            "label {j} exceeds the oracle limit of {}",
            HalfInt::from_twice(ORACLE_MAX_TWICE)
        ))),
        None => Ok(()),
    }
}

/// Projections `-j, -j+1, ..., j`, doubled.
fn projections(j: i64) -> impl Iterator<Item = i64> {
    (-j..=j).step_by(2)
}

/// Clebsch–Gordan coefficient `⟨j1 m1 j2 m2 | J M⟩` (Condon–Shortley phase),
/// on doubled arguments. Out-of-range projections give zero.
pub fn clebsch_gordan(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> AlgebraicNumber {
    if m1.abs() > j1 || m2.abs() > j2 || m.abs() > j || m1 + m2 != m {
        return AlgebraicNumber::zero();
    }
    if (j1 - m1) % 2 != 0 || (j2 - m2) % 2 != 0 || (j - m) % 2 != 0 {
        return AlgebraicNumber::zero();
    }
    let h = HalfInt::from_twice;
    let three = wigner_3j(h(j1), h(j2), h(j), h(m1), h(m2), h(-m))
        .expect("projections checked above");
    if three.is_zero() {
        return three;
    }
    let dim = AlgebraicNumber::sqrt_of_rational(&Rational::from(j + 1)).expect("small integer");
    (&three * &dim).scale(&Rational::from(sign_twice(j1 - j2 + m)))
}

/// Memoized CG lookups for one oracle evaluation.
#[derive(Default)]
struct CgTable(HashMap<[i64; 6], AlgebraicNumber>);

impl CgTable {
    fn get(&mut self, j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> AlgebraicNumber {
        self.0
            .entry([j1, m1, j2, m2, j, m])
            .or_insert_with(|| clebsch_gordan(j1, m1, j2, m2, j, m))
            .clone()
    }
}

fn inv_sqrt_dims(dims: &[i64]) -> AlgebraicNumber {
    let p: i64 = dims.iter().map(|d| d + 1).product();
    AlgebraicNumber::sqrt_of_rational(&Rational::from((1, p))).expect("small integer")
}

/// The 15j value from a direct contraction of the ten vertices of the network
/// over all magnetic indices.
///
/// The contraction is organized as the overlap of two coupled six-spin states
/// of total spin `j7`, projection `j7`:
///
/// * `a`: (j1 j2) j12, (j12 j5) j125, (j125 j6) j1256, (j3 j4) j34, (j1256 j34) j7
/// * `b`: (j1 j3) j13, (j2 j4) j24, (j13 j5) j135, (j135 j6) j1356, (j1356 j24) j7
///
/// and divided by `√([j12][j34][j13][j24][j125][j135][j1256][j1356])`.
pub fn contract_moebius_oracle(labels: &FifteenJLabels) -> Result<AlgebraicNumber> {
    use Label::*;
    guard(&labels.values())?;
    if !labels.is_admissible() {
        return Ok(AlgebraicNumber::zero());
    }
    let t = |l: Label| labels.twice(l);
    let (j1, j2, j3, j4, j5, j6, j7) = (t(J1), t(J2), t(J3), t(J4), t(J5), t(J6), t(J7));
    let (j12, j34, j13, j24) = (t(J12), t(J34), t(J13), t(J24));
    let (j125, j1256, j135, j1356) = (t(J125), t(J1256), t(J135), t(J1356));
    let big_m = j7;

    let mut cg = CgTable::default();
    let mut sum = AlgebraicNumber::zero();
    for m1 in projections(j1) {
        for m2 in projections(j2) {
            let c12 = cg.get(j1, m1, j2, m2, j12, m1 + m2);
            if c12.is_zero() {
                continue;
            }
            for m3 in projections(j3) {
                let c13 = cg.get(j1, m1, j3, m3, j13, m1 + m3);
                if c13.is_zero() {
                    continue;
                }
                for m4 in projections(j4) {
                    let c34 = cg.get(j3, m3, j4, m4, j34, m3 + m4);
                    let c24 = cg.get(j2, m2, j4, m4, j24, m2 + m4);
                    if c34.is_zero() || c24.is_zero() {
                        continue;
                    }
                    for m5 in projections(j5) {
                        let m6 = big_m - m1 - m2 - m3 - m4 - m5;
                        if m6.abs() > j6 || (j6 - m6) % 2 != 0 {
                            continue;
                        }
                        let m125 = m1 + m2 + m5;
                        let m1256 = m125 + m6;
                        let m135 = m1 + m3 + m5;
                        let m1356 = m135 + m6;
                        let factors_a = [
                            cg.get(j12, m1 + m2, j5, m5, j125, m125),
                            cg.get(j125, m125, j6, m6, j1256, m1256),
                            cg.get(j1256, m1256, j34, m3 + m4, j7, big_m),
                        ];
                        let factors_b = [
                            cg.get(j13, m1 + m3, j5, m5, j135, m135),
                            cg.get(j135, m135, j6, m6, j1356, m1356),
                            cg.get(j1356, m1356, j24, m2 + m4, j7, big_m),
                        ];
                        if factors_a.iter().chain(factors_b.iter()).any(|f| f.is_zero()) {
                            continue;
                        }
                        let mut term = &(&c12 * &c13) * &(&c34 * &c24);
                        for f in factors_a.iter().chain(factors_b.iter()) {
                            term = &term * f;
                        }
                        sum += term;
                    }
                }
            }
        }
    }
    Ok(&sum * &inv_sqrt_dims(&[j12, j34, j13, j24, j125, j135, j1256, j1356]))
}

/// 6j value from the contraction of four 3j symbols, doubled labels
/// `{j1 j2 j3; j4 j5 j6}`.
pub fn sixj_contraction_oracle(t: [i64; 6]) -> Result<AlgebraicNumber> {
    guard(&t.map(HalfInt::from_twice))?;
    let [j1, j2, j3, j4, j5, j6] = t;
    let h = HalfInt::from_twice;
    let tj = |a: i64, b: i64, c: i64, ma: i64, mb: i64, mc: i64| -> AlgebraicNumber {
        if ma.abs() > a || mb.abs() > b || mc.abs() > c {
            return AlgebraicNumber::zero();
        }
        wigner_3j(h(a), h(b), h(c), h(ma), h(mb), h(mc)).expect("checked")
    };
    let mut sum = AlgebraicNumber::zero();
    for m1 in projections(j1) {
        for m2 in projections(j2) {
            let m3 = -m1 - m2;
            for m5 in projections(j5) {
                let m6 = m5 - m1;
                let m4 = m6 - m2;
                let f1 = tj(j1, j2, j3, -m1, -m2, -m3);
                let f2 = tj(j1, j5, j6, m1, -m5, m6);
                let f3 = tj(j4, j2, j6, m4, m2, -m6);
                let f4 = tj(j4, j5, j3, -m4, m5, m3);
                let term = &(&f1 * &f2) * &(&f3 * &f4);
                if term.is_zero() {
                    continue;
                }
                let phase = (j1 - m1) + (j2 - m2) + (j3 - m3) + (j4 - m4) + (j5 - m5) + (j6 - m6);
                sum += term.scale(&Rational::from(sign_twice(phase)));
            }
        }
    }
    Ok(sum)
}

/// 9j value from the overlap of the two pairwise couplings of four spins,
/// doubled labels `{j1 j2 j12; j3 j4 j34; j13 j24 j}`.
pub fn ninej_contraction_oracle(t: [i64; 9]) -> Result<AlgebraicNumber> {
    guard(&t.map(HalfInt::from_twice))?;
    let [j1, j2, j12, j3, j4, j34, j13, j24, j] = t;
    let m = j;
    let mut cg = CgTable::default();
    let mut sum = AlgebraicNumber::zero();
    for m1 in projections(j1) {
        for m2 in projections(j2) {
            for m3 in projections(j3) {
                let m4 = m - m1 - m2 - m3;
                if m4.abs() > j4 || (j4 - m4) % 2 != 0 {
                    continue;
                }
                let a = &cg.get(j1, m1, j2, m2, j12, m1 + m2) * &cg.get(j3, m3, j4, m4, j34, m3 + m4);
                if a.is_zero() {
                    continue;
                }
                let a = &a * &cg.get(j12, m1 + m2, j34, m3 + m4, j, m);
                let b = &cg.get(j1, m1, j3, m3, j13, m1 + m3) * &cg.get(j2, m2, j4, m4, j24, m2 + m4);
                let b = &b * &cg.get(j13, m1 + m3, j24, m2 + m4, j, m);
                sum += &a * &b;
            }
        }
    }
    Ok(&sum * &inv_sqrt_dims(&[j12, j34, j13, j24]))
}
