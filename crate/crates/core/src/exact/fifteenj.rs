use rug::Rational;

use super::labels::{FifteenJLabels, Label};
use super::sixj::wigner_6j_twice;
use crate::algebraic::AlgebraicNumber;
use crate::halfint::sign_twice;

/// The three label rows that drive the single-sum reduction.
///
/// The network is a ladder of five plaquettes. Writing `J`, `K` for the two
/// rails and `l` for the rungs, the symbol is
///
/// ```text
/// (-1)^φ Σ_x (2x+1) Π_{i=1..4} {J_i K_i x; K_{i+1} J_{i+1} l_i} · {J_5 K_5 x; J_1 K_1 l_5}
/// ```
///
/// where the rails are closed with a twist (the last factor pairs `J_5` with
/// `J_1` and `K_5` with `K_1` in crossed position).
struct Ladder {
    rail_j: [i64; 5],
    rail_k: [i64; 5],
    rungs: [i64; 5],
}

impl Ladder {
    fn of(l: &FifteenJLabels) -> Ladder {
        use Label::*;
        let t = |x: Label| l.twice(x);
        Ladder {
            rail_j: [t(J2), t(J12), t(J125), t(J1256), t(J34)],
            rail_k: [t(J3), t(J13), t(J135), t(J1356), t(J24)],
            rungs: [t(J1), t(J5), t(J6), t(J7), t(J4)],
        }
    }

    /// The five 6j symbols at a given doubled `x`.
    fn sixjs(&self, x: i64) -> [[i64; 6]; 5] {
        let (j, k, l) = (&self.rail_j, &self.rail_k, &self.rungs);
        let mut out = [[0; 6]; 5];
        for i in 0..4 {
            out[i] = [j[i], k[i], x, k[i + 1], j[i + 1], l[i]];
        }
        out[4] = [j[4], k[4], x, j[0], k[0], l[4]];
        out
    }

    /// Doubled range of the summation label, stepping by 2.
    fn x_range(&self) -> Option<(i64, i64)> {
        let mut lo = 0;
        let mut hi = i64::MAX;
        for i in 0..5 {
            lo = lo.max((self.rail_j[i] - self.rail_k[i]).abs());
            hi = hi.min(self.rail_j[i] + self.rail_k[i]);
        }
        let parity_ok = (0..5).all(|i| (self.rail_j[i] + self.rail_k[i] - lo) % 2 == 0);
        (parity_ok && lo <= hi).then_some((lo, hi))
    }
}

/// Overall sign `(-1)^{Σ all labels + j12 + j1356 - j13 - j1256}`.
fn overall_sign(l: &FifteenJLabels) -> i32 {
    use Label::*;
    let total: i64 = Label::ALL.iter().map(|&x| l.twice(x)).sum();
    sign_twice(total + l.twice(J12) + l.twice(J1356) - l.twice(J13) - l.twice(J1256))
}

/// 15j symbol of the first kind, exact, by the single-sum reduction over one
/// internal label. Inadmissible labels give zero.
pub fn wigner_15j_first(labels: &FifteenJLabels) -> AlgebraicNumber {
    if !labels.is_admissible() {
        return AlgebraicNumber::zero();
    }
    let ladder = Ladder::of(labels);
    let Some((lo, hi)) = ladder.x_range() else {
        return AlgebraicNumber::zero();
    };
    let mut sum = AlgebraicNumber::zero();
    let mut x = lo;
    while x <= hi {
        let mut term = AlgebraicNumber::from(x + 1);
        for s in ladder.sixjs(x) {
            let v = wigner_6j_twice(s);
            if v.is_zero() {
                term = AlgebraicNumber::zero();
                break;
            }
            term = &term * &v;
        }
        sum += term;
        x += 2;
    }
    sum.scale(&Rational::from(overall_sign(labels)))
}

/// The five doubled 6j label sets of every term, keyed by doubled `x`.
/// Exposed for cache warm-up and diagnostics.
pub fn fifteen_j_sixj_terms(labels: &FifteenJLabels) -> Vec<(i64, [[i64; 6]; 5])> {
    let ladder = Ladder::of(labels);
    let Some((lo, hi)) = ladder.x_range() else {
        return Vec::new();
    };
    (lo..=hi).step_by(2).map(|x| (x, ladder.sixjs(x))).collect()
}
