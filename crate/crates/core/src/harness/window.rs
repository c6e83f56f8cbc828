use crate::exact::{FifteenJLabels, Label, TRIADS};
use crate::halfint::{triangle_ok_twice, HalfInt};

/// Inclusive range of one label, stepping by 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: HalfInt,
    pub hi: HalfInt,
}

#[allow(clippy::len_without_is_empty)]
impl Window {
    /// Every value in the window, in increasing order.
    pub fn values(&self) -> Vec<HalfInt> {
        (self.lo.twice()..=self.hi.twice()).step_by(2).map(HalfInt::from_twice).collect()
    }

    pub fn len(&self) -> usize {
        ((self.hi.twice() - self.lo.twice()) / 2 + 1) as usize
    }

    pub fn contains(&self, x: HalfInt) -> bool {
        x >= self.lo && x <= self.hi && (x.twice() - self.lo.twice()) % 2 == 0
    }

    /// The middle half: drop a quarter of the span at each end.
    pub fn central_half(&self) -> Window {
        let n = self.len() as i64;
        let q = n / 4;
        Window { lo: HalfInt::from_twice(self.lo.twice() + 2 * q), hi: HalfInt::from_twice(self.hi.twice() - 2 * q) }
    }
}

/// The largest range of `varied` over which every triad holds, with the other
/// fourteen labels fixed. `None` when that range is empty.
pub fn admissible_window(labels: &FifteenJLabels, varied: Label) -> Option<Window> {
    let mut lo = 0i64;
    let mut hi = i64::MAX;
    let mut parity: Option<i64> = None;
    for t in TRIADS {
        let others: Vec<i64> = t.iter().filter(|&&x| x != varied).map(|&x| labels.twice(x)).collect();
        if others.len() == 3 {
            if !triangle_ok_twice(others[0], others[1], others[2]) {
                return None;
            }
            continue;
        }
        let (a, b) = (others[0], others[1]);
        if a < 0 || b < 0 {
            return None;
        }
        lo = lo.max((a - b).abs());
        hi = hi.min(a + b);
        let p = (a + b).rem_euclid(2);
        match parity {
            Some(q) if q != p => return None,
            _ => parity = Some(p),
        }
    }
    let p = parity.unwrap_or(0);
    if lo.rem_euclid(2) != p {
        lo += 1;
    }
    if hi.rem_euclid(2) != p {
        hi -= 1;
    }
    (lo <= hi).then(|| Window { lo: HalfInt::from_twice(lo), hi: HalfInt::from_twice(hi) })
}
