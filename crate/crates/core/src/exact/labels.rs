use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::{triangle_ok, HalfInt};

/// Names of the fifteen labels, in array layout order:
///
/// ```text
/// j1   j2   j12  j125  j1256
/// j3   j4   j34  j135  j1356
/// j13  j24  j5   j6    j7
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    J1,
    J2,
    J12,
    J125,
    J1256,
    J3,
    J4,
    J34,
    J135,
    J1356,
    J13,
    J24,
    J5,
    J6,
    J7,
}

impl Label {
    pub const ALL: [Label; 15] = [
        Label::J1,
        Label::J2,
        Label::J12,
        Label::J125,
        Label::J1256,
        Label::J3,
        Label::J4,
        Label::J34,
        Label::J135,
        Label::J1356,
        Label::J13,
        Label::J24,
        Label::J5,
        Label::J6,
        Label::J7,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Lower-case name such as `j125`.
    pub fn name(self) -> &'static str {
        match self {
            Label::J1 => "j1",
            Label::J2 => "j2",
            Label::J12 => "j12",
            Label::J125 => "j125",
            Label::J1256 => "j1256",
            Label::J3 => "j3",
            Label::J4 => "j4",
            Label::J34 => "j34",
            Label::J135 => "j135",
            Label::J1356 => "j1356",
            Label::J13 => "j13",
            Label::J24 => "j24",
            Label::J5 => "j5",
            Label::J6 => "j6",
            Label::J7 => "j7",
        }
    }

    /// Parse `j125`, or the small-spin aliases `s1`, `s3`, `s4`, `s5`, `s6`
    /// for the labels that play that role in the asymptotic cases.
    pub fn from_name(s: &str) -> Option<Label> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "s1" => return Some(Label::J1),
            "s3" => return Some(Label::J3),
            "s4" => return Some(Label::J4),
            "s5" => return Some(Label::J5),
            "s6" => return Some(Label::J6),
            _ => {}
        }
        Label::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The ten trivalent vertices of the network, as label triples.
pub const TRIADS: [[Label; 3]; 10] = [
    [Label::J1, Label::J2, Label::J12],
    [Label::J3, Label::J4, Label::J34],
    [Label::J12, Label::J5, Label::J125],
    [Label::J125, Label::J6, Label::J1256],
    [Label::J1256, Label::J34, Label::J7],
    [Label::J1, Label::J3, Label::J13],
    [Label::J2, Label::J4, Label::J24],
    [Label::J13, Label::J5, Label::J135],
    [Label::J135, Label::J6, Label::J1356],
    [Label::J1356, Label::J24, Label::J7],
];

/// The fifteen labels of a first-kind 15j symbol plus a small/large flag each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FifteenJLabels {
    j: [HalfInt; 15],
    small: [bool; 15],
}

impl FifteenJLabels {
    /// Labels in layout order, all flagged large.
    pub fn new(j: [HalfInt; 15]) -> Self {
        FifteenJLabels { j, small: [false; 15] }
    }

    /// Build from doubled values in layout order.
    pub fn from_twice(t: [i64; 15]) -> Self {
        Self::new(t.map(HalfInt::from_twice))
    }

    /// Build from the three rows of doubled values.
    pub fn from_rows(rows: [[i64; 5]; 3]) -> Self {
        let mut t = [0; 15];
        for (r, row) in rows.iter().enumerate() {
            t[5 * r..5 * r + 5].copy_from_slice(row);
        }
        Self::from_twice(t)
    }

    #[inline]
    pub fn get(&self, l: Label) -> HalfInt {
        self.j[l.index()]
    }

    #[inline]
    pub fn twice(&self, l: Label) -> i64 {
        self.j[l.index()].twice()
    }

    pub fn set(&mut self, l: Label, v: HalfInt) {
        self.j[l.index()] = v;
    }

    pub fn with(mut self, l: Label, v: HalfInt) -> Self {
        self.set(l, v);
        self
    }

    pub fn is_small(&self, l: Label) -> bool {
        self.small[l.index()]
    }

    pub fn set_small(&mut self, l: Label, small: bool) {
        self.small[l.index()] = small;
    }

    pub fn with_small(mut self, ls: &[Label]) -> Self {
        for &l in ls {
            self.small[l.index()] = true;
        }
        self
    }

    pub fn small_labels(&self) -> Vec<Label> {
        Label::ALL.into_iter().filter(|l| self.is_small(*l)).collect()
    }

    pub fn values(&self) -> [HalfInt; 15] {
        self.j
    }

    /// The ten triads with their values.
    pub fn triads(&self) -> [([Label; 3], [HalfInt; 3]); 10] {
        TRIADS.map(|t| (t, t.map(|l| self.get(l))))
    }

    /// The first triad that fails the selection rule, if any.
    pub fn first_violation(&self) -> Option<[Label; 3]> {
        if self.j.iter().any(|x| x.twice() < 0) {
            return TRIADS
                .into_iter()
                .find(|t| t.iter().any(|l| self.get(*l).twice() < 0));
        }
        TRIADS
            .into_iter()
            .find(|t| !triangle_ok(self.get(t[0]), self.get(t[1]), self.get(t[2])))
    }

    pub fn is_admissible(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Check admissibility, describing the failing triad.
    pub fn check_admissible(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(t) => Err(Error::Input(format!(
                "triad violation: ({}, {}, {}) = ({}, {}, {})",
                t[0],
                t[1],
                t[2],
                self.get(t[0]),
                self.get(t[1]),
                self.get(t[2])
            ))),
        }
    }

    /// Largest label.
    pub fn max_label(&self) -> HalfInt {
        *self.j.iter().max().unwrap()
    }

    /// The labels after swapping the two coupling schemes:
    /// j12↔j13, j34↔j24, j125↔j135, j1256↔j1356, and j2↔j3 to match.
    pub fn scheme_swapped(&self) -> Self {
        use Label::*;
        let mut out = *self;
        for (x, y) in [(J12, J13), (J34, J24), (J125, J135), (J1256, J1356), (J2, J3)] {
            out.j[x.index()] = self.j[y.index()];
            out.j[y.index()] = self.j[x.index()];
            out.small[x.index()] = self.small[y.index()];
            out.small[y.index()] = self.small[x.index()];
        }
        out
    }
}

/// Every admissible label set with all doubled labels in `0..=max_twice`,
/// in lexicographic order of a fixed assignment sequence.
pub fn enumerate_admissible(max_twice: i64) -> Vec<FifteenJLabels> {
    use Label::*;
    // Each label is placed right after the labels it shares triads with, so
    // most triads are tested as early as possible.
    const ORDER: [Label; 15] = [J1, J2, J12, J3, J4, J34, J5, J125, J6, J1256, J7, J13, J24, J135, J1356];
    fn rec(i: usize, cur: &mut FifteenJLabels, max_twice: i64, placed: &mut [bool; 15], out: &mut Vec<FifteenJLabels>) {
        if i == ORDER.len() {
            out.push(*cur);
            return;
        }
        let l = ORDER[i];
        placed[l.index()] = true;
        for v in 0..=max_twice {
            cur.set(l, HalfInt::from_twice(v));
            let ok = TRIADS.iter().filter(|t| t.contains(&l)).all(|t| {
                !t.iter().all(|x| placed[x.index()]) || triangle_ok(cur.get(t[0]), cur.get(t[1]), cur.get(t[2]))
            });
            if ok {
                rec(i + 1, cur, max_twice, placed, out);
            }
        }
        placed[l.index()] = false;
        cur.set(l, HalfInt::ZERO);
    }
    let mut out = Vec::new();
    let mut cur = FifteenJLabels::from_twice([0; 15]);
    rec(0, &mut cur, max_twice, &mut [false; 15], &mut out);
    out
}

impl fmt::Display for FifteenJLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            let row: Vec<String> = self.j[5 * r..5 * r + 5].iter().map(|x| x.to_string()).collect();
            write!(f, "{}{}", if r > 0 { " | " } else { "" }, row.join(" "))?;
        }
        Ok(())
    }
}
