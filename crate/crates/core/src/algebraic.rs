//! Exact numbers of the form `Σ qᵢ √rᵢ` with rational `qᵢ` and distinct
//! square-free radicands `rᵢ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use rug::float::Round;
use rug::ops::NegAssign;
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::error::Error;
use crate::factorial::primes_upto;

/// Exact algebraic value `Σ q √r`.
///
/// The map is canonical: radicands are square-free and positive, and no
/// coefficient is zero. Distinct square-free radicands are linearly
/// independent over the rationals, so two values are equal exactly when their
/// maps are equal, and a nonempty map is a nonzero number.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    terms: BTreeMap<Integer, Rational>,
}

impl AlgebraicNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::from(1))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_term(q, Integer::from(1))
    }

    /// `q √r` for a radicand the caller guarantees to be square-free.
    pub fn from_term(q: Rational, radicand: Integer) -> Self {
        debug_assert!(radicand > 0);
        let mut terms = BTreeMap::new();
        if q != 0 {
            terms.insert(radicand, q);
        }
        AlgebraicNumber { terms }
    }

    /// `√q` for a nonnegative rational whose numerator and denominator factor
    /// over small primes. Returns `None` if a cofactor cannot be certified
    /// square-free.
    pub fn sqrt_of_rational(q: &Rational) -> Option<Self> {
        if *q < 0 {
            return None;
        }
        if *q == 0 {
            return Some(Self::zero());
        }
        // √(n/d) = √(n d) / d
        let (n, d) = q.clone().into_numer_denom();
        let nd = (&n * &d).complete();
        let (outer, radicand) = split_square_free(nd)?;
        Some(Self::from_term(Rational::from((outer, d)), radicand))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&Integer, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, if the number has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&Integer::from(1)).cloned(),
            _ => None,
        }
    }

    /// Sign of the value: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.terms.len() <= 1 {
            return self.terms.values().next().map_or(0, |q| q.cmp0() as i32);
        }
        let v = self.to_float(64);
        v.cmp0().map_or(0, |o| o as i32)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if *k == 0 {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(r, q)| (r.clone(), (q * k).complete()))
            .collect();
        AlgebraicNumber { terms }
    }

    fn add_term(&mut self, radicand: Integer, q: Rational) {
        use std::collections::btree_map::Entry;
        if q == 0 {
            return;
        }
        match self.terms.entry(radicand) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Value rounded to double precision.
    ///
    /// Terms are evaluated in binary floating point with at least 32 guard bits;
    /// when the sum cancels the working precision is doubled until enough
    /// significant bits survive.
    pub fn to_f64(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        let mut prec = 53 + 64;
        loop {
            let (sum, max_exp) = self.sum_at(prec);
            if sum.is_zero() {
                prec *= 2;
                continue;
            }
            let lost = i64::from(max_exp) - i64::from(sum.get_exp().unwrap_or(0));
            let spread = 64 - (self.terms.len() as u64).leading_zeros() as i64;
            if (prec as i64) - lost - spread >= 53 + 32 {
                return sum.to_f64_round(Round::Nearest);
            }
            prec = prec * 2 + lost.max(0) as u32;
        }
    }

    /// Value at a given binary precision (no cancellation control).
    pub fn to_float(&self, prec: u32) -> Float {
        self.sum_at(prec).0
    }

    fn sum_at(&self, prec: u32) -> (Float, i32) {
        let mut sum = Float::with_val(prec, 0);
        let mut max_exp = i32::MIN;
        for (r, q) in &self.terms {
            let mut t = Float::with_val(prec, r);
            t.sqrt_mut();
            t *= q;
            if let Some(e) = t.get_exp() {
                max_exp = max_exp.max(e);
            }
            sum += &t;
        }
        (sum, max_exp)
    }
}

/// Multiply two square-free radicands: `√a √b = g √(a b / g²)`, `g = gcd(a, b)`.
fn mul_radicands(a: &Integer, b: &Integer) -> (Integer, Integer) {
    if *a == 1 {
        return (Integer::from(1), b.clone());
    }
    if *b == 1 {
        return (Integer::from(1), a.clone());
    }
    let g = a.gcd_ref(b).complete();
    let r = (a / &g).complete() * (b / &g).complete();
    (g, r)
}

/// Write `n = outer² · r` with `r` square-free. Trial-divides by small primes;
/// the cofactor left over is accepted if it is 1, a perfect square of a prime
/// beyond the trial bound, or too small to hide a square.
fn split_square_free(mut n: Integer) -> Option<(Integer, Integer)> {
    const BOUND: u64 = 1 << 12;
    let mut outer = Integer::from(1);
    let mut r = Integer::from(1);
    for p in primes_upto(BOUND) {
        if n == 1 {
            break;
        }
        let mut e = 0u32;
        while n.is_divisible_u(p as u32) {
            n.div_exact_u_mut(p as u32);
            e += 1;
        }
        if e > 0 {
            outer *= Integer::u_pow_u(p as u32, e / 2).complete();
            if e % 2 == 1 {
                r *= p;
            }
        }
    }
    if n == 1 {
        return Some((outer, r));
    }
    if n.is_perfect_square() {
        let s = n.sqrt();
        // s has no prime factor below the bound; it is safe only if prime.
        if s.is_probably_prime(30) != rug::integer::IsPrime::No {
            return Some((outer * s, r));
        }
        return None;
    }
    // Any square factor of the cofactor would exceed BOUND², so a cofactor
    // below BOUND³ is either prime or a product of two distinct primes.
    if n < Integer::from(BOUND).pow(3) {
        return Some((outer, r * n));
    }
    None
}

/// Whether `n > 0` is square-free, as far as [`split_square_free`] can certify.
pub(crate) fn is_certified_square_free(n: &Integer) -> bool {
    *n > 0 && matches!(split_square_free(n.clone()), Some((o, _)) if o == 1)
}

impl AddAssign<&AlgebraicNumber> for AlgebraicNumber {
    fn add_assign(&mut self, rhs: &AlgebraicNumber) {
        for (r, q) in &rhs.terms {
            self.add_term(r.clone(), q.clone());
        }
    }
}

impl AddAssign for AlgebraicNumber {
    fn add_assign(&mut self, rhs: AlgebraicNumber) {
        for (r, q) in rhs.terms {
            self.add_term(r, q);
        }
    }
}

impl Add for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(mut self, rhs: AlgebraicNumber) -> AlgebraicNumber {
        self += rhs;
        self
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(mut self) -> AlgebraicNumber {
        for q in self.terms.values_mut() {
            q.neg_assign();
        }
        self
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -self.clone()
    }
}

impl Sub for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self + &(-rhs)
    }
}

impl Sub for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
        self + (-rhs)
    }
}

impl Mul for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        let mut out = AlgebraicNumber::zero();
        for (ra, qa) in &self.terms {
            for (rb, qb) in &rhs.terms {
                let (g, r) = mul_radicands(ra, rb);
                let q = (qa * qb).complete() * g;
                out.add_term(r, q);
            }
        }
        out
    }
}

impl Mul for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
        &self * &rhs
    }
}

impl From<i64> for AlgebraicNumber {
    fn from(n: i64) -> Self {
        AlgebraicNumber::from_rational(Rational::from(n))
    }
}

impl From<Rational> for AlgebraicNumber {
    fn from(q: Rational) -> Self {
        AlgebraicNumber::from_rational(q)
    }
}

impl fmt::Display for AlgebraicNumber {
    /// Written as `n/d sqrt r + n/d sqrt r ...`; zero is written `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}/{} sqrt {}", q.numer(), q.denom(), r)?;
        }
        Ok(())
    }
}

impl FromStr for AlgebraicNumber {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. Rejects radicands that are
    /// not square-free, repeated radicands and zero coefficients.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for part in s.split(" + ") {
            let mut it = part.split_whitespace();
            let (Some(coeff), Some("sqrt"), Some(rad), None) = (it.next(), it.next(), it.next(), it.next())
            else {
                return Err(Error::Input(format!("malformed term {part:?}")));
            };
            let q = Rational::from_str(coeff)
                .map_err(|_| Error::Input(format!("bad coefficient {coeff:?}")))?;
            let r = Integer::from_str(rad).map_err(|_| Error::Input(format!("bad radicand {rad:?}")))?;
            if q == 0 {
                return Err(Error::Input("zero coefficient".into()));
            }
            if !is_certified_square_free(&r) {
                return Err(Error::Input(format!("radicand {r} is not square-free")));
            }
            if terms.insert(r.clone(), q).is_some() {
                return Err(Error::Input(format!("repeated radicand {r}")));
            }
        }
        Ok(AlgebraicNumber { terms })
    }
}
