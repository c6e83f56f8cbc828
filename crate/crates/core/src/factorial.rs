//! Factorials in prime-factorized form.
//!
//! The memo table is shared process-wide. Reads take a shared lock; a request
//! beyond the current extent takes the write lock once and extends the table.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Complete, Integer};

struct Table {
    primes: Vec<u64>,
    /// `facts[n][i]` is the exponent of `primes[i]` in `n!`.
    facts: Vec<Arc<[u32]>>,
}

impl Table {
    fn extend_to(&mut self, n: usize) {
        while self.facts.len() <= n {
            let m = self.facts.len() as u64;
            let prev = self.facts.last().cloned().unwrap_or_else(|| Arc::from(Vec::new()));
            let mut exps: Vec<u32> = prev.to_vec();
            let mut rest = m;
            for (i, &p) in self.primes.iter().enumerate() {
                if p * p > rest {
                    break;
                }
                while rest.is_multiple_of(p) {
                    exps[i] += 1;
                    rest /= p;
                }
            }
            if rest > 1 {
                match self.primes.binary_search(&rest) {
                    Ok(i) => exps[i] += 1,
                    Err(_) => {
                        // `rest` is a new prime, necessarily equal to m.
                        self.primes.push(rest);
                        exps.push(1);
                    }
                }
            }
            self.facts.push(Arc::from(exps));
        }
    }
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Table { primes: Vec::new(), facts: Vec::new() };
        t.extend_to(64);
        RwLock::new(t)
    })
}

/// Exponent vector of `n!` over the primes `<= n`, in increasing prime order.
pub(crate) fn factorial_exponents(n: u64) -> Arc<[u32]> {
    let n = n as usize;
    {
        let t = table().read().expect("factorial table poisoned");
        if let Some(e) = t.facts.get(n) {
            return e.clone();
        }
    }
    let mut t = table().write().expect("factorial table poisoned");
    t.extend_to(n);
    t.facts[n].clone()
}

/// The `i`-th prime (0-based), extending the table as needed.
pub(crate) fn prime(i: usize) -> u64 {
    {
        let t = table().read().expect("factorial table poisoned");
        if let Some(&p) = t.primes.get(i) {
            return p;
        }
    }
    let mut t = table().write().expect("factorial table poisoned");
    let mut n = t.facts.len().max(2);
    while t.primes.len() <= i {
        n *= 2;
        t.extend_to(n);
    }
    t.primes[i]
}

/// All primes up to the current table extent, at least up to `n`.
pub(crate) fn primes_upto(n: u64) -> Vec<u64> {
    factorial_exponents(n);
    let t = table().read().expect("factorial table poisoned");
    t.primes.iter().copied().take_while(|&p| p <= n).collect()
}

/// Prime factorization of `n!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialFactors {
    n: u64,
    exps: Arc<[u32]>,
}

impl FactorialFactors {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Map from prime to exponent; empty for `0!` and `1!`.
    pub fn exponents(&self) -> BTreeMap<u64, u32> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (prime(i), e))
            .collect()
    }

    /// Exponent of `p` in `n!` (zero for non-primes).
    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents().get(&p).copied().unwrap_or(0)
    }

    /// Multiply the factors back out.
    pub fn to_integer(&self) -> Integer {
        let mut acc = Integer::from(1);
        for (p, e) in self.exponents() {
            acc *= Integer::u_pow_u(p as u32, e).complete();
        }
        acc
    }
}

/// Exact prime factorization of `n!`, memoized.
pub fn factorial_factors(n: u64) -> FactorialFactors {
    FactorialFactors { n, exps: factorial_exponents(n) }
}

/// Signed exponent vector over the primes, used to assemble factorial ratios.
#[derive(Clone, Debug, Default)]
pub(crate) struct PrimeExponents {
    e: Vec<i64>,
}

impl PrimeExponents {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `k * exponents(n!)`.
    pub fn add_factorial(&mut self, n: u64, k: i64) {
        let f = factorial_exponents(n);
        if self.e.len() < f.len() {
            self.e.resize(f.len(), 0);
        }
        for (slot, &x) in self.e.iter_mut().zip(f.iter()) {
            *slot += k * i64::from(x);
        }
    }

    /// Split `√(Π p^e)` into `Π p^⌊e/2⌋ · √r` with `r` square-free.
    pub fn split_sqrt(&self) -> (PrimeExponents, Integer) {
        let mut half = PrimeExponents { e: Vec::with_capacity(self.e.len()) };
        let mut radicand = Integer::from(1);
        for (i, &x) in self.e.iter().enumerate() {
            half.e.push(x.div_euclid(2));
            if x.rem_euclid(2) == 1 {
                radicand *= prime(i);
            }
        }
        (half, radicand)
    }

    /// The value as (numerator, denominator), both positive and coprime.
    pub fn to_num_den(&self) -> (Integer, Integer) {
        let mut num = Integer::from(1);
        let mut den = Integer::from(1);
        for (i, &x) in self.e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let p = prime(i) as u32;
            let pw = Integer::u_pow_u(p, x.unsigned_abs() as u32).complete();
            if x > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        (num, den)
    }
}
