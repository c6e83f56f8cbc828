use std::collections::HashMap;

use fifteenj::exact::oracle::{ninej_contraction_oracle, sixj_contraction_oracle};
use fifteenj::exact::{
    cache_load, cache_store, canonical_key, contract_moebius_oracle, wigner_15j_first, wigner_3j, wigner_6j_twice,
    wigner_6j_uncached, wigner_9j_twice, FifteenJLabels, Label, SymbolCache,
};
use fifteenj::{AlgebraicNumber, Error, HalfInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn alg(s: &str) -> AlgebraicNumber {
    s.parse().unwrap()
}

fn threej(t: [i64; 6]) -> AlgebraicNumber {
    wigner_3j(h(t[0]), h(t[1]), h(t[2]), h(t[3]), h(t[4]), h(t[5])).unwrap()
}

#[test]
fn threej_examples() {
    assert_eq!(threej([1, 1, 0, 1, -1, 0]), alg("1/2 sqrt 2"));
    assert_eq!(threej([2, 2, 2, 0, 0, 0]), AlgebraicNumber::zero());
    assert_eq!(threej([2, 2, 2, 2, -2, 0]), alg("1/6 sqrt 6"));
    // m's that do not sum to zero
    assert!(threej([2, 2, 2, 2, 2, 0]).is_zero());
    assert!(matches!(
        wigner_3j(h(2), h(2), h(2), h(4), h(-2), h(0)),
        Err(Error::Input(_))
    ));
    assert!(wigner_3j(h(2), h(2), h(2), h(1), h(-1), h(0)).is_err());
}

/// Coupled states `|J M⟩` of two spins in the product basis, built by
/// lowering from the top state of each `J` and orthogonalizing against the
/// larger `J` at the same `M`. Keys and values are doubled.
fn ladder_cg(j1: i64, j2: i64) -> HashMap<(i64, i64), HashMap<(i64, i64), f64>> {
    let lower = |j: i64, m: i64| (((j + m) * (j - m + 2)) as f64 / 4.0).sqrt();
    let mut states: HashMap<(i64, i64), HashMap<(i64, i64), f64>> = HashMap::new();
    let mut big_j = j1 + j2;
    while big_j >= (j1 - j2).abs() {
        // top state: the unit vector in the M = J block orthogonal to larger J
        let basis: Vec<(i64, i64)> =
            (-j1..=j1).step_by(2).map(|m1| (m1, big_j - m1)).filter(|&(_, m2)| m2.abs() <= j2).collect();
        let mut v: HashMap<(i64, i64), f64> = basis.iter().enumerate().map(|(i, &k)| (k, 1.0 + 0.618 * i as f64)).collect();
        let mut jj = big_j + 2;
        while jj <= j1 + j2 {
            let u = &states[&(jj, big_j)];
            let dot: f64 = v.iter().map(|(k, x)| x * u.get(k).unwrap_or(&0.0)).sum();
            for (k, x) in v.iter_mut() {
                *x -= dot * u.get(k).unwrap_or(&0.0);
            }
            jj += 2;
        }
        let norm = v.values().map(|x| x * x).sum::<f64>().sqrt();
        // Condon-Shortley: the m1 = j1 component is positive
        let s = if v.get(&(j1, big_j - j1)).copied().unwrap_or(0.0) < 0.0 { -norm } else { norm };
        v.values_mut().for_each(|x| *x /= s);
        let mut m = big_j;
        states.insert((big_j, m), v.clone());
        while m > -big_j {
            let mut w: HashMap<(i64, i64), f64> = HashMap::new();
            for (&(m1, m2), &x) in &v {
                if m1 > -j1 {
                    *w.entry((m1 - 2, m2)).or_default() += x * lower(j1, m1);
                }
                if m2 > -j2 {
                    *w.entry((m1, m2 - 2)).or_default() += x * lower(j2, m2);
                }
            }
            let n = lower(big_j, m);
            w.values_mut().for_each(|x| *x /= n);
            m -= 2;
            states.insert((big_j, m), w.clone());
            v = w;
        }
        big_j -= 2;
    }
    states
}

#[test]
fn threej_matches_ladder_recursion() {
    for j1 in 0..=4 {
        for j2 in 0..=4 {
            let cg = ladder_cg(j1, j2);
            for (&(j, m), state) in &cg {
                for (&(m1, m2), &c) in state {
                    // (j1 j2 j; m1 m2 -m) = (-1)^{j1-j2+m} ⟨j1 m1 j2 m2|j m⟩ / √(2j+1)
                    let sign = if (j1 - j2 + m).rem_euclid(4) == 0 { 1.0 } else { -1.0 };
                    let want = sign * c / ((j + 1) as f64).sqrt();
                    let got = threej([j1, j2, j, m1, m2, -m]).to_f64();
                    assert!((got - want).abs() < 1e-12, "({j1} {j2} {j}; {m1} {m2} {}) {got} vs {want}", -m);
                }
            }
        }
    }
}

#[test]
fn sixj_examples() {
    assert_eq!(wigner_6j_twice([2, 2, 2, 2, 2, 2]), alg("1/6 sqrt 1"));
    assert_eq!(wigner_6j_twice([2, 2, 2, 2, 2, 2]), sixj_contraction_oracle([2, 2, 2, 2, 2, 2]).unwrap());
    // {a b c; 0 c b} = (-1)^{a+b+c} / √([b][c])
    for (a, b, c) in [(2, 3, 3), (4, 2, 4), (1, 2, 3), (6, 5, 3)] {
        let want = AlgebraicNumber::sqrt_of_rational(&Rational::from((1, (b + 1) * (c + 1))))
            .unwrap()
            .scale(&Rational::from(if (a + b + c) % 4 == 0 { 1 } else { -1 }));
        assert_eq!(wigner_6j_twice([a, b, c, 0, c, b]), want, "{a} {b} {c}");
    }
    assert!(wigner_6j_twice([2, 2, 6, 2, 2, 2]).is_zero());
    assert!(wigner_6j_twice([1, 1, 1, 1, 1, 1]).is_zero());
}

#[test]
fn sixj_matches_contraction() {
    let mut n = 0;
    for code in 0..4i64.pow(6) {
        let l: [i64; 6] = std::array::from_fn(|i| (code / 4i64.pow(i as u32)) % 4);
        let v = wigner_6j_uncached(l);
        if v.is_zero() {
            continue;
        }
        assert_eq!(v, sixj_contraction_oracle(l).unwrap(), "{l:?}");
        n += 1;
    }
    assert!(n > 150, "{n}");
}

#[test]
fn sixj_symmetries_share_a_key() {
    let [a, b, c, d, e, f] = [3, 4, 5, 2, 3, 4];
    let v = wigner_6j_twice([a, b, c, d, e, f]);
    let key = canonical_key([a, b, c, d, e, f]);
    for t in [[b, a, c, e, d, f], [c, b, a, f, e, d], [a, e, f, d, b, c], [d, e, c, a, b, f], [d, b, f, a, e, c]] {
        assert_eq!(wigner_6j_twice(t), v, "{t:?}");
        assert_eq!(canonical_key(t), key);
    }
}

#[test]
fn ninej_examples() {
    // {1/2 1/2 1; 1/2 1/2 1; 1 1 0} = -{1/2 1/2 1; 1/2 1/2 1} / 3
    assert_eq!(wigner_9j_twice([1, 1, 2, 1, 1, 2, 2, 2, 0]), alg("-1/18 sqrt 1"));
    let t = [2, 1, 3, 2, 3, 1, 2, 2, 2];
    let v = wigner_9j_twice(t);
    assert!(!v.is_zero());
    // swapping the first two columns multiplies by (-1)^{sum of all nine}
    let swapped = [t[1], t[0], t[2], t[4], t[3], t[5], t[7], t[6], t[8]];
    let sum: i64 = t.iter().sum();
    let sign = Rational::from(if sum % 4 == 0 { 1 } else { -1 });
    assert_eq!(wigner_9j_twice(swapped), v.scale(&sign));
    // transpose leaves it alone
    assert_eq!(wigner_9j_twice([t[0], t[3], t[6], t[1], t[4], t[7], t[2], t[5], t[8]]), v);
    assert!(wigner_9j_twice([2, 2, 6, 2, 2, 2, 2, 2, 2]).is_zero());
}

#[test]
fn ninej_matches_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 40 {
        let t: [i64; 9] = [0; 9].map(|_| rng.gen_range(0..=4));
        let v = wigner_9j_twice(t);
        if v.is_zero() && checked % 4 != 0 {
            continue;
        }
        assert_eq!(v, ninej_contraction_oracle(t).unwrap(), "{t:?}");
        checked += 1;
    }
}

#[test]
fn fifteenj_inadmissible_is_zero() {
    let mut l = FifteenJLabels::from_twice([2; 15]);
    l.set(Label::J7, h(6));
    assert!(!l.is_admissible());
    assert!(wigner_15j_first(&l).is_zero());
    assert!(contract_moebius_oracle(&l).unwrap().is_zero());
}

#[test]
fn oracle_refuses_large_labels() {
    let l = FifteenJLabels::from_twice([8; 15]);
    assert!(matches!(contract_moebius_oracle(&l), Err(Error::TooLarge(_))));
}

#[test]
fn fifteenj_matches_oracle_at_three_halves() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    while checked < 25 {
        let l = FifteenJLabels::from_twice([0; 15].map(|_| rng.gen_range(0..=3)));
        if !l.is_admissible() {
            continue;
        }
        assert_eq!(wigner_15j_first(&l), contract_moebius_oracle(&l).unwrap(), "{l}");
        checked += 1;
    }
}

#[test]
fn fifteenj_double_zero_collapse_via_oracle() {
    // j5 = j6 = 0: the oracle reproduces the 9j divided by [j12][j13]
    let l = FifteenJLabels::from_rows([[2, 1, 3, 3, 3], [1, 2, 3, 3, 3], [3, 3, 0, 0, 2]]);
    let nine = wigner_9j_twice([2, 1, 3, 1, 2, 3, 3, 3, 2]);
    assert!(!nine.is_zero());
    let want = nine.scale(&Rational::from((1, 4 * 4)));
    assert_eq!(contract_moebius_oracle(&l).unwrap(), want);
    assert_eq!(wigner_15j_first(&l), want);
}

#[test]
fn scheme_swap_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    while checked < 200 {
        let l = FifteenJLabels::from_twice([0; 15].map(|_| rng.gen_range(0..=4)));
        if !l.is_admissible() {
            continue;
        }
        assert_eq!(wigner_15j_first(&l), wigner_15j_first(&l.scheme_swapped()), "{l}");
        checked += 1;
    }
}

#[test]
fn repeated_evaluation_is_identical() {
    let l = FifteenJLabels::from_rows([[9, 11, 8, 10, 12], [7, 5, 6, 8, 10], [8, 10, 2, 2, 10]]);
    assert!(l.is_admissible());
    let a = wigner_15j_first(&l);
    let b = wigner_15j_first(&l);
    assert!(!a.is_zero());
    assert_eq!(a.terms().collect::<Vec<_>>(), b.terms().collect::<Vec<_>>());
}

#[test]
fn cache_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cache = SymbolCache::new();
    while cache.len() < 1000 {
        let t: [i64; 6] = [0; 6].map(|_| rng.gen_range(0..=30));
        let v = wigner_6j_uncached(t);
        if let Some(k) = canonical_key(t) {
            cache.insert(k, v);
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    cache_store(&cache, &path).unwrap();
    let back = cache_load(&path).unwrap();
    assert_eq!(back.entries(), cache.entries());
    // storing again gives the same bytes
    let first = std::fs::read(&path).unwrap();
    cache_store(&back, &path).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn cache_load_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    std::fs::write(&empty, "").unwrap();
    assert!(cache_load(&empty).unwrap().is_empty());

    let bad = dir.path().join("bad");
    std::fs::write(&bad, "6j 2 2 2 2 2 2 -> 1/6 sqrt 1\n6j 2 2 2 2 2 4 -> 1/3 sqrt 4\n").unwrap();
    match cache_load(&bad) {
        Err(Error::CacheParse { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected a parse error, got {other:?}"),
    }
}
