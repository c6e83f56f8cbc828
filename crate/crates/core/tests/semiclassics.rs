use std::f64::consts::PI;

use fifteenj::exact::{wigner_15j_first, FifteenJLabels, Label};
use fifteenj::geometry::{dihedral_angles_from_lengths, embed_tetrahedron, NineJConfig};
use fifteenj::harness::{run_sweep, SweepSpec};
use fifteenj::semiclassics::{
    asymp_two_small_with, asymptotic, ponzano_regge_phase, wigner_d, wigner_d_twice, Formula, NineJAction, Regime,
    SignedDihedralAction, SmallSpinIndices,
};
use fifteenj::{Error, HalfInt};

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

#[test]
fn spin_half_block() {
    for k in 0..20 {
        let t = 0.3 * k as f64;
        assert!((wigner_d(h(1), h(1), h(1), t).unwrap() - (t / 2.0).cos()).abs() < 1e-15);
        assert!((wigner_d(h(1), h(1), h(-1), t).unwrap() + (t / 2.0).sin()).abs() < 1e-15);
    }
}

/// `exp(A)` by Taylor series for a small real matrix.
fn expm(a: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    let mut term = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for n in 1..40 {
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += term[i][j];
            }
        }
        let mut next = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                next[i][j] = (0..3).map(|k| term[i][k] * a[k][j]).sum::<f64>() / n as f64;
            }
        }
        term = next;
    }
    out
}

#[test]
fn spin_one_matches_generator_exponential() {
    // exp(-iθ Jy) on m = 1, 0, -1; -i Jy is real
    let theta = 0.7;
    let r = -theta / 2f64.sqrt();
    let d = expm([[0.0, r, 0.0], [-r, 0.0, r], [0.0, -r, 0.0]]);
    let m = [2, 0, -2];
    for i in 0..3 {
        for j in 0..3 {
            let got = wigner_d_twice(2, m[i], m[j], theta);
            assert!((got - d[i][j]).abs() < 1e-14, "{i}{j}: {got} vs {}", d[i][j]);
        }
    }
}

#[test]
fn d_matrix_bad_indices() {
    assert!(matches!(wigner_d(h(2), h(4), h(0), 0.3), Err(Error::Input(_))));
    assert!(matches!(wigner_d(h(2), h(1), h(0), 0.3), Err(Error::Input(_))));
    assert_eq!(wigner_d_twice(2, 4, 0, 0.3), 0.0);
    // large spins stay finite through the log-factorial path
    let v = wigner_d_twice(400, 2, -4, 1.1);
    assert!(v.is_finite() && v.abs() < 1.0);
}

#[test]
fn d_matrix_rows_are_unit() {
    for s in 0..=6 {
        for k in 0..100 {
            let t = 0.0314 * k as f64 + 0.01;
            for nu in (-s..=s).step_by(2) {
                let n: f64 = (-s..=s).step_by(2).map(|mu| wigner_d_twice(s, nu, mu, t).powi(2)).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn ponzano_regge_phase_properties() {
    let t = embed_tetrahedron(&[10.5; 6]).unwrap();
    let twice = [20; 6];
    let phase = ponzano_regge_phase(&t, &twice).unwrap();
    let each = 10.5 * (PI - (1.0f64 / 3.0).acos());
    assert!((phase - 6.0 * each).abs() < 1e-11);

    // linear in J at fixed angles
    let l = [5.5, 6.5, 7.5, 6.0, 7.0, 5.0];
    let twice: [i64; 6] = l.map(|x| (2.0 * x - 1.0) as i64);
    let t = embed_tetrahedron(&l).unwrap();
    let p1 = ponzano_regge_phase(&t, &twice).unwrap();
    let t3 = embed_tetrahedron(&l.map(|x| 3.0 * x)).unwrap();
    let p3 = ponzano_regge_phase(&t3, &l.map(|x| (6.0 * x - 1.0) as i64)).unwrap();
    assert!((p3 - 3.0 * p1).abs() < 1e-10);

    // independent angles from the Gram matrix
    let g = dihedral_angles_from_lengths(&l).unwrap();
    let want: f64 = l.iter().zip(&g).map(|(j, d)| j * d.external).sum();
    assert!((p1 - want).abs() < 1e-10);
}

fn four_small_labels() -> FifteenJLabels {
    FifteenJLabels::from_rows([[1, 237, 236, 238, 236], [189, 3, 188, 188, 190], [190, 234, 2, 2, 118]])
        .with_small(Formula::FourSmall.small_labels())
}

#[test]
fn four_small_point() {
    let l = four_small_labels();
    let a = asymptotic(&l, Formula::FourSmall).unwrap();
    let e = wigner_15j_first(&l).to_f64();
    assert_eq!(a.regime, Regime::Allowed);
    assert!((a.value - e).abs() < 0.05 * e.abs(), "{} vs {e}", a.value);
    assert!(a.diagnostic("theta").is_some());
}

#[test]
fn four_small_all_zero_spins_is_exact() {
    // j1 = j4 = j5 = j6 = 0: the symbol is a pure normalization and sign
    for (two_j2, two_j3, two_j7) in [(40, 30, 20), (41, 33, 40), (60, 60, 100), (25, 31, 8)] {
        let l = FifteenJLabels::from_rows([
            [0, two_j2, two_j2, two_j2, two_j2],
            [two_j3, 0, two_j3, two_j3, two_j3],
            [two_j3, two_j2, 0, 0, two_j7],
        ])
        .with_small(Formula::FourSmall.small_labels());
        assert!(l.is_admissible());
        let e = wigner_15j_first(&l).to_f64();
        let a = asymptotic(&l, Formula::FourSmall).unwrap().value;
        assert!((a - e).abs() < 1e-12 * e.abs(), "{two_j2} {two_j3} {two_j7}: {a} vs {e}");
    }
}

#[test]
fn three_small_zero_spins_reduce_to_sixj() {
    // j3 = j5 = j6 = 0 leaves a 6j on the tetrahedron
    let l = FifteenJLabels::from_rows([[103, 107, 92, 92, 92], [0, 99, 99, 103, 103], [103, 116, 0, 0, 0]])
        .with_small(Formula::ThreeSmall.small_labels());
    let s = run_sweep(&SweepSpec::new(l, Formula::ThreeSmall), true).unwrap();
    let c = s.central_summary();
    assert!(c.count > 20);
    assert!(c.rms_rel < 0.05, "{}", c.rms_rel);
    assert_eq!(c.sign_mismatches, 0);
}

#[test]
fn two_small_zero_spins_reproduce_ninej() {
    let l = FifteenJLabels::from_rows([[120, 110, 96, 96, 96], [96, 140, 118, 110, 110], [110, 124, 0, 0, 0]])
        .with_small(Formula::TwoSmall.small_labels());
    let s = run_sweep(&SweepSpec::new(l, Formula::TwoSmall), true).unwrap();
    let c = s.central_summary();
    assert!(c.rms_rel < 0.10, "{}", c.rms_rel);
}

struct ZeroAction;

impl NineJAction for ZeroAction {
    fn action(&self, _: &NineJConfig) -> f64 {
        0.0
    }
}

#[test]
fn action_is_swappable() {
    let l = FifteenJLabels::from_rows([[197, 187, 148, 150, 148], [173, 205, 176, 192, 194], [190, 180, 2, 2, 200]])
        .with_small(Formula::TwoSmall.small_labels());
    let a = asymp_two_small_with(&l, &SignedDihedralAction).unwrap();
    let b = asymp_two_small_with(&l, &ZeroAction).unwrap();
    assert_eq!(a.regime, Regime::Allowed);
    assert_eq!(b.diagnostic("S1"), Some(0.0));
    assert_ne!(a.value, b.value);
    assert_eq!(a.diagnostic("det1"), b.diagnostic("det1"));
}

#[test]
fn index_bounds_give_exact_zeros() {
    use Label::*;
    let bases = [
        (four_small_labels(), Formula::FourSmall, [J12, J34, J125, J135]),
        (
            FifteenJLabels::from_rows([[203, 207, 192, 194, 196], [3, 199, 200, 200, 202], [202, 216, 2, 2, 192]])
                .with_small(Formula::ThreeSmall.small_labels()),
            Formula::ThreeSmall,
            [J13, J34, J125, J1356],
        ),
        (
            FifteenJLabels::from_rows([[197, 187, 148, 150, 148], [173, 205, 176, 192, 194], [190, 180, 2, 2, 200]])
                .with_small(Formula::TwoSmall.small_labels()),
            Formula::TwoSmall,
            [J125, J135, J1256, J1356],
        ),
    ];
    for (base, f, labels) in bases {
        for x in labels {
            for shift in [-8, -6, -4, 4, 6, 8] {
                let l = base.with(x, HalfInt::from_twice(base.twice(x) + shift));
                if SmallSpinIndices::of(&l).in_bounds(&l, f) {
                    continue;
                }
                assert!(wigner_15j_first(&l).is_zero(), "{f} {x} {shift}");
                let a = asymptotic(&l, f).unwrap();
                assert_eq!((a.value, a.regime), (0.0, Regime::Allowed));
            }
        }
    }
}

#[test]
fn wrong_flags_are_rejected() {
    let l = four_small_labels();
    assert!(matches!(asymptotic(&l, Formula::TwoSmall), Err(Error::Input(_))));
    let unflagged = FifteenJLabels::new(l.values());
    assert!(matches!(asymptotic(&unflagged, Formula::FourSmall), Err(Error::Input(_))));
}

#[test]
fn regimes_are_labelled() {
    let l = FifteenJLabels::from_rows([[203, 207, 192, 194, 196], [3, 199, 200, 200, 202], [202, 216, 2, 2, 192]])
        .with_small(Formula::ThreeSmall.small_labels());
    let s = run_sweep(&SweepSpec::new(l, Formula::ThreeSmall), false).unwrap();
    let mut seen = [0usize; 3];
    for r in &s.rows {
        match r.regime {
            Regime::Allowed => {
                seen[0] += 1;
                assert!(r.asymptotic.is_finite());
            }
            Regime::Forbidden => {
                seen[1] += 1;
                assert!(r.asymptotic.is_nan());
            }
            Regime::Caustic => {
                seen[2] += 1;
                assert!(r.asymptotic.is_nan());
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] + seen[2] > 0, "{seen:?}");
}
