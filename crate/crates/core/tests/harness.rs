use fifteenj::exact::{cache_load, global_cache, wigner_15j_first, FifteenJLabels, Label};
use fifteenj::harness::{
    admissible_window, eval_asymptotic, eval_exact, fmt17, parse_config, run_sweep, scale_large_labels, summarize,
    SweepRow, SweepSpec, Window,
};
use fifteenj::semiclassics::{Formula, Regime};
use fifteenj::{Error, HalfInt};

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

const FOUR_SMALL: &str = "\
# four small labels
two_j1 = 1
two_j2 = 237
two_j12 = 236
two_j125 = 238
two_j1256 = 236
two_j3 = 189
two_j4 = 3
two_j34 = 188
two_j135 = 188
two_j1356 = 190
two_j13 = 190
two_j24 = 234
two_j5 = 2
two_j6 = 2
small = s1, s4, s5, s6
varied = j7
formula = four_small
";

fn four_small() -> SweepSpec {
    parse_config(FOUR_SMALL).unwrap().sweep_spec().unwrap()
}

#[test]
fn window_of_four_small() {
    let spec = four_small();
    let w = admissible_window(&spec.labels, Label::J7).unwrap();
    // (j1256, j34, j7) and (j1356, j24, j7)
    assert_eq!((w.lo, w.hi), (h(48), h(424)));
    assert_eq!(w.len(), 189);
    assert!(w.contains(h(100)) && !w.contains(h(101)) && !w.contains(h(426)));
    let c = w.central_half();
    assert_eq!((c.lo, c.hi), (h(48 + 2 * 47), h(424 - 2 * 47)));
    for v in w.values() {
        assert!(spec.labels.with(Label::J7, v).is_admissible());
    }
    assert!(!spec.labels.with(Label::J7, h(46)).is_admissible());
    assert!(!spec.labels.with(Label::J7, h(426)).is_admissible());
}

#[test]
fn empty_window() {
    // j1 + j2 < j12 can not be fixed by moving j7
    let l = FifteenJLabels::from_twice([1, 1, 6, 6, 6, 1, 1, 2, 2, 2, 2, 2, 0, 0, 0]);
    assert_eq!(admissible_window(&l, Label::J7), None);
    // mixed parity between the two triads that hold j7
    let l = FifteenJLabels::from_twice([1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 0, 0, 0]);
    assert_eq!(admissible_window(&l, Label::J7), None);
}

#[test]
fn config_errors() {
    let bad = |text: &str| match parse_config(text) {
        Err(Error::Config(m)) => m,
        other => panic!("expected a config error, got {other:?}"),
    };
    assert!(bad(&FOUR_SMALL.replace("two_j5 = 2\n", "")).contains("j5"));
    assert!(bad(&format!("{FOUR_SMALL}two_j6 = 2\n")).contains("twice"));
    assert!(bad(&format!("{FOUR_SMALL}colour = red\n")).contains("unknown key"));
    assert!(bad(&FOUR_SMALL.replace("two_j2 = 237", "two_j2 = -1")).contains("nonnegative"));
    assert!(bad(&FOUR_SMALL.replace("formula = four_small", "formula = five_small")).contains("formula"));
    assert!(bad(&FOUR_SMALL.replace("small = s1", "small = s9")).contains("s9"));
    assert!(bad("two_j1 1\n").contains("key = value"));
}

#[test]
fn config_contents() {
    let c = parse_config(&format!("{FOUR_SMALL}two_min = 100\ntwo_max = 141 # odd, snapped down\ncache = /tmp/x\n")).unwrap();
    assert_eq!(c.formula().unwrap(), Formula::FourSmall);
    assert_eq!(c.labels.small_labels(), vec![Label::J1, Label::J4, Label::J5, Label::J6]);
    assert_eq!(c.cache.as_deref(), Some(std::path::Path::new("/tmp/x")));
    assert!(matches!(c.point_labels(), Err(Error::Config(_))));
    let w = c.sweep_spec().unwrap().validate().unwrap();
    assert_eq!(w, Window { lo: h(100), hi: h(140) });

    // the formula can be inferred from the flags
    let c = parse_config(&FOUR_SMALL.replace("formula = four_small\n", "two_j7 = 118\n")).unwrap();
    assert_eq!(c.formula().unwrap(), Formula::FourSmall);
    assert_eq!(c.point_labels().unwrap().twice(Label::J7), 118);
}

#[test]
fn spec_validation() {
    let mut spec = four_small();
    spec.formula = Formula::TwoSmall;
    assert!(matches!(spec.validate(), Err(Error::Config(_))));
    let mut spec = four_small();
    spec.varied = Label::J5;
    assert!(matches!(spec.validate(), Err(Error::Config(_))));
    let mut spec = four_small();
    spec.range = Some((h(1000), h(1100)));
    assert!(matches!(spec.validate(), Err(Error::ClassicallyForbidden(_))));
}

#[test]
fn single_evaluations() {
    let l = parse_config(&FOUR_SMALL.replace("formula = four_small\n", "two_j7 = 118\n"))
        .unwrap()
        .point_labels()
        .unwrap();
    let exact = eval_exact(&l);
    let mut lines = exact.lines();
    let alg = lines.next().unwrap();
    let dec: f64 = lines.next().unwrap().parse().unwrap();
    assert!(alg.contains("sqrt"));
    assert_eq!(dec, wigner_15j_first(&l).to_f64());
    let a: f64 = eval_asymptotic(&l, Formula::FourSmall).unwrap().parse().unwrap();
    assert!((a - dec).abs() < 0.05 * dec.abs());

    let bad = l.with(Label::J7, h(2));
    assert!(eval_exact(&bad).starts_with("0 (triad violation"));
}

#[test]
fn csv_is_deterministic_and_order_independent() {
    let mut spec = four_small();
    spec.range = Some((h(100), h(160)));
    let parallel = run_sweep(&spec, true).unwrap();
    let serial = run_sweep(&spec, false).unwrap();
    assert_eq!(parallel.to_csv(), serial.to_csv());
    assert_eq!(parallel.to_csv(), run_sweep(&spec, true).unwrap().to_csv());

    let csv = parallel.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("two_j7,exact,asymptotic,abs_err,rel_err,regime"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "100");
    assert_eq!(first[5], "allowed");
    let e: f64 = first[1].parse().unwrap();
    assert_eq!(e, parallel.rows[0].exact);
    assert_eq!(csv.lines().count(), 1 + 31);
}

#[test]
fn warm_cache_gives_identical_rows() {
    let mut spec = four_small();
    spec.range = Some((h(200), h(240)));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sixj.cache");
    let cold = run_sweep(&spec, true).unwrap();
    global_cache().store(&path).unwrap();
    let loaded = cache_load(&path).unwrap();
    assert!(!loaded.is_empty());
    global_cache().replace_with(loaded);
    let warm = run_sweep(&spec, true).unwrap();
    assert_eq!(cold.rows, warm.rows);
}

#[test]
fn summary_statistics() {
    let row = |v: i64, exact: f64, asymptotic: f64, regime: Regime| SweepRow {
        varied: h(v),
        exact,
        asymptotic,
        abs_err: (asymptotic - exact).abs(),
        rel_err: (asymptotic - exact).abs() / exact.abs(),
        regime,
    };
    let rows = [
        row(0, 1.0, 1.1, Regime::Allowed),
        row(2, -2.0, -1.8, Regime::Allowed),
        row(4, 1.0, -0.5, Regime::Allowed),
        row(6, 5.0, f64::NAN, Regime::Caustic),
    ];
    let s = summarize(&rows);
    assert_eq!(s.count, 3);
    let want = ((0.01 + 0.04 + 2.25) / 6.0f64).sqrt();
    assert!((s.rms_rel - want).abs() < 1e-15);
    assert!((s.median_rel - 0.1).abs() < 1e-12);
    assert!((s.max_rel - 1.5).abs() < 1e-15);
    assert_eq!(s.sign_mismatches, 1);
    assert_eq!((s.exact_sign_changes, s.asymptotic_sign_changes), (2, 1));
}

#[test]
fn scaling_keeps_small_spin_differences() {
    let spec = four_small();
    for k in [2, 4] {
        let l = scale_large_labels(&spec.labels, Formula::FourSmall, k);
        assert_eq!(l.twice(Label::J2), 237 * k);
        assert_eq!(l.twice(Label::J3), 189 * k);
        for (x, base) in [(Label::J12, Label::J2), (Label::J24, Label::J2), (Label::J34, Label::J3), (Label::J13, Label::J3)]
        {
            assert_eq!(l.twice(x) - l.twice(base), spec.labels.twice(x) - spec.labels.twice(base));
        }
        for s in Formula::FourSmall.small_labels() {
            assert_eq!(l.twice(*s), spec.labels.twice(*s));
        }
        assert!(admissible_window(&l, Label::J7).is_some());
    }
}

#[test]
fn number_format_round_trips() {
    for x in [1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
        assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
    }
    assert_eq!(fmt17(f64::NAN), "NaN");
}
