use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use proptest::prelude::*;

use geonf::automata::{corpus, pump_refute, verify_witness, PumpOptions, RefutationWitness};
use geonf::cli;
use geonf::embed::{refute_on_subgroup, EmbeddingMap};
use geonf::geodesy::{enumerate_ball, BallOptions, LengthTable};
use geonf::lattice::IntMatrix;
use geonf::presets;

fn h14() -> &'static LengthTable<'static> {
    static T: OnceLock<LengthTable<'static>> = OnceLock::new();
    T.get_or_init(|| enumerate_ball(presets::h(), 14, BallOptions::default()).unwrap())
}

fn g10() -> &'static LengthTable<'static> {
    static T: OnceLock<LengthTable<'static>> = OnceLock::new();
    T.get_or_init(|| enumerate_ball(presets::g(), 10, BallOptions::default()).unwrap())
}

fn corpus_dir(group: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(group)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn length_is_subadditive_and_bounded_by_weight(
        a in prop::collection::vec(0usize..6, 0..6),
        b in prop::collection::vec(0usize..6, 0..6),
    ) {
        let h = presets::h();
        let t = h14();
        let (ga, wa) = h.evaluate(&a);
        let (gb, wb) = h.evaluate(&b);
        let la = t.length(&ga).unwrap();
        let lb = t.length(&gb).unwrap();
        prop_assert!(la <= wa && lb <= wb);
        prop_assert_eq!(t.length(&h.invert(&ga)).unwrap(), la);
        let lab = t.length(&h.multiply(&ga, &gb)).unwrap();
        prop_assert!(lab <= la + lb);
    }

    #[test]
    fn geodesics_evaluate_to_their_element(w in prop::collection::vec(0usize..6, 0..5)) {
        let h = presets::h();
        let t = h14();
        let (g, _) = h.evaluate(&w);
        let len = t.length(&g).unwrap();
        let geos = t.all_geodesics(&g, 100_000).unwrap();
        prop_assert!(!geos.is_empty());
        for geo in geos {
            let (e, wt) = h.evaluate(&geo);
            prop_assert_eq!(e, g.clone());
            prop_assert_eq!(wt, len);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_dfa_witnesses_verify(seed in any::<u64>()) {
        let h = presets::h();
        let dfa = &corpus::random_corpus(h, seed, 1, 4)[0];
        let w = pump_refute(dfa, h14(), PumpOptions::default()).unwrap();
        prop_assert!(verify_witness(&w, dfa, h14(), 20_000_000).unwrap().passed());
    }
}

#[test]
fn g_corpus_refutes_and_verifies_on_g_ball() {
    let (h, g) = (presets::h(), presets::g());
    let map = EmbeddingMap::tau_to_s2(h, g).unwrap();
    let dfas = corpus::load_corpus(&corpus_dir("g"), g).unwrap();
    assert!(dfas.len() >= 3);
    for (name, dfa) in &dfas {
        let w = refute_on_subgroup(&map, dfa, h14(), PumpOptions::default()).unwrap();
        let v = verify_witness(&w, dfa, g10(), 20_000_000).unwrap();
        assert!(v.passed(), "{name}: {v:?}");
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let h = presets::h();
    let dfa = corpus::load_dfa(&corpus_dir("h").join("accept_all.dfa"), h).unwrap();
    let w = pump_refute(&dfa, h14(), PumpOptions::default()).unwrap();
    let RefutationWitness::PumpedNonGeodesic { pumped, .. } = &w else {
        panic!("expected a pumped witness, got {}", w.variant());
    };
    let mut bad = w.clone();
    if let RefutationWitness::PumpedNonGeodesic { pumped_weight, .. } = &mut bad {
        *pumped_weight += 1;
    }
    assert!(!pumped.is_empty());
    assert!(!verify_witness(&bad, &dfa, h14(), 1_000_000).unwrap().passed());
}

#[test]
fn cli_refute_output_is_stable() {
    let path = corpus_dir("h").join("accept_all.dfa");
    let args = ["geonf", "refute", "--dfa", path.to_str().unwrap()];
    let out = cli::run(args);
    assert_eq!(out.code, cli::EXIT_PASS);
    let expected = "\
WITNESS PumpedNonGeodesic
group: H
target: d=1 e=3 f=0
target-element: (2 0 0 1 1 | 0)
target-length: 8
original-word: xτxxxτ
original-weight: 8
excision: start=2 length=1 state=0
excision: start=2 length=1 state=0
pumped-word: xτxτ
pumped-exponent: 1
pumped-weight: 6
pumped-element: (0 0 0 1 1 | 0)
pumped-length: 4 (table)
shorter-word: ytyt
shorter-weight: 4
END
VERIFY PASS
";
    assert_eq!(out.output, expected);
    assert_eq!(cli::run(args), out);
}

#[test]
fn cli_refute_exit_codes() {
    let xy = corpus_dir("h").join("xy_only.dfa");
    let out = cli::run(["geonf", "refute", "--dfa", xy.to_str().unwrap()]);
    assert_eq!(out.code, cli::EXIT_UNCOVERED);
    assert!(out.output.starts_with("WITNESS UncoveredElement"));
    let out = cli::run(["geonf", "refute", "--dfa", "/nonexistent.dfa"]);
    assert_eq!(out.code, cli::EXIT_USAGE);
}

#[test]
fn corrupted_action_matrix_fails_compile_check() {
    let h = presets::h();
    assert!(cli::compile_report("H", h).passed());
    let t = h.quotient().names().iter().position(|n| n == "t").unwrap();
    let bad = h.with_action_matrix(t, IntMatrix::identity(h.rank())).unwrap();
    let report = cli::compile_report("H", &bad);
    assert!(!report.passed());
    assert!(report.violations.iter().any(|v| v.starts_with("action-law")));
    assert!(report.violations.iter().any(|v| v.starts_with("equivariance")));
}
