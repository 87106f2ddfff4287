use amalgam_lab::harness::{run_suite, SuiteConfig, SuiteReport, SUITES};
use amalgam_lab::Error;

#[test]
fn same_seed_same_report() {
    let cfg = SuiteConfig::default().with_seed(11);
    for name in ["embeddings", "commutator-upper"] {
        let a = run_suite(name, &cfg).unwrap().without_timing();
        let b = run_suite(name, &cfg).unwrap().without_timing();
        assert_eq!(a, b, "{name}");
        let back = SuiteReport::from_json(&a.to_json().unwrap()).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(
        run_suite("no-such-suite", &SuiteConfig::default()),
        Err(Error::UnknownSuite(_))
    ));
}

#[test]
fn suite_list_is_complete() {
    assert_eq!(SUITES.len(), 11);
    for name in SUITES {
        assert!(!name.is_empty());
    }
}

#[test]
fn config_from_toml() {
    let cfg = SuiteConfig::from_toml_str("seed = 5\n[samples]\nholder = 10\nduality = 10\n").unwrap();
    assert_eq!(cfg.seed, 5);
    let rep = run_suite("duality", &cfg).unwrap();
    assert!(rep.pass(), "{:?}", rep.failures());
    assert!(SuiteConfig::from_toml_str("bogus = 1").is_err());
}
