//! Byte-stable consolidated reports over the shipped diagrams. Run with
//! UPDATE_FIXTURES=1 after intentional output changes.

use std::path::PathBuf;

use palfkit::format::{self, FieldSpec};
use palfkit::report;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn golden_reports_are_stable() {
    for name in ["pi1", "pi2", "pi3"] {
        let file = format!("{name}.diagram.json");
        let (d, b) = format::load_diagram(&fixture_dir().join(&file)).unwrap();
        let (text, complete) =
            report::full_report(&file, &d, &b, FieldSpec::Rational, (-2, 3), 4).unwrap();
        assert!(complete);
        let golden = fixture_dir().join("golden").join(format!("{name}.report.txt"));
        if std::env::var("UPDATE_FIXTURES").is_ok() {
            std::fs::create_dir_all(golden.parent().unwrap()).unwrap();
            std::fs::write(&golden, &text).unwrap();
            continue;
        }
        let on_disk = std::fs::read_to_string(&golden)
            .unwrap_or_else(|_| panic!("missing golden for {name}; run with UPDATE_FIXTURES=1"));
        assert_eq!(on_disk, text, "golden report for {name} drifted");
    }
}
