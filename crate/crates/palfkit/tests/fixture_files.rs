//! The shipped JSON fixtures are snapshots of the programmatic builders.
//! Run with UPDATE_FIXTURES=1 to regenerate after intentional changes.

use std::path::PathBuf;

use palfkit::diagram::{BraneAssignment, CurveDiagram};
use palfkit::fixtures as fx;
use palfkit::format;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn check_snapshot(name: &str, text: &str) {
    let path = fixture_dir().join(name);
    if std::env::var("UPDATE_FIXTURES").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let on_disk = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing fixture {name}; run with UPDATE_FIXTURES=1"));
    assert_eq!(on_disk, text, "fixture {name} is stale; run with UPDATE_FIXTURES=1");
}

fn diagram_snapshot(name: &str, d: &CurveDiagram, b: &BraneAssignment) {
    let text = format::to_json_pretty(&format::diagram_to_file(d, b));
    check_snapshot(name, &text);
}

#[test]
fn diagram_fixtures_match_builders() {
    let (d, b) = fx::pi1();
    diagram_snapshot("pi1.diagram.json", &d, &b);
    let (d, b) = fx::pi2();
    diagram_snapshot("pi2.diagram.json", &d, &b);
    let (d, b) = fx::pi3();
    diagram_snapshot("pi3.diagram.json", &d, &b);
    let (d, b) = fx::annulus_bigons();
    diagram_snapshot("annulus_bigons.diagram.json", &d, &b);
    let (d, b) = fx::pants_bigon();
    diagram_snapshot("pants_bigon.diagram.json", &d, &b);
    let (d, b) = fx::torus_double();
    diagram_snapshot("torus_double.diagram.json", &d, &b);
    let (d, b) = fx::disjoint_pair();
    diagram_snapshot("disjoint_pair.diagram.json", &d, &b);
    let d = fx::annulus_core();
    let b = BraneAssignment {
        indices: Default::default(),
        switching_points: [(0usize, 0usize)].into_iter().collect(),
        declared_writhes: Vec::new(),
    };
    diagram_snapshot("annulus_core.diagram.json", &d, &b);
}

#[test]
fn category_fixtures_match_builders() {
    for (name, cat) in [
        ("a1.category.json", fx::model_category_a1()),
        ("a2.category.json", fx::model_category_a2()),
        ("a3.category.json", fx::model_category_a3()),
    ] {
        let text = format::to_json_pretty(&format::category_to_file(&cat, "q"));
        check_snapshot(name, &text);
    }
}

#[test]
fn shipped_fixtures_load_and_validate() {
    for name in [
        "pi1.diagram.json",
        "pi2.diagram.json",
        "pi3.diagram.json",
        "annulus_bigons.diagram.json",
        "pants_bigon.diagram.json",
        "torus_double.diagram.json",
        "disjoint_pair.diagram.json",
        "annulus_core.diagram.json",
    ] {
        let (d, b) = format::load_diagram(&fixture_dir().join(name))
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(d.validate().is_empty(), "{name} fails validation");
        assert!(d.validate_branes(&b).is_empty(), "{name} brane data fails validation");
    }
    for name in ["a1.category.json", "a2.category.json", "a3.category.json"] {
        let text = std::fs::read_to_string(fixture_dir().join(name)).unwrap();
        format::parse_category_rat(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
