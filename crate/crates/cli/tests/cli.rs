use std::process::{Command, Output};

use qkneser::geometry::Cover;
use qkneser::homs::NoHomCertificate;
use qkneser::kneser::parse_dimacs;
use qkneser::solve::{CoverWitness, OptimalityCertificate};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkneser"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The JSON document that follows the human-readable first line.
fn trailing_json(text: &str) -> &str {
    &text[text.find("\n{").expect("json present") + 1..]
}

#[test]
fn params_table() {
    let o = run(&["params", "4", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for (label, value) in [
        ("vertices", "35"),
        ("valency", "16"),
        ("independence bound", "7"),
    ] {
        let line = text
            .lines()
            .find(|l| l.trim_start().starts_with(label))
            .unwrap();
        assert!(line.trim_end().ends_with(value), "{line}");
    }
    assert!(text.contains("hyperplane colouring  7") && text.contains("middle colouring      6"));
}

#[test]
fn params_json_uses_strings() {
    let o = run(&["params", "5", "2", "16", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc["vertices"].is_string());
    let q: u128 = 16;
    let gauss = (q.pow(5) - 1) * (q.pow(4) - 1) / ((q.pow(2) - 1) * (q - 1));
    assert_eq!(doc["vertices"], gauss.to_string());
    assert!(doc["chromatic_upper_bounds"]["middle"].is_null());
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(run(&["params", "4", "2", "6"]).status.code(), Some(2));
    assert_eq!(run(&["params", "2", "3", "2"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "3", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["colour", "5", "2", "2", "--scheme", "middle"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-hom", "subfield", "4", "2", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn chi_certificate_round_trips() {
    let o = run(&["chi", "4", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("χ(qK_{4:2}) = 6"));
    let cert: OptimalityCertificate<CoverWitness> =
        OptimalityCertificate::from_json(trailing_json(&text)).unwrap();
    assert_eq!(cert.optimum, 6);
    assert!(cert.exhaustive);
}

#[test]
fn node_guard_exits_3() {
    let o = run(&["chi", "5", "2", "--max-nodes", "100"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    let cert: OptimalityCertificate<CoverWitness> =
        OptimalityCertificate::from_json(trailing_json(&text)).unwrap();
    assert!(!cert.exhaustive);
    assert_eq!(
        run(&["graph", "5", "2", "2", "--max-vertices", "10"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn thread_count_does_not_change_the_certificate() {
    let one = stdout(&run(&["chi", "4", "3", "--json"]));
    let two = stdout(&run(&["chi", "4", "3", "--json", "--threads", "2"]));
    let a: OptimalityCertificate<CoverWitness> = OptimalityCertificate::from_json(&one).unwrap();
    let b: OptimalityCertificate<CoverWitness> = OptimalityCertificate::from_json(&two).unwrap();
    assert_eq!((a.optimum, &a.witness), (12, &b.witness));
}

#[test]
fn dimacs_export() {
    let dir = std::env::temp_dir().join(format!("qkneser-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.col");
    let o = run(&["graph", "4", "2", "2", "--dimacs", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_dimacs(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (35, 280));
    let piped = stdout(&run(&["graph", "4", "2", "2"]));
    assert_eq!(piped, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn covers_enumerate_and_classify() {
    let o = run(&[
        "covers",
        "4",
        "2",
        "--size",
        "6",
        "--enumerate",
        "--classify",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["count"], "210");
    let covers = doc["covers"].as_array().unwrap();
    assert!(covers
        .iter()
        .all(|c| c["classification"]["standard"] == true));
    let first: Cover = serde_json::from_value(covers[0].clone()).unwrap();
    assert_eq!(first.size(), 6);
    let o = run(&["covers", "4", "2", "--size", "5"]);
    assert!(stdout(&o).starts_with("0 covers"));
    assert_eq!(
        run(&["covers", "5", "2", "--size", "15", "--classify"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn colour_schemes() {
    assert_eq!(
        run(&["colour", "5", "2", "2", "--scheme", "hyperplane"])
            .status
            .code(),
        Some(0)
    );
    let o = run(&["colour", "4", "2", "3", "--scheme", "middle", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (doc["colours"].as_u64(), doc["proper"].as_bool()),
        (Some(12), Some(true))
    );

    let dir = std::env::temp_dir().join(format!("qkneser-cover-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let chi = stdout(&run(&["chi", "4", "2", "--json"]));
    let cert: OptimalityCertificate<CoverWitness> = OptimalityCertificate::from_json(&chi).unwrap();
    let cover = Cover::new(
        4,
        2,
        cert.witness.points.unwrap(),
        cert.witness.planes.unwrap(),
    );
    let good = dir.join("good.json");
    std::fs::write(&good, cover.to_json()).unwrap();
    let o = run(&[
        "colour",
        "4",
        "2",
        "2",
        "--scheme",
        "cover",
        good.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"v":4,"q":2,"points":[0],"planes":[]}"#).unwrap();
    let o = run(&[
        "colour",
        "4",
        "2",
        "2",
        "--scheme",
        "cover",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not a cover"));
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(
        run(&[
            "colour",
            "4",
            "2",
            "2",
            "--scheme",
            "cover",
            garbage.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn alpha_matches_bound() {
    let o = run(&["alpha", "5", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("α(qK_{5:2}) = 15"));
}

#[test]
fn verify_hom_names() {
    for args in [
        &["extension", "4", "2", "2", "--induced"][..],
        &["subfield", "2", "1", "2", "2"],
        &["field-reduction", "2", "1", "2", "2", "--induced"],
        &["echelon-shadow", "5", "2", "2"],
        &["point-set", "4", "2", "2", "--induced"],
    ] {
        let mut full = vec!["verify-hom"];
        full.extend_from_slice(args);
        let o = run(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).starts_with("HOM"));
    }
    // echelon shadow is not induced
    let o = run(&["verify-hom", "echelon-shadow", "4", "2", "2", "--induced"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT_INDUCED"));
}

#[test]
fn no_hom_certificate_output() {
    let o = run(&["no-hom", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("31/3") && text.contains("= 7"));
    let cert: NoHomCertificate = serde_json::from_str(trailing_json(&text)).unwrap();
    assert!(cert.no_hom);
    assert_eq!(run(&["no-hom", "1"]).status.code(), Some(2));
}

#[test]
fn blocking_sets() {
    let o = run(&["blocking", "3", "2", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (doc["size"].as_u64(), doc["count"].as_str()),
        (Some(3), Some("7"))
    );
    let o = run(&["blocking", "4", "2", "--size", "6"]);
    assert!(stdout(&o).starts_with("0 blocking sets"));
}

#[test]
fn accept_is_deterministic_and_passes() {
    let a = run(&["accept", "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = run(&["accept", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&run(&["accept"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
