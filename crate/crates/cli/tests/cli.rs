use std::process::{Command, Output};

use nearhopf::catalog::entry;
use nearhopf::Group;
use nearhopf_cli::export;

fn nearhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearhopf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn integral_coproduct_of_rho11() {
    let o = nearhopf(&["coproduct", "G2", "rho11", "--integral"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("delta_2(zeta5 (x) zeta5)"), "{s}");
    assert!(s.contains("x6 (x) zeta5 + zeta5 (x) x6 [mod 2]"), "{s}");
}

#[test]
fn rational_poincare_of_g2() {
    let o = nearhopf(&["poincare", "G2", "--rational", "--max", "14"]);
    assert_eq!(o.status.code(), Some(0));
    let ones: Vec<u32> = stdout(&o)
        .lines()
        .filter_map(|l| {
            let (d, n) = l.split_once(": ")?;
            (n == "1").then(|| d.parse().unwrap())
        })
        .collect();
    assert_eq!(ones, [0, 3, 11, 14]);
    assert_eq!(stdout(&o).lines().count(), 15);
}

#[test]
fn products_and_unknown_generators() {
    let o = nearhopf(&["multiply", "G2", "zeta3", "zeta3", "--prime", "2"]);
    assert_eq!(stdout(&o).trim(), "x6");
    let o = nearhopf(&["multiply", "G2", "x6", "zeta5", "--prime", "2"]);
    assert_eq!(stdout(&o).trim(), "x6*zeta5");
    let o = nearhopf(&["multiply", "G2", "x7", "zeta5", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown generator 'x7'"));
}

#[test]
fn syntax_errors_exit_one() {
    let o = nearhopf(&["bockstein", "G2", "zeta5 +", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 7"));
    let o = nearhopf(&["coproduct", "G2", "rho11"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mod_p_queries() {
    let o = nearhopf(&["bockstein", "E8", "zeta11 (x) zeta11", "--prime", "5"]);
    assert_eq!(stdout(&o).trim(), "4*x12 (x) zeta11 + zeta11 (x) x12");
    let o = nearhopf(&["coproduct", "E8", "zeta23", "--prime", "5"]);
    assert!(stdout(&o).contains("3*x12 (x) zeta11 + 2*zeta11 (x) x12"));
    let o = nearhopf(&["reduce", "G2", "rho11", "--prime", "2"]);
    assert_eq!(stdout(&o).trim(), "x6*zeta5");
    let o = nearhopf(&["primitive", "E8", "x20"]);
    assert_eq!(stdout(&o).trim(), "primitive");
    let o = nearhopf(&["primitive", "G2", "rho11"]);
    assert_eq!(stdout(&o).trim(), "not primitive");
}

#[test]
fn show_lists_tables() {
    let o = nearhopf(&["show", "F4", "--prime", "3"]);
    let s = stdout(&o);
    assert!(s.contains("x8^3 = 0"), "{s}");
    assert!(s.contains("beta = 2*x8"), "{s}");
}

#[test]
fn verify_exit_codes() {
    let o = nearhopf(&["verify", "G2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = nearhopf(&["verify", "E7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("finding: E7/F/rho15/3"));

    let dir = tempfile::tempdir().unwrap();
    let allow = dir.path().join("allow.txt");
    std::fs::write(&allow, "# expected\nE7/F/rho15/3\n").unwrap();
    let json = dir.path().join("report.json");
    let o = nearhopf(&[
        "verify",
        "E7",
        "--allow",
        allow.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(stdout(&o).contains("allowed: E7/F/rho15/3"));
    let reports: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(reports[0]["group"], "E7");

    std::fs::write(&allow, "not an id\n").unwrap();
    let o = nearhopf(&["verify", "G2", "--allow", allow.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for g in Group::ALL {
        let path = dir.path().join(format!("{g}.json"));
        let o = nearhopf(&["export", g.name(), "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(export::load(&text).unwrap(), entry(g).unwrap());
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["group"], g.name());
        assert!(doc["algebras"]
            .as_array()
            .unwrap()
            .iter()
            .all(|a| a["generators"].is_array()));
    }
}

#[test]
fn export_schema_shape() {
    let doc = export::build(entry(Group::G2).unwrap()).unwrap();
    assert_eq!(doc.primes, [2]);
    let a = &doc.algebras[0];
    let names: Vec<&str> = a.generators.iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["x6", "zeta3", "zeta5"]);
    let zeta3 = &a.generators[1];
    assert_eq!((zeta3.rule.as_str(), zeta3.bound), ("square", 2));
    let b5 = a.bockstein.iter().find(|b| b.generator == "zeta5").unwrap();
    assert_eq!(b5.image[0].monomial, "x6");
    let psi = &doc.integral.psi_formulas[0];
    assert_eq!(psi.generator, "rho11");
    let terms = &psi.shadows[0].1;
    assert_eq!(terms.len(), 2);
}
