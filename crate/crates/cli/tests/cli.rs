use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use linf_core::fixtures::{self, random};
use linf_core::io::{to_json, AlgebraDoc, ElementDoc, MorphismDoc, SimplexDoc, SimplicialSpaceDoc};
use linf_core::gm::SimplicialVectorSpace;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn linf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linf")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stderr)))
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_abelian_passes() {
    let out = linf(&["validate", "--input", p(&data("abelian.json"))]);
    assert_eq!(status(&out), 0);
    assert_eq!(json_of(&out)["result"], "pass");
}

#[test]
fn validate_every_sample_algebra() {
    for a in fixtures::algebras() {
        let out = linf(&["validate", "--input", p(&data(&format!("{}.json", a.name())))]);
        assert_eq!(status(&out), 0, "{}", a.name());
    }
    for m in ["xyz_acyclic_extension", "xyz_quadratic"] {
        let out = linf(&["validate", "--input", p(&data(&format!("{m}.json")))]);
        assert_eq!(status(&out), 0, "{m}");
    }
}

#[test]
fn validate_reports_non_qiso() {
    let out = linf(&["validate", "--input", p(&data("zero_map.json"))]);
    assert_eq!(status(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["result"], "fail");
    assert_eq!(v["reports"][0]["filtered_qiso"]["passed"], false);
}

#[test]
fn sample_files_match_fixtures() {
    for a in fixtures::algebras() {
        let text = std::fs::read_to_string(data(&format!("{}.json", a.name()))).unwrap();
        assert_eq!(text, to_json(&AlgebraDoc::from_algebra(&a)), "{}", a.name());
    }
    let xyz = Arc::new(fixtures::xyz());
    let cases = [
        ("zero_map", fixtures::zero_map()),
        ("weight_two_defect", fixtures::weight_two_defect()),
        ("xyz_acyclic_extension", fixtures::acyclic_extension(xyz.clone())),
        ("xyz_quadratic", fixtures::quadratic_iso(xyz.clone(), &[(&["x", "x"], &[(1, "z")])])),
    ];
    for (name, u) in cases {
        let text = std::fs::read_to_string(data(&format!("{name}.json"))).unwrap();
        assert_eq!(text, to_json(&MorphismDoc::from_morphism(&u)), "{name}");
    }
}

#[test]
fn curv_example() {
    let out = linf(&["curv", "--input", p(&data("xy.json")), "--element", r#"{"terms":[{"coef":"1","basis":"x"}]}"#]);
    assert_eq!(status(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["curv"], serde_json::json!([{ "basis": "y", "coef": "1/2" }]));
    assert_eq!(v["is_mc"], false);
}

#[test]
fn truncation_flag_quotients() {
    let out = linf(&[
        "curv",
        "--input",
        p(&data("xy.json")),
        "--truncation",
        "1",
        "--element",
        r#"{"terms":[{"coef":"1","basis":"x"}]}"#,
    ]);
    assert_eq!(status(&out), 0);
    assert_eq!(json_of(&out)["is_mc"], true);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let out = linf(&["frobnicate"]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(status(&linf(&["validate", "--bogus"])), 2);
    assert_eq!(status(&linf(&["validate", "--input", "/nonexistent.json"])), 2);
    let bad = linf(&["curv", "--input", p(&data("xy.json")), "--element", r#"{"terms":[{"coef":"1","basis":"q"}]}"#]);
    assert_eq!(status(&bad), 2);
    let wrong_degree = linf(&["curv", "--input", p(&data("xy.json")), "--element", r#"{"terms":[{"coef":"1","basis":"y"}]}"#]);
    assert_eq!(status(&wrong_degree), 2);
}

#[test]
fn preimage_refutation_exits_1() {
    let out = linf(&["preimage", "--input", p(&data("zero_map.json")), "--element", r#"{"terms":[{"coef":"1","basis":"x"}]}"#]);
    assert_eq!(status(&out), 1);
    let r = &json_of(&out)["refutation"];
    assert_eq!(r["weight"], 1);
    assert_eq!(r["degree"], 0);
    assert_eq!(r["class"], serde_json::json!([{ "basis": "x", "coef": "1" }]));
}

#[test]
fn preimage_certificate_reverifies_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let morphism = data("xyz_quadratic.json");
    let args = [
        "preimage",
        "--input",
        p(&morphism),
        "--element",
        r#"{"terms":[{"coef":"2","basis":"x"},{"coef":"-4","basis":"z"}]}"#,
    ];
    let a = linf(&args);
    let b = linf(&args);
    assert_eq!(status(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let mut with_output = args.to_vec();
    with_output.extend(["--output", p(&cert)]);
    assert_eq!(status(&linf(&with_output)), 0);
    assert_eq!(std::fs::read(&cert).unwrap(), a.stdout);

    let v = linf(&["verify", "--input", p(&cert)]);
    assert_eq!(status(&v), 0);
    assert_eq!(json_of(&v)["result"], "pass");
}

#[test]
fn tampered_certificate_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = linf(&[
        "preimage",
        "--input",
        p(&data("xyz_acyclic_extension.json")),
        "--element",
        r#"{"terms":[{"coef":"1","basis":"x"},{"coef":"-1","basis":"z"}]}"#,
    ]);
    assert_eq!(status(&out), 0);
    let mut v = json_of(&out);
    v["certificate"]["outcome"]["alpha"] = serde_json::json!([{ "basis": "x", "coef": "5" }]);
    let path = write(dir.path(), "bad.json", &v.to_string());
    assert_eq!(status(&linf(&["verify", "--input", &path])), 1);
}

#[test]
fn transfer_connect_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let u = fixtures::quadratic_iso(Arc::new(fixtures::xyz()), &[(&["x", "x"], &[(1, "z")])]);
    let src = u.source().clone();
    let mut rng = random::rng(7);
    let alpha = random::mc(&mut rng, &src);
    let e = random::edge_from(&mut rng, &src, &alpha, 1);
    let pushed = u.pushforward(e.value()).unwrap();
    let m = write(dir.path(), "u.json", &to_json(&MorphismDoc::from_morphism(&u)));
    let a = write(dir.path(), "a.json", &to_json(&ElementDoc::from_element(&src, &e.start())));
    let b = write(dir.path(), "b.json", &to_json(&ElementDoc::from_element(&src, &e.end())));
    let t = write(dir.path(), "t.json", &to_json(&SimplexDoc::from_element(u.target(), &pushed)));
    let out = linf(&["transfer-connect", "--input", &m, "--alpha", &a, "--alpha-prime", &b, "--edge", &t]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert = write(dir.path(), "cert.json", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(status(&linf(&["verify", "--input", &cert])), 0);
}

#[test]
fn pushforward_gives_mc_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let out = linf(&[
        "pushforward",
        "--input",
        p(&data("xyz_quadratic.json")),
        "--element",
        r#"{"terms":[{"coef":"1","basis":"x"},{"coef":"-3/2","basis":"z"}]}"#,
    ]);
    assert_eq!(status(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["certified"], true);
    let s = write(dir.path(), "s.json", &v.to_string());
    assert_eq!(status(&linf(&["verify", "--input", &s, "--input", p(&data("xyz.json"))])), 0);
}

#[test]
fn twist_outputs_valid_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = linf(&["twist", "--input", p(&data("xyz.json")), "--element", r#"{"terms":[{"coef":"1","basis":"x"},{"coef":"-1","basis":"z"}]}"#]);
    assert_eq!(status(&out), 0);
    let path = write(dir.path(), "tw.json", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(status(&linf(&["validate", "--input", &path])), 0);
    let not_mc = linf(&["twist", "--input", p(&data("xyz.json")), "--element", r#"{"terms":[{"coef":"1","basis":"x"}]}"#]);
    assert_eq!(status(&not_mc), 2);
}

#[test]
fn edge_commands_emit_mc_simplices() {
    let dir = tempfile::tempdir().unwrap();
    let alg = Arc::new(fixtures::cubic());
    let algp = p(&data("cubic.json")).to_string();
    let mut rng = random::rng(3);
    let e1 = random::edge(&mut rng, &alg, 1);
    let e2 = random::edge_from(&mut rng, &alg, &e1.end(), 2);
    let f1 = write(dir.path(), "e1.json", &to_json(&SimplexDoc::from_simplex(e1.simplex())));
    let f2 = write(dir.path(), "e2.json", &to_json(&SimplexDoc::from_simplex(e2.simplex())));

    let rect = linf(&["rectify", "--input", &algp, "--edge", &f1, "--floor", "1"]);
    assert_eq!(status(&rect), 0, "{}", String::from_utf8_lossy(&rect.stderr));
    let r = write(dir.path(), "r.json", std::str::from_utf8(&rect.stdout).unwrap());
    let rv = json_of(&rect);
    assert!(!rv["beta1"].is_null());

    let comp = linf(&["compose", "--input", &algp, "--left", &f1, "--right", &f2]);
    assert_eq!(status(&comp), 0, "{}", String::from_utf8_lossy(&comp.stderr));
    let c = write(dir.path(), "c.json", std::str::from_utf8(&comp.stdout).unwrap());

    let cat = linf(&["concatenate", "--input", &algp, "--edge", &f1, "--edge", &f2]);
    assert_eq!(status(&cat), 0, "{}", String::from_utf8_lossy(&cat.stderr));
    let k = write(dir.path(), "k.json", std::str::from_utf8(&cat.stdout).unwrap());

    for f in [&r, &c, &k] {
        let v = linf(&["verify", "--input", f, "--input", &algp]);
        assert_eq!(status(&v), 0, "{f}");
    }
    // The rectified edge keeps its endpoints.
    let rdoc: SimplexDoc = serde_json::from_value(rv["edge"].clone()).unwrap();
    let re = rdoc.to_element(&alg).unwrap();
    assert_eq!(re.eval_vertex(0), e1.end());
    assert_eq!(re.eval_vertex(1), e1.start());
}

#[test]
fn reconstruct_from_stub() {
    let dir = tempfile::tempdir().unwrap();
    let alg = Arc::new(fixtures::xyz());
    let mut rng = random::rng(11);
    let s = random::simplex(&mut rng, &alg, 2);
    let mu = write(dir.path(), "mu.json", &to_json(&ElementDoc::from_element(&alg, &s.vertex(1).unwrap())));
    let nu = write(dir.path(), "nu.json", &to_json(&ElementDoc::from_element(&alg, &s.stub(1).unwrap())));
    let out = linf(&["reconstruct", "--input", p(&data("xyz.json")), "--mu", &mu, "--stub", &nu, "--vertex", "1"]);
    assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    let doc: SimplexDoc = serde_json::from_value(v["simplex"].clone()).unwrap();
    assert!(doc.certified);
    assert_eq!(&doc.to_element(&alg).unwrap(), s.value());
}

#[test]
fn moore_homology_of_constant_space() {
    let dir = tempfile::tempdir().unwrap();
    let space = SimplicialVectorSpace::constant(2, 3);
    let f = write(dir.path(), "v.json", &to_json(&SimplicialSpaceDoc::from_space(&space)));
    let h0 = json_of(&linf(&["moore-homology", "--input", &f, "--degree", "0"]));
    assert_eq!(h0["dim"], 2);
    let h1 = json_of(&linf(&["moore-homology", "--input", &f, "--degree", "1"]));
    assert_eq!(h1["dim"], 0);
    assert_eq!(status(&linf(&["moore-homology", "--input", &f, "--degree", "3"])), 2);
}

#[test]
fn pi_abelian_cross_checks() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = random::rng(5);
    let alg = random::abelian(&mut rng, 2, (-3, 1));
    let f = write(dir.path(), "ab.json", &to_json(&AlgebraDoc::from_algebra(&alg)));
    for i in 0..3 {
        let out = linf(&["pi-abelian", "--input", &f, "--degree", &i.to_string()]);
        assert_eq!(status(&out), 0);
        let v = json_of(&out);
        assert_eq!(v["dim"], v["moore_dim"]);
    }
    assert_eq!(status(&linf(&["pi-abelian", "--input", p(&data("xy.json")), "--degree", "0"])), 2);
}
