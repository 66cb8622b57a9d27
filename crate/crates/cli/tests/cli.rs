use std::path::{Path, PathBuf};
use std::process::Command;

use heitmann::json::{cert_from_json, cert_to_json, dim_cert_from_json};
use heitmann_core::Budget;
use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], budget: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_heitmann"));
    cmd.args(args);
    match budget {
        Some(b) => cmd.env("HEITMANN_BUDGET", b),
        None => cmd.env_remove("HEITMANN_BUDGET"),
    };
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, None)
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures() -> (TempDir, PathBuf, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let chain3 = write(
        &dir,
        "chain3.json",
        &json!({"points": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]]}),
    );
    let qx = write(&dir, "qx.json", &json!({"char": 0, "vars": ["x"]}));
    let qxy = write(&dir, "qxy.json", &json!({"char": 0, "vars": ["x", "y"]}));
    (dir, chain3, qx, qxy)
}

#[test]
fn lattice_dimensions() {
    let (dir, chain3, _, _) = fixtures();
    let r = run(&["lattice", "dim", "--kind", "kdim", "--poset", s(&chain3)]);
    assert_eq!((r.code, r.stdout.trim()), (0, "2"), "{}", r.stderr);
    for strategy in ["upper", "lower", "generators", "chain"] {
        let r = run(&[
            "lattice",
            "dim",
            "--poset",
            s(&chain3),
            "--strategy",
            strategy,
        ]);
        assert_eq!(r.stdout.trim(), "2");
    }
    for kind in ["jdim", "hdim"] {
        let r = run(&["lattice", "dim", "--kind", kind, "--poset", s(&chain3)]);
        assert_eq!(r.stdout.trim(), "0");
    }
    let info: Value =
        serde_json::from_str(&run(&["lattice", "info", "--poset", s(&chain3)]).stdout).unwrap();
    assert_eq!(info["elements"], 4);
    assert_eq!(info["maximal"], json!(["c"]));

    let q = run(&[
        "lattice",
        "quotient",
        "--poset",
        s(&chain3),
        "--zero",
        "a",
        "--one",
        "b",
    ]);
    let q: Value = serde_json::from_str(&q.stdout).unwrap();
    assert_eq!(q["points"], json!(["b"]));

    let v = write(
        &dir,
        "v.json",
        &json!({"points": ["g", "a", "b"], "covers": [["g", "a"], ["g", "b"]]}),
    );
    let sp: Value =
        serde_json::from_str(&run(&["spectra", "info", "--poset", s(&v)]).stdout).unwrap();
    assert_eq!(sp["max"], json!(["a", "b"]));
    assert_eq!(sp["Jspec"], json!(["a", "b"]));
    assert_eq!(sp["kdim"], 1);
}

#[test]
fn gluing() {
    let dir = TempDir::new().unwrap();
    let diagram = json!({
        "spaces": [
            {"points": ["g", "a"], "covers": [["g", "a"]]},
            {"points": ["g", "b"], "covers": [["g", "b"]]}
        ],
        "overlaps": [{"i": 0, "j": 1, "u_ij": ["g"], "u_ji": ["g"]}]
    });
    let d = write(&dir, "d.json", &diagram);
    let r = run(&["spectra", "glue", "--diagram", s(&d)]);
    let p: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(p["points"], json!(["g", "a", "b"]));
    assert_eq!(p["covers"].as_array().unwrap().len(), 2);

    // Two copies of the two-point lattice glued along their bottoms.
    let lat = json!({
        "kind": "ideal",
        "lattices": [{"points": ["p"], "covers": []}, {"points": ["q"], "covers": []}],
        "overlaps": [{"i": 0, "j": 1, "s_ij": ["p"], "s_ji": ["q"]}]
    });
    let d = write(&dir, "l.json", &lat);
    let r = run(&["lattice", "glue", "--diagram", s(&d)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let g: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(g["poset"]["points"], json!(["p", "q"]));
}

fn emit(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", s(&out)]);
    let r = run(&all);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    out
}

fn verify(path: &Path) -> Run {
    run(&["verify", "--cert", s(path)])
}

#[test]
fn certificates_verify_and_round_trip() {
    let (dir, _, qx, qxy) = fixtures();
    let (qx, qxy) = (s(&qx), s(&qxy));
    let certs = [
        emit(
            &dir,
            "kron.json",
            &["ring", "kronecker", "--ring", qx, "--gens", "x, x+x^2, x^3"],
        ),
        emit(
            &dir,
            "kronl.json",
            &[
                "ring",
                "kronecker",
                "--ring",
                qx,
                "--gens",
                "x, x+x^2, x^3",
                "--localized",
            ],
        ),
        emit(
            &dir,
            "kron2.json",
            &[
                "ring",
                "kronecker",
                "--ring",
                qxy,
                "--gens",
                "x^2, x*y, y^2 - x, x + y^3, x*y^2",
            ],
        ),
        emit(
            &dir,
            "bass.json",
            &["ring", "bass", "--ring", qx, "--a", "x", "--bs", "1+x, x^2"],
        ),
        emit(
            &dir,
            "e1.json",
            &["ring", "unimod-e1", "--ring", qx, "--v", "x, 1+x, x^2"],
        ),
        emit(
            &dir,
            "serre.json",
            &[
                "ring",
                "serre-split",
                "--ring",
                qx,
                "--matrix",
                "1, 0; x, 0",
                "--k",
                "1",
            ],
        ),
        emit(
            &dir,
            "swan.json",
            &[
                "ring",
                "swan",
                "--ring",
                qx,
                "--presentation",
                "x, 0, 1; 0, x+1, 0; 0, 0, 1",
            ],
        ),
        emit(
            &dir,
            "cancel.json",
            &[
                "ring",
                "cancel",
                "--ring",
                qx,
                "--projection",
                "1, 0; 0, 1",
                "--c",
                "x^2, x+1",
                "--a",
                "x^3",
                "--k",
                "2",
            ],
        ),
        emit(
            &dir,
            "kdim.json",
            &["ring", "kdim-cert", "--ring", qx, "--xs", "x, 1+x"],
        ),
        emit(
            &dir,
            "kdimq.json",
            &[
                "ring",
                "kdim-cert",
                "--ring",
                qxy,
                "--modulus",
                "x*y",
                "--xs",
                "x + y, x",
            ],
        ),
    ];
    for c in &certs {
        let r = verify(c);
        assert_eq!(r.code, 0, "{}: {}", c.display(), r.stderr);
        assert!(r.stdout.contains("\"valid\": true"));

        // Re-reading and re-writing gives the same document.
        let text = std::fs::read_to_string(c).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        if v["kind"] == "kdim-cert" {
            assert!(dim_cert_from_json(&v, &Budget::default())
                .unwrap()
                .verify()
                .unwrap());
            assert_eq!(v["verification"]["identityHolds"], true);
        } else {
            let cert = cert_from_json(&v, &Budget::default()).unwrap();
            cert.verify().unwrap();
            assert_eq!(
                serde_json::to_string_pretty(&cert_to_json(&cert)).unwrap() + "\n",
                text
            );
        }
    }
    let kron: Value = serde_json::from_str(&std::fs::read_to_string(&certs[0]).unwrap()).unwrap();
    assert!(kron["data"]["outputs"]["vector"].as_array().unwrap().len() <= 2);
}

#[test]
fn deterministic_output() {
    let (_dir, _, qx, _) = fixtures();
    let args = ["ring", "unimod-e1", "--ring", s(&qx), "--v", "x, 1+x, x^2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn tampered_certificates_are_rejected() {
    let (dir, _, qx, _) = fixtures();
    let c = emit(
        &dir,
        "kron.json",
        &[
            "ring",
            "kronecker",
            "--ring",
            s(&qx),
            "--gens",
            "x, x+x^2, x^3",
        ],
    );
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    v["data"]["outputs"]["vector"][0] = json!("x^2 + 1");
    let bad = write(&dir, "bad.json", &v);
    let r = verify(&bad);
    assert_eq!(r.code, 1, "{}", r.stdout);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    let w = v["witnesses"][0]["cofactors"].as_array_mut().unwrap();
    w[0] = json!("7");
    let bad = write(&dir, "bad2.json", &v);
    assert_eq!(verify(&bad).code, 1);

    let k = emit(
        &dir,
        "kdim.json",
        &["ring", "kdim-cert", "--ring", s(&qx), "--xs", "x, 1+x"],
    );
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&k).unwrap()).unwrap();
    v["as"][0] = json!("x + 5");
    let bad = write(&dir, "bad3.json", &v);
    assert_eq!(verify(&bad).code, 1);
}

#[test]
fn exit_codes() {
    let (dir, chain3, qx, qxy) = fixtures();
    assert_eq!(run(&["lattice", "frobnicate"]).code, 3);
    assert_eq!(
        run(&["lattice", "dim", "--poset", s(&chain3), "--bogus"]).code,
        3
    );
    assert_eq!(run(&["--help"]).code, 0);
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(run(&["lattice", "info", "--poset", s(&broken)]).code, 3);
    assert_eq!(
        run(&["lattice", "info", "--poset", "/nonexistent.json"]).code,
        3
    );
    let r = run(&[
        "ring",
        "bass",
        "--ring",
        s(&qx),
        "--a",
        "x",
        "--bs",
        "x^2, x^3",
    ]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stderr.contains("hypothesis"));
    assert_eq!(
        run(&["ring", "bass", "--ring", s(&qx), "--a", "z", "--bs", "1"]).code,
        3
    );
    let r = run_env(
        &[
            "ring",
            "kronecker",
            "--ring",
            s(&qxy),
            "--gens",
            "x^2, x*y, y^2 - x, x + y^3, x*y^2",
        ],
        Some("pairs=1"),
    );
    assert_eq!(r.code, 2, "{}", r.stderr);
    let r = run_env(
        &["lattice", "dim", "--poset", s(&chain3)],
        Some("pairs=lots"),
    );
    assert_eq!(r.code, 3);
}
