use std::path::PathBuf;
use std::process::{Command, Output};

use mzt_core::complex::builtin;
use mzt_core::zeta::ZetaResult;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn mzt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzt"))
        .args(args)
        .env_remove("MZT_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Stdout of a run that must exit with `code`.
fn run(args: &[&str], code: i32) -> String {
    let o = mzt(args);
    assert_eq!(
        o.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn zeta_sv() {
    assert_eq!(
        run(&["zeta", "--dataset", "quartic", "--format", "sv"], 0),
        "t = 280; Z = 140*(L-1)^2*T*(1+T)/(1-T)^3 + (1+10*L+L^2)*2*T/(1-T)\n"
    );
    assert_eq!(
        run(
            &["zeta", "--dataset", "quartic-mirror", "--format", "sv"],
            0
        ),
        "t = 64; Z = 32*(L-1)^2*T*(1+T)/(1-T)^3 + (1+10*L+L^2)*2*T/(1-T)\n"
    );
}

#[test]
fn zeta_u_on_toy() {
    let out = run(
        &["zeta", "--file", &data("tetrahedron.json"), "--format", "u"],
        0,
    );
    assert_eq!(
        out,
        "u^1: 4*L^2 + 16*L + 4\nu^2: 6*(L-1)^2\nu^3: 4*(L-1)^2\n"
    );
}

#[test]
fn zeta_json_round_trips() {
    let out = run(&["zeta", "--dataset", "quartic", "--format", "json"], 0);
    let parsed: ZetaResult = serde_json::from_str(&out).unwrap();
    let direct = mzt_core::zeta(&builtin("quartic").unwrap()).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn zeta_series_respects_order() {
    let out = run(
        &[
            "zeta",
            "--dataset",
            "quartic",
            "--format",
            "series",
            "--order",
            "2",
        ],
        0,
    );
    assert_eq!(out, "142*L^2 - 260*L + 142\n562*L^2 - 1100*L + 562\n");
    let o = Command::new(env!("CARGO_BIN_EXE_mzt"))
        .args(["zeta", "--dataset", "quartic", "--format", "series"])
        .env("MZT_ORDER", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 5);
    assert_eq!(
        run(&["zeta", "--dataset", "quartic", "--format", "series"], 0)
            .lines()
            .count(),
        12
    );
}

#[test]
fn non_canonical_zeta_exits_2() {
    let o = mzt(&["zeta", "--file", &data("tetrahedron_m20.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not of canonical K3 shape"));
}

#[test]
fn volume() {
    assert_eq!(
        run(&["volume", "--dataset", "quartic"], 0),
        "2 + 20*L + 2*L^2\n"
    );
    assert_eq!(
        run(&["volume", "--dataset", "quartic-mirror"], 0),
        "2 + 20*L + 2*L^2\n"
    );
    assert_eq!(
        run(&["volume", "--file", &data("tetrahedron.json")], 0),
        "2 + 20*L + 2*L^2\n"
    );
}

#[test]
fn invariants() {
    assert_eq!(
        run(&["invariants", "--dataset", "quartic"], 0),
        "t=280 k=1 (pairing evidence: 1)\n"
    );
    assert_eq!(
        run(&["invariants", "--dataset", "quartic-mirror"], 0),
        "t=64 k=4 (gcd evidence: 4)\n"
    );
    assert_eq!(
        run(&["invariants", "--mirror-check"], 0),
        "t_check(quartic)=64=t(mirror) OK; k_check(quartic)=4=k(mirror) OK\n"
    );
    assert_eq!(
        run(
            &[
                "invariants",
                "--dataset",
                "quartic-mirror",
                "--gcd-evidence",
                "1"
            ],
            0
        ),
        "t=64 k in {1,2,4} (no evidence)\n"
    );
    assert_eq!(
        run(
            &[
                "invariants",
                "--dataset",
                "quartic",
                "--polarization",
                "1,4"
            ],
            0
        ),
        "t=280 k=1 (pairing evidence: 1)\nt_check=4 k_check=1\n"
    );
    // evidence that no candidate satisfies
    run(
        &["invariants", "--dataset", "quartic", "--gcd-evidence", "4"],
        2,
    );
    run(
        &["invariants", "--mirror-check", "--polarization", "1,4"],
        2,
    );
}

#[test]
fn subdivide() {
    assert_eq!(
        run(&["subdivide"], 0),
        "16 cells, all unimodular triangles\n"
    );
    assert!(run(&["subdivide", "--uniform-height", "0"], 0).starts_with("1 cell,"));
    assert_eq!(
        run(&["subdivide", "--interior-height", "20"], 0),
        "7 cells, not all unimodular triangles; unused points: (1,1) (1,2) (2,1)\n"
    );
}

#[test]
fn triangulate() {
    let out = run(&["triangulate", "--polygon", "a3"], 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("14 triangles"));
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 14);
    assert!(out.ends_with("interior simplices: c0=3 c1=16 c2=14\n"));
    let inline = run(&["triangulate", "--polygon", "0,0 2,0 0,2"], 0);
    assert!(inline.starts_with("4 triangles\n"));
    run(&["triangulate", "--polygon", "0,0 1,x"], 1);
}

#[test]
fn newton() {
    assert_eq!(
        run(&["newton", "--vertex", "a4"], 0),
        "(0,0) (1,0) (2,1) (2,2) (1,2) (0,1); normalized area 6; matches a4\n"
    );
    run(&["newton", "--vertex", "a1"], 1);
}

#[test]
fn validate() {
    assert_eq!(
        run(&["validate", "--dataset", "quartic-mirror"], 0),
        "F=64 E=96 V=34 OK\n"
    );
    assert_eq!(
        run(&["validate", "--dataset", "quartic"], 0),
        "F=280 E=420 V=142 OK\n"
    );
    assert_eq!(
        run(&["validate", "--file", &data("broken.json")], 2),
        "F=4 E=5 V=4 FAILED\n"
    );
}

#[test]
fn expand() {
    let out = run(&["expand", "--dataset", "quartic", "--order", "3"], 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "142*L^2 - 260*L + 142");
}

#[test]
fn oracle_is_seeded() {
    let a = run(&["oracle", "--seed", "7"], 0);
    assert_eq!(a, "30/30 polygons agree to order 8 (seed 7)\n");
    run(&["oracle", "--order", "51"], 1);
}

#[test]
fn input_errors_exit_1() {
    run(&["zeta", "--dataset", "nope"], 1);
    run(&["zeta"], 1);
    run(&["zeta", "--file", &data("missing.json")], 1);
    run(&["expand", "--dataset", "quartic", "--order", "65"], 1);
    run(&["expand", "--dataset", "quartic", "--order", "0"], 1);
    run(&["frobnicate"], 1);
    run(&["--help"], 0);
}

#[test]
fn dataset_accepts_a_path() {
    assert_eq!(
        run(&["validate", "--dataset", &data("tetrahedron.json")], 0),
        "F=4 E=6 V=4 OK\n"
    );
}

#[test]
fn outputs_are_stable() {
    for args in [
        &["zeta", "--dataset", "quartic", "--format", "json"][..],
        &["triangulate", "--polygon", "a2"],
        &["oracle", "--seed", "3"],
    ] {
        assert_eq!(stdout(&mzt(args)), stdout(&mzt(args)));
    }
}
