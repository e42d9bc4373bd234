use std::path::PathBuf;
use std::process::{Command, Output};

use anc::cli::ComputeOutput;
use anc::git::GitInput;

fn anc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anc"))
        .args(args)
        .env_remove("ANC_SEED")
        .env_remove("ANC_SIZE_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("anc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compute_projective_plane() {
    let out = anc(&[
        "compute", "--target", "p2", "--bound", "2", "--format", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("I = 1 + q^(1)·I_(1) + q^(2)·I_(2)\n"));
    assert!(text.contains("(1): 1/((x1 + l1_1 + z)*(x1 + l1_2 + z)*(x1 + l1_3 + z))"));
}

#[test]
fn compute_json_round_trips() {
    let out = anc(&[
        "compute",
        "--target",
        "gb:1,4,1,2",
        "--twist",
        "anticanonical",
        "--bound",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed: ComputeOutput = serde_json::from_str(&text).unwrap();
    assert!(parsed.twisted);
    assert_eq!(parsed.series.coefficients.len(), 4);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
}

#[test]
fn targets_json_feeds_back_as_input() {
    let out = anc(&["targets", "--target", "gr:2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout(&out);
    let input = GitInput::parse(&json).unwrap();
    assert_eq!(input.to_json() + "\n", json);

    let path = temp_file("gr24.json", &json);
    let from_file = anc(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--bound",
        "2",
        "--format",
        "text",
    ]);
    let built_in = anc(&[
        "compute", "--target", "gr:2,4", "--bound", "2", "--format", "text",
    ]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&built_in));

    let euler = anc(&[
        "integrate",
        "--input",
        path.to_str().unwrap(),
        "--integrand",
        "euler",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&euler), "6\n");
}

#[test]
fn schema_errors_exit_2_with_position() {
    let path = temp_file(
        "bad.json",
        "{\n  \"schema_version\": 1,\n  \"rank_t\": \"two\"\n}",
    );
    let out = anc(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("rank_t"), "{err}");

    assert_eq!(
        anc(&["compute", "--target", "gr:5,3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        anc(&["compute", "--target", "p2", "--format", "yaml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        anc(&[
            "compute",
            "--target",
            "gb:1,3,1,3",
            "--twist",
            "anticanonical"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn unbounded_fiber_exits_3() {
    let path = temp_file(
        "unbounded.json",
        r#"{"schema_version": 1, "rank_t": 2, "weights_v": [[1, 0], [0, 1]], "roots": [],
            "weyl": {"gl_blocks": [1, 1]}, "theta": [1, 1], "cone": [[1, 0]], "class_basis": [[1, 1]]}"#,
    );
    let out = anc(&["compute", "--input", path.to_str().unwrap(), "--bound", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_needs_a_seed() {
    let out = anc(&["verify", "--target", "p3"]);
    assert_eq!(out.status.code(), Some(2));
    let with_env = Command::new(env!("CARGO_BIN_EXE_anc"))
        .args(["verify", "--target", "p3", "--format", "text"])
        .env("ANC_SEED", "8")
        .output()
        .unwrap();
    assert_eq!(with_env.status.code(), Some(0));
    assert!(stdout(&with_env).contains("seed: 8"));
}

#[test]
fn verify_flipped_convention_exits_1() {
    let args = [
        "verify",
        "--target",
        "gb:1,4,1,2",
        "--twist",
        "anticanonical",
        "--seed",
        "3",
        "--format",
        "text",
    ];
    assert_eq!(anc(&args).status.code(), Some(0));
    let mut flipped = args.to_vec();
    flipped.push("--flip-convention");
    let out = anc(&flipped);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("convention: flipped"));
    assert!(text.contains("[FAIL] grassmann bundle closed form"));
    assert!(text.contains("chart I={"));
}

#[test]
fn size_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_anc"))
        .args(["compute", "--target", "gr:2,4", "--bound", "2"])
        .env("ANC_SIZE_LIMIT", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fixed_locus_pattern() {
    let out = anc(&[
        "fixed-locus",
        "--target",
        "gb:2,5,1,2",
        "--lift",
        "3,1,2",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("sorted lift: (1,3,2) (permutation [2,1,3])"));
    assert!(text.contains("* 0 | * 0"));

    let zero = anc(&[
        "fixed-locus",
        "--target",
        "gb:2,5,1,2",
        "--lift",
        "0,0,0",
        "--format",
        "text",
    ]);
    assert!(stdout(&zero).contains("* * | * *"));

    let outside = anc(&["fixed-locus", "--target", "gb:2,5,1,2", "--lift", "-1,0,0"]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn targets_listing() {
    let out = anc(&["targets", "--format", "text"]);
    let text = stdout(&out);
    for name in ["p{n}", "gr:k,n", "gb:k,n,l,m"] {
        assert!(text.contains(name));
    }
    let summary = stdout(&anc(&[
        "targets",
        "--target",
        "gb:1,3,1,2",
        "--format",
        "text",
    ]));
    assert!(summary.contains("mirror hypotheses: not satisfied (index condition fails"));
}
