use std::path::PathBuf;
use std::process::{Command, Output};

fn instance(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name).display().to_string()
}

fn mlcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlcoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn support_draws_left_half_strip() {
    let o = mlcoh(&["--window=-4,3", "support", &instance("e1.inst"), "-b", "bx", "-M", "S", "-i", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains(" 0 ****+---"), "{text}");
    assert!(text.contains("-1 ....|..."), "{text}");
    assert!(text.contains("region: (-inf,-1] x [0,inf)"), "{text}");
}

#[test]
fn json_support_dumps_boxes() {
    let o = mlcoh(&["--format", "json", "support", &instance("e1.inst"), "-b", "bx", "-M", "S", "-i", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["boxes"][0][0]["hi"], -1);
    assert!(v["boxes"][0][0]["lo"].is_null());
    assert_eq!(v["boxes"][0][1]["lo"], 0);
}

#[test]
fn svg_output_is_an_svg_document() {
    let o = mlcoh(&["--format", "svg", "kunneth", "--preset", "figure1", "-i", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("<svg") || text.contains("\n<svg"), "{text}");
    assert_eq!(text.matches(r#"r="4""#).count(), 1);
}

#[test]
fn undefined_end_is_a_named_error() {
    let o = mlcoh(&["end", &instance("e1.inst"), "-b", "bxy", "-M", "S", "-i", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("end undefined"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(mlcoh(&["gdim"]).status.code(), Some(2));
    assert_eq!(mlcoh(&["end", "/nonexistent.inst", "-b", "m", "-M", "S"]).status.code(), Some(2));
    assert_eq!(mlcoh(&["verify", &instance("e1.inst"), "--check", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_exit_code_tracks_failures() {
    let ok = mlcoh(&["verify", &instance("e1.inst")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains(", 0 fail"));

    let text = std::fs::read_to_string(instance("e1.inst")).unwrap() + "wrong = gdim(by, Sx, {2}) == 7\n";
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("e1_wrong.inst");
    std::fs::write(&path, text).unwrap();
    let bad = mlcoh(&["verify", path.to_str().unwrap(), "--check", "task"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn field_override_is_accepted() {
    let o = mlcoh(&["--field", "GF(7)", "gdim", &instance("e1.inst"), "-b", "by", "-M", "Sx", "-Q", "{2}"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('1'));
    assert_eq!(mlcoh(&["--field", "GF(6)", "gdim", &instance("e1.inst"), "-b", "by", "-M", "Sx", "-Q", "{2}"]).status.code(), Some(2));
}
